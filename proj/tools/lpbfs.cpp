// lpbfs: command-line front end for the standard-form LP solver.
//
//   lpbfs solve  problem.json [--arith rational|float] [--eps E] [--rule sorted|unsorted]
//                             [--trace out.jsonl] [--trace-tableau]
//   lpbfs phase1 problem.json (same flags)
//   lpbfs fuzz   [--count N] [--seed S] [--m M] [--n N] [--range LO,HI]
//                [--oracle aux|enumerate|both] [--float] [--eps E] [--threads T]
//   lpbfs gen    [--seed S] [--m M] [--n N] [--range LO,HI] [--scheme NAME] [--name NAME]
//
// Exit codes: 0 solved/feasible, 1 infeasible, 2 unbounded, 3 input error,
// 4 internal invariant violation.

#include "lpbfs/lpbfs.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUnbounded = 2;
constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

struct RunFlags {
  std::string file;
  std::string arith = "rational";
  double eps = lpbfs::Tolerance::kDefaultEps;
  std::string rule = "sorted";
  std::string trace;
  bool trace_tableau = false;
};

lpbfs::EntryRange parse_range(std::string text) {
  if (!text.empty() && text.front() == '[' && text.back() == ']')
    text = text.substr(1, text.size() - 2);
  const auto sep = text.find_first_of(",:", 1);
  if (sep == std::string::npos)
    throw lpbfs::ParseError("range", "expected LO,HI");
  try {
    std::size_t used = 0;
    lpbfs::EntryRange r;
    r.lo = std::stoi(text.substr(0, sep), &used);
    if (used != sep)
      throw std::invalid_argument("lo");
    const std::string hi = text.substr(sep + 1);
    r.hi = std::stoi(hi, &used);
    if (used != hi.size())
      throw std::invalid_argument("hi");
    if (r.lo > r.hi)
      throw lpbfs::ParseError("range", "LO must not exceed HI");
    return r;
  } catch (const std::logic_error &) {
    throw lpbfs::ParseError("range", "expected LO,HI integers");
  }
}

std::string read_input(const std::string &path) {
  if (path == "-")
    return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in)
    throw lpbfs::ParseError("", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_code_for(lpbfs::SolveStatus s) {
  switch (s) {
  case lpbfs::SolveStatus::Feasible:
  case lpbfs::SolveStatus::Optimal:
    return kExitOk;
  case lpbfs::SolveStatus::Infeasible:
  case lpbfs::SolveStatus::Inconsistent:
    return kExitInfeasible;
  case lpbfs::SolveStatus::Unbounded:
    return kExitUnbounded;
  }
  return kExitInternal;
}

template <class T>
int run_solver(const lpbfs::Problem<lpbfs::Rational> &exact, const RunFlags &f, bool optimize) {
  lpbfs::SolveOptions opt;
  opt.rule = f.rule == "sorted" ? lpbfs::Rule::Sorted : lpbfs::Rule::Unsorted;
  opt.tol = lpbfs::Tolerance(f.eps);
  opt.optimize = optimize;
  opt.record_tableaus = f.trace_tableau;
  lpbfs::SolveResult<T> result;
  if constexpr (std::is_same_v<T, lpbfs::Rational>)
    result = lpbfs::solve(exact, opt);
  else
    result = lpbfs::solve(lpbfs::convert<T>(exact), opt);

  if (!f.trace.empty()) {
    std::ofstream out(f.trace);
    if (!out)
      throw lpbfs::ParseError("trace", "cannot write '" + f.trace + "'");
    lpbfs::write_trace(out, result);
  }
  std::cout << lpbfs::emit_report(lpbfs::make_report(result, opt.rule));
  return exit_code_for(result.status);
}

int cmd_run(const RunFlags &f, bool optimize) {
  const auto problem = lpbfs::parse_problem(read_input(f.file));
  if (f.arith == "float")
    return run_solver<double>(problem, f, optimize);
  return run_solver<lpbfs::Rational>(problem, f, optimize);
}

struct FuzzFlags {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::size_t m = 6;
  std::size_t n = 12;
  std::string range = "-5,5";
  std::string oracle = "both";
  bool check_float = false;
  double eps = lpbfs::Tolerance::kDefaultEps;
  unsigned threads = 0;
};

int cmd_fuzz(const FuzzFlags &f) {
  lpbfs::FuzzConfig cfg;
  cfg.count = f.count;
  cfg.seed = f.seed;
  cfg.max_m = f.m;
  cfg.max_n = f.n;
  cfg.range = parse_range(f.range);
  cfg.checks.aux = f.oracle != "enumerate";
  cfg.checks.enumerate = f.oracle != "aux";
  cfg.checks.check_float = f.check_float;
  cfg.checks.float_tol = lpbfs::Tolerance(f.eps);
  cfg.threads = f.threads;
  if (cfg.max_m < 1)
    throw lpbfs::ParseError("m", "must be at least 1");

  const auto records = lpbfs::run_fuzz(cfg);
  std::size_t passed = 0, feasible = 0, infeasible = 0, max_iter = 0;
  std::size_t float_checked = 0, float_agree = 0, float_flagged = 0;
  lpbfs::Json failures = lpbfs::Json::array();
  for (const auto &r : records) {
    if (r.sorted)
      (*r.sorted == lpbfs::Verdict::Feasible ? feasible : infeasible)++;
    max_iter = std::max(max_iter, r.phase1_iterations);
    bool float_ok = true;
    if (r.float_verdict || r.float_suspect) {
      ++float_checked;
      if (r.float_verdict && r.sorted && *r.float_verdict == *r.sorted)
        ++float_agree;
      else if (r.float_suspect)
        ++float_flagged;
      else
        float_ok = false;
    }
    if (r.ok() && float_ok) {
      ++passed;
      continue;
    }
    lpbfs::Json j;
    j["id"] = r.id;
    j["seed"] = r.seed;
    j["m"] = r.m;
    j["n"] = r.n;
    j["scheme"] = lpbfs::to_string(r.scheme);
    auto verdict = [](const std::optional<lpbfs::Verdict> &v) -> lpbfs::Json {
      return v ? lpbfs::Json(lpbfs::to_string(*v)) : lpbfs::Json(nullptr);
    };
    j["sorted"] = verdict(r.sorted);
    j["unsorted"] = verdict(r.unsorted);
    j["aux"] = verdict(r.aux);
    j["enumerate"] = verdict(r.enumerated);
    j["float"] = verdict(r.float_verdict);
    j["no_repeat"] = r.no_repeat;
    j["sound"] = r.sound;
    if (r.optimum_match)
      j["optimum_match"] = *r.optimum_match;
    if (!r.error.empty())
      j["error"] = r.error;
    failures.push_back(std::move(j));
  }

  lpbfs::Json summary;
  summary["count"] = f.count;
  summary["seed"] = f.seed;
  summary["passed"] = passed;
  summary["feasible"] = feasible;
  summary["infeasible"] = infeasible;
  summary["max_phase1_iterations"] = max_iter;
  if (f.check_float)
    summary["float"] = {{"checked", float_checked},
                        {"agree", float_agree},
                        {"flagged_suspect", float_flagged}};
  summary["failures"] = std::move(failures);
  std::cout << summary.dump(2) << '\n';
  return passed == records.size() ? kExitOk : kExitInternal;
}

struct GenFlags {
  std::uint64_t seed = 1;
  std::size_t m = 2;
  std::size_t n = 4;
  std::string range = "-5,5";
  std::string scheme = "random";
  std::string name;
};

int cmd_gen(const GenFlags &f) {
  lpbfs::ProblemDocument doc;
  if (!f.name.empty())
    doc.name = f.name;
  try {
    doc.problem = lpbfs::generate_instance(f.seed, f.m, f.n, parse_range(f.range),
                                           lpbfs::scheme_of_string(f.scheme));
  } catch (const lpbfs::ContractViolation &e) {
    throw lpbfs::ParseError("gen", e.what());
  }
  std::cout << lpbfs::emit_problem(doc);
  return kExitOk;
}

void add_run_flags(CLI::App *cmd, RunFlags &f) {
  cmd->add_option("file", f.file, "Problem JSON ('-' for stdin)")->required();
  cmd->add_option("--arith", f.arith, "Arithmetic")
      ->check(CLI::IsMember({"rational", "float"}));
  cmd->add_option("--eps", f.eps, "Zero tolerance for float arithmetic")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--rule", f.rule, "Phase-1 selection rule")
      ->check(CLI::IsMember({"sorted", "unsorted"}));
  cmd->add_option("--trace", f.trace, "Write per-iteration JSON lines here");
  cmd->add_flag("--trace-tableau", f.trace_tableau, "Include the full scheme in trace lines");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Standard-form LP solver with an artificial-variable-free Phase 1"};
  app.require_subcommand(1);

  RunFlags solve_flags, phase1_flags;
  auto *solve_cmd = app.add_subcommand("solve", "Phase 1 followed by the Bland simplex");
  add_run_flags(solve_cmd, solve_flags);
  auto *phase1_cmd = app.add_subcommand("phase1", "Find a basic feasible solution only");
  add_run_flags(phase1_cmd, phase1_flags);

  FuzzFlags fuzz_flags;
  auto *fuzz_cmd = app.add_subcommand("fuzz", "Differential test against the oracles");
  fuzz_cmd->add_option("--count", fuzz_flags.count, "Number of instances");
  fuzz_cmd->add_option("--seed", fuzz_flags.seed, "Base seed");
  fuzz_cmd->add_option("--m", fuzz_flags.m, "Largest row count");
  fuzz_cmd->add_option("--n", fuzz_flags.n, "Largest column count");
  fuzz_cmd->add_option("--range", fuzz_flags.range, "Integer entry range LO,HI");
  fuzz_cmd->add_option("--oracle", fuzz_flags.oracle, "Oracles to compare against")
      ->check(CLI::IsMember({"aux", "enumerate", "both"}));
  fuzz_cmd->add_flag("--float", fuzz_flags.check_float, "Also compare float-mode verdicts");
  fuzz_cmd->add_option("--eps", fuzz_flags.eps, "Zero tolerance for float arithmetic")
      ->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--threads", fuzz_flags.threads, "Worker threads (0: all cores)");

  GenFlags gen_flags;
  auto *gen_cmd = app.add_subcommand("gen", "Emit a random problem document");
  gen_cmd->add_option("--seed", gen_flags.seed, "Seed");
  gen_cmd->add_option("--m", gen_flags.m, "Rows");
  gen_cmd->add_option("--n", gen_flags.n, "Columns");
  gen_cmd->add_option("--range", gen_flags.range, "Integer entry range LO,HI");
  gen_cmd->add_option("--scheme", gen_flags.scheme, "Instance scheme")
      ->check(CLI::IsMember({"random", "infeasible-biased", "negative-b"}));
  gen_cmd->add_option("--name", gen_flags.name, "Document name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve_cmd)
      return cmd_run(solve_flags, true);
    if (*phase1_cmd)
      return cmd_run(phase1_flags, false);
    if (*fuzz_cmd)
      return cmd_fuzz(fuzz_flags);
    if (*gen_cmd)
      return cmd_gen(gen_flags);
  } catch (const lpbfs::ParseError &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const lpbfs::ShapeError &e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
