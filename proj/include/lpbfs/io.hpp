#pragma once

#include "lpbfs/errors.hpp"
#include "lpbfs/numerics.hpp"
#include "lpbfs/phase1.hpp"
#include "lpbfs/phase2.hpp"
#include "lpbfs/problem.hpp"
#include "lpbfs/solver.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace lpbfs {

using Json = nlohmann::ordered_json;

/// {"name": ..., "c": [...], "A": [[...], ...], "b": [...]}
struct ProblemDocument {
  std::optional<std::string> name;
  Problem<Rational> problem;
};

namespace detail {

inline Rational scalar_of_json(const Json &v, const std::string &path) {
  try {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned())
        return Rational(BigInt(v.get<std::uint64_t>()));
      return Rational(BigInt(v.get<std::int64_t>()));
    }
    if (v.is_number_float())
      return rational_of_string(to_string(v.get<double>()));
    if (v.is_string())
      return rational_of_string(v.get<std::string>());
  } catch (const ParseError &e) {
    throw ParseError(path, e.what());
  }
  throw ParseError(path, "expected a number or a numeric string");
}

inline Vector<Rational> vector_of_json(const Json &doc, const std::string &key) {
  if (!doc.contains(key))
    throw ParseError(key, "missing field");
  const Json &v = doc.at(key);
  if (!v.is_array())
    throw ParseError(key, "expected an array");
  Vector<Rational> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(scalar_of_json(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

template <class T> std::vector<std::string> strings_of(const Vector<T> &v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto &x : v)
    out.push_back(to_string(x));
  return out;
}

inline std::vector<std::size_t> one_based(std::span<const std::size_t> v) {
  std::vector<std::size_t> out(v.begin(), v.end());
  for (auto &x : out)
    ++x;
  return out;
}

} // namespace detail

inline ProblemDocument parse_problem_document(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw ParseError("", "top level must be an object");

  ProblemDocument out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string())
      throw ParseError("name", "expected a string");
    out.name = doc["name"].get<std::string>();
  }
  auto c = detail::vector_of_json(doc, "c");
  auto b = detail::vector_of_json(doc, "b");
  if (!doc.contains("A"))
    throw ParseError("A", "missing field");
  const Json &a = doc["A"];
  if (!a.is_array())
    throw ParseError("A", "expected an array of rows");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string rp = "A[" + std::to_string(i) + "]";
    if (!a[i].is_array())
      throw ParseError(rp, "expected an array");
    std::vector<Rational> row;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      row.push_back(detail::scalar_of_json(a[i][j], rp + "[" + std::to_string(j) + "]"));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(rp, "row has " + std::to_string(row.size()) + " entries, expected " +
                               std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  try {
    out.problem = make_problem(rows, std::move(b), std::move(c));
  } catch (const ShapeError &e) {
    throw ParseError(e.field(), e.what());
  }
  return out;
}

/// Exact problem from a JSON document; ParseError carries the offending path.
inline Problem<Rational> parse_problem(std::string_view text) {
  return parse_problem_document(text).problem;
}

inline Json problem_to_json(const ProblemDocument &doc) {
  Json j;
  if (doc.name)
    j["name"] = *doc.name;
  const auto &p = doc.problem;
  j["c"] = detail::strings_of(p.c);
  Json rows = Json::array();
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Json row = Json::array();
    for (const auto &v : p.a.row(i))
      row.push_back(to_string(v));
    rows.push_back(std::move(row));
  }
  j["A"] = std::move(rows);
  j["b"] = detail::strings_of(p.b);
  return j;
}

inline std::string emit_problem(const ProblemDocument &doc) {
  return problem_to_json(doc).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct CertificateReport {
  std::size_t row; // 1-based row of the reduced system
  std::vector<std::string> y;
};

/// Serializable summary of a run. Optional members are present exactly when
/// meaningful for the status.
struct SolveReport {
  std::string status;
  std::string arithmetic;
  std::string rule;
  std::optional<std::vector<std::string>> x;
  std::optional<std::vector<std::size_t>> basis; // 1-based
  std::optional<std::string> objective;
  std::optional<std::vector<std::string>> ray;
  std::size_t phase1_iterations = 0;
  std::optional<std::size_t> phase2_iterations;
  std::optional<CertificateReport> certificate;
  std::vector<std::size_t> dropped_rows; // 1-based original rows
  std::optional<std::size_t> inconsistent_row;
  std::optional<bool> numerically_suspect; // floating point only
};

template <class T> SolveReport make_report(const SolveResult<T> &r, Rule rule) {
  SolveReport out;
  out.status = to_string(r.status);
  out.arithmetic = ScalarTraits<T>::exact ? "rational" : "float";
  out.rule = rule == Rule::Sorted ? "sorted" : "unsorted";
  out.dropped_rows = detail::one_based(r.rank.dropped_rows);
  if (!ScalarTraits<T>::exact)
    out.numerically_suspect = r.numerically_suspect;
  if (r.status == SolveStatus::Inconsistent) {
    out.inconsistent_row = *r.inconsistent_row + 1;
    return out;
  }
  out.phase1_iterations = r.phase1->iterations;
  if (r.status == SolveStatus::Infeasible) {
    const auto &cert = r.phase1->certificate();
    out.certificate = CertificateReport{cert.row + 1, detail::strings_of(cert.y)};
    return out;
  }
  if (r.status == SolveStatus::Feasible) {
    const auto &t = r.phase1->tableau();
    out.x = detail::strings_of(basic_solution(t));
    out.basis = t.basis().one_based();
    return out;
  }
  out.phase2_iterations = r.phase2->iterations;
  out.basis = r.phase2->final_tableau.basis().one_based();
  if (const auto *opt = std::get_if<Optimal<T>>(&r.phase2->status)) {
    out.x = detail::strings_of(opt->x);
    out.objective = to_string(opt->objective);
  } else {
    const auto &unb = std::get<Unbounded<T>>(r.phase2->status);
    out.x = detail::strings_of(unb.x);
    out.ray = detail::strings_of(unb.ray);
  }
  return out;
}

inline Json report_to_json(const SolveReport &r) {
  Json j;
  j["status"] = r.status;
  j["arithmetic"] = r.arithmetic;
  j["rule"] = r.rule;
  if (r.x)
    j["x"] = *r.x;
  if (r.basis)
    j["basis"] = *r.basis;
  if (r.objective)
    j["objective"] = *r.objective;
  if (r.ray)
    j["ray"] = *r.ray;
  if (r.status != "inconsistent")
    j["phase1_iterations"] = r.phase1_iterations;
  if (r.phase2_iterations)
    j["phase2_iterations"] = *r.phase2_iterations;
  if (r.certificate)
    j["certificate"] = Json{{"row", r.certificate->row}, {"y", r.certificate->y}};
  j["dropped_rows"] = r.dropped_rows;
  if (r.inconsistent_row)
    j["inconsistent_row"] = *r.inconsistent_row;
  if (r.numerically_suspect)
    j["numerically_suspect"] = *r.numerically_suspect;
  return j;
}

/// Deterministic pretty-printed JSON followed by a newline.
inline std::string emit_report(const SolveReport &r) { return report_to_json(r).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Traces (JSON lines)
// ---------------------------------------------------------------------------

namespace detail {

template <class T> Json matrix_to_json(const Matrix<T> &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto &v : m.row(i))
      row.push_back(to_string(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace detail

template <class T> Json trace_line(const Phase1TraceEntry<T> &e) {
  Json j;
  j["phase"] = 1;
  j["iter"] = e.iteration;
  j["basis"] = e.basis.one_based();
  j["b_tilde"] = detail::strings_of(e.tilde_b);
  std::visit(
      [&](const auto &d) {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, AlreadyFeasible>) {
          j["decision"] = "feasible";
        } else if constexpr (std::is_same_v<D, InfeasibleRow>) {
          j["decision"] = "infeasible";
          j["row"] = d.row + 1;
        } else {
          j["decision"] = "pivot";
          j["row"] = d.row + 1;
          j["leaving"] = d.leaving + 1;
          j["entering"] = d.entering + 1;
        }
      },
      e.decision);
  if (e.tilde_a)
    j["tilde_a"] = detail::matrix_to_json(*e.tilde_a);
  return j;
}

template <class T> Json trace_line(const Phase2TraceEntry<T> &e) {
  Json j;
  j["phase"] = 2;
  j["iter"] = e.iteration;
  j["basis"] = e.basis.one_based();
  j["b_tilde"] = detail::strings_of(e.tilde_b);
  switch (e.event) {
  case Phase2Event::Pivot:
    j["decision"] = "pivot";
    break;
  case Phase2Event::Optimal:
    j["decision"] = "optimal";
    break;
  case Phase2Event::Unbounded:
    j["decision"] = "unbounded";
    break;
  }
  if (e.row)
    j["row"] = *e.row + 1;
  if (e.leaving)
    j["leaving"] = *e.leaving + 1;
  if (e.entering)
    j["entering"] = *e.entering + 1;
  if (e.reduced_cost)
    j["reduced_cost"] = to_string(*e.reduced_cost);
  if (e.tilde_a)
    j["tilde_a"] = detail::matrix_to_json(*e.tilde_a);
  return j;
}

/// One compact JSON object per line, phase 1 first.
template <class T> void write_trace(std::ostream &os, const SolveResult<T> &r) {
  if (r.phase1)
    for (const auto &e : r.phase1->trace)
      os << trace_line(e).dump() << '\n';
  if (r.phase2)
    for (const auto &e : r.phase2->trace)
      os << trace_line(e).dump() << '\n';
}

} // namespace lpbfs
