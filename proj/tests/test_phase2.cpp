#include "lpbfs/phase2.hpp"
#include "lpbfs/solver.hpp"
#include "support/brute.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using lpbfs::Optimal;
using lpbfs::Problem;
using lpbfs::Rational;
using lpbfs::Unbounded;
using R = Rational;

namespace {

Problem<R> worked() { return lpbfs::make_problem<R>({{1, 0, -1}, {0, 1, 1}}, {-1, 2}, {1, 1, 1}); }

lpbfs::Tableau<R> feasible_start(const Problem<R> &p) {
  auto rep = lpbfs::run_phase1(lpbfs::initial_tableau(p).tableau);
  return rep.tableau();
}

} // namespace

TEST(Simplex, WorkedInstanceIsAlreadyOptimal) {
  const auto p = worked();
  const auto rep = lpbfs::run_simplex(feasible_start(p), p.c);
  ASSERT_TRUE(rep.optimal());
  const auto &opt = std::get<Optimal<R>>(rep.status);
  EXPECT_EQ(opt.x, (std::vector<R>{0, 1, 1}));
  EXPECT_EQ(opt.objective, 2);
  EXPECT_EQ(rep.iterations, 0u);

  // The two feasible vertices are (1,0,2) and (0,1,1) with objectives 3 and 2.
  std::vector<R> objs;
  for (const auto &x : brute::feasible_vertices(p))
    objs.push_back(brute::dot(p.c, x));
  std::sort(objs.begin(), objs.end());
  EXPECT_EQ(objs, (std::vector<R>{2, 3}));
}

TEST(Simplex, MovesToCheaperVertex) {
  auto p = worked();
  p.c = {0, 1, 0}; // (1,0,2) costs 0, (0,1,1) costs 1
  const auto rep = lpbfs::run_simplex(feasible_start(p), p.c);
  ASSERT_TRUE(rep.optimal());
  EXPECT_EQ(std::get<Optimal<R>>(rep.status).x, (std::vector<R>{1, 0, 2}));
  EXPECT_EQ(rep.iterations, 1u);
  ASSERT_EQ(rep.trace.size(), 2u);
  EXPECT_EQ(rep.trace[0].event, lpbfs::Phase2Event::Pivot);
  EXPECT_EQ(rep.trace[0].entering, 0u);
  EXPECT_EQ(rep.trace[0].leaving, 1u);
  EXPECT_EQ(rep.trace[0].reduced_cost, R(-1));
  EXPECT_EQ(rep.trace[1].event, lpbfs::Phase2Event::Optimal);
}

TEST(Simplex, UnboundedRay) {
  auto p = lpbfs::make_problem<R>({{1, -1}}, {0}, {-1, 0});
  const auto rep = lpbfs::run_simplex(feasible_start(p), p.c);
  ASSERT_FALSE(rep.optimal());
  const auto &u = std::get<Unbounded<R>>(rep.status);
  EXPECT_EQ(u.x, (std::vector<R>{0, 0}));
  EXPECT_EQ(u.ray, (std::vector<R>{1, 1}));
  EXPECT_EQ(brute::times(p, u.ray), (std::vector<R>{0}));
  EXPECT_LT(brute::dot(p.c, u.ray), 0);
}

TEST(Simplex, ZeroObjectiveStopsImmediately) {
  auto p = worked();
  p.c = {0, 0, 0};
  const auto rep = lpbfs::run_simplex(feasible_start(p), p.c);
  ASSERT_TRUE(rep.optimal());
  EXPECT_EQ(rep.iterations, 0u);
  EXPECT_EQ(std::get<Optimal<R>>(rep.status).objective, 0);
}

TEST(Simplex, Preconditions) {
  const auto p = worked();
  const auto t0 = lpbfs::initial_tableau(p).tableau; // b~ = (-1, 2)
  EXPECT_THROW(lpbfs::run_simplex(t0, p.c), lpbfs::ContractViolation);
  EXPECT_THROW(lpbfs::run_simplex(feasible_start(p), std::vector<R>{1, 1}), lpbfs::ShapeError);
}

TEST(Simplex, ReducedCostsVanishOnBasis) {
  const auto p = worked();
  const auto t = feasible_start(p);
  const auto rc = lpbfs::reduced_costs(t, p.c);
  // basis {2,3}: y solves y1*0 + y2 = 1, -y1 + y2 = 1 -> y = (0, 1); rc_1 = 1 - 0 = 1
  EXPECT_EQ(rc, (std::vector<R>{1, 0, 0}));
}

TEST(Solve, StatusesEndToEnd) {
  EXPECT_EQ(lpbfs::solve(worked()).status, lpbfs::SolveStatus::Optimal);
  auto inf = lpbfs::make_problem<R>({{1, 0, 2}, {0, 1, -1}}, {-1, 2}, {0, 0, 0});
  EXPECT_EQ(lpbfs::solve(inf).status, lpbfs::SolveStatus::Infeasible);
  auto unb = lpbfs::make_problem<R>({{1, -1}}, {0}, {-1, 0});
  EXPECT_EQ(lpbfs::solve(unb).status, lpbfs::SolveStatus::Unbounded);
  auto bad = lpbfs::make_problem<R>({{1, 1}, {2, 2}}, {1, 3}, {0, 0});
  const auto r = lpbfs::solve(bad);
  EXPECT_EQ(r.status, lpbfs::SolveStatus::Inconsistent);
  EXPECT_EQ(r.inconsistent_row, 1u);
  lpbfs::SolveOptions o;
  o.optimize = false;
  EXPECT_EQ(lpbfs::solve(worked(), o).status, lpbfs::SolveStatus::Feasible);
}

// Optimality is certified from the original data: duals for the final
// basis give nonnegative reduced costs, and the objective equals the best
// feasible vertex. Unbounded rays are checked by multiplication.
TEST(SimplexProperties, RandomInstances) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> d(-5, 5);
  std::size_t optimal = 0, unbounded = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = 1 + rng() % 4, n = m + rng() % 5;
    Problem<R> p{lpbfs::Matrix<R>(m, n), std::vector<R>(m), std::vector<R>(n)};
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        p.a(i, j) = d(rng);
      p.b[i] = d(rng);
    }
    for (auto &v : p.c)
      v = d(rng);
    std::optional<lpbfs::InitialTableau<R>> s;
    try {
      s.emplace(lpbfs::initial_tableau(p));
    } catch (const lpbfs::InconsistentSystem &) {
      continue;
    }
    const auto &q = s->tableau.problem(); // full row rank
    const auto p1 = lpbfs::run_phase1(s->tableau);
    if (!p1.feasible())
      continue;
    const auto rep = lpbfs::run_simplex(p1.tableau(), p.c);

    std::set<lpbfs::Basis> seen;
    for (const auto &e : rep.trace)
      ASSERT_TRUE(seen.insert(e.basis).second);

    if (rep.optimal()) {
      const auto &o = std::get<Optimal<R>>(rep.status);
      const auto basis = rep.final_tableau.basis();
      const auto span = basis.columns();
      const std::vector<std::size_t> cols(span.begin(), span.end());
      const auto y = brute::duals(q, cols);
      ASSERT_TRUE(y.has_value());
      for (std::size_t j = 0; j < n; ++j) {
        R rc = p.c[j];
        for (std::size_t i = 0; i < q.rows(); ++i)
          rc -= (*y)[i] * q.a(i, j);
        ASSERT_GE(rc, 0);
      }
      R best = o.objective;
      for (const auto &x : brute::feasible_vertices(q))
        best = std::min(best, brute::dot(p.c, x));
      ASSERT_EQ(best, o.objective);
      ASSERT_EQ(brute::times(q, o.x), q.b);
      ++optimal;
    } else {
      const auto &u = std::get<Unbounded<R>>(rep.status);
      for (const auto &v : u.ray)
        ASSERT_GE(v, 0);
      ASSERT_EQ(brute::times(q, u.ray), std::vector<R>(q.rows(), R(0)));
      ASSERT_LT(brute::dot(p.c, u.ray), 0);
      ASSERT_EQ(brute::times(q, u.x), q.b);
      ++unbounded;
    }
  }
  EXPECT_GT(optimal, 30u);
  EXPECT_GT(unbounded, 30u);
}
