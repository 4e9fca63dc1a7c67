#include "lpbfs/differential.hpp"
#include "lpbfs/generate.hpp"
#include "lpbfs/oracles.hpp"
#include "support/brute.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

using lpbfs::Problem;
using lpbfs::Rational;
using R = Rational;

namespace {

Problem<R> worked() { return lpbfs::make_problem<R>({{1, 0, -1}, {0, 1, 1}}, {-1, 2}, {1, 1, 1}); }
Problem<R> infeasible() { return lpbfs::make_problem<R>({{1, 0, 2}, {0, 1, -1}}, {-1, 2}, {0, 0, 0}); }
Problem<R> identity() { return lpbfs::make_problem<R>({{1, 0}, {0, 1}}, {3, 4}, {0, 0}); }

std::map<std::vector<std::size_t>, const lpbfs::BasisRecord<R> *>
by_basis(const lpbfs::EnumerationResult<R> &e) {
  std::map<std::vector<std::size_t>, const lpbfs::BasisRecord<R> *> out;
  for (const auto &r : e.records)
    out[r.basis.one_based()] = &r;
  return out;
}

} // namespace

TEST(Auxiliary, Construction) {
  const auto aux = lpbfs::make_auxiliary(worked());
  EXPECT_EQ(aux.negated, (std::vector<bool>{true, false}));
  EXPECT_EQ(aux.extended.b, (std::vector<R>{1, 2}));
  EXPECT_EQ(aux.extended.a,
            lpbfs::Matrix<R>::from_rows({{-1, 0, 1, 1, 0}, {0, 1, 1, 0, 1}}));
  EXPECT_EQ(aux.extended.c, (std::vector<R>{0, 0, 0, 1, 1}));
  EXPECT_EQ(aux.artificial_basis(), (std::vector<std::size_t>{3, 4}));
}

TEST(Auxiliary, WorkedVerdicts) {
  const auto inf = lpbfs::auxiliary_phase1(infeasible());
  EXPECT_FALSE(inf.feasible);
  EXPECT_GT(inf.aux_optimum, 0);
  EXPECT_FALSE(inf.tableau.has_value());

  const auto feas = lpbfs::auxiliary_phase1(worked());
  ASSERT_TRUE(feas.feasible);
  EXPECT_EQ(feas.aux_optimum, 0);
  const auto x = lpbfs::basic_solution(*feas.tableau);
  EXPECT_TRUE(lpbfs::detail::feasible_point_holds_exactly(worked(), x));

  const auto id = lpbfs::auxiliary_phase1(identity());
  ASSERT_TRUE(id.feasible);
  EXPECT_EQ(id.aux_optimum, 0);
  EXPECT_EQ(lpbfs::basic_solution(*id.tableau), (std::vector<R>{3, 4}));
}

TEST(Auxiliary, DrivesOutArtificialsAndDropsRedundantRows) {
  // Second row is twice the first; one artificial stays at zero level in a
  // row with no nonzero original entry.
  auto p = lpbfs::make_problem<R>({{1, 2}, {2, 4}}, {1, 2}, {0, 0});
  const auto r = lpbfs::auxiliary_phase1(p);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.dropped_rows, 1u);
  ASSERT_EQ(r.tableau->rows(), 1u);
  const auto x = lpbfs::basic_solution(*r.tableau);
  EXPECT_TRUE(lpbfs::detail::feasible_point_holds_exactly(p, x));

  // Degenerate zero-level artificial that can be pivoted out.
  auto q = lpbfs::make_problem<R>({{1, 1, 0}, {0, 1, 1}}, {0, 0}, {0, 0, 0});
  const auto s = lpbfs::auxiliary_phase1(q);
  ASSERT_TRUE(s.feasible);
  EXPECT_EQ(s.dropped_rows, 0u);
  for (std::size_t k = 0; k < s.tableau->rows(); ++k)
    EXPECT_LT(s.tableau->basic_column(k), 3u);
}

TEST(Auxiliary, InconsistentRedundantSystemIsInfeasible) {
  auto p = lpbfs::make_problem<R>({{1, 1}, {2, 2}}, {1, 3}, {0, 0});
  EXPECT_FALSE(lpbfs::auxiliary_phase1(p).feasible);
}

TEST(Enumeration, WorkedBases) {
  const auto e = lpbfs::enumerate_bases(worked());
  ASSERT_EQ(e.records.size(), 3u);
  const auto m = by_basis(e);
  EXPECT_FALSE(m.at({1, 2})->feasible);
  EXPECT_EQ(m.at({1, 2})->x, (std::vector<R>{-1, 2, 0}));
  EXPECT_TRUE(m.at({1, 3})->feasible);
  EXPECT_EQ(m.at({1, 3})->x, (std::vector<R>{1, 0, 2}));
  EXPECT_TRUE(m.at({2, 3})->feasible);
  EXPECT_EQ(m.at({2, 3})->x, (std::vector<R>{0, 1, 1}));
  EXPECT_TRUE(e.feasible());
  EXPECT_TRUE(e.bounded());
  EXPECT_EQ(e.min_objective(), R(2));

  // Cross-check against the test-side brute force.
  for (const auto &r : e.records) {
    const auto cols = r.basis.columns();
    auto x = brute::basic_point(worked(), std::vector<std::size_t>(cols.begin(), cols.end()));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, r.x);
  }
}

TEST(Enumeration, IdentitySingleBasis) {
  const auto e = lpbfs::enumerate_bases(identity());
  ASSERT_EQ(e.records.size(), 1u);
  EXPECT_TRUE(e.records[0].feasible);
  EXPECT_EQ(e.records[0].x, (std::vector<R>{3, 4}));
}

TEST(Enumeration, RankReducedSystem) {
  auto p = lpbfs::make_problem<R>({{1, 2}, {2, 4}}, {1, 2}, {0, 0});
  const auto e = lpbfs::enumerate_bases(p);
  EXPECT_EQ(e.rank.rank, 1u);
  const auto m = by_basis(e);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at({1})->x, (std::vector<R>{1, 0}));
  EXPECT_EQ(m.at({2})->x, (std::vector<R>{0, R(1, 2)}));
  EXPECT_TRUE(m.at({1})->feasible);
  EXPECT_TRUE(m.at({2})->feasible);
}

TEST(Enumeration, SingularSubsetsAreCounted) {
  auto p = lpbfs::make_problem<R>({{1, 1, 0}, {1, 1, 1}}, {1, 2}, {0, 0, 0});
  const auto e = lpbfs::enumerate_bases(p);
  EXPECT_EQ(e.singular, 1u); // columns {1,2} are parallel
  EXPECT_EQ(e.records.size(), 2u);
}

TEST(Enumeration, ImprovingRayMeansUnbounded) {
  auto p = lpbfs::make_problem<R>({{1, -1}}, {0}, {-1, 0});
  const auto e = lpbfs::enumerate_bases(p);
  EXPECT_TRUE(e.feasible());
  EXPECT_FALSE(e.bounded());
}

TEST(Enumeration, InconsistentSystem) {
  auto p = lpbfs::make_problem<R>({{1, 1}, {2, 2}}, {1, 3}, {0, 0});
  const auto e = lpbfs::enumerate_bases(p);
  EXPECT_FALSE(e.consistent);
  EXPECT_FALSE(e.feasible());
}

TEST(Enumeration, LimitEnforced) {
  Problem<R> p{lpbfs::Matrix<R>(3, 20), std::vector<R>(3, R(1)), std::vector<R>(20, R(0))};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 20; ++j)
      p.a(i, j) = R(static_cast<int>((i + 1) * (j + 1) % 7) - 3);
  EXPECT_THROW(lpbfs::enumerate_bases(p, 1000), lpbfs::OracleTooLarge); // C(20,3) = 1140
  EXPECT_NO_THROW(lpbfs::enumerate_bases(p, 1140));
}

TEST(Generate, Deterministic) {
  const lpbfs::EntryRange range{-5, 5};
  for (auto scheme : {lpbfs::InstanceScheme::Random, lpbfs::InstanceScheme::InfeasibleBiased,
                      lpbfs::InstanceScheme::NegativeB}) {
    const auto a = lpbfs::generate_instance(1, 2, 4, range, scheme);
    const auto b = lpbfs::generate_instance(1, 2, 4, range, scheme);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rows(), 2u);
    EXPECT_EQ(a.cols(), 4u);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        EXPECT_GE(a.a(i, j), -5);
        EXPECT_LE(a.a(i, j), 5);
        EXPECT_EQ(denominator(a.a(i, j)), 1);
      }
  }
  EXPECT_NE(lpbfs::generate_instance(1, 3, 6, range, lpbfs::InstanceScheme::Random),
            lpbfs::generate_instance(2, 3, 6, range, lpbfs::InstanceScheme::Random));
}

TEST(Generate, NegativeBSchemeExercisesPhase1) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t m = 1 + seed % 6, n = m + seed % 7;
    const auto p = lpbfs::generate_instance(seed, m, n, {-5, 5}, lpbfs::InstanceScheme::NegativeB);
    const auto t = lpbfs::initial_tableau(p).tableau;
    bool negative = false;
    for (const auto &v : t.tilde_b())
      negative = negative || v < 0;
    EXPECT_TRUE(negative) << "seed " << seed;
  }
}

TEST(Generate, ShapeContract) {
  EXPECT_THROW(lpbfs::generate_instance(1, 3, 2, {-5, 5}, lpbfs::InstanceScheme::Random),
               lpbfs::ContractViolation);
  EXPECT_THROW(lpbfs::generate_instance(1, 0, 2, {-5, 5}, lpbfs::InstanceScheme::Random),
               lpbfs::ContractViolation);
}

TEST(Generate, SchemeNames) {
  for (auto s : {lpbfs::InstanceScheme::Random, lpbfs::InstanceScheme::InfeasibleBiased,
                 lpbfs::InstanceScheme::NegativeB})
    EXPECT_EQ(lpbfs::scheme_of_string(lpbfs::to_string(s)), s);
}

// Four-way verdict agreement and optimum agreement across random instances.
TEST(Differential, RandomInstancesAgree) {
  lpbfs::FuzzConfig cfg;
  cfg.count = 300;
  cfg.seed = 77;
  cfg.max_m = 5;
  cfg.max_n = 9;
  std::size_t feasible = 0;
  for (const auto &rec : lpbfs::run_fuzz(cfg)) {
    ASSERT_TRUE(rec.ok()) << "instance " << rec.id << " seed " << rec.seed << ": " << rec.error;
    feasible += rec.sorted == lpbfs::Verdict::Feasible;
  }
  EXPECT_GT(feasible, 30u);
  EXPECT_LT(feasible, 270u);
}

TEST(Differential, FuzzIsReproducibleAcrossThreadCounts) {
  lpbfs::FuzzConfig cfg;
  cfg.count = 60;
  cfg.threads = 1;
  const auto a = lpbfs::run_fuzz(cfg);
  cfg.threads = 4;
  const auto b = lpbfs::run_fuzz(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].seed, b[i].seed);
    EXPECT_EQ(a[i].sorted, b[i].sorted);
    EXPECT_EQ(a[i].phase1_iterations, b[i].phase1_iterations);
  }
}

TEST(Differential, RecordedSeedRegeneratesInstance) {
  lpbfs::FuzzConfig cfg;
  const auto rec = lpbfs::fuzz_instance(cfg, 5);
  const auto p = lpbfs::generate_instance(rec.seed, rec.m, rec.n, cfg.range, rec.scheme);
  const auto again = lpbfs::check_problem(p, cfg.checks);
  EXPECT_EQ(again.sorted, rec.sorted);
  EXPECT_EQ(again.phase1_iterations, rec.phase1_iterations);
}
