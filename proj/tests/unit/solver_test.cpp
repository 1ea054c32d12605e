#include <gtest/gtest.h>

#include "common.hpp"
#include "precast/generator.hpp"
#include "precast/ilp.hpp"
#include "precast/patterns.hpp"
#include "precast/solver.hpp"

using namespace precast;
using testing_support::make;

namespace {

IlpSolution solve_with(const Instance& inst, ModelKind kind, BoundKind bound, SolveLimits limits = {}) {
  const auto cat = build_catalog(inst, CatalogMode::maximal);
  const auto model = build_model(kind, inst, cat);
  auto provider = make_bound(bound, inst, cat);
  return solve(model, limits, *provider);
}

}  // namespace

TEST(Solver, ToyOptimaForAllModels) {
  const auto toy = testing_support::toy();
  const auto m1 = solve_with(toy, ModelKind::m1, BoundKind::lp);
  ASSERT_EQ(m1.status, SolveStatus::optimal);
  EXPECT_EQ(m1.objective, 12000);
  EXPECT_EQ(m1.objective_text(), "12");
  EXPECT_EQ(m1.gap(), 0.0);
  EXPECT_EQ(solve_with(toy, ModelKind::m2, BoundKind::lp).objective, 3);
  EXPECT_EQ(solve_with(toy, ModelKind::am2, BoundKind::lp).objective, 3);
  EXPECT_EQ(solve_with(toy, ModelKind::m3, BoundKind::lp).objective, 3);
}

TEST(Solver, ZeroDemand) {
  const auto inst = make("[10]", 3, 3, "[6]", "[0]");
  const auto m1 = solve_with(inst, ModelKind::m1, BoundKind::lp);
  ASSERT_EQ(m1.status, SolveStatus::optimal);
  EXPECT_EQ(m1.objective, 0);
  for (auto v : m1.values) EXPECT_EQ(v, 0);
  EXPECT_EQ(solve_with(inst, ModelKind::m2, BoundKind::lp).objective, 0);
  EXPECT_EQ(solve_with(inst, ModelKind::am2, BoundKind::lp).objective, 1);
  EXPECT_EQ(solve_with(inst, ModelKind::m3, BoundKind::lp).objective, 0);
}

TEST(Solver, InfeasibleToy) {
  const auto inst = make("[10]", 1, 1, "[6]", "[2]");
  for (auto bound : {BoundKind::trivial, BoundKind::demand, BoundKind::lp}) {
    EXPECT_EQ(solve_with(inst, ModelKind::m1, bound).status, SolveStatus::infeasible) << to_string(bound);
  }
}

TEST(Solver, OnePeriodSufficesWithTwoMolds) {
  const auto inst = make("[10, 10]", 3, 1, "[6]", "[2]");
  EXPECT_EQ(solve_with(inst, ModelKind::m2, BoundKind::lp).objective, 1);
  EXPECT_EQ(solve_with(inst, ModelKind::m3, BoundKind::lp).objective, 2);
}

TEST(Solver, DemandFitsOneMold) {
  const auto inst = make("[12, 12]", 2, 1, "[6]", "[2]");
  const auto m3 = solve_with(inst, ModelKind::m3, BoundKind::lp);
  EXPECT_EQ(m3.objective, 1);
}

TEST(Solver, DemandBoundOnToy) {
  const auto toy = testing_support::toy();
  const auto cat = build_catalog(toy, CatalogMode::maximal);
  const auto model = build_model(ModelKind::m1, toy, cat);
  const auto root = root_domains(model);
  const auto nb = lower_bound_demand(toy, cat, model, root);
  EXPECT_FALSE(nb.infeasible);
  EXPECT_GT(nb.value.num, 0);
  EXPECT_LE(nb.value, Rational::integer(12000));
}

TEST(Solver, DemandBoundIsZeroWithoutResidualOrIdle) {
  const auto none = make("[10]", 3, 3, "[6]", "[0]");
  const auto cat = build_catalog(none, CatalogMode::maximal);
  const auto model = build_model(ModelKind::m1, none, cat);
  EXPECT_EQ(lower_bound_demand(none, cat, model, root_domains(model)).value, Rational::integer(0));

  const auto exact = make("[12]", 1, 1, "[6]", "[2]");
  const auto cat2 = build_catalog(exact, CatalogMode::maximal);
  const auto model2 = build_model(ModelKind::m1, exact, cat2);
  EXPECT_EQ(lower_bound_demand(exact, cat2, model2, root_domains(model2)).value, Rational::integer(0));
}

TEST(Solver, LpRootBoundOnToy) {
  const auto toy = testing_support::toy();
  const auto model = build_model(ModelKind::m1, toy, build_catalog(toy, CatalogMode::maximal));
  const auto lp = lp_relaxation_bound(model, root_domains(model));
  ASSERT_EQ(lp.status, LpBound::Status::bounded);
  EXPECT_LE(lp.value, Rational::integer(12000));
}

TEST(Solver, LpBoundOnFixedAssignment) {
  const auto toy = testing_support::toy();
  const auto model = build_model(ModelKind::m1, toy, build_catalog(toy, CatalogMode::maximal));
  std::vector<VarDomain> fixed{{0, 0}, {1, 1}, {1, 1}, {1, 1}};
  const auto lp = lp_relaxation_bound(model, fixed);
  ASSERT_EQ(lp.status, LpBound::Status::bounded);
  EXPECT_EQ(lp.value, Rational::integer(12000));
  fixed[1] = {0, 0};
  EXPECT_EQ(lp_relaxation_bound(model, fixed).status, LpBound::Status::infeasible);
}

TEST(Solver, InfeasibleRelaxationIsCertified) {
  const auto inst = make("[10]", 1, 1, "[6]", "[2]");
  const auto model = build_model(ModelKind::m1, inst, build_catalog(inst, CatalogMode::maximal));
  EXPECT_EQ(lp_relaxation_bound(model, root_domains(model)).status, LpBound::Status::infeasible);
}

TEST(Solver, PropagationDetectsInfeasibility) {
  const auto inst = make("[10]", 1, 1, "[6]", "[2]");
  const auto model = build_model(ModelKind::m1, inst, build_catalog(inst, CatalogMode::maximal));
  auto d = root_domains(model);
  EXPECT_FALSE(propagate(model, d));
}

TEST(Solver, BoundKindsAgreeOnTinySuite) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto cfg = GeneratorConfig::preset("tiny");
    cfg.seed = seed;
    const auto inst = generate(cfg);
    const auto lp = solve_with(inst, ModelKind::m1, BoundKind::lp);
    const auto demand = solve_with(inst, ModelKind::m1, BoundKind::demand);
    const auto trivial = solve_with(inst, ModelKind::m1, BoundKind::trivial);
    ASSERT_EQ(lp.status, demand.status) << seed;
    ASSERT_EQ(lp.status, trivial.status) << seed;
    if (lp.has_incumbent()) {
      EXPECT_EQ(lp.objective, demand.objective) << seed;
      EXPECT_EQ(lp.objective, trivial.objective) << seed;
    }
  }
}

TEST(Solver, NodeLimitReportsLimitOrIncumbent) {
  auto cfg = GeneratorConfig::preset("medium");
  cfg.seed = 3;
  const auto inst = generate(cfg);
  SolveLimits limits;
  limits.max_nodes = 1;
  const auto sol = solve_with(inst, ModelKind::m1, BoundKind::demand, limits);
  EXPECT_TRUE(sol.status == SolveStatus::limit_reached || sol.status == SolveStatus::feasible ||
              sol.status == SolveStatus::optimal);
  EXPECT_LE(sol.stats.nodes, 1);
  if (sol.has_incumbent()) EXPECT_LE(sol.bound, sol.objective);
}

TEST(Solver, WallTimeLimitIsHonoured) {
  auto cfg = GeneratorConfig::preset("medium");
  cfg.seed = 1;
  const auto inst = generate(cfg);
  SolveLimits limits;
  limits.max_wall_time = std::chrono::milliseconds(300);
  const auto sol = solve_with(inst, ModelKind::m2, BoundKind::lp, limits);
  EXPECT_LT(sol.stats.wall_seconds, 1.5);
}

TEST(Solver, RationalCeil) {
  EXPECT_EQ((Rational{7, 2}).ceil(), 4);
  EXPECT_EQ((Rational{-7, 2}).ceil(), -3);
  EXPECT_EQ((Rational{6, 3}).ceil(), 2);
  EXPECT_EQ((Rational{0, 5}).ceil(), 0);
}

TEST(Solver, BoundNames) {
  EXPECT_EQ(bound_kind_from_string("demand"), BoundKind::demand);
  EXPECT_EQ(bound_kind_from_string("lp"), BoundKind::lp);
  EXPECT_EQ(bound_kind_from_string("trivial"), BoundKind::trivial);
  EXPECT_THROW(bound_kind_from_string("magic"), std::invalid_argument);
}
