#include <gtest/gtest.h>

#include "common.hpp"
#include "precast/oracle.hpp"
#include "precast/patterns.hpp"
#include "precast/plan.hpp"

using namespace precast;
using testing_support::make;

TEST(Oracle, ToyOptimum) {
  const auto toy = testing_support::toy();
  const auto cat = build_catalog(toy, CatalogMode::maximal);
  const auto idle = brute_force_schedule(toy, cat, ScheduleObjective::idle);
  ASSERT_TRUE(idle.feasible);
  EXPECT_EQ(idle.value, 12000);
  EXPECT_TRUE(verify(toy, cat, idle.plan).empty());
  EXPECT_EQ(brute_force_schedule(toy, cat, ScheduleObjective::makespan).value, 3);
  EXPECT_EQ(brute_force_schedule(toy, cat, ScheduleObjective::total_completion).value, 3);
}

TEST(Oracle, ZeroDemand) {
  const auto inst = make("[10]", 3, 3, "[6]", "[0]");
  const auto cat = build_catalog(inst, CatalogMode::maximal);
  const auto r = brute_force_schedule(inst, cat, ScheduleObjective::idle);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.value, 0);
  EXPECT_EQ(r.plan, ProductionPlan(1, 3));
}

TEST(Oracle, Infeasible) {
  const auto inst = make("[10]", 1, 1, "[6]", "[2]");
  EXPECT_FALSE(brute_force_schedule(inst, build_catalog(inst, CatalogMode::maximal), ScheduleObjective::idle)
                   .feasible);
}

TEST(Oracle, Guard) {
  const auto inst = make("[100, 100, 100]", 12, 1, "[1, 1.5, 2]", "[1, 1, 1]");
  const auto cat = build_catalog(inst, CatalogMode::maximal);
  EXPECT_GT(oracle_search_space(inst, cat), 1e7);
  EXPECT_THROW(brute_force_schedule(inst, cat, ScheduleObjective::idle), OracleGuardError);
}
