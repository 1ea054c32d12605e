#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "common.hpp"
#include "precast/generator.hpp"
#include "precast/patterns.hpp"

using namespace precast;
using testing_support::make;

namespace {

std::set<std::vector<int>> count_set(const std::vector<Pattern>& ps) {
  std::set<std::vector<int>> out;
  for (const auto& p : ps) out.insert(p.counts);
  return out;
}

// Test-side enumeration of every count vector of one type that fits `cap`.
std::set<std::vector<int>> brute_force_fitting(const BeamType& bt, Length cap) {
  std::set<std::vector<int>> out;
  std::vector<int> counts(bt.lengths.size(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t used) {
    if (k == counts.size()) {
      if (used > 0) out.insert(counts);
      return;
    }
    for (int a = 0; used + a * bt.lengths[k].units <= cap.units; ++a) {
      counts[k] = a;
      rec(k + 1, used + a * bt.lengths[k].units);
    }
    counts[k] = 0;
  };
  rec(0, 0);
  return out;
}

}  // namespace

TEST(Patterns, UsedCapacity) {
  const auto one = make("[10]", 1, 1, "[6]", "[1]");
  EXPECT_EQ(used_capacity(Pattern{0, {1}}, one), Length{6000});
  EXPECT_EQ(used_capacity(Pattern{}, one), Length{0});
  const auto two = make("[12]", 1, 1, "[3.5, 4.0]", "[1, 1]");
  EXPECT_EQ(used_capacity(Pattern{0, {2, 1}}, two), Length{11000});
}

TEST(Patterns, IdleCost) {
  const auto inst = make("[10]", 3, 3, "[2, 4, 6, 10]", "[0, 0, 0, 0]");
  EXPECT_EQ(idle_cost(Pattern{0, {1, 1, 0, 0}}, inst.molds[0], inst), 12000);
  EXPECT_EQ(idle_cost(Pattern{0, {0, 0, 0, 1}}, inst.molds[0], inst), 0);
  EXPECT_THROW(idle_cost(Pattern{0, {1, 0, 0, 1}}, inst.molds[0], inst), IncompatiblePattern);
}

TEST(Patterns, MaximalSingleLength) {
  const auto ten = make("[10]", 1, 1, "[6]", "[1]");
  EXPECT_EQ(count_set(enumerate_maximal_patterns(ten, 0)), (std::set<std::vector<int>>{{1}}));
  const auto twelve = make("[12]", 1, 1, "[6]", "[1]");
  EXPECT_EQ(count_set(enumerate_maximal_patterns(twelve, 0)), (std::set<std::vector<int>>{{2}}));
}

TEST(Patterns, MaximalTwoLengthsMatchesBruteForce) {
  const auto inst = make("[10]", 1, 1, "[3, 4]", "[1, 1]");
  std::set<std::vector<int>> expected;
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 2; ++b) {
      const int u = 3 * a + 4 * b;
      if (u <= 10 && u + 3 > 10 && u + 4 > 10) expected.insert({a, b});
    }
  }
  EXPECT_EQ(count_set(enumerate_maximal_patterns(inst, 0)), expected);
  EXPECT_EQ(expected, (std::set<std::vector<int>>{{0, 2}, {2, 1}, {3, 0}}));
}

TEST(Patterns, AllFeasibleMatchesKnapsackEnumeration) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto cfg = GeneratorConfig::preset("small");
    cfg.seed = seed;
    const auto inst = generate(cfg);
    const Length cap = inst.longest_mold_capacity();
    const auto emitted = enumerate_feasible_patterns(inst, cap);
    for (int c = 0; c < inst.num_types(); ++c) {
      std::vector<Pattern> of_type;
      for (const auto& p : emitted) {
        if (p.beam_type == c) of_type.push_back(p);
      }
      EXPECT_EQ(count_set(of_type), brute_force_fitting(inst.beam_types[c], cap)) << "seed " << seed;
      EXPECT_EQ(count_set(of_type).size(), of_type.size()) << "duplicates, seed " << seed;
    }
  }
}

TEST(Patterns, CatalogModesOnSingleLength) {
  const auto inst = make("[10]", 1, 1, "[6]", "[1]");
  const auto maximal = build_catalog(inst, CatalogMode::maximal);
  EXPECT_EQ(maximal.num_patterns(), 1);
  EXPECT_EQ(maximal.size(), 2u);
  EXPECT_TRUE(maximal.pattern(0).is_continuation());
  const auto all = build_catalog(inst, CatalogMode::all_feasible);
  EXPECT_EQ(all.num_patterns(), 1);
}

TEST(Patterns, MaximalityIsPerMold) {
  const auto inst = make("[10, 12]", 1, 1, "[6]", "[1]");
  const auto cat = build_catalog(inst, CatalogMode::maximal);
  ASSERT_EQ(cat.num_patterns(), 2);
  const auto one = cat.find(Pattern{0, {1}});
  const auto two = cat.find(Pattern{0, {2}});
  ASSERT_TRUE(one && two);
  EXPECT_EQ(cat.compatible(0), std::vector<int>{*one});
  EXPECT_EQ(cat.compatible(1), std::vector<int>{*two});
}

TEST(Patterns, CatalogInvariantsOnGeneratedInstances) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto cfg = GeneratorConfig::preset("small");
    cfg.seed = seed;
    const auto inst = generate(cfg);
    const auto maximal = build_catalog(inst, CatalogMode::maximal);
    const auto all = build_catalog(inst, CatalogMode::all_feasible);
    const auto qc = build_catalog(inst, CatalogMode::qc_maximal);
    for (int m = 0; m < inst.num_molds(); ++m) {
      for (int i : maximal.compatible(m)) {
        EXPECT_TRUE(is_maximal(maximal.pattern(i), inst.molds[m], inst));
      }
    }
    for (int i = 1; i <= qc.num_patterns(); ++i) EXPECT_TRUE(all.find(qc.pattern(i)).has_value());
    for (int i = 1; i <= maximal.num_patterns(); ++i) EXPECT_TRUE(all.find(maximal.pattern(i)).has_value());
    for (int i = 0; i <= all.num_patterns(); ++i) {
      for (int m = 0; m < inst.num_molds(); ++m) {
        const auto f = all.idle_cost(i, m);
        if (!f) continue;
        EXPECT_GE(*f, 0);
        EXPECT_EQ(*f == 0, i == 0 || all.used_capacity(i) == inst.molds[m]);
      }
    }
  }
}

TEST(Patterns, QcMaximalKeepsMostDistinctLengths) {
  const auto inst = make("[10]", 1, 1, "[3, 4]", "[0, 2]");
  const auto qc = select_qc_maximal(inst);
  ASSERT_EQ(qc.num_patterns(), 1);
  EXPECT_EQ(qc.pattern(1).counts, (std::vector<int>{2, 1}));
}

TEST(Patterns, QcMaximalSingleLengthEqualsShortestMoldMaximal) {
  const auto inst = make("[12, 10]", 1, 1, "[4]", "[1]");
  const auto qc = select_qc_maximal(inst);
  ASSERT_EQ(qc.num_patterns(), 1);
  EXPECT_EQ(qc.pattern(1).counts, std::vector<int>{2});
}

TEST(Patterns, QcMaximalTypesAreIndependent) {
  const auto inst = parse_instance(
      "molds: [10]\nperiods: 2\nbeam_types:\n"
      "  - curing_time: 1\n    lengths: [3, 4]\n    demands: [1, 1]\n"
      "  - curing_time: 2\n    lengths: [5]\n    demands: [1]\n");
  const auto qc = select_qc_maximal(inst);
  ASSERT_EQ(qc.num_patterns(), 2);
  EXPECT_EQ(qc.pattern(1), (Pattern{0, {2, 1}}));
  EXPECT_EQ(qc.pattern(2), (Pattern{1, {2}}));
}

TEST(Patterns, CatalogCeiling) {
  const auto inst = make("[100]", 1, 1, "[1, 1.5, 2, 2.5, 3]", "[1, 1, 1, 1, 1]");
  CatalogOptions opts;
  opts.max_patterns = 50;
  EXPECT_THROW(build_catalog(inst, CatalogMode::all_feasible, opts), CatalogTooLarge);
}

TEST(Patterns, ModeNames) {
  for (auto mode : {CatalogMode::all_feasible, CatalogMode::maximal, CatalogMode::qc_maximal, CatalogMode::listed}) {
    EXPECT_EQ(catalog_mode_from_string(to_string(mode)), mode);
  }
  EXPECT_THROW(catalog_mode_from_string("some"), std::invalid_argument);
}

TEST(Patterns, DumpFormat) {
  const auto inst = make("[10]", 1, 1, "[3, 4]", "[0, 2]");
  EXPECT_EQ(dump_catalog(select_qc_maximal(inst), inst), "1; 1; (2,1); 10; 1; molds=[1]\n");
}
