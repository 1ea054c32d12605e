#include <gtest/gtest.h>

#include "common.hpp"
#include "precast/generator.hpp"
#include "precast/instance.hpp"

using namespace precast;
using testing_support::make;

namespace {

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST(Instance, ParsesMinimalDocument) {
  const auto inst = testing_support::toy();
  EXPECT_EQ(inst.num_molds(), 1);
  EXPECT_EQ(inst.num_types(), 1);
  EXPECT_EQ(inst.beam_types[0].num_lengths(), 1);
  EXPECT_EQ(inst.molds[0], Length{10000});
  EXPECT_EQ(inst.periods, 3);
  EXPECT_TRUE(validate_instance(inst).empty());
}

TEST(Instance, CuringTimeBeyondHorizon) {
  try {
    make("[10]", 3, 5, "[6]", "[1]");
    FAIL() << "expected InstanceError";
  } catch (const InstanceError& e) {
    EXPECT_TRUE(any_contains(e.violations(), "curing time exceeds horizon"));
  }
}

TEST(Instance, DuplicateLength) {
  try {
    make("[10]", 3, 1, "[4.0, 4.0]", "[1, 1]");
    FAIL() << "expected InstanceError";
  } catch (const InstanceError& e) {
    EXPECT_TRUE(any_contains(e.violations(), "duplicate length"));
  }
}

TEST(Instance, LengthsSortedCanonically) {
  const auto inst = make("[10]", 1, 1, "[4, 3]", "[2, 5]");
  ASSERT_EQ(inst.beam_types[0].lengths.size(), 2u);
  EXPECT_EQ(inst.beam_types[0].lengths[0], Length{3000});
  EXPECT_EQ(inst.beam_types[0].demands[0], 5);
  EXPECT_EQ(inst.beam_types[0].demands[1], 2);
}

TEST(Instance, ValidateReportsOversizedDemand) {
  Instance inst = testing_support::toy();
  inst.beam_types[0].lengths[0] = Length{11000};
  const auto v = validate_instance(inst);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("c=1, k=1"), std::string::npos) << v[0];
}

TEST(Instance, ValidateRejectsNonPositiveHorizon) {
  Instance inst = testing_support::toy();
  inst.periods = 0;
  EXPECT_TRUE(any_contains(validate_instance(inst), "periods must be positive"));
}

TEST(Instance, ParseErrorsCarryLocation) {
  EXPECT_THROW(parse_instance("molds: [10]\nperiods: 3\n"), ParseError);
  EXPECT_THROW(parse_instance("molds: [10]\nperiods: 3\nbeam_types: []\ncolour: red\n"), ParseError);
  try {
    parse_instance("molds: [10]\nperiods: x\nbeam_types: []\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.field(), "periods");
  }
  EXPECT_THROW(parse_instance("molds: [10.0001]\nperiods: 1\nbeam_types: []\n"), ParseError);
  EXPECT_THROW(parse_instance("unit_scale: 250\nmolds: [10]\nperiods: 1\nbeam_types: []\n"), ParseError);
  EXPECT_THROW(parse_instance("molds: [10]\nperiods: 1\nbeam_types:\n  - curing_time: 1\n    lengths: [3]\n"
                              "    demands: [1, 2]\n"),
               ParseError);
}

TEST(Instance, NonMillimetreScale) {
  const auto inst = parse_instance(
      "unit_scale: 10\nmolds: [10.5]\nperiods: 1\nbeam_types:\n  - curing_time: 1\n    lengths: [3.5]\n"
      "    demands: [3]\n");
  EXPECT_EQ(inst.molds[0].units, 105);
  EXPECT_EQ(inst.beam_types[0].lengths[0].units, 35);
}

TEST(Instance, RoundTripOnGeneratedInstances) {
  for (const char* preset : {"tiny", "small", "medium"}) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      auto cfg = GeneratorConfig::preset(preset);
      cfg.seed = seed;
      const auto inst = generate(cfg);
      EXPECT_EQ(parse_instance(serialize_instance(inst)), inst) << preset << " seed " << seed;
    }
  }
}
