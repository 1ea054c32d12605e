#pragma once

#include <string>

#include "precast/instance.hpp"

namespace testing_support {

// One-type instance built from YAML fragments, e.g. make("[10]", 3, 3, "[6]", "[1]").
inline precast::Instance make(const std::string& molds, int periods, int curing, const std::string& lengths,
                              const std::string& demands) {
  return precast::parse_instance("molds: " + molds + "\nperiods: " + std::to_string(periods) +
                                 "\nbeam_types:\n  - curing_time: " + std::to_string(curing) +
                                 "\n    lengths: " + lengths + "\n    demands: " + demands + "\n");
}

inline precast::Instance toy() { return make("[10]", 3, 3, "[6]", "[1]"); }

}  // namespace testing_support
