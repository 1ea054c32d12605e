#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "precast/instance.hpp"

namespace precast {

// Synthetic instance recipe. All lengths are in base units of unit_scale and
// drawn on a grid of `length_step`.
struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::int64_t unit_scale = 1000;
  int molds_min = 1, molds_max = 3;
  std::int64_t capacity_min = 10000, capacity_max = 16000;
  int types_min = 1, types_max = 3;
  int curing_min = 1, curing_max = 3;
  int lengths_min = 1, lengths_max = 3;
  std::int64_t length_min = 2000, length_max = 8000;
  std::int64_t length_step = 500;
  int demand_min = 0, demand_max = 5;
  int periods = 0;      // 0: derived from demand volume
  int periods_max = 0;  // 0: no cap on the derived horizon
  double slack = 2.0;
  // When positive, redraw until the maximal-pattern oracle search space fits.
  double oracle_guard = 0;

  // "tiny" (oracle-sized), "small", "medium".
  static GeneratorConfig preset(const std::string& name);
  std::string describe() const;
};

class GeneratorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Deterministic per seed; output always passes validate_instance.
Instance generate(const GeneratorConfig& config);

}  // namespace precast
