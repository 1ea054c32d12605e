#pragma once

#include <cstdint>
#include <stdexcept>

#include "precast/instance.hpp"
#include "precast/patterns.hpp"
#include "precast/plan.hpp"

namespace precast {

enum class ScheduleObjective { idle, makespan, total_completion };

struct OracleResult {
  bool feasible = false;
  std::int64_t value = 0;  // base units for idle, periods/cells otherwise
  ProductionPlan plan;
  std::int64_t leaves = 0;
};

class OracleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Product over (mold, period) of |Q(m)| + 2; the exhaustive search is only
// attempted when this stays at or below 10^7.
double oracle_search_space(const Instance& inst, const PatternCatalog& cat);

// Exhaustive enumeration of Start / Continue / Idle assignments per cell.
// Per-mold contiguity (no production after a mold goes idle) is enforced for
// the makespan and total-completion objectives. Independent of the ILP code.
OracleResult brute_force_schedule(const Instance& inst, const PatternCatalog& cat,
                                  ScheduleObjective objective);

}  // namespace precast
