#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "precast/ilp.hpp"
#include "precast/instance.hpp"
#include "precast/patterns.hpp"
#include "precast/plan.hpp"
#include "precast/solver.hpp"

namespace precast {

enum class CuringPriority { shortest_first, longest_first };
enum class LengthPriority { shortest_first, largest_first, alternate };

struct RuleSpec {
  CuringPriority curing = CuringPriority::shortest_first;
  LengthPriority length = LengthPriority::shortest_first;

  // sctsl, sctll, sctal, lctsl, lctll, lctal
  std::string name() const;
  static RuleSpec from_name(const std::string& name);
  static std::vector<RuleSpec> all();
  bool operator==(const RuleSpec&) const = default;
};

class HorizonExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// First phase only: demand is met exactly, without surplus. Throws
// HorizonExhausted if demand remains once every period has been used.
Schedule construct_plan(const Instance& inst, const RuleSpec& rule);

// Fills every started pattern with beams of its own type, largest length
// first, until nothing else fits its mold. Start periods and types are kept.
Schedule maximalize(const Instance& inst, const PatternCatalog& cat, const ProductionPlan& plan);

// Both phases.
Schedule run_priority_rule(const Instance& inst, const RuleSpec& rule);

enum class SrhStatus { solved, infeasible_reduced, limit_reached };
std::string to_string(SrhStatus status);

struct SrhResult {
  SrhStatus status = SrhStatus::limit_reached;
  PatternCatalog catalog;
  IlpModel model;
  IlpSolution solution;
  std::optional<ProductionPlan> plan;  // present whenever an incumbent exists
};

// Solves the requested model restricted to the qc-maximal patterns. The
// result is an upper bound for the full problem, or a reported infeasibility
// of the reduced model.
SrhResult run_srh(const Instance& inst, ModelKind kind, const SolveLimits& limits,
                  BoundKind bound = BoundKind::lp, const CatalogOptions& options = {});

}  // namespace precast
