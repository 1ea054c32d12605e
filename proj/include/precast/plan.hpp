#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "precast/ilp.hpp"
#include "precast/instance.hpp"
#include "precast/patterns.hpp"
#include "precast/solver.hpp"

namespace precast {

struct Cell {
  enum class Kind { idle, start, cont };
  Kind kind = Kind::idle;
  int pattern = 0;  // catalog index for starts

  static Cell idle() { return {}; }
  static Cell start(int i) { return {Kind::start, i}; }
  static Cell cont() { return {Kind::cont, 0}; }
  bool operator==(const Cell&) const = default;
};

// Mold x period grid; indices are 0-based.
class ProductionPlan {
 public:
  ProductionPlan() = default;
  ProductionPlan(int molds, int periods)
      : molds_(molds), periods_(periods), cells_(static_cast<std::size_t>(molds) * periods) {}

  int molds() const { return molds_; }
  int periods() const { return periods_; }
  Cell& at(int m, int t) { return cells_.at(static_cast<std::size_t>(m) * periods_ + t); }
  const Cell& at(int m, int t) const { return cells_.at(static_cast<std::size_t>(m) * periods_ + t); }

  // Writes Start(i) at (m, t) followed by duration-1 continuations.
  void place(int m, int t, int pattern, int duration);

  bool operator==(const ProductionPlan&) const = default;

 private:
  int molds_ = 0;
  int periods_ = 0;
  std::vector<Cell> cells_;
};

// Plan together with the catalog its start cells index into.
struct Schedule {
  PatternCatalog catalog;
  ProductionPlan plan;
};

// Plan-level feasibility; reads only the instance, catalog and plan.
std::vector<std::string> verify(const Instance& inst, const PatternCatalog& cat,
                                const ProductionPlan& plan);

struct PlanMetrics {
  std::int64_t total_idle = 0;  // base units of the instance's unit_scale
  int makespan = 0;
  int total_completion = 0;
  std::vector<std::vector<std::int64_t>> produced;  // [c][k]
  std::vector<std::vector<std::int64_t>> surplus;   // [c][k], produced - demand when met
  bool demand_met = false;

  std::int64_t total_surplus() const;
};

class UnverifiedPlan : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws UnverifiedPlan if verify() reports anything.
PlanMetrics metrics(const Instance& inst, const PatternCatalog& cat, const ProductionPlan& plan);

// Beams of each (c,k) produced by starts that complete within the horizon.
std::vector<std::vector<std::int64_t>> produced_counts(const Instance& inst, const PatternCatalog& cat,
                                                       const ProductionPlan& plan);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ProductionPlan decode(const IlpModel& model, const IlpSolution& sol, const PatternCatalog& cat);

// Text grid: header, the listed patterns, one line per mold of `S<i>`, `C`, `.`.
std::string write_plan(const Instance& inst, const PatternCatalog& cat, const ProductionPlan& plan,
                       const std::string& instance_ref = "");
// Rebuilds a listed catalog from the file's pattern table. Throws ParseError.
Schedule read_plan(std::string_view text, const Instance& inst);

}  // namespace precast
