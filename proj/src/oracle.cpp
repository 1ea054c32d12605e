#include "precast/oracle.hpp"

#include <optional>

namespace precast {

namespace {

constexpr double kGuard = 1e7;

class Search {
 public:
  Search(const Instance& inst, const PatternCatalog& cat, ScheduleObjective objective)
      : inst_(inst),
        cat_(cat),
        objective_(objective),
        contiguous_(objective != ScheduleObjective::idle),
        plan_(inst.num_molds(), inst.periods),
        remaining_(inst.num_types()) {
    for (int c = 0; c < inst.num_types(); ++c) {
      remaining_[c].assign(inst.beam_types[c].demands.begin(), inst.beam_types[c].demands.end());
    }
    // Costs recomputed from the instance rather than read from the catalog.
    cost_.assign(cat.size(), std::vector<std::int64_t>(inst.num_molds(), 0));
    for (int i = 1; i <= cat.num_patterns(); ++i) {
      const auto& p = cat.pattern(i);
      Length used;
      for (std::size_t k = 0; k < p.counts.size(); ++k) used += p.counts[k] * inst.beam_types[p.beam_type].lengths[k];
      for (int m = 0; m < inst.num_molds(); ++m) {
        cost_[i][m] = inst.beam_types[p.beam_type].curing_time * (inst.molds[m] - used).units;
      }
    }
  }

  OracleResult run() {
    visit(0, 0, 0);
    OracleResult r;
    r.leaves = leaves_;
    if (best_) {
      r.feasible = true;
      r.value = *best_;
      r.plan = best_plan_;
    }
    return r;
  }

 private:
  bool demand_met() const {
    for (const auto& row : remaining_) {
      for (auto v : row) {
        if (v > 0) return false;
      }
    }
    return true;
  }

  // Value of the plan so far; monotone as cells are added.
  std::int64_t value(std::int64_t idle, int makespan, int cells) const {
    switch (objective_) {
      case ScheduleObjective::idle: return idle;
      case ScheduleObjective::makespan: return makespan;
      case ScheduleObjective::total_completion: return cells;
    }
    return idle;
  }

  void visit(int m, int t, std::int64_t idle) {
    const int molds = inst_.num_molds();
    const int horizon = inst_.periods;
    if (m == molds) {
      ++leaves_;
      if (!demand_met()) return;
      const auto v = value(idle, makespan_, cells_);
      if (!best_ || v < *best_) {
        best_ = v;
        best_plan_ = plan_;
      }
      return;
    }
    if (t == horizon) {
      visit(m + 1, 0, idle);
      return;
    }
    if (best_ && value(idle, makespan_, cells_) >= *best_) return;

    // Option: mold idle at t (and, under contiguity, for the rest of the horizon).
    if (contiguous_) {
      visit(m + 1, 0, idle);
    } else {
      visit(m, t + 1, idle);
    }

    for (int i : cat_.compatible(m)) {
      const auto& p = cat_.pattern(i);
      const int e = inst_.beam_types[p.beam_type].curing_time;
      if (t + e > horizon) continue;
      plan_.at(m, t) = Cell::start(i);
      for (int a = 1; a < e; ++a) plan_.at(m, t + a) = Cell::cont();
      for (std::size_t k = 0; k < p.counts.size(); ++k) remaining_[p.beam_type][k] -= p.counts[k];
      const int saved_makespan = makespan_;
      makespan_ = std::max(makespan_, t + e);
      cells_ += e;

      visit(m, t + e, idle + cost_[i][m]);

      cells_ -= e;
      makespan_ = saved_makespan;
      for (std::size_t k = 0; k < p.counts.size(); ++k) remaining_[p.beam_type][k] += p.counts[k];
      for (int a = 0; a < e; ++a) plan_.at(m, t + a) = Cell::idle();
    }
  }

  const Instance& inst_;
  const PatternCatalog& cat_;
  ScheduleObjective objective_;
  bool contiguous_;
  ProductionPlan plan_;
  std::vector<std::vector<std::int64_t>> remaining_;
  std::vector<std::vector<std::int64_t>> cost_;
  int makespan_ = 0;
  int cells_ = 0;
  std::int64_t leaves_ = 0;
  std::optional<std::int64_t> best_;
  ProductionPlan best_plan_;
};

}  // namespace

double oracle_search_space(const Instance& inst, const PatternCatalog& cat) {
  double space = 1;
  for (int m = 0; m < inst.num_molds(); ++m) {
    const double options = static_cast<double>(cat.compatible(m).size()) + 2;
    for (int t = 0; t < inst.periods; ++t) space *= options;
  }
  return space;
}

OracleResult brute_force_schedule(const Instance& inst, const PatternCatalog& cat,
                                  ScheduleObjective objective) {
  const double space = oracle_search_space(inst, cat);
  if (space > kGuard) {
    throw OracleGuardError("oracle search space " + std::to_string(space) + " exceeds 1e7");
  }
  return Search(inst, cat, objective).run();
}

}  // namespace precast
