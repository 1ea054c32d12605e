#include "precast/heuristics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace precast {

std::string RuleSpec::name() const {
  std::string out = curing == CuringPriority::shortest_first ? "sct" : "lct";
  switch (length) {
    case LengthPriority::shortest_first: out += "sl"; break;
    case LengthPriority::largest_first: out += "ll"; break;
    case LengthPriority::alternate: out += "al"; break;
  }
  return out;
}

RuleSpec RuleSpec::from_name(const std::string& name) {
  for (const auto& rule : all()) {
    if (rule.name() == name) return rule;
  }
  throw std::invalid_argument("unknown priority rule '" + name +
                              "' (expected sctsl, sctll, sctal, lctsl, lctll or lctal)");
}

std::vector<RuleSpec> RuleSpec::all() {
  std::vector<RuleSpec> out;
  for (auto c : {CuringPriority::shortest_first, CuringPriority::longest_first}) {
    for (auto l : {LengthPriority::shortest_first, LengthPriority::largest_first, LengthPriority::alternate}) {
      out.push_back({c, l});
    }
  }
  return out;
}

namespace {

// Keeps first-use order so catalog indices are stable.
class PatternPool {
 public:
  int add(const Pattern& p) {
    auto [it, fresh] = index_.try_emplace(p, static_cast<int>(patterns_.size()) + 1);
    if (fresh) patterns_.push_back(p);
    return it->second;
  }
  PatternCatalog catalog(const Instance& inst) const {
    return PatternCatalog::from_patterns(inst, patterns_, CatalogMode::listed);
  }

 private:
  std::vector<Pattern> patterns_;
  std::map<Pattern, int> index_;
};

// Greedy batch packing of one beam type into `capacity`, bounded by residual demand.
Pattern pack(const BeamType& bt, int type, Length capacity, const std::vector<std::int64_t>& residual,
             LengthPriority priority) {
  Pattern p{type, std::vector<int>(bt.lengths.size(), 0)};
  Length remaining = capacity;
  bool shortest_turn = true;
  while (true) {
    std::vector<int> candidates;
    for (int k = 0; k < bt.num_lengths(); ++k) {
      if (residual[k] - p.counts[k] > 0 && bt.lengths[k] <= remaining) candidates.push_back(k);
    }
    if (candidates.empty()) break;
    int k = 0;
    switch (priority) {
      case LengthPriority::shortest_first: k = candidates.front(); break;
      case LengthPriority::largest_first: k = candidates.back(); break;
      case LengthPriority::alternate:
        k = shortest_turn ? candidates.front() : candidates.back();
        shortest_turn = !shortest_turn;
        break;
    }
    const auto fits = remaining.units / bt.lengths[k].units;
    const auto n = std::min<std::int64_t>(fits, residual[k] - p.counts[k]);
    p.counts[k] += static_cast<int>(n);
    remaining -= n * bt.lengths[k];
  }
  return p;
}

}  // namespace

Schedule construct_plan(const Instance& inst, const RuleSpec& rule) {
  const int molds = inst.num_molds();
  const int horizon = inst.periods;
  std::vector<std::vector<std::int64_t>> residual(inst.num_types());
  for (int c = 0; c < inst.num_types(); ++c) {
    residual[c].assign(inst.beam_types[c].demands.begin(), inst.beam_types[c].demands.end());
  }
  const auto has_residual = [&](int c) {
    return std::any_of(residual[c].begin(), residual[c].end(), [](auto v) { return v > 0; });
  };

  std::vector<int> order(inst.num_types());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int ta = inst.beam_types[a].curing_time;
    const int tb = inst.beam_types[b].curing_time;
    return rule.curing == CuringPriority::shortest_first ? ta < tb : ta > tb;
  });

  PatternPool pool;
  ProductionPlan plan(molds, horizon);
  std::vector<int> free_at(molds, 0);
  for (int t = 0; t < horizon; ++t) {
    for (int m = 0; m < molds; ++m) {
      if (free_at[m] > t) continue;
      for (int c : order) {
        if (!has_residual(c)) continue;
        const auto& bt = inst.beam_types[c];
        // A pattern whose curing would run past the horizon is never started.
        if (t + bt.curing_time > horizon) continue;
        Pattern p = pack(bt, c, inst.molds[m], residual[c], rule.length);
        if (p.distinct_lengths() == 0) continue;  // nothing of this type fits the mold
        plan.place(m, t, pool.add(p), bt.curing_time);
        free_at[m] = t + bt.curing_time;
        for (std::size_t k = 0; k < p.counts.size(); ++k) residual[c][k] -= p.counts[k];
        break;
      }
    }
  }
  for (int c = 0; c < inst.num_types(); ++c) {
    if (has_residual(c)) {
      throw HorizonExhausted("rule " + rule.name() + ": demand of beam type " + std::to_string(c + 1) +
                             " remains after period " + std::to_string(horizon));
    }
  }
  return {pool.catalog(inst), std::move(plan)};
}

Schedule maximalize(const Instance& inst, const PatternCatalog& cat, const ProductionPlan& plan) {
  PatternPool pool;
  ProductionPlan out(plan.molds(), plan.periods());
  for (int m = 0; m < plan.molds(); ++m) {
    for (int t = 0; t < plan.periods(); ++t) {
      const auto& cell = plan.at(m, t);
      if (cell.kind != Cell::Kind::start) {
        out.at(m, t) = cell;
        continue;
      }
      Pattern p = cat.pattern(cell.pattern);
      const auto& bt = inst.beam_types[p.beam_type];
      Length remaining = inst.molds[m] - used_capacity(p, inst);
      for (int k = bt.num_lengths() - 1; k >= 0; --k) {
        const auto n = remaining.units / bt.lengths[k].units;
        p.counts[k] += static_cast<int>(n);
        remaining -= n * bt.lengths[k];
      }
      out.at(m, t) = Cell::start(pool.add(p));
    }
  }
  return {pool.catalog(inst), std::move(out)};
}

Schedule run_priority_rule(const Instance& inst, const RuleSpec& rule) {
  const Schedule first = construct_plan(inst, rule);
  return maximalize(inst, first.catalog, first.plan);
}

std::string to_string(SrhStatus status) {
  switch (status) {
    case SrhStatus::solved: return "solved";
    case SrhStatus::infeasible_reduced: return "infeasible-reduced";
    case SrhStatus::limit_reached: return "limit-reached";
  }
  return "limit-reached";
}

SrhResult run_srh(const Instance& inst, ModelKind kind, const SolveLimits& limits, BoundKind bound,
                  const CatalogOptions& options) {
  SrhResult result;
  result.catalog = select_qc_maximal(inst, options);
  result.model = build_model(kind, inst, result.catalog);
  auto provider = make_bound(bound, inst, result.catalog);
  result.solution = solve(result.model, limits, *provider);
  switch (result.solution.status) {
    case SolveStatus::optimal: result.status = SrhStatus::solved; break;
    case SolveStatus::infeasible: result.status = SrhStatus::infeasible_reduced; break;
    case SolveStatus::feasible:
    case SolveStatus::limit_reached: result.status = SrhStatus::limit_reached; break;
  }
  if (result.solution.has_incumbent()) {
    result.plan = decode(result.model, result.solution, result.catalog);
  }
  return result;
}

}  // namespace precast
