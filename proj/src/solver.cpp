#include "precast/solver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "precast/simplex.hpp"

namespace precast {

namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
  return q;
}

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

// Dual values are rounded to multiples of 2^-24 before the exact evaluation.
constexpr std::int64_t kDualDenominator = std::int64_t{1} << 24;

std::int64_t snap_dual(double y, Sense sense) {
  if (!std::isfinite(y)) return 0;
  auto v = static_cast<std::int64_t>(std::llround(y * static_cast<double>(kDualDenominator)));
  if (sense == Sense::le) v = std::min<std::int64_t>(v, 0);
  if (sense == Sense::ge) v = std::max<std::int64_t>(v, 0);
  return v;
}

// Tightens domains from Σ sign*a_j x_j <= sign*rhs.
bool tighten_le(const Constraint& c, int sign, std::vector<VarDomain>& dom, bool& changed) {
  const i128 rhs = static_cast<i128>(sign) * c.rhs;
  i128 min_act = 0;
  for (const auto& t : c.terms) {
    const i128 a = static_cast<i128>(sign) * t.coef;
    min_act += a > 0 ? a * dom[t.var].lower : a * dom[t.var].upper;
  }
  if (min_act > rhs) return false;
  for (const auto& t : c.terms) {
    const i128 a = static_cast<i128>(sign) * t.coef;
    if (a == 0) continue;
    auto& d = dom[t.var];
    if (a > 0) {
      const i128 rest = rhs - (min_act - a * d.lower);
      const i128 hi = floor_div(rest, a);
      if (hi < d.upper) {
        d.upper = static_cast<std::int64_t>(hi);
        changed = true;
      }
    } else {
      const i128 rest = rhs - (min_act - a * d.upper);
      const i128 lo = ceil_div(rest, a);
      if (lo > d.lower) {
        d.lower = static_cast<std::int64_t>(lo);
        changed = true;
      }
    }
    if (d.lower > d.upper) return false;
  }
  return true;
}

bool all_fixed(std::span<const VarDomain> domains) {
  return std::all_of(domains.begin(), domains.end(), [](const VarDomain& d) { return d.fixed(); });
}

std::vector<std::int64_t> fixed_values(std::span<const VarDomain> domains) {
  std::vector<std::int64_t> v(domains.size());
  for (std::size_t j = 0; j < domains.size(); ++j) v[j] = domains[j].lower;
  return v;
}

class TrivialBound final : public BoundProvider {
 public:
  BoundKind kind() const override { return BoundKind::trivial; }
  NodeBound evaluate(const IlpModel& model, std::span<const VarDomain> domains) override {
    NodeBound nb;
    nb.value = trivial_bound(model, domains);
    return nb;
  }
};

class DemandBound final : public BoundProvider {
 public:
  DemandBound(const Instance& inst, const PatternCatalog& cat) : inst_(inst), cat_(cat) {}
  BoundKind kind() const override { return BoundKind::demand; }
  NodeBound evaluate(const IlpModel& model, std::span<const VarDomain> domains) override {
    return lower_bound_demand(inst_, cat_, model, domains);
  }

 private:
  const Instance& inst_;
  const PatternCatalog& cat_;
};

class LpRelaxationBound final : public BoundProvider {
 public:
  explicit LpRelaxationBound(std::unique_ptr<BoundProvider> fallback)
      : fallback_(fallback ? std::move(fallback) : make_trivial_bound()) {}
  BoundKind kind() const override { return BoundKind::lp; }
  NodeBound evaluate(const IlpModel& model, std::span<const VarDomain> domains) override {
    auto lp = lp_relaxation_bound(model, domains, deadline_);
    NodeBound nb;
    switch (lp.status) {
      case LpBound::Status::bounded:
        nb.value = lp.value;
        nb.primal = std::move(lp.primal);
        return nb;
      case LpBound::Status::infeasible:
        nb.infeasible = true;
        return nb;
      case LpBound::Status::failed:
        break;
    }
    ++fallbacks_;
    nb = fallback_->evaluate(model, domains);
    nb.fallback_used = true;
    return nb;
  }

 private:
  std::unique_ptr<BoundProvider> fallback_;
};

}  // namespace

std::int64_t Rational::ceil() const { return static_cast<std::int64_t>(ceil_div(num, den)); }

std::string Rational::to_string() const {
  return den == 1 ? i128_to_string(num) : i128_to_string(num) + "/" + i128_to_string(den);
}

std::vector<VarDomain> root_domains(const IlpModel& model) {
  std::vector<VarDomain> d;
  d.reserve(model.variables().size());
  for (const auto& v : model.variables()) d.push_back({v.lower, v.upper});
  return d;
}

bool propagate(const IlpModel& model, std::vector<VarDomain>& domains) {
  for (int pass = 0; pass < 100; ++pass) {
    bool changed = false;
    for (const auto& c : model.constraints()) {
      if (c.sense != Sense::ge && !tighten_le(c, 1, domains, changed)) return false;
      if (c.sense != Sense::le && !tighten_le(c, -1, domains, changed)) return false;
    }
    if (!changed) return true;
  }
  return true;
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::trivial: return "trivial";
    case BoundKind::demand: return "demand";
    case BoundKind::lp: return "lp";
  }
  return "lp";
}

BoundKind bound_kind_from_string(const std::string& text) {
  if (text == "trivial") return BoundKind::trivial;
  if (text == "demand" || text == "demand-lb") return BoundKind::demand;
  if (text == "lp" || text == "lp-relaxation") return BoundKind::lp;
  throw std::invalid_argument("unknown bound '" + text + "'");
}

Rational trivial_bound(const IlpModel& model, std::span<const VarDomain> domains) {
  i128 total = 0;
  for (const auto& t : model.objective()) {
    const auto& d = domains[t.var];
    total += t.coef >= 0 ? static_cast<i128>(t.coef) * d.lower : static_cast<i128>(t.coef) * d.upper;
  }
  return {total, 1};
}

NodeBound lower_bound_demand(const Instance& inst, const PatternCatalog& cat, const IlpModel& model,
                             std::span<const VarDomain> domains) {
  NodeBound nb;
  nb.value = trivial_bound(model, domains);

  const int types = inst.num_types();
  std::vector<std::vector<std::int64_t>> residual(types);
  for (int c = 0; c < types; ++c) {
    residual[c].assign(inst.beam_types[c].demands.begin(), inst.beam_types[c].demands.end());
  }
  const auto coefs = model.objective_coefficients();
  // Best F/u ratio per type among free start variables, kept as a fraction.
  std::vector<std::pair<std::int64_t, std::int64_t>> best_ratio(types, {-1, 1});
  std::vector<std::vector<bool>> coverable(types);
  for (int c = 0; c < types; ++c) coverable[c].assign(inst.beam_types[c].lengths.size(), false);

  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& key = model.variables()[j].key;
    if (key.kind != VarKey::Kind::start || key.pattern == 0) continue;
    if (key.period > inst.periods - cat.duration(key.pattern)) continue;  // counts toward no demand
    const auto& p = cat.pattern(key.pattern);
    const auto& d = domains[j];
    if (d.lower >= 1) {
      for (std::size_t k = 0; k < p.counts.size(); ++k) residual[p.beam_type][k] -= p.counts[k] * d.lower;
    } else if (d.upper >= 1) {
      for (std::size_t k = 0; k < p.counts.size(); ++k) {
        if (p.counts[k] > 0) coverable[p.beam_type][k] = true;
      }
      const std::int64_t f = coefs[j];
      const std::int64_t u = cat.used_capacity(key.pattern).units;
      auto& best = best_ratio[p.beam_type];
      if (best.first < 0 || static_cast<i128>(f) * best.second < static_cast<i128>(best.first) * u) {
        best = {f, u};
      }
    }
  }

  i128 extra = 0;
  for (int c = 0; c < types; ++c) {
    const auto& bt = inst.beam_types[c];
    i128 volume = 0;
    for (int k = 0; k < bt.num_lengths(); ++k) {
      if (residual[c][k] <= 0) continue;
      if (!coverable[c][k]) {
        nb.infeasible = true;
        return nb;
      }
      volume += static_cast<i128>(residual[c][k]) * bt.lengths[k].units;
    }
    if (model.kind == ModelKind::m1 && volume > 0 && best_ratio[c].first > 0) {
      extra += floor_div(volume * best_ratio[c].first, best_ratio[c].second);
    }
  }
  nb.value.num += extra * nb.value.den;
  return nb;
}

LpBound lp_relaxation_bound(const IlpModel& model, std::span<const VarDomain> domains,
                            std::optional<Deadline> deadline) {
  LpBound out;
  const auto& cons = model.constraints();
  const int n = model.num_variables();

  if (all_fixed(domains)) {
    const auto values = fixed_values(domains);
    if (!model.violations(values).empty()) {
      out.status = LpBound::Status::infeasible;
      return out;
    }
    out.status = LpBound::Status::bounded;
    out.value = Rational::integer(model.objective_value(values));
    out.primal.assign(values.begin(), values.end());
    return out;
  }

  std::vector<int> column(n, -1);
  LpProblem lp;
  const auto coefs = model.objective_coefficients();
  for (int j = 0; j < n; ++j) {
    if (domains[j].fixed()) continue;
    column[j] = static_cast<int>(lp.cost.size());
    lp.cost.push_back(static_cast<double>(coefs[j]));
    lp.lower.push_back(static_cast<double>(domains[j].lower));
    lp.upper.push_back(static_cast<double>(domains[j].upper));
  }
  std::vector<int> row_of(cons.size(), -1);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const auto& c = cons[i];
    i128 fixed = 0;
    LpProblem::Row row;
    for (const auto& t : c.terms) {
      if (column[t.var] < 0) {
        fixed += static_cast<i128>(t.coef) * domains[t.var].lower;
      } else {
        row.terms.emplace_back(column[t.var], static_cast<double>(t.coef));
      }
    }
    const i128 rhs = static_cast<i128>(c.rhs) - fixed;
    if (row.terms.empty()) {
      const bool ok = c.sense == Sense::le ? 0 <= rhs : c.sense == Sense::ge ? 0 >= rhs : rhs == 0;
      if (!ok) {
        out.status = LpBound::Status::infeasible;
        return out;
      }
      continue;
    }
    row.sense = c.sense;
    row.rhs = static_cast<double>(rhs);
    row_of[i] = static_cast<int>(lp.rows.size());
    lp.rows.push_back(std::move(row));
  }

  const auto result = solve_lp(lp, 0, deadline);
  out.iterations = result.iterations;
  if (result.status == LpResult::Status::iteration_limit) return out;

  // Exact Lagrangian evaluation with snapped duals.
  std::vector<i128> y(cons.size(), 0);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    if (row_of[i] >= 0) y[i] = snap_dual(result.duals[row_of[i]], cons[i].sense);
  }
  std::vector<i128> reduced(n, 0);
  i128 dual_rhs = 0;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    if (y[i] == 0) continue;
    dual_rhs += y[i] * cons[i].rhs;
    for (const auto& t : cons[i].terms) reduced[t.var] -= y[i] * t.coef;
  }

  if (result.status == LpResult::Status::infeasible) {
    // Farkas: every feasible x satisfies y^T A x >= y^T b; impossible when
    // max over the box of y^T A x falls short.
    i128 max_lhs = 0;
    for (int j = 0; j < n; ++j) {
      const i128 g = -reduced[j];
      max_lhs += g > 0 ? g * domains[j].upper : g * domains[j].lower;
    }
    if (max_lhs < dual_rhs) out.status = LpBound::Status::infeasible;
    return out;  // failed when uncertified
  }

  i128 total = dual_rhs;
  for (int j = 0; j < n; ++j) {
    const i128 r = reduced[j] + static_cast<i128>(coefs[j]) * kDualDenominator;
    total += r > 0 ? r * domains[j].lower : r * domains[j].upper;
  }
  out.status = LpBound::Status::bounded;
  out.value = Rational{total, kDualDenominator};
  out.primal.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    out.primal[j] = column[j] < 0 ? static_cast<double>(domains[j].lower) : result.x[column[j]];
  }
  return out;
}

std::unique_ptr<BoundProvider> make_trivial_bound() { return std::make_unique<TrivialBound>(); }

std::unique_ptr<BoundProvider> make_demand_bound(const Instance& inst, const PatternCatalog& cat) {
  return std::make_unique<DemandBound>(inst, cat);
}

std::unique_ptr<BoundProvider> make_lp_bound(std::unique_ptr<BoundProvider> fallback) {
  return std::make_unique<LpRelaxationBound>(std::move(fallback));
}

std::unique_ptr<BoundProvider> make_bound(BoundKind kind, const Instance& inst,
                                          const PatternCatalog& cat) {
  switch (kind) {
    case BoundKind::trivial: return make_trivial_bound();
    case BoundKind::demand: return make_demand_bound(inst, cat);
    case BoundKind::lp: return make_lp_bound(make_demand_bound(inst, cat));
  }
  return make_trivial_bound();
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible: return "feasible";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::limit_reached: return "limit-reached";
  }
  return "limit-reached";
}

double IlpSolution::gap() const {
  if (!has_incumbent()) return 1.0;
  const double denom = std::max<double>(1.0, std::abs(static_cast<double>(objective)));
  return static_cast<double>(objective - bound) / denom;
}

std::string IlpSolution::objective_text() const { return format_decimal(objective, objective_scale); }
std::string IlpSolution::bound_text() const { return format_decimal(bound, objective_scale); }

namespace {

struct Node {
  std::vector<VarDomain> domains;
  std::int64_t bound;  // valid lower bound inherited from the parent
};

class BranchAndBound {
 public:
  BranchAndBound(const IlpModel& model, const SolveLimits& limits, BoundProvider& provider)
      : model_(model), limits_(limits), provider_(provider) {}

  IlpSolution run() {
    const auto start = Clock::now();
    if (limits_.max_wall_time.count() > 0) provider_.set_deadline(start + limits_.max_wall_time);
    auto root = root_domains(model_);
    stack_.push_back({root, trivial_bound(model_, root).ceil()});

    bool exhausted = true;
    while (!stack_.empty()) {
      if (limit_hit(start)) {
        exhausted = false;
        break;
      }
      Node node = std::move(stack_.back());
      stack_.pop_back();
      ++stats_.nodes;
      process(std::move(node));
      if (limits_.log && limits_.log_interval > 0 && stats_.nodes % limits_.log_interval == 0) {
        log_progress();
      }
    }

    IlpSolution sol;
    sol.objective_scale = model_.objective_scale;
    stats_.bound_fallbacks = provider_.fallbacks();
    stats_.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (exhausted) {
      if (incumbent_) {
        sol.status = SolveStatus::optimal;
        sol.objective = *incumbent_;
        sol.bound = *incumbent_;
      } else {
        sol.status = SolveStatus::infeasible;
      }
    } else {
      sol.bound = open_bound();
      if (incumbent_) {
        sol.status = SolveStatus::feasible;
        sol.objective = *incumbent_;
        sol.bound = std::min(sol.bound, *incumbent_);
      } else {
        sol.status = SolveStatus::limit_reached;
      }
    }
    if (incumbent_) {
      sol.values = best_;
      // Soundness: re-verify the incumbent exactly.
      if (!model_.violations(best_).empty() || model_.objective_value(best_) != *incumbent_) {
        throw std::logic_error("branch-and-bound produced an invalid incumbent");
      }
    }
    sol.stats = stats_;
    if (limits_.log) log_progress();
    return sol;
  }

 private:
  using Clock = std::chrono::steady_clock;

  bool limit_hit(Clock::time_point start) const {
    if (limits_.max_nodes > 0 && stats_.nodes >= limits_.max_nodes) return true;
    if (limits_.max_wall_time.count() > 0 && Clock::now() - start >= limits_.max_wall_time) return true;
    if (incumbent_ && limits_.target_gap > 0) {
      const double gap = static_cast<double>(*incumbent_ - open_bound()) /
                         std::max(1.0, std::abs(static_cast<double>(*incumbent_)));
      if (gap <= limits_.target_gap) return true;
    }
    return false;
  }

  std::int64_t open_bound() const {
    std::int64_t b = incumbent_ ? *incumbent_ : std::numeric_limits<std::int64_t>::max();
    for (const auto& n : stack_) b = std::min(b, n.bound);
    return b;
  }

  bool prunable(std::int64_t bound) const { return incumbent_ && bound >= *incumbent_; }

  void offer(const std::vector<std::int64_t>& values) {
    if (!model_.violations(values).empty()) return;
    const auto obj = model_.objective_value(values);
    if (!incumbent_ || obj < *incumbent_) {
      incumbent_ = obj;
      best_ = values;
    }
  }

  void process(Node node) {
    if (prunable(node.bound)) return;
    if (!propagate(model_, node.domains)) return;

    if (provider_.kind() == BoundKind::lp) ++stats_.lp_solves;
    const NodeBound nb = provider_.evaluate(model_, node.domains);
    if (nb.infeasible) return;
    const std::int64_t bound = std::max(node.bound, nb.value.ceil());
    if (prunable(bound)) return;

    if (all_fixed(node.domains)) {
      offer(fixed_values(node.domains));
      return;
    }

    int branch_var = -1;
    double branch_value = 0;
    if (!nb.primal.empty()) {
      double worst = 1e-6;
      bool integral = true;
      std::vector<std::int64_t> rounded(nb.primal.size());
      for (std::size_t j = 0; j < nb.primal.size(); ++j) {
        const double v = nb.primal[j];
        const double r = std::round(v);
        const double frac = std::abs(v - r);
        rounded[j] = std::clamp(static_cast<std::int64_t>(r), node.domains[j].lower, node.domains[j].upper);
        if (frac > 1e-6) integral = false;
        if (frac > worst && !node.domains[j].fixed()) {
          worst = frac;
          branch_var = static_cast<int>(j);
          branch_value = v;
        }
      }
      if (integral) {
        offer(rounded);
        if (prunable(bound)) return;
      }
    }
    if (branch_var < 0) {
      for (int j = 0; j < model_.num_variables(); ++j) {
        if (!node.domains[j].fixed()) {
          branch_var = j;
          branch_value = static_cast<double>(node.domains[j].lower) + 0.5;
          break;
        }
      }
    }

    const auto split = static_cast<std::int64_t>(std::floor(branch_value));
    Node down{node.domains, bound};
    down.domains[branch_var].upper = split;
    Node up{std::move(node.domains), bound};
    up.domains[branch_var].lower = split + 1;
    // The child nearer the relaxation value is explored first.
    if (branch_value - static_cast<double>(split) >= 0.5) {
      stack_.push_back(std::move(down));
      stack_.push_back(std::move(up));
    } else {
      stack_.push_back(std::move(up));
      stack_.push_back(std::move(down));
    }
  }

  void log_progress() const {
    auto& out = *limits_.log;
    out << "nodes=" << stats_.nodes << " open=" << stack_.size() << " incumbent=";
    if (incumbent_) {
      out << format_decimal(*incumbent_, model_.objective_scale);
    } else {
      out << "-";
    }
    const auto b = open_bound();
    out << " bound=" << (b == std::numeric_limits<std::int64_t>::max() ? std::string("-")
                                                                        : format_decimal(b, model_.objective_scale));
    if (incumbent_) {
      out << " gap=" << static_cast<double>(*incumbent_ - std::min(b, *incumbent_)) /
                            std::max(1.0, std::abs(static_cast<double>(*incumbent_)));
    }
    out << "\n";
  }

  const IlpModel& model_;
  const SolveLimits& limits_;
  BoundProvider& provider_;
  std::vector<Node> stack_;
  std::optional<std::int64_t> incumbent_;
  std::vector<std::int64_t> best_;
  SolveStats stats_;
};

}  // namespace

IlpSolution solve(const IlpModel& model, const SolveLimits& limits, BoundProvider& bound) {
  return BranchAndBound(model, limits, bound).run();
}

}  // namespace precast
