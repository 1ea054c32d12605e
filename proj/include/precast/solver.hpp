#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "precast/ilp.hpp"
#include "precast/simplex.hpp"
#include "precast/instance.hpp"
#include "precast/patterns.hpp"

namespace precast {

// Exact rational number; denominators stay positive.
struct Rational {
  __int128 num = 0;
  __int128 den = 1;

  static Rational integer(std::int64_t v) { return {v, 1}; }

  // Smallest integer >= value.
  std::int64_t ceil() const;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

struct VarDomain {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  bool fixed() const { return lower == upper; }
};

std::vector<VarDomain> root_domains(const IlpModel& model);

// Tightens domains by activity-based bound propagation over every
// constraint. Returns false if some constraint cannot be satisfied.
bool propagate(const IlpModel& model, std::vector<VarDomain>& domains);

struct NodeBound {
  bool infeasible = false;
  Rational value;
  std::vector<double> primal;  // LP point when the bound came from the relaxation
  bool fallback_used = false;
};

enum class BoundKind { trivial, demand, lp };
std::string to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& text);

class BoundProvider {
 public:
  virtual ~BoundProvider() = default;
  virtual BoundKind kind() const = 0;
  // Must never exceed the optimum of the subproblem restricted to `domains`.
  virtual NodeBound evaluate(const IlpModel& model, std::span<const VarDomain> domains) = 0;
  std::int64_t fallbacks() const { return fallbacks_; }
  // Bound work past this point is abandoned in favour of the fallback.
  void set_deadline(std::optional<Deadline> deadline) { deadline_ = deadline; }

 protected:
  std::int64_t fallbacks_ = 0;
  std::optional<Deadline> deadline_;
};

// Σ_j min(c_j l_j, c_j u_j) over the box.
Rational trivial_bound(const IlpModel& model, std::span<const VarDomain> domains);

// Residual-demand bound for models built over (inst, cat). For M1 adds, per
// beam type, residual demanded length times the best idle-per-length ratio of
// the still-free start variables. Reports infeasibility when a residual
// demand has no free start variable able to cover it.
NodeBound lower_bound_demand(const Instance& inst, const PatternCatalog& cat, const IlpModel& model,
                             std::span<const VarDomain> domains);

struct LpBound {
  enum class Status { bounded, infeasible, failed };
  Status status = Status::failed;
  Rational value;
  std::vector<double> primal;
  int iterations = 0;
};

// Continuous relaxation with fixed variables substituted. The float simplex
// only proposes duals; the returned value is the Lagrangian bound of those
// (sign-corrected, dyadically rounded) duals evaluated exactly, and
// infeasibility is reported only with an exactly verified Farkas certificate.
LpBound lp_relaxation_bound(const IlpModel& model, std::span<const VarDomain> domains,
                            std::optional<Deadline> deadline = std::nullopt);

std::unique_ptr<BoundProvider> make_trivial_bound();
std::unique_ptr<BoundProvider> make_demand_bound(const Instance& inst, const PatternCatalog& cat);
// Falls back to `fallback` (trivial if null) when the relaxation fails.
std::unique_ptr<BoundProvider> make_lp_bound(std::unique_ptr<BoundProvider> fallback = nullptr);
std::unique_ptr<BoundProvider> make_bound(BoundKind kind, const Instance& inst,
                                          const PatternCatalog& cat);

struct SolveLimits {
  std::int64_t max_nodes = 0;  // 0: unbounded
  std::chrono::milliseconds max_wall_time{0};  // 0: unbounded
  double target_gap = 0.0;
  std::ostream* log = nullptr;
  std::int64_t log_interval = 1000;  // nodes between progress lines
};

struct SolveStats {
  std::int64_t nodes = 0;
  std::int64_t lp_solves = 0;
  std::int64_t bound_fallbacks = 0;
  double wall_seconds = 0;
};

enum class SolveStatus { optimal, feasible, infeasible, limit_reached };
std::string to_string(SolveStatus status);

struct IlpSolution {
  SolveStatus status = SolveStatus::limit_reached;
  std::int64_t objective = 0;  // in units of objective_scale
  std::int64_t objective_scale = 1;
  std::int64_t bound = 0;      // best proven lower bound, same units
  std::vector<std::int64_t> values;
  SolveStats stats;

  bool has_incumbent() const {
    return status == SolveStatus::optimal || status == SolveStatus::feasible;
  }
  double gap() const;
  std::string objective_text() const;
  std::string bound_text() const;
};

// Depth-first branch-and-bound. Deterministic when no wall-time limit is hit.
IlpSolution solve(const IlpModel& model, const SolveLimits& limits, BoundProvider& bound);

}  // namespace precast
