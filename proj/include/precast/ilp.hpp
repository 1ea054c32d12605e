#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "precast/instance.hpp"
#include "precast/patterns.hpp"

namespace precast {

enum class ModelKind { m1, m2, am2, m3 };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& text);

// Structured identity of a model variable. Mold and period are 0-based.
struct VarKey {
  enum class Kind { start, period_used, makespan };
  Kind kind = Kind::start;
  int pattern = 0;  // start only; 0 is the continuation marker
  int mold = 0;     // start only
  int period = 0;   // start and period_used

  static VarKey start(int i, int m, int t) { return {Kind::start, i, m, t}; }
  static VarKey used(int t) { return {Kind::period_used, 0, 0, t}; }
  static VarKey last() { return {Kind::makespan, 0, 0, 0}; }

  auto operator<=>(const VarKey&) const = default;
};

enum class VarType { binary, integer };
enum class Sense { le, ge, eq };

struct Variable {
  std::string name;
  VarType type = VarType::binary;
  std::int64_t lower = 0;
  std::int64_t upper = 1;
  VarKey key;
};

struct Term {
  int var = 0;
  std::int64_t coef = 0;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::le;
  std::int64_t rhs = 0;
};

struct ModelStats {
  std::size_t variables = 0;
  std::size_t binaries = 0;
  std::size_t integers = 0;
  std::size_t constraints = 0;
  std::size_t nonzeros = 0;
};

// Solver-neutral integer program: minimize objective subject to integer
// linear constraints. All data is integral; objective coefficients are in
// base units of `objective_scale` (so value/objective_scale is the reported
// quantity).
class IlpModel {
 public:
  std::string name;
  ModelKind kind = ModelKind::m1;
  std::int64_t objective_scale = 1;

  int add_variable(Variable v);
  void add_constraint(Constraint c) { constraints_.push_back(std::move(c)); }
  void set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Term>& objective() const { return objective_; }
  int num_variables() const { return static_cast<int>(variables_.size()); }

  std::optional<int> find(const VarKey& key) const;
  // Dense objective coefficient vector.
  std::vector<std::int64_t> objective_coefficients() const;

  ModelStats stats() const;

  // Exact evaluation helpers over a full assignment.
  std::int64_t objective_value(const std::vector<std::int64_t>& values) const;
  // Names of violated constraints and out-of-bound variables.
  std::vector<std::string> violations(const std::vector<std::int64_t>& values) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  std::map<VarKey, int> index_;
};

IlpModel build_m1(const Instance& inst, const PatternCatalog& cat);
IlpModel build_m2(const Instance& inst, const PatternCatalog& cat);
IlpModel build_am2(const Instance& inst, const PatternCatalog& cat);
IlpModel build_m3(const Instance& inst, const PatternCatalog& cat);
IlpModel build_model(ModelKind kind, const Instance& inst, const PatternCatalog& cat);

// Options mainly for tests: keep start variables whose curing would overrun
// the horizon (they appear in no demand row).
struct BuildOptions {
  bool prune_late_starts = true;
};
IlpModel build_model(ModelKind kind, const Instance& inst, const PatternCatalog& cat,
                     const BuildOptions& options);

// CPLEX-style LP text: Minimize / Subject To / Bounds / Binaries / Generals / End.
std::string export_lp(const IlpModel& model);

// `model=m1 variables=.. binaries=.. integers=.. constraints=.. nonzeros=..`
std::string stats_line(const IlpModel& model);

}  // namespace precast
