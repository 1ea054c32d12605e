#include "precast/ilp.hpp"

#include <sstream>
#include <stdexcept>

namespace precast {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::m1: return "m1";
    case ModelKind::m2: return "m2";
    case ModelKind::am2: return "am2";
    case ModelKind::m3: return "m3";
  }
  return "m1";
}

ModelKind model_kind_from_string(const std::string& text) {
  if (text == "m1") return ModelKind::m1;
  if (text == "m2") return ModelKind::m2;
  if (text == "am2") return ModelKind::am2;
  if (text == "m3") return ModelKind::m3;
  throw std::invalid_argument("unknown model '" + text + "'");
}

int IlpModel::add_variable(Variable v) {
  const int id = static_cast<int>(variables_.size());
  if (!index_.emplace(v.key, id).second) throw std::logic_error("duplicate variable " + v.name);
  variables_.push_back(std::move(v));
  return id;
}

std::optional<int> IlpModel::find(const VarKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::int64_t> IlpModel::objective_coefficients() const {
  std::vector<std::int64_t> c(variables_.size(), 0);
  for (const auto& term : objective_) c[term.var] += term.coef;
  return c;
}

ModelStats IlpModel::stats() const {
  ModelStats s;
  s.variables = variables_.size();
  for (const auto& v : variables_) (v.type == VarType::binary ? s.binaries : s.integers)++;
  s.constraints = constraints_.size();
  for (const auto& c : constraints_) s.nonzeros += c.terms.size();
  return s;
}

std::int64_t IlpModel::objective_value(const std::vector<std::int64_t>& values) const {
  std::int64_t total = 0;
  for (const auto& term : objective_) total += term.coef * values.at(term.var);
  return total;
}

std::vector<std::string> IlpModel::violations(const std::vector<std::int64_t>& values) const {
  std::vector<std::string> out;
  if (values.size() != variables_.size()) {
    out.push_back("assignment has wrong size");
    return out;
  }
  for (std::size_t j = 0; j < variables_.size(); ++j) {
    if (values[j] < variables_[j].lower || values[j] > variables_[j].upper) {
      out.push_back(variables_[j].name + " out of bounds");
    }
  }
  for (const auto& c : constraints_) {
    std::int64_t activity = 0;
    for (const auto& term : c.terms) activity += term.coef * values[term.var];
    const bool ok = c.sense == Sense::le   ? activity <= c.rhs
                    : c.sense == Sense::ge ? activity >= c.rhs
                                           : activity == c.rhs;
    if (!ok) out.push_back(c.name);
  }
  return out;
}

namespace {

std::string idx(int v) { return std::to_string(v + 1); }

class ModelBuilder {
 public:
  ModelBuilder(const Instance& inst, const PatternCatalog& cat, ModelKind kind,
               const BuildOptions& options)
      : inst_(inst), cat_(cat), kind_(kind), options_(options) {}

  IlpModel build() {
    model_.kind = kind_;
    model_.name = to_string(kind_);
    add_start_variables();
    if (kind_ == ModelKind::m2) {
      for (int t = 0; t < T(); ++t) {
        used_.push_back(model_.add_variable(
            {"z_" + idx(t), VarType::binary, 0, 1, VarKey::used(t)}));
      }
    }
    if (kind_ == ModelKind::am2) {
      last_ = model_.add_variable({"z", VarType::integer, 1, T(), VarKey::last()});
    }

    add_single_assignment();
    add_demand();
    add_follow_up();
    add_no_first_continuation();
    add_continuation_cover();
    if (kind_ == ModelKind::m2) add_period_used();
    if (kind_ == ModelKind::m2 || kind_ == ModelKind::m3) add_contiguity();
    if (kind_ == ModelKind::am2) add_last_period();
    set_objective();
    return std::move(model_);
  }

 private:
  int T() const { return inst_.periods; }
  int M() const { return inst_.num_molds(); }
  int last_start(int i) const { return T() - cat_.duration(i); }  // 0-based

  bool has_start(int i, int t) const {
    return !options_.prune_late_starts || t <= last_start(i);
  }

  std::optional<int> x(int i, int m, int t) const { return model_.find(VarKey::start(i, m, t)); }

  void add_start_variables() {
    for (int m = 0; m < M(); ++m) {
      for (int t = 0; t < T(); ++t) {
        model_.add_variable({"x_0_" + idx(m) + "_" + idx(t), VarType::binary, 0, 1,
                             VarKey::start(0, m, t)});
        for (int i : cat_.compatible(m)) {
          if (!has_start(i, t)) continue;
          model_.add_variable({"x_" + std::to_string(i) + "_" + idx(m) + "_" + idx(t),
                               VarType::binary, 0, 1, VarKey::start(i, m, t)});
        }
      }
    }
  }

  // Σ_{i ∈ Q*(m)} x_i^{m,t}
  std::vector<Term> occupancy(int m, int t, std::int64_t coef) const {
    std::vector<Term> terms;
    terms.push_back({*x(0, m, t), coef});
    for (int i : cat_.compatible(m)) {
      if (auto v = x(i, m, t)) terms.push_back({*v, coef});
    }
    return terms;
  }

  void add_single_assignment() {
    for (int m = 0; m < M(); ++m) {
      for (int t = 0; t < T(); ++t) {
        model_.add_constraint(
            {"assign_" + idx(m) + "_" + idx(t), occupancy(m, t, 1), Sense::le, 1});
      }
    }
  }

  void add_demand() {
    for (int c = 0; c < inst_.num_types(); ++c) {
      const auto& bt = inst_.beam_types[c];
      for (int k = 0; k < bt.num_lengths(); ++k) {
        std::vector<Term> terms;
        for (int m = 0; m < M(); ++m) {
          for (int t = 0; t < T(); ++t) {
            for (int i : cat_.compatible(m)) {
              const auto& p = cat_.pattern(i);
              if (p.beam_type != c || p.counts[k] == 0 || t > last_start(i)) continue;
              if (auto v = x(i, m, t)) terms.push_back({*v, p.counts[k]});
            }
          }
        }
        model_.add_constraint(
            {"demand_" + idx(c) + "_" + idx(k), std::move(terms), Sense::ge, bt.demands[k]});
      }
    }
  }

  // (E_i - 1) x_i^{m,t} <= Σ_{α=1}^{E_i-1} x_0^{m,t+α}; vacuous for E_i = 1.
  void add_follow_up() {
    for (int m = 0; m < M(); ++m) {
      for (int i : cat_.compatible(m)) {
        const int e = cat_.duration(i);
        if (e < 2) continue;
        for (int t = 0; t <= last_start(i); ++t) {
          std::vector<Term> terms{{*x(i, m, t), e - 1}};
          for (int a = 1; a < e; ++a) terms.push_back({*x(0, m, t + a), -1});
          model_.add_constraint({"follow_" + std::to_string(i) + "_" + idx(m) + "_" + idx(t),
                                 std::move(terms), Sense::le, 0});
        }
      }
    }
  }

  void add_no_first_continuation() {
    for (int m = 0; m < M(); ++m) {
      model_.add_constraint({"first_" + idx(m), {{*x(0, m, 0), 1}}, Sense::eq, 0});
    }
  }

  // x_0^{m,t} <= Σ_{β=2}^{R} Σ_{j=β}^{R} Σ_{i ∈ Q(m) ∩ S(j)} x_i^{m,t-β+1}
  void add_continuation_cover() {
    const int r = inst_.max_curing_time();
    for (int m = 0; m < M(); ++m) {
      for (int t = 1; t < T(); ++t) {
        std::vector<Term> terms{{*x(0, m, t), 1}};
        for (int beta = 2; beta <= r; ++beta) {
          const int start = t - beta + 1;
          if (start < 0) break;
          for (int j = beta; j <= r; ++j) {
            for (int i : cat_.by_curing(j)) {
              if (!cat_.in_compatible(i, m)) continue;
              if (auto v = x(i, m, start)) terms.push_back({*v, -1});
            }
          }
        }
        model_.add_constraint(
            {"cover_" + idx(m) + "_" + idx(t), std::move(terms), Sense::le, 0});
      }
    }
  }

  // M z_t >= Σ_m Σ_{i ∈ Q*(m)} x_i^{m,t}
  void add_period_used() {
    for (int t = 0; t < T(); ++t) {
      std::vector<Term> terms{{used_[t], M()}};
      for (int m = 0; m < M(); ++m) {
        auto occ = occupancy(m, t, -1);
        terms.insert(terms.end(), occ.begin(), occ.end());
      }
      model_.add_constraint({"active_" + idx(t), std::move(terms), Sense::ge, 0});
    }
  }

  void add_contiguity() {
    for (int m = 0; m < M(); ++m) {
      for (int t = 0; t + 1 < T(); ++t) {
        auto terms = occupancy(m, t, 1);
        auto next = occupancy(m, t + 1, -1);
        terms.insert(terms.end(), next.begin(), next.end());
        model_.add_constraint(
            {"contig_" + idx(m) + "_" + idx(t), std::move(terms), Sense::ge, 0});
      }
    }
  }

  // z >= t Σ_{i ∈ Q*(m)} x_i^{m,t}
  void add_last_period() {
    for (int m = 0; m < M(); ++m) {
      for (int t = 0; t < T(); ++t) {
        std::vector<Term> terms{{last_, 1}};
        auto occ = occupancy(m, t, -(t + 1));
        terms.insert(terms.end(), occ.begin(), occ.end());
        model_.add_constraint({"last_" + idx(m) + "_" + idx(t), std::move(terms), Sense::ge, 0});
      }
    }
  }

  void set_objective() {
    std::vector<Term> obj;
    switch (kind_) {
      case ModelKind::m1:
        model_.objective_scale = inst_.unit_scale;
        for (int j = 0; j < model_.num_variables(); ++j) {
          const auto& key = model_.variables()[j].key;
          if (key.kind != VarKey::Kind::start || key.pattern == 0) continue;
          const auto f = cat_.idle_cost(key.pattern, key.mold);
          if (f && *f != 0) obj.push_back({j, *f});
        }
        break;
      case ModelKind::m2:
        for (int v : used_) obj.push_back({v, 1});
        break;
      case ModelKind::am2:
        obj.push_back({last_, 1});
        break;
      case ModelKind::m3:
        for (int j = 0; j < model_.num_variables(); ++j) {
          if (model_.variables()[j].key.kind == VarKey::Kind::start) obj.push_back({j, 1});
        }
        break;
    }
    model_.set_objective(std::move(obj));
  }

  const Instance& inst_;
  const PatternCatalog& cat_;
  ModelKind kind_;
  BuildOptions options_;
  IlpModel model_;
  std::vector<int> used_;
  int last_ = -1;
};

void append_term(std::string& line, std::int64_t coef, std::int64_t scale, const std::string& var,
                 bool first) {
  const bool negative = coef < 0;
  const std::int64_t magnitude = negative ? -coef : coef;
  if (first) {
    line += negative ? "- " : "";
  } else {
    line += negative ? "- " : "+ ";
  }
  if (magnitude != scale) {
    line += format_decimal(magnitude, scale);
    line += ' ';
  }
  line += var;
}

// Emits `name: expr` wrapped at roughly 200 characters per line.
void write_expression(std::ostringstream& out, const std::string& label,
                      const std::vector<Term>& terms, std::int64_t scale, const IlpModel& model) {
  std::string line = " " + label + ":";
  if (terms.empty()) {
    // Grammar needs at least one variable on the left-hand side.
    line += " 0 " + (model.num_variables() ? model.variables()[0].name : std::string("x"));
  }
  bool first = true;
  for (const auto& term : terms) {
    if (line.size() > 200) {
      out << line << "\n";
      line = "  ";
    }
    line += ' ';
    std::string piece;
    append_term(piece, term.coef, scale, model.variables()[term.var].name, first);
    line += piece;
    first = false;
  }
  out << line;
}

void write_name_list(std::ostringstream& out, const std::vector<std::string>& names) {
  std::string line;
  for (const auto& n : names) {
    if (line.size() + n.size() > 200) {
      out << line << "\n";
      line.clear();
    }
    line += ' ';
    line += n;
  }
  if (!line.empty()) out << line << "\n";
}

}  // namespace

IlpModel build_model(ModelKind kind, const Instance& inst, const PatternCatalog& cat,
                     const BuildOptions& options) {
  return ModelBuilder(inst, cat, kind, options).build();
}

IlpModel build_model(ModelKind kind, const Instance& inst, const PatternCatalog& cat) {
  return build_model(kind, inst, cat, BuildOptions{});
}

IlpModel build_m1(const Instance& inst, const PatternCatalog& cat) {
  return build_model(ModelKind::m1, inst, cat);
}
IlpModel build_m2(const Instance& inst, const PatternCatalog& cat) {
  return build_model(ModelKind::m2, inst, cat);
}
IlpModel build_am2(const Instance& inst, const PatternCatalog& cat) {
  return build_model(ModelKind::am2, inst, cat);
}
IlpModel build_m3(const Instance& inst, const PatternCatalog& cat) {
  return build_model(ModelKind::m3, inst, cat);
}

std::string export_lp(const IlpModel& model) {
  std::ostringstream out;
  out << "\\ Model " << model.name << "\n";
  out << "Minimize\n";
  write_expression(out, "obj", model.objective(), model.objective_scale, model);
  out << "\nSubject To\n";
  for (const auto& c : model.constraints()) {
    write_expression(out, c.name, c.terms, 1, model);
    out << (c.sense == Sense::le ? " <= " : c.sense == Sense::ge ? " >= " : " = ") << c.rhs << "\n";
  }
  std::vector<std::string> binaries, generals;
  std::ostringstream bounds;
  for (const auto& v : model.variables()) {
    if (v.type == VarType::binary) {
      binaries.push_back(v.name);
    } else {
      generals.push_back(v.name);
      bounds << " " << v.lower << " <= " << v.name << " <= " << v.upper << "\n";
    }
  }
  if (!bounds.str().empty()) out << "Bounds\n" << bounds.str();
  if (!binaries.empty()) {
    out << "Binaries\n";
    write_name_list(out, binaries);
  }
  if (!generals.empty()) {
    out << "Generals\n";
    write_name_list(out, generals);
  }
  out << "End\n";
  return out.str();
}

std::string stats_line(const IlpModel& model) {
  const auto s = model.stats();
  std::ostringstream out;
  out << "model=" << model.name << " variables=" << s.variables << " binaries=" << s.binaries
      << " integers=" << s.integers << " constraints=" << s.constraints
      << " nonzeros=" << s.nonzeros;
  return out.str();
}

}  // namespace precast
