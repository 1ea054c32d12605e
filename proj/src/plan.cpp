#include "precast/plan.hpp"

#include <map>
#include <sstream>

namespace precast {

namespace {

std::string at_cell(int m, int t) {
  return "(mold " + std::to_string(m + 1) + ", period " + std::to_string(t + 1) + ")";
}

}  // namespace

void ProductionPlan::place(int m, int t, int pattern, int duration) {
  at(m, t) = Cell::start(pattern);
  for (int a = 1; a < duration; ++a) at(m, t + a) = Cell::cont();
}

std::int64_t PlanMetrics::total_surplus() const {
  std::int64_t total = 0;
  for (const auto& row : surplus) {
    for (auto s : row) total += std::max<std::int64_t>(s, 0);
  }
  return total;
}

std::vector<std::vector<std::int64_t>> produced_counts(const Instance& inst, const PatternCatalog& cat,
                                                       const ProductionPlan& plan) {
  std::vector<std::vector<std::int64_t>> produced(inst.num_types());
  for (int c = 0; c < inst.num_types(); ++c) produced[c].assign(inst.beam_types[c].lengths.size(), 0);
  for (int m = 0; m < plan.molds(); ++m) {
    for (int t = 0; t < plan.periods(); ++t) {
      const auto& cell = plan.at(m, t);
      if (cell.kind != Cell::Kind::start) continue;
      if (cell.pattern < 1 || cell.pattern > cat.num_patterns()) continue;
      const auto& p = cat.pattern(cell.pattern);
      if (p.beam_type < 0 || p.beam_type >= inst.num_types()) continue;
      // Only starts completing within the horizon deliver beams.
      if (t + inst.beam_types[p.beam_type].curing_time > inst.periods) continue;
      for (std::size_t k = 0; k < p.counts.size() && k < produced[p.beam_type].size(); ++k) {
        produced[p.beam_type][k] += p.counts[k];
      }
    }
  }
  return produced;
}

std::vector<std::string> verify(const Instance& inst, const PatternCatalog& cat,
                                const ProductionPlan& plan) {
  std::vector<std::string> out;
  if (plan.molds() != inst.num_molds() || plan.periods() != inst.periods) {
    out.push_back("plan is " + std::to_string(plan.molds()) + "x" + std::to_string(plan.periods()) +
                  " but the instance has " + std::to_string(inst.num_molds()) + " molds and " +
                  std::to_string(inst.periods) + " periods");
    return out;
  }
  const int horizon = inst.periods;
  for (int m = 0; m < plan.molds(); ++m) {
    int t = 0;
    while (t < horizon) {
      const auto& cell = plan.at(m, t);
      if (cell.kind == Cell::Kind::idle) {
        ++t;
        continue;
      }
      if (cell.kind == Cell::Kind::cont) {
        out.push_back(t == 0 ? "continuation at the first period " + at_cell(m, t)
                             : "continuation at " + at_cell(m, t) + " is not preceded by a running pattern");
        ++t;
        continue;
      }
      const int i = cell.pattern;
      if (i < 1 || i > cat.num_patterns()) {
        out.push_back("start at " + at_cell(m, t) + " references unknown pattern " + std::to_string(i));
        ++t;
        continue;
      }
      const auto& p = cat.pattern(i);
      if (p.beam_type < 0 || p.beam_type >= inst.num_types() ||
          p.counts.size() != inst.beam_types[p.beam_type].lengths.size()) {
        out.push_back("pattern " + std::to_string(i) + " does not match its beam type");
        ++t;
        continue;
      }
      const Length used = used_capacity(p, inst);
      if (used > inst.molds[m]) {
        out.push_back("pattern " + std::to_string(i) + " at " + at_cell(m, t) + " uses " +
                      format_decimal(used.units, inst.unit_scale) + " which exceeds capacity " +
                      format_decimal(inst.molds[m].units, inst.unit_scale));
      } else if (!cat.in_compatible(i, m)) {
        out.push_back("pattern " + std::to_string(i) + " at " + at_cell(m, t) +
                      " is not admitted for this mold");
      }
      const int duration = inst.beam_types[p.beam_type].curing_time;
      if (t + duration > horizon) {
        out.push_back("start at " + at_cell(m, t) + " needs " + std::to_string(duration) +
                      " periods and overruns the horizon");
      }
      int run = 1;
      while (run < duration && t + run < horizon && plan.at(m, t + run).kind == Cell::Kind::cont) ++run;
      if (run < duration && t + run < horizon) {
        out.push_back("start at " + at_cell(m, t) + " expects a run of " + std::to_string(duration) +
                      " periods but only " + std::to_string(run) + " are reserved");
      }
      t += run;
    }
  }

  const auto produced = produced_counts(inst, cat, plan);
  for (int c = 0; c < inst.num_types(); ++c) {
    const auto& bt = inst.beam_types[c];
    for (int k = 0; k < bt.num_lengths(); ++k) {
      if (produced[c][k] < bt.demands[k]) {
        out.push_back("demand of type " + std::to_string(c + 1) + " length " +
                      format_decimal(bt.lengths[k].units, inst.unit_scale) + " not met: " +
                      std::to_string(produced[c][k]) + " < " + std::to_string(bt.demands[k]));
      }
    }
  }
  return out;
}

PlanMetrics metrics(const Instance& inst, const PatternCatalog& cat, const ProductionPlan& plan) {
  if (auto v = verify(inst, cat, plan); !v.empty()) {
    throw UnverifiedPlan("plan does not verify: " + v.front());
  }
  PlanMetrics pm;
  for (int m = 0; m < plan.molds(); ++m) {
    for (int t = 0; t < plan.periods(); ++t) {
      const auto& cell = plan.at(m, t);
      if (cell.kind == Cell::Kind::idle) continue;
      ++pm.total_completion;
      pm.makespan = std::max(pm.makespan, t + 1);
      if (cell.kind == Cell::Kind::start) {
        const auto& p = cat.pattern(cell.pattern);
        const int e = inst.beam_types[p.beam_type].curing_time;
        pm.total_idle += e * (inst.molds[m] - used_capacity(p, inst)).units;
      }
    }
  }
  pm.produced = produced_counts(inst, cat, plan);
  pm.demand_met = true;
  pm.surplus = pm.produced;
  for (int c = 0; c < inst.num_types(); ++c) {
    for (int k = 0; k < inst.beam_types[c].num_lengths(); ++k) {
      pm.surplus[c][k] -= inst.beam_types[c].demands[k];
      if (pm.surplus[c][k] < 0) pm.demand_met = false;
    }
  }
  return pm;
}

ProductionPlan decode(const IlpModel& model, const IlpSolution& sol, const PatternCatalog& cat) {
  int molds = cat.num_molds();
  int periods = 0;
  for (const auto& v : model.variables()) {
    if (v.key.kind == VarKey::Kind::start) periods = std::max(periods, v.key.period + 1);
  }
  ProductionPlan plan(molds, periods);
  if (sol.values.empty()) return plan;
  if (sol.values.size() != model.variables().size()) throw DecodeError("assignment size mismatch");
  for (int j = 0; j < model.num_variables(); ++j) {
    const auto& key = model.variables()[j].key;
    if (key.kind != VarKey::Kind::start || sol.values[j] == 0) continue;
    auto& cell = plan.at(key.mold, key.period);
    if (cell.kind != Cell::Kind::idle) {
      throw DecodeError("two patterns assigned to " + at_cell(key.mold, key.period));
    }
    cell = key.pattern == 0 ? Cell::cont() : Cell::start(key.pattern);
  }
  return plan;
}

std::string write_plan(const Instance& inst, const PatternCatalog& cat, const ProductionPlan& plan,
                       const std::string& instance_ref) {
  std::ostringstream out;
  out << "# precast plan\n";
  out << "instance: " << (instance_ref.empty() ? inst.name : instance_ref) << "\n";
  out << "patterns: " << to_string(cat.mode()) << "\n";
  out << "molds: " << plan.molds() << "\n";
  out << "periods: " << plan.periods() << "\n";
  std::map<int, bool> used;
  for (int m = 0; m < plan.molds(); ++m) {
    for (int t = 0; t < plan.periods(); ++t) {
      if (plan.at(m, t).kind == Cell::Kind::start) used[plan.at(m, t).pattern] = true;
    }
  }
  for (const auto& [i, _] : used) {
    const auto& p = cat.pattern(i);
    out << "pattern " << i << ": type=" << p.beam_type + 1 << " counts=";
    for (std::size_t k = 0; k < p.counts.size(); ++k) out << (k ? "," : "") << p.counts[k];
    out << "\n";
  }
  out << "grid:\n";
  for (int m = 0; m < plan.molds(); ++m) {
    for (int t = 0; t < plan.periods(); ++t) {
      const auto& cell = plan.at(m, t);
      if (t) out << ' ';
      switch (cell.kind) {
        case Cell::Kind::idle: out << '.'; break;
        case Cell::Kind::cont: out << 'C'; break;
        case Cell::Kind::start: out << 'S' << cell.pattern; break;
      }
    }
    out << "\n";
  }
  return out.str();
}

Schedule read_plan(std::string_view text, const Instance& inst) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int molds = -1, periods = -1;
  std::map<int, Pattern> table;
  std::vector<std::vector<std::string>> rows;
  bool in_grid = false;

  const auto fail = [&](const std::string& msg) -> ParseError { return ParseError(msg, line_no, "plan"); };
  const auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw fail("'" + s + "' is not an integer");
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (in_grid) {
      std::istringstream tokens(line);
      std::vector<std::string> row;
      for (std::string tok; tokens >> tok;) row.push_back(tok);
      rows.push_back(std::move(row));
      continue;
    }
    if (line == "grid:") {
      in_grid = true;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw fail("expected 'key: value'");
    const std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    if (key == "instance" || key == "patterns") continue;
    if (key == "molds") {
      molds = to_int(value);
    } else if (key == "periods") {
      periods = to_int(value);
    } else if (key.rfind("pattern ", 0) == 0) {
      const int index = to_int(key.substr(8));
      std::istringstream fields(value);
      std::string type_field, counts_field;
      fields >> type_field >> counts_field;
      if (type_field.rfind("type=", 0) != 0 || counts_field.rfind("counts=", 0) != 0) {
        throw fail("pattern line must be 'pattern <i>: type=<c> counts=<a1,a2,...>'");
      }
      Pattern p;
      p.beam_type = to_int(type_field.substr(5)) - 1;
      std::istringstream counts(counts_field.substr(7));
      for (std::string a; std::getline(counts, a, ',');) p.counts.push_back(to_int(a));
      if (p.beam_type < 0 || p.beam_type >= inst.num_types() ||
          p.counts.size() != inst.beam_types[p.beam_type].lengths.size()) {
        throw fail("pattern " + std::to_string(index) + " does not match the instance");
      }
      if (!table.emplace(index, std::move(p)).second) {
        throw fail("pattern " + std::to_string(index) + " listed twice");
      }
    } else {
      throw fail("unknown field '" + key + "'");
    }
  }
  if (!in_grid) throw ParseError("missing 'grid:' section", 0, "plan");
  if (molds < 0 || periods < 0) throw ParseError("missing molds/periods header", 0, "plan");
  if (static_cast<int>(rows.size()) != molds) {
    throw ParseError("grid has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(molds),
                     0, "plan");
  }

  std::vector<Pattern> patterns;
  std::map<int, int> remap;
  for (const auto& [index, p] : table) {
    patterns.push_back(p);
    remap[index] = static_cast<int>(patterns.size());
  }
  Schedule s{PatternCatalog::from_patterns(inst, std::move(patterns), CatalogMode::listed),
             ProductionPlan(molds, periods)};
  for (int m = 0; m < molds; ++m) {
    if (static_cast<int>(rows[m].size()) != periods) {
      throw ParseError("grid row " + std::to_string(m + 1) + " has " + std::to_string(rows[m].size()) +
                           " cells, expected " + std::to_string(periods),
                       0, "plan");
    }
    for (int t = 0; t < periods; ++t) {
      const auto& tok = rows[m][t];
      if (tok == ".") continue;
      if (tok == "C") {
        s.plan.at(m, t) = Cell::cont();
        continue;
      }
      if (tok.size() < 2 || tok[0] != 'S') throw ParseError("bad cell '" + tok + "'", 0, "plan");
      const int index = to_int(tok.substr(1));
      auto it = remap.find(index);
      if (it == remap.end()) {
        throw ParseError("cell references unlisted pattern " + std::to_string(index), 0, "plan");
      }
      s.plan.at(m, t) = Cell::start(it->second);
    }
  }
  return s;
}

}  // namespace precast
