#include "precast/instance.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace precast {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

std::int64_t scalar_int(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) throw ParseError("expected an integer", line_of(node), field);
  const std::string& text = node.Scalar();
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw ParseError("'" + text + "' is not an integer", line_of(node), field);
  }
  return value;
}

Length scalar_length(const YAML::Node& node, const std::string& field, std::int64_t scale) {
  if (!node.IsScalar()) throw ParseError("expected a decimal number", line_of(node), field);
  try {
    return Length{parse_decimal(node.Scalar(), scale)};
  } catch (const std::exception& e) {
    throw ParseError(e.what(), line_of(node), field);
  }
}

YAML::Node require_sequence(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) throw ParseError("expected a list", line_of(node), field);
  return node;
}

}  // namespace

InstanceError::InstanceError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

int Instance::max_curing_time() const {
  int r = 0;
  for (const auto& bt : beam_types) r = std::max(r, bt.curing_time);
  return r;
}

int Instance::shortest_mold() const {
  return static_cast<int>(std::min_element(molds.begin(), molds.end()) - molds.begin());
}

Length Instance::longest_mold_capacity() const {
  return molds.empty() ? Length{} : *std::max_element(molds.begin(), molds.end());
}

std::int64_t Instance::total_demand() const {
  std::int64_t total = 0;
  for (const auto& bt : beam_types) {
    total = std::accumulate(bt.demands.begin(), bt.demands.end(), total);
  }
  return total;
}

Instance parse_instance(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ParseError(e.msg, e.mark.line + 1, "");
  }
  if (!root.IsMap()) throw ParseError("instance document must be a mapping", 1, "");

  static const std::set<std::string> kTopKeys = {"name", "unit_scale", "molds", "periods",
                                                 "beam_types"};
  static const std::set<std::string> kTypeKeys = {"curing_time", "lengths", "demands"};
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (!kTopKeys.contains(key)) {
      throw ParseError("unknown field '" + key + "'", line_of(kv.first), key);
    }
  }
  for (const char* required : {"molds", "periods", "beam_types"}) {
    if (!root[required]) {
      throw ParseError(std::string("missing field '") + required + "'", 0, required);
    }
  }

  Instance inst;
  if (root["name"]) inst.name = root["name"].as<std::string>();
  if (root["unit_scale"]) {
    inst.unit_scale = scalar_int(root["unit_scale"], "unit_scale");
    if (decimal_digits(inst.unit_scale) < 0) {
      throw ParseError("unit_scale must be a positive power of ten",
                       line_of(root["unit_scale"]), "unit_scale");
    }
  }
  const auto periods = scalar_int(root["periods"], "periods");
  inst.periods = static_cast<int>(periods);

  for (const auto& node : require_sequence(root["molds"], "molds")) {
    inst.molds.push_back(scalar_length(node, "molds", inst.unit_scale));
  }

  int type_no = 0;
  for (const auto& type_node : require_sequence(root["beam_types"], "beam_types")) {
    ++type_no;
    const std::string where = "beam_types[" + std::to_string(type_no) + "]";
    if (!type_node.IsMap()) throw ParseError("expected a mapping", line_of(type_node), where);
    for (const auto& kv : type_node) {
      const auto key = kv.first.as<std::string>();
      if (!kTypeKeys.contains(key)) {
        throw ParseError("unknown field '" + key + "'", line_of(kv.first), where + "." + key);
      }
    }
    for (const char* required : {"curing_time", "lengths", "demands"}) {
      if (!type_node[required]) {
        throw ParseError(std::string("missing field '") + required + "'", line_of(type_node),
                         where + "." + required);
      }
    }
    BeamType bt;
    bt.curing_time = static_cast<int>(scalar_int(type_node["curing_time"], where + ".curing_time"));
    std::vector<std::pair<Length, int>> rows;
    const auto lengths = require_sequence(type_node["lengths"], where + ".lengths");
    const auto demands = require_sequence(type_node["demands"], where + ".demands");
    if (lengths.size() != demands.size()) {
      throw ParseError("lengths and demands must have the same size", line_of(type_node["demands"]),
                       where + ".demands");
    }
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      rows.emplace_back(scalar_length(lengths[k], where + ".lengths", inst.unit_scale),
                        static_cast<int>(scalar_int(demands[k], where + ".demands")));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (rows[k].first == rows[k - 1].first) {
        throw InstanceError({"duplicate length " +
                             format_decimal(rows[k].first.units, inst.unit_scale) +
                             " in beam type " + std::to_string(type_no)});
      }
    }
    for (const auto& [len, dem] : rows) {
      bt.lengths.push_back(len);
      bt.demands.push_back(dem);
    }
    inst.beam_types.push_back(std::move(bt));
  }

  if (auto violations = validate_instance(inst); !violations.empty()) {
    throw InstanceError(std::move(violations));
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  Instance inst = parse_instance(buffer.str());
  return inst;
}

std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  if (decimal_digits(inst.unit_scale) < 0) out.push_back("unit_scale must be a power of ten");
  if (inst.molds.empty()) out.push_back("at least one mold is required");
  if (inst.periods < 1) out.push_back("periods must be positive");
  if (inst.beam_types.empty()) out.push_back("at least one beam type is required");
  for (int m = 0; m < inst.num_molds(); ++m) {
    if (inst.molds[m].units <= 0) {
      out.push_back("mold " + std::to_string(m + 1) + ": capacity must be positive");
    }
  }
  const auto longest = inst.longest_mold_capacity();
  const auto dec = [&](Length l) {
    return decimal_digits(inst.unit_scale) < 0 ? std::to_string(l.units)
                                               : format_decimal(l.units, inst.unit_scale);
  };
  for (int c = 0; c < inst.num_types(); ++c) {
    const auto& bt = inst.beam_types[c];
    const std::string type = "beam type " + std::to_string(c + 1);
    if (bt.curing_time < 1) out.push_back(type + ": curing time must be at least 1");
    if (inst.periods >= 1 && bt.curing_time > inst.periods) {
      out.push_back(type + ": curing time exceeds horizon");
    }
    if (bt.lengths.empty()) out.push_back(type + ": at least one length is required");
    if (bt.lengths.size() != bt.demands.size()) {
      out.push_back(type + ": lengths and demands differ in size");
      continue;
    }
    for (int k = 0; k < bt.num_lengths(); ++k) {
      if (bt.lengths[k].units <= 0) {
        out.push_back(type + ": length " + std::to_string(k + 1) + " must be positive");
      }
      if (k > 0 && bt.lengths[k] <= bt.lengths[k - 1]) {
        out.push_back(type + ": duplicate length or lengths not strictly increasing at position " +
                      std::to_string(k + 1));
      }
      if (bt.demands[k] < 0) {
        out.push_back(type + ": demand " + std::to_string(k + 1) + " must be non-negative");
      }
      if (bt.demands[k] > 0 && !inst.molds.empty() && bt.lengths[k] > longest) {
        out.push_back("length " + dec(bt.lengths[k]) + " of type " + std::to_string(c + 1) +
                      " (c=" + std::to_string(c + 1) + ", k=" + std::to_string(k + 1) +
                      ") exceeds every mold");
      }
    }
  }
  return out;
}

std::string serialize_instance(const Instance& inst) {
  const auto dec = [&](Length l) { return format_decimal(l.units, inst.unit_scale); };
  std::ostringstream out;
  if (!inst.name.empty()) out << "name: \"" << inst.name << "\"\n";
  out << "unit_scale: " << inst.unit_scale << "\n";
  out << "molds: [";
  for (std::size_t m = 0; m < inst.molds.size(); ++m) out << (m ? ", " : "") << dec(inst.molds[m]);
  out << "]\n";
  out << "periods: " << inst.periods << "\n";
  out << "beam_types:\n";
  for (const auto& bt : inst.beam_types) {
    out << "  - curing_time: " << bt.curing_time << "\n";
    out << "    lengths: [";
    for (std::size_t k = 0; k < bt.lengths.size(); ++k) out << (k ? ", " : "") << dec(bt.lengths[k]);
    out << "]\n";
    out << "    demands: [";
    for (std::size_t k = 0; k < bt.demands.size(); ++k) out << (k ? ", " : "") << bt.demands[k];
    out << "]\n";
  }
  return out.str();
}

}  // namespace precast
