#include "precast/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "precast/oracle.hpp"
#include "precast/patterns.hpp"

namespace precast {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [lo, hi]; portable across standard libraries.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

Instance draw(const GeneratorConfig& cfg, Rng& rng) {
  Instance inst;
  inst.unit_scale = cfg.unit_scale;
  const auto grid = [&](std::int64_t lo, std::int64_t hi) {
    const auto steps = (hi - lo) / cfg.length_step;
    return lo + rng.uniform(0, steps) * cfg.length_step;
  };

  const int molds = static_cast<int>(rng.uniform(cfg.molds_min, cfg.molds_max));
  for (int m = 0; m < molds; ++m) inst.molds.emplace_back(grid(cfg.capacity_min, cfg.capacity_max));
  const Length longest = inst.longest_mold_capacity();

  const int types = static_cast<int>(rng.uniform(cfg.types_min, cfg.types_max));
  const std::int64_t top = std::min(cfg.length_max, longest.units);
  const std::int64_t slots = (top - cfg.length_min) / cfg.length_step + 1;
  for (int c = 0; c < types; ++c) {
    BeamType bt;
    bt.curing_time = static_cast<int>(rng.uniform(cfg.curing_min, cfg.curing_max));
    const int wanted = static_cast<int>(std::min<std::int64_t>(rng.uniform(cfg.lengths_min, cfg.lengths_max), slots));
    std::vector<std::int64_t> picks;
    while (static_cast<int>(picks.size()) < wanted) {
      const auto v = grid(cfg.length_min, top);
      if (std::find(picks.begin(), picks.end(), v) == picks.end()) picks.push_back(v);
    }
    std::sort(picks.begin(), picks.end());
    for (auto v : picks) {
      bt.lengths.emplace_back(v);
      bt.demands.push_back(static_cast<int>(rng.uniform(cfg.demand_min, cfg.demand_max)));
    }
    inst.beam_types.push_back(std::move(bt));
  }

  const int max_curing = inst.max_curing_time();
  if (cfg.periods > 0) {
    inst.periods = std::max(cfg.periods, max_curing);
  } else {
    double work = 0;
    for (const auto& bt : inst.beam_types) {
      double volume = 0;
      for (int k = 0; k < bt.num_lengths(); ++k) {
        volume += static_cast<double>(bt.lengths[k].units) * bt.demands[k];
      }
      work += bt.curing_time * volume;
    }
    double capacity = 0;
    for (auto l : inst.molds) capacity += static_cast<double>(l.units);
    inst.periods = std::max(1, static_cast<int>(std::ceil(cfg.slack * work / capacity)));
    inst.periods = std::max(inst.periods, max_curing);
    if (cfg.periods_max > 0) inst.periods = std::min(inst.periods, std::max(cfg.periods_max, max_curing));
  }
  return inst;
}

}  // namespace

GeneratorConfig GeneratorConfig::preset(const std::string& name) {
  GeneratorConfig cfg;
  if (name == "tiny") {
    cfg.molds_min = 1; cfg.molds_max = 2;
    cfg.capacity_min = 8000; cfg.capacity_max = 12000;
    cfg.types_min = 1; cfg.types_max = 2;
    cfg.curing_min = 1; cfg.curing_max = 2;
    cfg.lengths_min = 1; cfg.lengths_max = 2;
    cfg.length_min = 3000; cfg.length_max = 7000;
    cfg.demand_min = 0; cfg.demand_max = 3;
    cfg.periods_max = 4;
    cfg.oracle_guard = 1e7;
  } else if (name == "small") {
    cfg.molds_min = 2; cfg.molds_max = 3;
    cfg.capacity_min = 10000; cfg.capacity_max = 16000;
    cfg.types_min = 2; cfg.types_max = 3;
    cfg.curing_min = 1; cfg.curing_max = 3;
    cfg.lengths_min = 2; cfg.lengths_max = 3;
    cfg.length_min = 2000; cfg.length_max = 8000;
    cfg.demand_min = 0; cfg.demand_max = 4;
  } else if (name == "medium") {
    cfg.molds_min = 3; cfg.molds_max = 5;
    cfg.capacity_min = 12000; cfg.capacity_max = 24000;
    cfg.types_min = 3; cfg.types_max = 4;
    cfg.curing_min = 1; cfg.curing_max = 4;
    cfg.lengths_min = 2; cfg.lengths_max = 4;
    cfg.length_min = 2000; cfg.length_max = 10000;
    cfg.demand_min = 0; cfg.demand_max = 8;
  } else {
    throw GeneratorError("unknown preset '" + name + "' (expected tiny, small or medium)");
  }
  return cfg;
}

std::string GeneratorConfig::describe() const {
  const auto dec = [&](std::int64_t v) { return format_decimal(v, unit_scale); };
  std::ostringstream out;
  out << "seed=" << seed << " unit_scale=" << unit_scale << " molds=" << molds_min << ".." << molds_max
      << " capacity=" << dec(capacity_min) << ".." << dec(capacity_max) << " types=" << types_min << ".."
      << types_max << " curing=" << curing_min << ".." << curing_max << " lengths_per_type=" << lengths_min
      << ".." << lengths_max << " length=" << dec(length_min) << ".." << dec(length_max)
      << " step=" << dec(length_step) << " demand=" << demand_min << ".." << demand_max
      << " periods=" << (periods > 0 ? std::to_string(periods) : "auto") << " periods_max=" << periods_max
      << " slack=" << slack << " oracle_guard=" << oracle_guard;
  return out.str();
}

Instance generate(const GeneratorConfig& cfg) {
  if (decimal_digits(cfg.unit_scale) < 0) throw GeneratorError("unit_scale must be a power of ten");
  if (cfg.molds_min < 1 || cfg.molds_max < cfg.molds_min) throw GeneratorError("bad mold count range");
  if (cfg.types_min < 1 || cfg.types_max < cfg.types_min) throw GeneratorError("bad type count range");
  if (cfg.curing_min < 1 || cfg.curing_max < cfg.curing_min) throw GeneratorError("bad curing range");
  if (cfg.lengths_min < 1 || cfg.lengths_max < cfg.lengths_min) throw GeneratorError("bad lengths-per-type range");
  if (cfg.demand_min < 0 || cfg.demand_max < cfg.demand_min) throw GeneratorError("bad demand range");
  if (cfg.length_step <= 0 || cfg.length_min <= 0 || cfg.length_max < cfg.length_min) {
    throw GeneratorError("bad length range");
  }
  if (cfg.capacity_min <= 0 || cfg.capacity_max < cfg.capacity_min) throw GeneratorError("bad capacity range");
  if (cfg.length_min > cfg.capacity_min) {
    // Some draws would have no length fitting any mold.
    throw GeneratorError("every length must fit the smallest possible mold (length_min > capacity_min)");
  }
  if (cfg.periods_max > 0 && cfg.periods_max < cfg.curing_max) {
    throw GeneratorError("periods_max is shorter than the longest curing time");
  }

  Rng rng(cfg.seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Instance inst = draw(cfg, rng);
    inst.name = "gen-" + std::to_string(cfg.seed);
    if (cfg.oracle_guard > 0) {
      const auto cat = build_catalog(inst, CatalogMode::maximal);
      if (oracle_search_space(inst, cat) > cfg.oracle_guard) continue;
    }
    if (auto v = validate_instance(inst); !v.empty()) {
      throw GeneratorError("generated instance is invalid: " + v.front());
    }
    return inst;
  }
  throw GeneratorError("no instance within the oracle guard after 10000 draws");
}

}  // namespace precast
