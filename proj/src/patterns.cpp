#include "precast/patterns.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace precast {

namespace {

// Catalog order: type ascending, then lexicographically larger counts first.
bool catalog_order(const Pattern& a, const Pattern& b) {
  if (a.beam_type != b.beam_type) return a.beam_type < b.beam_type;
  return a.counts > b.counts;
}

Length shortest_length(const BeamType& bt) {
  return bt.lengths.empty() ? Length{} : bt.lengths.front();
}

class Enumerator {
 public:
  Enumerator(const Instance& inst, Length capacity, bool maximal_only, std::size_t ceiling,
             std::vector<Pattern>& out)
      : inst_(inst), capacity_(capacity), maximal_only_(maximal_only), ceiling_(ceiling), out_(out) {}

  void run() {
    for (int c = 0; c < inst_.num_types(); ++c) {
      type_ = c;
      const auto& bt = inst_.beam_types[c];
      counts_.assign(bt.lengths.size(), 0);
      min_length_ = shortest_length(bt);
      recurse(0, capacity_);
    }
  }

 private:
  void recurse(int k, Length remaining) {
    const auto& bt = inst_.beam_types[type_];
    if (k == bt.num_lengths()) {
      const bool empty = std::all_of(counts_.begin(), counts_.end(), [](int a) { return a == 0; });
      if (empty) return;
      if (maximal_only_ && remaining >= min_length_) return;
      if (out_.size() >= ceiling_) {
        throw CatalogTooLarge("pattern count exceeds the ceiling of " + std::to_string(ceiling_) +
                              "; use the qc-maximal pattern mode for this instance");
      }
      out_.push_back(Pattern{type_, counts_});
      return;
    }
    const Length len = bt.lengths[k];
    const auto most = remaining.units / len.units;
    for (auto a = most; a >= 0; --a) {
      counts_[k] = static_cast<int>(a);
      recurse(k + 1, remaining - a * len);
    }
    counts_[k] = 0;
  }

  const Instance& inst_;
  Length capacity_;
  bool maximal_only_;
  std::size_t ceiling_;
  std::vector<Pattern>& out_;
  int type_ = 0;
  std::vector<int> counts_;
  Length min_length_;
};

}  // namespace

int Pattern::distinct_lengths() const {
  return static_cast<int>(std::count_if(counts.begin(), counts.end(), [](int a) { return a > 0; }));
}

Length used_capacity(const Pattern& p, const Instance& inst) {
  if (p.is_continuation()) return Length{};
  const auto& bt = inst.beam_types.at(p.beam_type);
  Length total;
  for (std::size_t k = 0; k < p.counts.size(); ++k) total += p.counts[k] * bt.lengths.at(k);
  return total;
}

std::int64_t idle_cost(const Pattern& p, Length mold, const Instance& inst) {
  if (p.is_continuation()) return 0;
  const Length used = used_capacity(p, inst);
  if (used > mold) {
    throw IncompatiblePattern("pattern uses " + format_decimal(used.units, inst.unit_scale) +
                              " which exceeds mold capacity " +
                              format_decimal(mold.units, inst.unit_scale));
  }
  return inst.beam_types.at(p.beam_type).curing_time * (mold - used).units;
}

bool is_maximal(const Pattern& p, Length mold, const Instance& inst) {
  if (p.is_continuation()) return false;
  const Length used = used_capacity(p, inst);
  return used <= mold && used + shortest_length(inst.beam_types.at(p.beam_type)) > mold;
}

std::vector<Pattern> enumerate_maximal_patterns(const Instance& inst, int mold_index,
                                                std::size_t ceiling) {
  std::vector<Pattern> out;
  Enumerator(inst, inst.molds.at(mold_index), true, ceiling, out).run();
  return out;
}

std::vector<Pattern> enumerate_feasible_patterns(const Instance& inst, Length capacity,
                                                 std::size_t ceiling) {
  std::vector<Pattern> out;
  Enumerator(inst, capacity, false, ceiling, out).run();
  return out;
}

std::string to_string(CatalogMode mode) {
  switch (mode) {
    case CatalogMode::all_feasible: return "all";
    case CatalogMode::maximal: return "maximal";
    case CatalogMode::qc_maximal: return "qc-maximal";
    case CatalogMode::listed: return "listed";
  }
  return "listed";
}

CatalogMode catalog_mode_from_string(const std::string& text) {
  if (text == "all" || text == "all-feasible") return CatalogMode::all_feasible;
  if (text == "maximal") return CatalogMode::maximal;
  if (text == "qc-maximal") return CatalogMode::qc_maximal;
  if (text == "listed") return CatalogMode::listed;
  throw std::invalid_argument("unknown pattern mode '" + text + "'");
}

bool PatternCatalog::in_compatible(int i, int m) const {
  const auto& q = compatible_.at(m);
  return std::binary_search(q.begin(), q.end(), i);
}

std::optional<int> PatternCatalog::find(const Pattern& p) const {
  for (std::size_t i = 1; i < patterns_.size(); ++i) {
    if (patterns_[i] == p) return static_cast<int>(i);
  }
  return std::nullopt;
}

PatternCatalog PatternCatalog::from_patterns(const Instance& inst, std::vector<Pattern> patterns,
                                             CatalogMode mode,
                                             const std::vector<std::vector<bool>>& membership) {
  PatternCatalog cat;
  cat.mode_ = mode;
  const int molds = inst.num_molds();
  const int max_e = inst.max_curing_time();

  cat.patterns_.push_back(Pattern{});
  cat.used_.push_back(Length{});
  cat.duration_.push_back(0);
  cat.idle_.emplace_back(molds, std::int64_t{0});
  cat.compatible_.assign(molds, {});
  cat.by_curing_.assign(max_e + 1, {});

  std::vector<std::vector<bool>> member;
  std::map<Pattern, std::size_t> seen;
  for (std::size_t j = 0; j < patterns.size(); ++j) {
    const auto& p = patterns[j];
    if (p.is_continuation() || p.distinct_lengths() == 0) {
      throw std::invalid_argument("catalog patterns must be non-empty");
    }
    if (p.beam_type >= inst.num_types() ||
        p.counts.size() != inst.beam_types[p.beam_type].lengths.size()) {
      throw std::invalid_argument("pattern does not match its beam type");
    }
    // Deduplicate, merging membership.
    auto [slot, fresh] = seen.try_emplace(p, cat.patterns_.size());
    const std::size_t idx = slot->second;
    if (fresh) {
      cat.patterns_.push_back(p);
      member.emplace_back(molds, false);
    }
    for (int m = 0; m < molds; ++m) {
      const bool in = membership.empty() ? precast::used_capacity(p, inst) <= inst.molds[m]
                                         : static_cast<bool>(membership[j][m]);
      if (in) member[idx - 1][m] = true;
    }
  }

  for (std::size_t i = 1; i < cat.patterns_.size(); ++i) {
    const auto& p = cat.patterns_[i];
    const Length used = precast::used_capacity(p, inst);
    const int e = inst.beam_types[p.beam_type].curing_time;
    cat.used_.push_back(used);
    cat.duration_.push_back(e);
    std::vector<std::optional<std::int64_t>> row(molds);
    for (int m = 0; m < molds; ++m) {
      if (used <= inst.molds[m]) row[m] = e * (inst.molds[m] - used).units;
      if (member[i - 1][m]) {
        if (used > inst.molds[m]) throw std::invalid_argument("membership violates capacity");
        cat.compatible_[m].push_back(static_cast<int>(i));
      }
    }
    cat.idle_.push_back(std::move(row));
    cat.by_curing_[e].push_back(static_cast<int>(i));
  }
  return cat;
}

PatternCatalog select_qc_maximal(const Instance& inst, const CatalogOptions& options) {
  const int shortest = inst.shortest_mold();
  const auto base_all = enumerate_maximal_patterns(inst, shortest, options.max_patterns);

  std::vector<Pattern> selected;
  for (int c = 0; c < inst.num_types(); ++c) {
    const auto& bt = inst.beam_types[c];
    std::vector<Pattern> base;
    for (const auto& p : base_all) {
      if (p.beam_type == c) base.push_back(p);
    }
    std::vector<Pattern> chosen;
    if (!options.qc_filter) {
      chosen = base;
    } else if (!base.empty()) {
      int best = 0;
      for (const auto& p : base) best = std::max(best, p.distinct_lengths());
      for (const auto& p : base) {
        if (p.distinct_lengths() == best) chosen.push_back(p);
      }
      const auto uncovered = [&] {
        std::vector<int> out;
        for (int k = 0; k < bt.num_lengths(); ++k) {
          if (bt.demands[k] <= 0) continue;
          const bool covered =
              std::any_of(chosen.begin(), chosen.end(), [&](const Pattern& p) { return p.counts[k] > 0; });
          if (!covered) out.push_back(k);
        }
        return out;
      };
      for (int level = best - 1; level >= 1; --level) {
        const auto missing = uncovered();
        if (missing.empty()) break;
        for (const auto& p : base) {
          if (p.distinct_lengths() != level) continue;
          const bool helps =
              std::any_of(missing.begin(), missing.end(), [&](int k) { return p.counts[k] > 0; });
          if (helps) chosen.push_back(p);
        }
      }
    }

    // Demanded lengths longer than the shortest mold: cover them with the
    // widest-coverage maximal patterns of the smallest mold that fits.
    for (int k = 0; k < bt.num_lengths(); ++k) {
      if (bt.demands[k] <= 0) continue;
      const bool covered =
          std::any_of(chosen.begin(), chosen.end(), [&](const Pattern& p) { return p.counts[k] > 0; });
      if (covered) continue;
      int host = -1;
      for (int m = 0; m < inst.num_molds(); ++m) {
        if (inst.molds[m] >= bt.lengths[k] && (host < 0 || inst.molds[m] < inst.molds[host])) host = m;
      }
      if (host < 0) {
        throw std::invalid_argument("length " + format_decimal(bt.lengths[k].units, inst.unit_scale) +
                                    " of type " + std::to_string(c + 1) +
                                    " is demanded but fits no mold");
      }
      std::vector<Pattern> candidates;
      for (const auto& p : enumerate_maximal_patterns(inst, host, options.max_patterns)) {
        if (p.beam_type == c && p.counts[k] > 0) candidates.push_back(p);
      }
      int best = 0;
      for (const auto& p : candidates) best = std::max(best, p.distinct_lengths());
      for (const auto& p : candidates) {
        if (p.distinct_lengths() == best) chosen.push_back(p);
      }
    }
    selected.insert(selected.end(), chosen.begin(), chosen.end());
  }
  std::sort(selected.begin(), selected.end(), catalog_order);
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  if (selected.size() > options.max_patterns) {
    throw CatalogTooLarge("qc-maximal pattern count exceeds the ceiling of " +
                          std::to_string(options.max_patterns));
  }
  return PatternCatalog::from_patterns(inst, std::move(selected), CatalogMode::qc_maximal);
}

PatternCatalog build_catalog(const Instance& inst, CatalogMode mode, const CatalogOptions& options) {
  switch (mode) {
    case CatalogMode::all_feasible: {
      auto patterns = enumerate_feasible_patterns(inst, inst.longest_mold_capacity(),
                                                  options.max_patterns);
      return PatternCatalog::from_patterns(inst, std::move(patterns), mode);
    }
    case CatalogMode::maximal: {
      std::map<Pattern, std::vector<bool>> membership;
      for (int m = 0; m < inst.num_molds(); ++m) {
        for (auto& p : enumerate_maximal_patterns(inst, m, options.max_patterns)) {
          auto [it, inserted] = membership.try_emplace(std::move(p), inst.num_molds(), false);
          it->second[m] = true;
        }
        if (membership.size() > options.max_patterns) {
          throw CatalogTooLarge("pattern count exceeds the ceiling of " +
                                std::to_string(options.max_patterns) +
                                "; use the qc-maximal pattern mode for this instance");
        }
      }
      std::vector<Pattern> patterns;
      for (const auto& [p, _] : membership) patterns.push_back(p);
      std::sort(patterns.begin(), patterns.end(), catalog_order);
      std::vector<std::vector<bool>> rows;
      for (const auto& p : patterns) rows.push_back(membership.at(p));
      return PatternCatalog::from_patterns(inst, std::move(patterns), mode, rows);
    }
    case CatalogMode::qc_maximal:
      return select_qc_maximal(inst, options);
    case CatalogMode::listed:
      break;
  }
  throw std::invalid_argument("listed catalogs are built with PatternCatalog::from_patterns");
}

std::string dump_catalog(const PatternCatalog& cat, const Instance& inst) {
  std::ostringstream out;
  for (int i = 1; i <= cat.num_patterns(); ++i) {
    const auto& p = cat.pattern(i);
    out << i << "; " << p.beam_type + 1 << "; (";
    for (std::size_t k = 0; k < p.counts.size(); ++k) out << (k ? "," : "") << p.counts[k];
    out << "); " << format_decimal(cat.used_capacity(i).units, inst.unit_scale) << "; "
        << cat.duration(i) << "; molds=[";
    bool first = true;
    for (int m = 0; m < cat.num_molds(); ++m) {
      if (!cat.in_compatible(i, m)) continue;
      out << (first ? "" : ",") << m + 1;
      first = false;
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace precast
