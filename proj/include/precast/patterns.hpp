#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "precast/instance.hpp"

namespace precast {

// A beam type plus how many beams of each of its lengths are cast together
// in one mold. The continuation marker is the pattern with beam_type == -1.
struct Pattern {
  int beam_type = -1;       // 0-based
  std::vector<int> counts;  // aligned with the type's canonical length order

  bool is_continuation() const { return beam_type < 0; }
  int distinct_lengths() const;
  auto operator<=>(const Pattern&) const = default;
};

class IncompatiblePattern : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CatalogTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Length used_capacity(const Pattern& p, const Instance& inst);

// E * (L - u) in base units. Throws IncompatiblePattern when u > L.
std::int64_t idle_cost(const Pattern& p, Length mold, const Instance& inst);

// True when no further beam of the pattern's type fits into `mold`.
bool is_maximal(const Pattern& p, Length mold, const Instance& inst);

// Patterns of one mold to which no beam of the same type can be added.
// Ordered by type, then lexicographically larger counts first.
std::vector<Pattern> enumerate_maximal_patterns(const Instance& inst, int mold_index,
                                                std::size_t ceiling = SIZE_MAX);

// Every non-empty pattern with u <= capacity, same order as above.
std::vector<Pattern> enumerate_feasible_patterns(const Instance& inst, Length capacity,
                                                 std::size_t ceiling = SIZE_MAX);

enum class CatalogMode { all_feasible, maximal, qc_maximal, listed };

std::string to_string(CatalogMode mode);
CatalogMode catalog_mode_from_string(const std::string& text);

struct CatalogOptions {
  std::size_t max_patterns = 200000;
  // qc-maximal only: keep just the patterns covering the most distinct
  // lengths (false keeps every pattern maximal on the shortest mold).
  bool qc_filter = true;
};

// Indexed pattern set. Index 0 is the continuation marker P_0; real patterns
// are 1..size()-1.
class PatternCatalog {
 public:
  PatternCatalog() = default;

  CatalogMode mode() const { return mode_; }
  std::size_t size() const { return patterns_.size(); }
  int num_patterns() const { return static_cast<int>(patterns_.size()) - 1; }
  int num_molds() const { return static_cast<int>(compatible_.size()); }

  const Pattern& pattern(int i) const { return patterns_.at(i); }
  const std::vector<Pattern>& patterns() const { return patterns_; }
  Length used_capacity(int i) const { return used_.at(i); }
  int duration(int i) const { return duration_.at(i); }
  // E_i * (L_m - u_i) when the pattern fits mold m, nullopt otherwise.
  std::optional<std::int64_t> idle_cost(int i, int m) const { return idle_.at(i).at(m); }
  // Q(m), ascending.
  const std::vector<int>& compatible(int m) const { return compatible_.at(m); }
  bool in_compatible(int i, int m) const;
  // S(j), j = 1..R.
  const std::vector<int>& by_curing(int j) const { return by_curing_.at(j); }
  int max_duration() const { return static_cast<int>(by_curing_.size()) - 1; }

  std::optional<int> find(const Pattern& p) const;

  // Builds a catalog from explicit patterns (deduplicated, P_0 prepended).
  // When `membership` is empty Q(m) is the capacity test; otherwise
  // membership[j][m] decides whether patterns[j] belongs to Q(m).
  static PatternCatalog from_patterns(const Instance& inst, std::vector<Pattern> patterns,
                                      CatalogMode mode,
                                      const std::vector<std::vector<bool>>& membership = {});

 private:
  CatalogMode mode_ = CatalogMode::listed;
  std::vector<Pattern> patterns_;
  std::vector<Length> used_;
  std::vector<int> duration_;
  std::vector<std::vector<std::optional<std::int64_t>>> idle_;
  std::vector<std::vector<int>> compatible_;
  std::vector<std::vector<int>> by_curing_;
};

PatternCatalog build_catalog(const Instance& inst, CatalogMode mode,
                             const CatalogOptions& options = {});

PatternCatalog select_qc_maximal(const Instance& inst, const CatalogOptions& options = {});

// One line per pattern: `index; type; counts; u; E; molds=[...]` (1-based).
std::string dump_catalog(const PatternCatalog& cat, const Instance& inst);

}  // namespace precast
