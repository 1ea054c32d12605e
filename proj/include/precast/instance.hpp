#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "precast/fixed_point.hpp"

namespace precast {

struct BeamType {
  int curing_time = 1;
  // Strictly increasing; k-indices everywhere refer to this order.
  std::vector<Length> lengths;
  std::vector<int> demands;

  int num_lengths() const { return static_cast<int>(lengths.size()); }
  bool operator==(const BeamType&) const = default;
};

// Problem data. Treated as immutable once built; every algorithm takes it by
// const reference.
struct Instance {
  std::string name;
  std::int64_t unit_scale = 1000;
  std::vector<Length> molds;
  int periods = 0;
  std::vector<BeamType> beam_types;

  int num_molds() const { return static_cast<int>(molds.size()); }
  int num_types() const { return static_cast<int>(beam_types.size()); }

  // Largest curing time over all beam types (R).
  int max_curing_time() const;
  // Index of the shortest mold; lowest index on ties.
  int shortest_mold() const;
  Length longest_mold_capacity() const;
  std::int64_t total_demand() const;

  bool operator==(const Instance&) const = default;
};

// Syntax problem in an instance document. `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, std::string field)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line),
        field_(std::move(field)) {}

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// Well-formed document whose content violates an Instance invariant.
class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Parses the YAML instance format (see docs/formats.md). Lengths within a
// type are sorted ascending together with their demands.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

// Empty iff every invariant holds.
std::vector<std::string> validate_instance(const Instance& inst);

std::string serialize_instance(const Instance& inst);

}  // namespace precast
