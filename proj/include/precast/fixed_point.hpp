#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace precast {

// A non-negative length stored as an integer count of base units. The scale
// (base units per input unit) lives on the Instance; comparisons are exact.
struct Length {
  std::int64_t units = 0;

  constexpr Length() = default;
  constexpr explicit Length(std::int64_t u) : units(u) {}

  constexpr auto operator<=>(const Length&) const = default;

  constexpr Length& operator+=(Length other) {
    units += other.units;
    return *this;
  }
  constexpr Length& operator-=(Length other) {
    units -= other.units;
    return *this;
  }
  friend constexpr Length operator+(Length a, Length b) { return a += b; }
  friend constexpr Length operator-(Length a, Length b) { return a -= b; }
  friend constexpr Length operator*(std::int64_t n, Length a) {
    return Length{n * a.units};
  }
};

// Renders `value / scale` as an exact decimal with no trailing zeros and no
// exponent. `scale` must be a power of ten.
std::string format_decimal(std::int64_t value, std::int64_t scale);

// Parses a non-negative decimal literal into base units. Throws
// std::invalid_argument when the text is not a decimal or carries more
// fractional digits than `scale` can represent, and std::out_of_range on
// overflow.
std::int64_t parse_decimal(std::string_view text, std::int64_t scale);

// Returns the number of decimal digits d with 10^d == scale, or -1 if scale
// is not a power of ten.
int decimal_digits(std::int64_t scale);

}  // namespace precast
