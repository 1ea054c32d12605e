#include "precast/fixed_point.hpp"

#include <limits>
#include <stdexcept>

namespace precast {

int decimal_digits(std::int64_t scale) {
  if (scale <= 0) return -1;
  int digits = 0;
  while (scale % 10 == 0) {
    scale /= 10;
    ++digits;
  }
  return scale == 1 ? digits : -1;
}

std::string format_decimal(std::int64_t value, std::int64_t scale) {
  const int digits = decimal_digits(scale);
  if (digits < 0) throw std::invalid_argument("scale must be a power of ten");
  const bool negative = value < 0;
  // Work in unsigned space so INT64_MIN is representable.
  std::uint64_t magnitude = negative ? 0 - static_cast<std::uint64_t>(value)
                                     : static_cast<std::uint64_t>(value);
  const auto uscale = static_cast<std::uint64_t>(scale);
  std::string out = negative ? "-" : "";
  out += std::to_string(magnitude / uscale);
  std::uint64_t frac = magnitude % uscale;
  if (frac != 0) {
    std::string tail = std::to_string(frac);
    tail.insert(0, static_cast<std::size_t>(digits) - tail.size(), '0');
    while (!tail.empty() && tail.back() == '0') tail.pop_back();
    out += '.';
    out += tail;
  }
  return out;
}

std::int64_t parse_decimal(std::string_view text, std::int64_t scale) {
  const int digits = decimal_digits(scale);
  if (digits < 0) throw std::invalid_argument("unit_scale must be a power of ten");
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  const auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || (dot != std::string_view::npos && frac.empty())) {
    throw std::invalid_argument("'" + std::string(text) + "' is not a decimal number");
  }
  for (std::string_view part : {whole, frac}) {
    for (char ch : part) {
      if (ch < '0' || ch > '9') {
        throw std::invalid_argument("'" + std::string(text) + "' is not a decimal number");
      }
    }
  }
  if (static_cast<int>(frac.size()) > digits) {
    throw std::invalid_argument("'" + std::string(text) + "' has more than " +
                                std::to_string(digits) +
                                " fractional digits allowed by unit_scale");
  }

  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t result = 0;
  for (char ch : whole) {
    if (result > (kMax - (ch - '0')) / 10) throw std::out_of_range("number too large");
    result = result * 10 + (ch - '0');
  }
  if (result > kMax / scale) throw std::out_of_range("number too large");
  result *= scale;
  std::int64_t frac_units = 0;
  std::int64_t place = scale;
  for (char ch : frac) {
    place /= 10;
    frac_units += (ch - '0') * place;
  }
  if (result > kMax - frac_units) throw std::out_of_range("number too large");
  return result + frac_units;
}

}  // namespace precast
