#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tredkit {

/// Nonnegative exact decimal with six fractional digits, stored as an integer
/// count of millionths. Sums stay exact as long as they fit in 63 bits.
class Weight {
 public:
  static constexpr std::int64_t kScale = 1'000'000;
  static constexpr int kDigits = 6;

  constexpr Weight() = default;
  constexpr explicit Weight(std::int64_t whole) : units_(whole * kScale) {}

  static constexpr Weight from_units(std::int64_t units) {
    Weight w;
    w.units_ = units;
    return w;
  }

  /// Parses `12`, `0.5`, `3.250000`. Throws DomainError on malformed input,
  /// negative values or more than six fractional digits.
  static Weight parse(std::string_view text);

  constexpr std::int64_t units() const { return units_; }
  double to_double() const { return static_cast<double>(units_) / kScale; }
  /// Shortest decimal rendering that parses back to the same value.
  std::string to_string() const;

  constexpr Weight& operator+=(Weight o) {
    units_ += o.units_;
    return *this;
  }
  friend constexpr Weight operator+(Weight a, Weight b) { return a += b; }
  friend constexpr Weight operator*(Weight a, std::int64_t k) { return from_units(a.units_ * k); }
  friend constexpr auto operator<=>(Weight, Weight) = default;

 private:
  std::int64_t units_ = 0;
};

inline constexpr Weight kUnitWeight{1};

}  // namespace tredkit
