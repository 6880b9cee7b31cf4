#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace magcode {

/// Exact rational number, always stored reduced with a positive denominator.
///
/// Every interaction score is a sum of ±1 products over a fixed element count,
/// so scores are carried exactly and compared without tolerances.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// True when this value is an integer multiple of 1/denominator.
  bool is_multiple_of_inverse(std::int64_t denominator) const;

  /// Parses "-0.36", "-23/64", "1" or "0.5".
  static Rational parse(std::string_view text);

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// A score threshold and the decimal precision at which scores are compared
/// against it. precision == 0 compares exactly; precision == d first rounds the
/// score half away from zero to d decimal places.
struct Threshold {
  Rational value;
  int precision = 2;

  bool admits(const Rational& score) const;

  /// Smallest numerator k with admits(k / denominator); the effective lattice
  /// bound of this threshold for scores with that denominator.
  std::int64_t lattice_floor(std::int64_t denominator) const;
};

/// Rounds r * 10^digits half away from zero.
std::int64_t round_decimal(const Rational& r, int digits);

}  // namespace magcode
