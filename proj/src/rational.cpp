#include "magcode/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>
#include <ostream>

#include "magcode/error.hpp"

namespace magcode {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

bool Rational::is_multiple_of_inverse(std::int64_t denominator) const {
  return denominator % den_ == 0;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  // Denominators are positive, so cross-multiplication preserves order.
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw ValidationError("empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    return Rational(parse_int(s.substr(0, slash), text), parse_int(s.substr(slash + 1), text));
  }

  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const auto int_part = s.substr(0, dot);
    const auto frac_part = s.substr(dot + 1);
    if (frac_part.size() > 12) throw ValidationError("too many decimals in '" + std::string(text) + "'");
    num = int_part.empty() ? 0 : parse_int(int_part, text);
    for (char c : frac_part) {
      if (c < '0' || c > '9') throw ValidationError("cannot parse number '" + std::string(text) + "'");
      num = num * 10 + (c - '0');
      den *= 10;
    }
  } else {
    num = parse_int(s, text);
  }
  return Rational(negative ? -num : num, den);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::int64_t round_decimal(const Rational& r, int digits) {
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const std::int64_t n = r.num() * scale;
  const std::int64_t d = r.den();
  const std::int64_t mag = (2 * std::llabs(n) + d) / (2 * d);
  return n < 0 ? -mag : mag;
}

bool Threshold::admits(const Rational& score) const {
  if (precision <= 0) return score >= value;
  std::int64_t scale = 1;
  for (int i = 0; i < precision; ++i) scale *= 10;
  // value * scale need not be integral (e.g. -0.205 at two digits); compare rationally.
  return Rational(round_decimal(score, precision), scale) >= value;
}

std::int64_t Threshold::lattice_floor(std::int64_t denominator) const {
  // admits() is monotone in the score, so scan down from the first admitted value.
  std::int64_t k = 0;
  if (!admits(Rational(0, denominator))) {
    while (k <= denominator && !admits(Rational(k, denominator))) ++k;
    return k;
  }
  while (k > -denominator && admits(Rational(k - 1, denominator))) --k;
  return k;
}

}  // namespace magcode
