#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "magcode/encoding.hpp"
#include "magcode/rational.hpp"
#include "magcode/scoring.hpp"

namespace magcode {

/// Pair scores of every unordered member pair, stored as int16 numerators over
/// order^2 in row-major upper-triangular order (i < j).
class PairTable {
 public:
  PairTable() = default;

  /// Scores all pairs; threads == 0 uses the hardware concurrency. The result
  /// does not depend on the thread count.
  static PairTable compute(const std::vector<Encoding>& members, ConfigSet set, unsigned threads = 0);

  std::size_t size() const { return count_; }
  int order() const { return order_; }
  ConfigSet config_set() const { return set_; }
  std::uint64_t key() const { return key_; }
  std::int64_t denominator() const { return std::int64_t{order_} * order_; }

  std::int16_t numerator(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return upper_[offset(i) + (j - i - 1)];
  }
  Rational score(std::size_t i, std::size_t j) const { return Rational(numerator(i, j), denominator()); }

  const std::vector<std::int16_t>& raw() const { return upper_; }

  /// Binary cache: header {magic, version, key, order, count, config set}
  /// followed by the int16 numerators, little-endian.
  void save(const std::filesystem::path& path) const;
  /// Throws IoError if the file is missing, truncated or keyed differently.
  static PairTable load(const std::filesystem::path& path, std::uint64_t expected_key);

  /// Cache key for a member list under a configuration set.
  static std::uint64_t key_for(const std::vector<Encoding>& members, ConfigSet set);

 private:
  std::size_t offset(std::size_t i) const { return i * (2 * count_ - i - 1) / 2; }

  int order_ = 0;
  std::size_t count_ = 0;
  ConfigSet set_ = ConfigSet::RotatedTranslations;
  std::uint64_t key_ = 0;
  std::vector<std::int16_t> upper_;
};

}  // namespace magcode
