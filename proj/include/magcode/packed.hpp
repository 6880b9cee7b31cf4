#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "magcode/encoding.hpp"
#include "magcode/scoring.hpp"

namespace magcode {

/// Faces of order <= 8 packed into one word: bit (8 * row + col) set for +1.
struct PackedGrid {
  std::uint64_t bits = 0;
  int order = 0;

  static PackedGrid pack(const Encoding& e);
  Encoding unpack() const;
  int cell(int row, int col) const { return ((bits >> (8 * row + col)) & 1U) ? 1 : -1; }
};

inline constexpr int kMaxPackedOrder = 8;

/// Word-parallel scorer for one order and configuration set.
///
/// A face's "bank" holds the rotated/offset copy of it for every scored pose,
/// so scoring a pair is one xor/and/popcount per pose.
class PackedScorer {
 public:
  PackedScorer(int order, ConfigSet set);

  int order() const { return order_; }
  ConfigSet config_set() const { return set_; }
  const std::vector<Pose>& poses() const { return poses_; }
  /// Bank length, padded to a multiple of eight.
  std::size_t stride() const { return overlap_.size(); }
  std::int64_t denominator() const { return std::int64_t{order_} * order_; }

  /// Writes stride() words for `face` into `out`.
  void fill_bank(const PackedGrid& face, std::span<std::uint64_t> out) const;
  std::vector<std::uint64_t> bank(const PackedGrid& face) const;

  /// Score numerator of `a` against the face behind `bank` at pose index k.
  int numerator(std::uint64_t a, const std::uint64_t* bank, std::size_t k) const {
    const int x = __builtin_popcountll((a ^ bank[k]) & overlap_[k]);
    return counts_[k] - 2 * x;
  }

  /// max |numerator| over every scored pose; pair score is -this / order^2.
  int max_abs_numerator(std::uint64_t a, const std::uint64_t* bank) const;

  /// Local score numerator of `face` (scored against its own mate).
  int local_numerator(const PackedGrid& face) const;

 private:
  int order_;
  ConfigSet set_;
  std::vector<Pose> poses_;
  std::size_t mating_index_ = 0;
  std::vector<std::uint64_t> overlap_;
  std::vector<std::int32_t> counts_;
};

}  // namespace magcode
