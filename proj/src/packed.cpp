#include "magcode/packed.hpp"

#include <algorithm>
#include <cstdlib>

namespace magcode {

namespace {

std::uint64_t full_mask(int order) {
  std::uint64_t m = 0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) m |= std::uint64_t{1} << (8 * i + j);
  return m;
}

// cell(i, j) of the result = cell(i + dy, j + dx) of the input, 0 outside.
std::uint64_t shifted(std::uint64_t bits, int order, int dx, int dy) {
  std::uint64_t out = 0;
  for (int i = 0; i < order; ++i) {
    const int si = i + dy;
    if (si < 0 || si >= order) continue;
    for (int j = 0; j < order; ++j) {
      const int sj = j + dx;
      if (sj < 0 || sj >= order) continue;
      if ((bits >> (8 * si + sj)) & 1U) out |= std::uint64_t{1} << (8 * i + j);
    }
  }
  return out;
}

// One counter-clockwise quarter turn: new(i, j) = old(j, N - 1 - i).
std::uint64_t rotated(std::uint64_t bits, int order) {
  std::uint64_t out = 0;
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      if ((bits >> (8 * j + (order - 1 - i))) & 1U) out |= std::uint64_t{1} << (8 * i + j);
  return out;
}

}  // namespace

PackedGrid PackedGrid::pack(const Encoding& e) {
  if (e.order() > kMaxPackedOrder) {
    throw SizeLimitError("packed faces support order <= 8, got " + std::to_string(e.order()));
  }
  PackedGrid g{0, e.order()};
  for (int i = 0; i < e.order(); ++i)
    for (int j = 0; j < e.order(); ++j)
      if (e(i, j) > 0) g.bits |= std::uint64_t{1} << (8 * i + j);
  return g;
}

Encoding PackedGrid::unpack() const {
  CellMatrix cells(order, order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j) cells(i, j) = cell(i, j);
  return Encoding(std::move(cells));
}

PackedScorer::PackedScorer(int order, ConfigSet set)
    : order_(order), set_(set), poses_(scored_poses(order, set)) {
  if (order < 1 || order > kMaxPackedOrder) {
    throw SizeLimitError("packed faces support order 1..8, got " + std::to_string(order));
  }
  const std::size_t padded = (poses_.size() + 7) / 8 * 8;
  overlap_.assign(padded, 0);
  counts_.assign(padded, 0);
  const std::uint64_t full = full_mask(order);
  for (std::size_t k = 0; k < poses_.size(); ++k) {
    overlap_[k] = shifted(full, order, poses_[k].dx, poses_[k].dy);
    counts_[k] = __builtin_popcountll(overlap_[k]);
    if (poses_[k].is_mating()) mating_index_ = k;
  }
}

void PackedScorer::fill_bank(const PackedGrid& face, std::span<std::uint64_t> out) const {
  std::uint64_t turns[4];
  turns[0] = face.bits & full_mask(order_);
  for (int q = 1; q < 4; ++q) turns[q] = rotated(turns[q - 1], order_);
  std::fill(out.begin(), out.end(), std::uint64_t{0});
  for (std::size_t k = 0; k < poses_.size(); ++k) {
    const Pose& p = poses_[k];
    out[k] = shifted(turns[p.rotation], order_, p.dx, p.dy);
  }
}

std::vector<std::uint64_t> PackedScorer::bank(const PackedGrid& face) const {
  std::vector<std::uint64_t> out(stride());
  fill_bank(face, out);
  return out;
}

int PackedScorer::max_abs_numerator(std::uint64_t a, const std::uint64_t* bank) const {
  const std::size_t n = overlap_.size();
  const std::uint64_t* ov = overlap_.data();
  const std::int32_t* cnt = counts_.data();
  std::int32_t best = 0;
  // Padding entries have an empty overlap and contribute 0.
  for (std::size_t k = 0; k < n; ++k) {
    const std::int32_t x = static_cast<std::int32_t>(__builtin_popcountll((a ^ bank[k]) & ov[k]));
    std::int32_t v = cnt[k] - 2 * x;
    v = v < 0 ? -v : v;
    best = v > best ? v : best;
  }
  return best;
}

int PackedScorer::local_numerator(const PackedGrid& face) const {
  const std::uint64_t own = face.bits & full_mask(order_);
  const PackedGrid partner{~own & full_mask(order_), order_};
  const auto b = bank(partner);
  bool any = false;
  int best = 0;
  for (std::size_t k = 0; k < poses_.size(); ++k) {
    if (k == mating_index_) continue;
    const int v = numerator(own, b.data(), k);
    if (!any || v < best) best = v;
    any = true;
  }
  return any ? std::min(best, 0) : 0;
}

}  // namespace magcode
