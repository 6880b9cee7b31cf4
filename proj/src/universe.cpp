#include "magcode/universe.hpp"

#include <algorithm>
#include <numeric>

namespace magcode {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::ExhaustiveOrder4: return "exhaustive-order-4";
    case Provenance::SylvesterRowPermutations: return "sylvester-row-permutations";
    case Provenance::Filtered: return "filtered";
    case Provenance::Custom: return "custom";
  }
  return "custom";
}

Encoding order4_from_index(std::uint16_t index) {
  CellMatrix cells(4, 4);
  // Bit 15 is cell (0, 0), so integer order matches lexicographic row-major order.
  for (int k = 0; k < 16; ++k) cells(k / 4, k % 4) = ((index >> (15 - k)) & 1U) ? 1 : -1;
  return Encoding(std::move(cells), "order4-" + std::to_string(index));
}

void for_each_order4(const std::function<void(std::uint16_t, const Encoding&)>& visit) {
  for (std::uint32_t i = 0; i < kOrder4Count; ++i) {
    const auto idx = static_cast<std::uint16_t>(i);
    visit(idx, order4_from_index(idx));
  }
}

MatrixUniverse enumerate_order4() {
  MatrixUniverse u{4, {}, Provenance::ExhaustiveOrder4};
  u.members.reserve(kOrder4Count);
  for_each_order4([&](std::uint16_t, const Encoding& e) { u.members.push_back(e); });
  return u;
}

MatrixUniverse filter_hadamard(const MatrixUniverse& u) {
  MatrixUniverse out{u.order, {}, u.provenance};
  std::copy_if(u.members.begin(), u.members.end(), std::back_inserter(out.members),
               [](const Encoding& e) { return is_hadamard(e); });
  return out;
}

MatrixUniverse permute_rows(const Encoding& h) {
  if (!is_hadamard(h)) throw ValidationError("permute_rows requires a Hadamard matrix");
  if (h.order() > 10) throw SizeLimitError("row permutation universe too large for order " + std::to_string(h.order()));
  MatrixUniverse u{h.order(), {}, Provenance::SylvesterRowPermutations};
  std::vector<int> perm(h.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t k = 0;
  do {
    CellMatrix cells(h.order(), h.order());
    for (int i = 0; i < h.order(); ++i) cells.row(i) = h.cells().row(perm[i]);
    u.members.emplace_back(std::move(cells), "perm-" + std::to_string(k++));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return u;
}

std::vector<int> nth_permutation(int order, std::uint64_t k) {
  std::vector<int> pool(order);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<std::uint64_t> fact(order + 1, 1);
  for (int i = 1; i <= order; ++i) fact[i] = fact[i - 1] * i;
  if (k >= fact[order]) throw ValidationError("permutation index out of range");
  std::vector<int> out;
  for (int i = order; i >= 1; --i) {
    const std::uint64_t pick = k / fact[i - 1];
    k %= fact[i - 1];
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

std::uint64_t universe_hash(const std::vector<Encoding>& members) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte & 0xffU;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(members.size()));
  mix(static_cast<std::uint64_t>(members.size() >> 8));
  mix(static_cast<std::uint64_t>(members.size() >> 16));
  for (const auto& e : members) {
    mix(static_cast<std::uint64_t>(e.order()));
    for (int i = 0; i < e.order(); ++i)
      for (int j = 0; j < e.order(); ++j) mix(e(i, j) > 0 ? 1 : 0);
  }
  return h;
}

}  // namespace magcode
