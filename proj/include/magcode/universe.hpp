#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "magcode/encoding.hpp"

namespace magcode {

enum class Provenance { ExhaustiveOrder4, SylvesterRowPermutations, Filtered, Custom };

const char* to_string(Provenance p);

/// An ordered candidate set of encodings of one order.
struct MatrixUniverse {
  int order = 0;
  std::vector<Encoding> members;
  Provenance provenance = Provenance::Custom;

  std::size_t size() const { return members.size(); }
};

inline constexpr std::uint32_t kOrder4Count = 1U << 16;

/// Order-4 encoding whose row-major cells follow the bits of `index`
/// (bit 15 - k is cell k; a set bit is +1).
Encoding order4_from_index(std::uint16_t index);

/// Streams all 65,536 order-4 encodings in index order.
void for_each_order4(const std::function<void(std::uint16_t, const Encoding&)>& visit);

MatrixUniverse enumerate_order4();

/// Members passing is_hadamard, original order preserved.
MatrixUniverse filter_hadamard(const MatrixUniverse& u);

/// One member per row permutation of `h`, in lexicographic permutation order.
MatrixUniverse permute_rows(const Encoding& h);

/// The permutation (row index list) of the k-th member of permute_rows for a given order.
std::vector<int> nth_permutation(int order, std::uint64_t k);

/// Stable FNV-1a hash of the member cells, used to key caches.
std::uint64_t universe_hash(const std::vector<Encoding>& members);

}  // namespace magcode
