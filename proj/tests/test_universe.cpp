#include <algorithm>
#include <set>

#include <doctest.h>

#include "magcode/encoding.hpp"
#include "magcode/error.hpp"
#include "magcode/universe.hpp"
#include "oracles.hpp"

using namespace magcode;

TEST_CASE("order-4 index bit convention") {
  CHECK(order4_from_index(0).rows() == oracle::Grid(4, std::vector<int>(4, -1)));
  CHECK(order4_from_index(65535).rows() == oracle::Grid(4, std::vector<int>(4, 1)));
  // Bit 15 is cell (0, 0); bit 0 is cell (3, 3).
  CHECK(order4_from_index(0x8000)(0, 0) == 1);
  CHECK(order4_from_index(0x8000)(3, 3) == -1);
  CHECK(order4_from_index(0x0001)(3, 3) == 1);
}

TEST_CASE("order-4 census finds 768 Hadamard matrices") {
  const MatrixUniverse all = enumerate_order4();
  REQUIRE(all.members.size() == 65536);
  const MatrixUniverse h = filter_hadamard(all);
  CHECK(h.members.size() == 768);
  std::size_t brute = 0;
  for (const auto& e : all.members) brute += oracle::hadamard(e.rows()) ? 1 : 0;
  CHECK(brute == 768);
}

TEST_CASE("filter_hadamard edge cases") {
  MatrixUniverse one{8, {sylvester(3)}, Provenance::Custom};
  CHECK(filter_hadamard(one).members == one.members);
}

TEST_CASE("row permutations") {
  CHECK(permute_rows(sylvester(1)).members.size() == 2);
  const MatrixUniverse u = permute_rows(sylvester(3));
  REQUIRE(u.members.size() == 40320);
  CHECK(u.provenance == Provenance::SylvesterRowPermutations);
  CHECK(filter_hadamard(u).members.size() == 40320);
  CHECK(u.members.front() == sylvester(3));

  const auto base = sylvester(3).rows();
  for (std::uint64_t k : {0ULL, 1ULL, 5039ULL, 40319ULL, 12345ULL}) {
    const auto perm = nth_permutation(8, k);
    std::vector<std::vector<int>> rows;
    for (int r : perm) rows.push_back(base[r]);
    CHECK(u.members[k].rows() == rows);
  }
  std::set<std::vector<std::vector<int>>> distinct;
  for (const auto& m : u.members) distinct.insert(m.rows());
  CHECK(distinct.size() == 40320);
  CHECK_THROWS_AS(permute_rows(checkerboard(4)), ValidationError);
}

TEST_CASE("universe hash depends on content and order") {
  const std::vector<Encoding> a{sylvester(2), checkerboard(4)};
  const std::vector<Encoding> b{checkerboard(4), sylvester(2)};
  CHECK(universe_hash(a) == universe_hash(a));
  CHECK(universe_hash(a) != universe_hash(b));
}
