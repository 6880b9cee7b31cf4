#include <random>

#include <doctest.h>

#include "magcode/encoding.hpp"
#include "magcode/error.hpp"
#include "oracles.hpp"

using namespace magcode;

TEST_CASE("construction rejects non-square, empty and non-sign input") {
  CHECK_THROWS_AS(Encoding::from_rows({}), ValidationError);
  CHECK_THROWS_AS(Encoding::from_rows({{1, -1}}), ValidationError);
  CHECK_THROWS_AS(Encoding::from_rows({{1, 0}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(Encoding::from_rows({{1, -1}, {1}}), ValidationError);
  CHECK_NOTHROW(Encoding::from_rows({{1}}));
}

TEST_CASE("sylvester base cases") {
  CHECK(sylvester(0).rows() == oracle::Grid{{1}});
  CHECK(sylvester(1).rows() == oracle::Grid{{1, 1}, {1, -1}});
}

TEST_CASE("sylvester matches the block recursion written out by hand") {
  for (int k = 0; k <= 6; ++k) {
    const Encoding h = sylvester(k);
    CHECK(h.order() == (1 << k));
    CHECK(h.rows() == oracle::sylvester(k));
    CHECK(oracle::hadamard(h.rows()));
    CHECK(is_hadamard(h));
  }
  const Encoding h8 = sylvester(3);
  for (int j = 0; j < 8; ++j) CHECK(h8(0, j) == 1);
}

TEST_CASE("sylvester exponent limit") {
  CHECK_THROWS_AS(sylvester(7), SizeLimitError);
  CHECK_THROWS_AS(sylvester(20), SizeLimitError);
  CHECK_THROWS_AS(sylvester(-1), ValidationError);
  CHECK_NOTHROW(sylvester(7, 7));
}

TEST_CASE("is_hadamard against the dot-product oracle") {
  CHECK_FALSE(is_hadamard(Encoding::from_rows(oracle::Grid(4, std::vector<int>(4, 1)))));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto g = oracle::random_grid(n, rng);
    CHECK(is_hadamard(Encoding::from_rows(g)) == oracle::hadamard(g));
  }
}

TEST_CASE("mate negates every cell and is an involution") {
  const Encoding a = Encoding::from_rows({{1, 1}, {1, -1}});
  CHECK(mate(a).rows() == oracle::Grid{{-1, -1}, {-1, 1}});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Encoding e = random_encoding(1 + static_cast<int>(rng() % 8), rng);
    CHECK(mate(mate(e)) == e);
    CHECK(mate(e).rows() == oracle::negate(e.rows()));
  }
}

TEST_CASE("checkerboard alternates from +1 at the origin") {
  const Encoding c = checkerboard(8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(c(i, j) == ((i + j) % 2 == 0 ? 1 : -1));
}

TEST_CASE("rotate_quarter turns counter-clockwise as displayed") {
  const Encoding e = Encoding::from_rows({{1, 1, -1}, {-1, 1, 1}, {-1, -1, -1}});
  // Top row becomes the left column read bottom-up.
  const CellMatrix r = rotate_quarter(e.cells(), 1);
  CHECK(r(2, 0) == 1);
  CHECK(r(1, 0) == 1);
  CHECK(r(0, 0) == -1);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_grid(1 + static_cast<int>(rng() % 6), rng);
    const Encoding x = Encoding::from_rows(g);
    for (int q = -4; q <= 4; ++q) {
      CHECK(Encoding(rotate_quarter(x.cells(), q)).rows() == oracle::rotate(g, q));
    }
  }
}

TEST_CASE("random encodings are deterministic per seed") {
  std::mt19937_64 a(5), b(5);
  CHECK(random_encoding(8, a) == random_encoding(8, b));
}

TEST_CASE("labels are metadata") {
  Encoding a = sylvester(2);
  Encoding b = a;
  b.set_label("other");
  CHECK(a == b);
  CHECK(mate(a).label() == a.label() + "'");
}
