#include <random>

#include <doctest.h>

#include "magcode/encoding.hpp"
#include "magcode/error.hpp"
#include "magcode/scoring.hpp"
#include "oracles.hpp"

using namespace magcode;

namespace {

Rational over_n2(std::int64_t num, int n) { return Rational(num, std::int64_t{n} * n); }

}  // namespace

TEST_CASE("aligned score examples") {
  const Encoding a = Encoding::from_rows({{1, 1}, {1, -1}});
  const Encoding b = Encoding::from_rows({{1, -1}, {1, 1}});
  CHECK(aligned_score(a, a) == Rational(1));
  CHECK(aligned_score(a, mate(a)) == Rational(-1));
  CHECK(aligned_score(a, b) == Rational(0));
  CHECK_THROWS_AS(aligned_score(a, sylvester(2)), DimensionError);
}

TEST_CASE("translation map: checkerboard and Hadamard examples") {
  const Encoding c = checkerboard(8);
  const CorrelationMap m = translation_map(c, mate(c));
  CHECK(m.at(0, 0) == Rational(-1));
  CHECK(m.at(1, 0) == Rational(56, 64));
  CHECK(m.at(1, 1) == Rational(-49, 64));
  CHECK(m.at(8, 0) == Rational(0));

  const Encoding h = sylvester(3);
  const CorrelationMap hm = translation_map(h, mate(h));
  CHECK(hm.at(0, 0) == Rational(-1));
  for (int d = -7; d <= 7; ++d) {
    if (d == 0) continue;
    CHECK(hm.numerator(d, 0) == 0);
    CHECK(hm.numerator(0, d) == 0);
  }
}

TEST_CASE("quarter rotation examples") {
  const Encoding h = sylvester(3);
  CHECK(quarter_rotation_score(h, mate(h), 0) == Rational(-1));
  CHECK(quarter_rotation_score(h, mate(h), 1) == Rational(0));
  CHECK(quarter_rotation_score(h, mate(h), 2) ==
        over_n2(oracle::pose(h.rows(), mate(h).rows(), 2, 0, 0), 8));
}

TEST_CASE("every exact scoring op matches the naive oracle, orders 1-4") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 4;
    const auto ga = oracle::random_grid(n, rng);
    const auto gb = oracle::random_grid(n, rng);
    const Encoding a = Encoding::from_rows(ga), b = Encoding::from_rows(gb);

    REQUIRE(aligned_score(a, b) == over_n2(oracle::aligned(ga, gb), n));
    const CorrelationMap m = translation_map(a, b);
    for (int dy = -(n - 1); dy <= n - 1; ++dy)
      for (int dx = -(n - 1); dx <= n - 1; ++dx)
        REQUIRE(m.numerator(dx, dy) == oracle::correlation(ga, gb, dx, dy));
    for (int q = 0; q < 4; ++q) {
      REQUIRE(quarter_rotation_score(a, b, q) == over_n2(oracle::pose(ga, gb, q, 0, 0), n));
      const int dx = static_cast<int>(rng() % (2 * n - 1)) - (n - 1);
      const int dy = static_cast<int>(rng() % (2 * n - 1)) - (n - 1);
      REQUIRE(pose_score(a, b, {q, dx, dy}) == over_n2(oracle::pose(ga, gb, q, dx, dy), n));
    }
    REQUIRE(local_score(a).local_score == over_n2(oracle::local_numerator(ga), n));
    REQUIRE(local_score(a, ConfigSet::CenteredRotations).local_score ==
            over_n2(oracle::local_numerator(ga, true), n));
    REQUIRE(pair_score(a, b) == over_n2(oracle::pair_numerator(ga, gb), n));
    REQUIRE(pair_score(a, b, ConfigSet::CenteredRotations) == over_n2(oracle::pair_numerator(ga, gb, true), n));
  }
}

TEST_CASE("discretized rotation matches the naive oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const auto ga = oracle::random_grid(n, rng);
    const auto gb = oracle::random_grid(n, rng);
    const Encoding a = Encoding::from_rows(ga), b = Encoding::from_rows(gb);
    const double theta = -180.0 + 10.0 * static_cast<double>(rng() % 37) + 5.0 * (trial % 2);
    const int u = 1 + static_cast<int>(rng() % 4);
    const std::int64_t m = std::int64_t{n} * u;
    REQUIRE(discretized_rotation_score(a, b, theta, u) == Rational(oracle::rotation_numerator(ga, gb, theta, u), 9 * m * m));
  }
}

TEST_CASE("arbitrary rotation takes the exact path at quarter angles") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Encoding a = random_encoding(8, rng), b = random_encoding(8, rng);
    CHECK(arbitrary_rotation_score(a, b, 0) == aligned_score(a, b));
    CHECK(arbitrary_rotation_score(a, b, 90) == quarter_rotation_score(a, b, 1));
    CHECK(arbitrary_rotation_score(a, b, 180) == quarter_rotation_score(a, b, 2));
    CHECK(arbitrary_rotation_score(a, b, -180) == quarter_rotation_score(a, b, 2));
    CHECK(arbitrary_rotation_score(a, b, 270) == quarter_rotation_score(a, b, 3));
    CHECK(arbitrary_rotation_score(a, b, -90) == quarter_rotation_score(a, b, 3));
  }
  const Encoding h = sylvester(3);
  CHECK(arbitrary_rotation_score(h, mate(h), 90) == Rational(0));
  CHECK(arbitrary_rotation_score(h, mate(h), 0) == Rational(-1));
  CHECK_THROWS_AS(arbitrary_rotation_score(h, mate(h), 45, 0), ValidationError);
}

TEST_CASE("H8 against its mate at 45 degrees stays within the local bound") {
  const Encoding h = sylvester(3);
  const Rational s10 = arbitrary_rotation_score(h, mate(h), 45, 10);
  const Rational s20 = arbitrary_rotation_score(h, mate(h), 45, 20);
  CHECK(s10 >= Rational(-1, 4));
  CHECK(std::abs(s10.to_double() - s20.to_double()) <= 0.05);
}

TEST_CASE("rotation profile covers -180..180 in 10 degree steps") {
  const Encoding h = sylvester(3);
  const RotationProfile p = rotation_profile(h, mate(h));
  REQUIRE(p.angles.size() == 37);
  CHECK(p.angles.front() == -180.0);
  CHECK(p.angles.back() == 180.0);
  CHECK(p.scores[18] == Rational(-1));
  CHECK_THROWS_AS(rotation_profile(h, h, -180, 180, 0), ValidationError);
}

TEST_CASE("sign symmetry, translation symmetry and exactness") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const Encoding a = random_encoding(n, rng), b = random_encoding(n, rng);
    const CorrelationMap ab = translation_map(a, b), ba = translation_map(b, a);
    for (const Pose& p : scored_poses(n, ConfigSet::RotatedTranslations)) {
      const Rational s = pose_score(a, b, p);
      REQUIRE(pose_score(mate(a), b, p) == -s);
      REQUIRE(s.is_multiple_of_inverse(std::int64_t{n} * n));
    }
    for (int dy = -(n - 1); dy <= n - 1; ++dy)
      for (int dx = -(n - 1); dx <= n - 1; ++dx) REQUIRE(ab.numerator(dx, dy) == ba.numerator(-dx, -dy));
    CHECK(pair_score(a, b) <= Rational(0));
    CHECK(pair_score(a, a) == Rational(-1));
    CHECK(local_score(a).local_score <= Rational(0));
  }
}

TEST_CASE("Hadamard matrices are agnostic to their mates along both axes") {
  std::mt19937_64 rng(5);
  const Encoding h = sylvester(3);
  for (int trial = 0; trial < 50; ++trial) {
    // Row permutations stay Hadamard.
    std::vector<std::vector<int>> rows = h.rows();
    std::shuffle(rows.begin(), rows.end(), rng);
    const Encoding p = Encoding::from_rows(rows);
    const CorrelationMap m = translation_map(p, mate(p));
    for (int d = 1; d <= 7; ++d) {
      CHECK(m.numerator(d, 0) == 0);
      CHECK(m.numerator(-d, 0) == 0);
      CHECK(m.numerator(0, d) == 0);
      CHECK(m.numerator(0, -d) == 0);
    }
  }
}

TEST_CASE("scored pose sets") {
  CHECK(scored_poses(8, ConfigSet::RotatedTranslations).size() == 4 * 15 * 15);
  CHECK(scored_poses(8, ConfigSet::CenteredRotations).size() == 15 * 15 + 3);
  CHECK(config_set_from_string(to_string(ConfigSet::CenteredRotations)) == ConfigSet::CenteredRotations);
  CHECK_THROWS_AS(config_set_from_string("diagonal"), ValidationError);
}

TEST_CASE("a single cell turned a quarter still meets its mate") {
  const Encoding one = Encoding::from_rows({{1}});
  CHECK(local_score(one).local_score == Rational(-1));
  CHECK(local_score(one).worst.rotation == 1);
}
