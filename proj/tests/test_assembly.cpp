#include <algorithm>
#include <random>
#include <set>

#include <doctest.h>

#include "magcode/assembly.hpp"
#include "magcode/encoding.hpp"
#include "magcode/error.hpp"
#include "magcode/scoring.hpp"
#include "oracles.hpp"

using namespace magcode;

namespace {

std::vector<Encoding> random_faces(std::size_t count, int order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Encoding> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_encoding(order, rng));
  return out;
}

// min over local scores and pair scores of a face set
Rational window_bound(const std::vector<Encoding>& faces) {
  Rational m(0);
  for (std::size_t a = 0; a < faces.size(); ++a) {
    m = std::min(m, local_score(faces[a]).local_score);
    for (std::size_t b = a + 1; b < faces.size(); ++b) m = std::min(m, pair_score(faces[a], faces[b]));
  }
  return m;
}

}  // namespace

TEST_CASE("meta-cube target structure") {
  const auto faces = random_faces(12, 4, 1);
  const TargetAssembly t = build_meta_cube_target(faces);
  CHECK(t.bonds().size() == 12);
  CHECK(t.exterior_face_count() == 24);
  for (int m = 0; m < TargetAssembly::kModules; ++m) CHECK(t.module_degree(m) == 3);

  std::set<std::size_t> used;
  for (const auto& b : t.bonds()) {
    used.insert(b.matrix);
    CHECK(t.partner(b.face_a) == b.face_b);
    CHECK(t.partner(b.face_b) == b.face_a);
    CHECK(TargetAssembly::module_of(b.face_a) != TargetAssembly::module_of(b.face_b));
    REQUIRE(t.face_encoding(b.face_a).has_value());
    CHECK(*t.face_encoding(b.face_a) == faces[b.matrix]);
    CHECK(*t.face_encoding(b.face_b) == mate(faces[b.matrix]));
    // Neighbouring octree vertices differ in exactly one coordinate bit.
    const int diff = TargetAssembly::module_of(b.face_a) ^ TargetAssembly::module_of(b.face_b);
    CHECK(std::has_single_bit(static_cast<unsigned>(diff)));
  }
  CHECK(used.size() == 12);
  for (int f = 0; f < TargetAssembly::kFaces; ++f) CHECK(t.face_encoding(f).has_value() == (t.partner(f) >= 0));

  CHECK_THROWS_AS(build_meta_cube_target(random_faces(11, 4, 2)), ValidationError);
  auto mixed = random_faces(12, 4, 3);
  mixed[5] = sylvester(3);
  CHECK_THROWS_AS(build_meta_cube_target(mixed), DimensionError);
}

TEST_CASE("contact scores equal pose scores; neutral faces score 0") {
  const auto faces = random_faces(12, 5, 4);
  const TargetAssembly t = build_meta_cube_target(faces);
  const ContactScores cs(t, FluidParams{});
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int a = static_cast<int>(rng() % TargetAssembly::kFaces);
    const int b = static_cast<int>(rng() % TargetAssembly::kFaces);
    const std::size_t k = rng() % cs.pose_count();
    const Pose& p = cs.pose(k);
    if (!t.face_encoding(a) || !t.face_encoding(b)) {
      CHECK(cs.score(a, b, k) == Rational(0));
      continue;
    }
    const auto ga = t.face_encoding(a)->rows(), gb = t.face_encoding(b)->rows();
    CHECK(cs.score(a, b, k) == Rational(oracle::pose(ga, gb, p.rotation, p.dx, p.dy), 25));
  }
}

TEST_CASE("fluid parameter and step-limit validation") {
  const TargetAssembly t = build_meta_cube_target(random_faces(12, 4, 6));
  FluidParams f;
  CHECK_THROWS_AS(run(t, f, 0), ValidationError);
  CHECK_FALSE(run(t, f, 1).completed);
  for (const char* bad : {"-1", "0", "-3/2", "1/2"}) {
    f.f_f = Rational::parse(bad);
    CHECK_THROWS_AS(f.validate(), ValidationError);
    CHECK_THROWS_AS(run(t, f, 10), ValidationError);
  }
}

TEST_CASE("window soundness: inside the window only designated mates bond") {
  const auto faces = random_faces(12, 8, 7);
  const Rational bound = window_bound(faces);
  REQUIRE(bound > Rational(-1));
  const TargetAssembly t = build_meta_cube_target(faces);
  FluidParams f;
  f.f_f = Rational(-1) + (bound - Rational(-1)) * Rational(1, 2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    f.seed = seed;
    const AssemblyReport r = run(t, f, 10'000'000);
    CHECK(r.completed);
    CHECK(r.misassembly_events == 0);
    CHECK(r.permanent_misassemblies == 0);
    CHECK(r.bonds_formed == 12);
    for (const auto& e : r.events) {
      CHECK(e.kind == AssemblyEvent::Kind::Bond);
      CHECK(t.partner(e.face_a) == e.face_b);
      CHECK(e.pose.is_mating());
      CHECK(e.score == Rational(-1));
    }
  }
}

TEST_CASE("outside the window misassemblies form") {
  const auto faces = random_faces(12, 8, 7);
  const TargetAssembly t = build_meta_cube_target(faces);
  FluidParams f;
  f.f_f = Rational(-1, 10);
  std::uint64_t events = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    f.seed = seed;
    events += run(t, f, 200'000).misassembly_events;
  }
  CHECK(events > 0);
}

TEST_CASE("runs are deterministic per seed") {
  const TargetAssembly t = build_meta_cube_target(random_faces(12, 6, 8));
  FluidParams f;
  f.f_f = Rational(-1, 5);
  f.seed = 99;
  const AssemblyReport a = run(t, f, 300'000), b = run(t, f, 300'000);
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t k = 0; k < a.events.size(); ++k) {
    CHECK(a.events[k].step == b.events[k].step);
    CHECK(a.events[k].face_a == b.events[k].face_a);
    CHECK(a.events[k].face_b == b.events[k].face_b);
    CHECK(a.events[k].pose == b.events[k].pose);
  }
  CHECK(a.steps == b.steps);
  f.seed = 100;
  const AssemblyReport c = run(t, f, 300'000);
  CHECK((c.events.size() != a.events.size() || c.steps != a.steps || c.events.front().step != a.events.front().step));
}

TEST_CASE("state invariants hold after every step, and a new F_f breaks old bonds") {
  const TargetAssembly t = build_meta_cube_target(random_faces(12, 4, 9));
  FluidParams weak;
  weak.f_f = Rational(-1, 16);
  weak.seed = 3;
  WorldState w(t, weak);
  for (int s = 0; s < 20000; ++s) {
    step(w, t, weak);
    REQUIRE(w.bonds().size() <= 24);
    std::set<int> seen;
    for (const auto& b : w.bonds()) {
      REQUIRE(b.score < weak.f_f);
      REQUIRE(seen.insert(b.face_a).second);
      REQUIRE(seen.insert(b.face_b).second);
      REQUIRE(w.bonded_partner(b.face_a) == b.face_b);
      REQUIRE(w.bonded_partner(b.face_b) == b.face_a);
      REQUIRE(TargetAssembly::module_of(b.face_a) != TargetAssembly::module_of(b.face_b));
    }
    REQUIRE(w.designated_active() <= 12);
  }
  REQUIRE(w.misassembly_events() > 0);

  FluidParams strong = weak;
  strong.f_f = Rational(-999, 1000);
  for (int s = 0; s < 200000; ++s) step(w, t, strong);
  for (const auto& b : w.bonds()) CHECK(b.score < strong.f_f);
  const auto breaks = std::count_if(w.events().begin(), w.events().end(),
                                    [](const AssemblyEvent& e) { return e.kind == AssemblyEvent::Kind::Break; });
  CHECK(breaks > 0);
}

TEST_CASE("off-lattice contact angles") {
  const auto faces = random_faces(12, 4, 10);
  const TargetAssembly t = build_meta_cube_target(faces);
  FluidParams f;
  f.f_f = Rational(-1, 10);
  f.arbitrary_angles = true;
  f.upsample = 4;
  f.seed = 4;
  const AssemblyReport r = run(t, f, 50'000);
  bool off_lattice = false;
  for (const auto& e : r.events) {
    CHECK(std::fmod(e.angle_deg, 10.0) == 0.0);
    if (std::fmod(e.angle_deg, 90.0) != 0.0) {
      off_lattice = true;
      CHECK(e.misassembly);
      const Rational s = arbitrary_rotation_score(*t.face_encoding(e.face_a), *t.face_encoding(e.face_b),
                                                  e.angle_deg, 4);
      CHECK(e.score == s);
    }
  }
  CHECK(off_lattice);
}
