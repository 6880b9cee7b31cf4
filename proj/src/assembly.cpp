#include "magcode/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "magcode/packed.hpp"

namespace magcode {

std::size_t TargetAssembly::exterior_face_count() const {
  return static_cast<std::size_t>(std::count(partner_.begin(), partner_.end(), -1));
}

int TargetAssembly::module_degree(int module) const {
  int d = 0;
  for (const auto& b : bonds_) d += (module_of(b.face_a) == module) + (module_of(b.face_b) == module);
  return d;
}

TargetAssembly build_meta_cube_target(const std::vector<Encoding>& clique) {
  if (clique.size() != TargetAssembly::kBonds) {
    throw ValidationError("meta-cube needs a clique of 12 encodings, got " + std::to_string(clique.size()));
  }
  for (const auto& e : clique) {
    if (e.order() != clique.front().order()) throw DimensionError("clique encodings must share one order");
  }
  TargetAssembly t;
  t.clique_ = clique;
  t.faces_.assign(TargetAssembly::kFaces, std::nullopt);
  t.partner_.assign(TargetAssembly::kFaces, -1);
  std::size_t k = 0;
  for (int lower = 0; lower < TargetAssembly::kModules; ++lower) {
    for (int axis = 0; axis < 3; ++axis) {
      if (lower & (1 << axis)) continue;
      const int upper = lower | (1 << axis);
      const int fa = lower * TargetAssembly::kFacesPerModule + 2 * axis;      // +axis face
      const int fb = upper * TargetAssembly::kFacesPerModule + 2 * axis + 1;  // -axis face
      t.bonds_.push_back({fa, fb, k});
      t.faces_[fa] = clique[k];
      t.faces_[fb] = mate(clique[k]);
      t.partner_[fa] = fb;
      t.partner_[fb] = fa;
      ++k;
    }
  }
  return t;
}

void FluidParams::validate() const {
  if (!(f_f > Rational(-1) && f_f < Rational(0))) {
    throw ValidationError("fluid threshold must lie strictly between -1 and 0, got " + f_f.str());
  }
  if (upsample < 1) throw ValidationError("upsample factor must be at least 1");
}

ContactScores::ContactScores(const TargetAssembly& t, const FluidParams& f)
    : target_(&t), upsample_(f.upsample), poses_(scored_poses(t.order(), ConfigSet::RotatedTranslations)) {
  const int n = t.order();
  den_ = std::int64_t{n} * n;
  std::vector<Encoding> encodings;
  slot_.assign(TargetAssembly::kFaces, -1);
  for (int face = 0; face < TargetAssembly::kFaces; ++face) {
    if (!t.face_encoding(face)) continue;
    slot_[face] = static_cast<int>(encodings.size());
    encodings.push_back(*t.face_encoding(face));
  }
  slots_ = encodings.size();
  numerators_.assign(slots_ * slots_ * poses_.size(), 0);
  if (n <= kMaxPackedOrder) {
    const PackedScorer scorer(n, ConfigSet::RotatedTranslations);
    for (std::size_t b = 0; b < slots_; ++b) {
      const auto bank = scorer.bank(PackedGrid::pack(encodings[b]));
      for (std::size_t a = 0; a < slots_; ++a) {
        const std::uint64_t bits = PackedGrid::pack(encodings[a]).bits;
        for (std::size_t k = 0; k < poses_.size(); ++k) {
          numerators_[(a * slots_ + b) * poses_.size() + k] = static_cast<std::int16_t>(scorer.numerator(bits, bank.data(), k));
        }
      }
    }
  } else {
    for (std::size_t a = 0; a < slots_; ++a)
      for (std::size_t b = 0; b < slots_; ++b) {
        const CellMatrix* ca = &encodings[a].cells();
        std::array<CellMatrix, 4> turns;
        for (int q = 0; q < 4; ++q) turns[q] = rotate_quarter(encodings[b].cells(), q);
        for (std::size_t k = 0; k < poses_.size(); ++k) {
          const Pose& p = poses_[k];
          numerators_[(a * slots_ + b) * poses_.size() + k] =
              static_cast<std::int16_t>(translation_numerator(*ca, turns[p.rotation], p.dx, p.dy));
        }
      }
  }
}

Rational ContactScores::score(int face_a, int face_b, std::size_t pose_index) const {
  const int a = slot_[face_a], b = slot_[face_b];
  if (a < 0 || b < 0) return Rational(0);
  return Rational(numerators_[(static_cast<std::size_t>(a) * slots_ + b) * poses_.size() + pose_index], den_);
}

Rational ContactScores::angle_score(int face_a, int face_b, double angle_deg) const {
  const int a = slot_[face_a], b = slot_[face_b];
  if (a < 0 || b < 0) return Rational(0);
  const auto key = std::make_tuple(a, b, std::lround(angle_deg * 1000.0));
  if (auto it = angle_cache_.find(key); it != angle_cache_.end()) return it->second;
  const Rational s = arbitrary_rotation_score(*target_->face_encoding(face_a), *target_->face_encoding(face_b),
                                              angle_deg, upsample_);
  angle_cache_.emplace(key, s);
  return s;
}

WorldState::WorldState(const TargetAssembly& t, const FluidParams& f)
    : scores_(t, f), rng_(f.seed), bonded_to_(TargetAssembly::kFaces, -1) {
  f.validate();
}

std::uint64_t WorldState::uniform_below(std::uint64_t n) {
  // Rejection sampling keeps the draw unbiased and independent of the standard library.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = 0;
  do {
    x = rng_();
  } while (x >= limit);
  return x % n;
}

std::size_t WorldState::designated_active() const {
  return static_cast<std::size_t>(std::count_if(bonds_.begin(), bonds_.end(),
                                                [](const ActiveBond& b) { return b.designated; }));
}

bool WorldState::complete() const { return designated_active() == TargetAssembly::kBonds; }

void WorldState::contact_trial(const TargetAssembly& t, const FluidParams& f) {
  std::vector<int> free_faces;
  free_faces.reserve(TargetAssembly::kFaces);
  for (int face = 0; face < TargetAssembly::kFaces; ++face)
    if (bonded_to_[face] < 0) free_faces.push_back(face);

  int fa = -1, fb = -1;
  // A face never touches another face of its own cube.
  bool possible = false;
  for (int x : free_faces)
    if (TargetAssembly::module_of(x) != TargetAssembly::module_of(free_faces.front())) possible = true;
  if (!possible) return;
  do {
    fa = free_faces[uniform_below(free_faces.size())];
    fb = free_faces[uniform_below(free_faces.size())];
  } while (TargetAssembly::module_of(fa) == TargetAssembly::module_of(fb));

  Pose pose;
  double angle = 0.0;
  Rational s;
  if (f.arbitrary_angles) {
    const auto slot = uniform_below(36);
    angle = 10.0 * static_cast<double>(slot);
    if (slot % 9 == 0) {
      const int n = t.order();
      const std::size_t per_turn = static_cast<std::size_t>(2 * n - 1) * (2 * n - 1);
      const std::size_t k = (slot / 9) * per_turn + uniform_below(per_turn);
      pose = scores_.pose(k);
      s = scores_.score(fa, fb, k);
    } else {
      pose = Pose{0, 0, 0};
      s = scores_.angle_score(fa, fb, angle);
    }
  } else {
    const std::size_t k = uniform_below(scores_.pose_count());
    pose = scores_.pose(k);
    angle = 90.0 * pose.rotation;
    s = scores_.score(fa, fb, k);
  }
  if (!(s < f.f_f)) return;

  const bool lattice_pose = !f.arbitrary_angles || std::fmod(angle, 90.0) == 0.0;
  const bool designated = t.partner(fa) == fb && lattice_pose && pose.is_mating();
  bonds_.push_back({fa, fb, pose, angle, s, designated});
  bonded_to_[fa] = fb;
  bonded_to_[fb] = fa;
  if (!designated) ++misassembly_events_;
  events_.push_back({steps_, AssemblyEvent::Kind::Bond, fa, fb, pose, angle, s, !designated});
}

void WorldState::agitation_trial(const FluidParams& f) {
  if (bonds_.empty()) return;
  const std::size_t k = uniform_below(bonds_.size());
  const ActiveBond b = bonds_[k];
  if (b.score < f.f_f) return;
  bonds_.erase(bonds_.begin() + static_cast<std::ptrdiff_t>(k));
  bonded_to_[b.face_a] = -1;
  bonded_to_[b.face_b] = -1;
  events_.push_back({steps_, AssemblyEvent::Kind::Break, b.face_a, b.face_b, b.pose, b.angle_deg, b.score, !b.designated});
}

void step(WorldState& w, const TargetAssembly& t, const FluidParams& f) {
  if (w.uniform_below(2) == 0) {
    w.contact_trial(t, f);
  } else {
    w.agitation_trial(f);
  }
  ++w.steps_;
}

AssemblyReport run(const TargetAssembly& t, const FluidParams& f, std::uint64_t max_steps) {
  if (max_steps == 0) throw ValidationError("max_steps must be positive");
  f.validate();
  WorldState w(t, f);
  while (w.steps() < max_steps && !w.complete()) step(w, t, f);

  AssemblyReport r;
  r.completed = w.complete();
  r.steps = w.steps();
  r.misassembly_events = w.misassembly_events();
  for (const auto& e : w.events()) {
    if (e.kind == AssemblyEvent::Kind::Bond) ++r.bonds_formed;
    else ++r.breaks;
  }
  r.permanent_misassemblies = static_cast<std::size_t>(
      std::count_if(w.bonds().begin(), w.bonds().end(), [](const ActiveBond& b) { return !b.designated; }));
  r.events = w.events();
  r.final_bonds = w.bonds();
  return r;
}

}  // namespace magcode
