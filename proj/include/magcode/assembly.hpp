#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "magcode/encoding.hpp"
#include "magcode/rational.hpp"
#include "magcode/scoring.hpp"

namespace magcode {

/// Designated bond of the target: the clique matrix on face_a, its mate on face_b.
struct TargetBond {
  int face_a = 0;
  int face_b = 0;
  std::size_t matrix = 0;
};

/// Eight cubes at the vertices of a 2x2x2 block ("meta-cube"), 12 internal bonds.
///
/// Module m sits at (m & 1, (m >> 1) & 1, (m >> 2) & 1). Faces are numbered
/// module * 6 + {0: +X, 1: -X, 2: +Y, 3: -Y, 4: +Z, 5: -Z}.
class TargetAssembly {
 public:
  static constexpr int kModules = 8;
  static constexpr int kFacesPerModule = 6;
  static constexpr int kFaces = kModules * kFacesPerModule;
  static constexpr int kBonds = 12;

  const std::vector<Encoding>& clique() const { return clique_; }
  const std::vector<TargetBond>& bonds() const { return bonds_; }
  int order() const { return clique_.front().order(); }

  /// nullopt for neutral exterior faces.
  const std::optional<Encoding>& face_encoding(int face) const { return faces_[face]; }
  /// Designated partner face, or -1 for exterior faces.
  int partner(int face) const { return partner_[face]; }
  static int module_of(int face) { return face / kFacesPerModule; }

  std::size_t exterior_face_count() const;
  int module_degree(int module) const;

  friend TargetAssembly build_meta_cube_target(const std::vector<Encoding>& clique);

 private:
  std::vector<Encoding> clique_;
  std::vector<TargetBond> bonds_;
  std::vector<std::optional<Encoding>> faces_;
  std::vector<int> partner_;
};

/// Assigns the 12 clique matrices to the 12 cube edges, ordered by (lower module, axis).
TargetAssembly build_meta_cube_target(const std::vector<Encoding>& clique);

struct FluidParams {
  /// Normalized bond-survival threshold: a pose bonds (and survives) iff its score < f_f.
  Rational f_f{-1, 2};
  std::uint64_t seed = 1;
  /// Also sample off-lattice rotations (10 degree grid, centered) using the
  /// discretized rotation score.
  bool arbitrary_angles = false;
  int upsample = 10;

  void validate() const;
};

struct ActiveBond {
  int face_a = 0;
  int face_b = 0;
  Pose pose;
  double angle_deg = 0.0;
  Rational score;
  bool designated = false;
};

struct AssemblyEvent {
  enum class Kind { Bond, Break };
  std::uint64_t step = 0;
  Kind kind = Kind::Bond;
  int face_a = 0;
  int face_b = 0;
  Pose pose;
  double angle_deg = 0.0;
  Rational score;
  bool misassembly = false;
};

/// Scores between the faces of one target at every contact pose, precomputed.
class ContactScores {
 public:
  ContactScores(const TargetAssembly& t, const FluidParams& f);

  std::size_t pose_count() const { return poses_.size(); }
  const Pose& pose(std::size_t k) const { return poses_[k]; }
  Rational score(int face_a, int face_b, std::size_t pose_index) const;
  /// Centered score at an off-lattice angle (cached).
  Rational angle_score(int face_a, int face_b, double angle_deg) const;

 private:
  const TargetAssembly* target_;
  int upsample_;
  std::vector<Pose> poses_;
  std::vector<int> slot_;  // face -> encoding slot, -1 neutral
  std::size_t slots_ = 0;
  std::vector<std::int16_t> numerators_;
  std::int64_t den_ = 1;
  mutable std::map<std::tuple<int, int, long>, Rational> angle_cache_;
};

class WorldState {
 public:
  WorldState(const TargetAssembly& t, const FluidParams& f);

  const std::vector<ActiveBond>& bonds() const { return bonds_; }
  const std::vector<AssemblyEvent>& events() const { return events_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t misassembly_events() const { return misassembly_events_; }
  int bonded_partner(int face) const { return bonded_to_[face]; }

  bool complete() const;
  std::size_t designated_active() const;

  friend void step(WorldState& w, const TargetAssembly& t, const FluidParams& f);

 private:
  std::uint64_t uniform_below(std::uint64_t n);
  void contact_trial(const TargetAssembly& t, const FluidParams& f);
  void agitation_trial(const FluidParams& f);

  ContactScores scores_;
  std::mt19937_64 rng_;
  std::vector<ActiveBond> bonds_;
  std::vector<int> bonded_to_;
  std::vector<AssemblyEvent> events_;
  std::uint64_t steps_ = 0;
  std::uint64_t misassembly_events_ = 0;
};

/// One event, contact or agitation with equal probability.
void step(WorldState& w, const TargetAssembly& t, const FluidParams& f);

struct AssemblyReport {
  bool completed = false;
  std::uint64_t steps = 0;
  std::uint64_t bonds_formed = 0;
  std::uint64_t breaks = 0;
  std::uint64_t misassembly_events = 0;
  std::size_t permanent_misassemblies = 0;
  std::vector<AssemblyEvent> events;
  std::vector<ActiveBond> final_bonds;
};

/// Steps until the target is complete or max_steps events have run.
AssemblyReport run(const TargetAssembly& t, const FluidParams& f, std::uint64_t max_steps);

}  // namespace magcode
