#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "magcode/encoding.hpp"
#include "magcode/rational.hpp"

namespace magcode {

/// Which relative placements of two faces are scored.
///
/// RotatedTranslations: every quarter rotation of the second face combined with
/// every integer offset. CenteredRotations: every offset at 0 degrees, plus the
/// three non-trivial quarter rotations at the centered offset only.
enum class ConfigSet { RotatedTranslations, CenteredRotations };

const char* to_string(ConfigSet set);
ConfigSet config_set_from_string(const std::string& name);

/// Second face rotated by `rotation` quarter turns, then offset by (dx, dy).
struct Pose {
  int rotation = 0;
  int dx = 0;
  int dy = 0;

  bool is_mating() const { return rotation == 0 && dx == 0 && dy == 0; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

/// All scored poses for faces of the given order, in canonical order
/// (rotation, then dy, then dx, ascending).
std::vector<Pose> scored_poses(int order, ConfigSet set);

/// Unnormalized cross-correlation: sum over overlapping cells of a(i, j) * b(i + dy, j + dx).
template <typename DerivedA, typename DerivedB>
int translation_numerator(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                          int dx, int dy) {
  const int n = static_cast<int>(a.rows());
  const int r0 = std::max(0, -dy), r1 = std::min(n, n - dy);
  const int c0 = std::max(0, -dx), c1 = std::min(n, n - dx);
  if (r1 <= r0 || c1 <= c0) return 0;
  return a.block(r0, c0, r1 - r0, c1 - c0)
      .cwiseProduct(b.block(r0 + dy, c0 + dx, r1 - r0, c1 - c0))
      .sum();
}

/// Normalized interaction score of two faces over every integer offset.
class CorrelationMap {
 public:
  CorrelationMap(int order, Eigen::MatrixXi numerators);

  int order() const { return order_; }
  std::int64_t denominator() const { return std::int64_t{order_} * order_; }

  /// Zero for offsets with no overlap (|dx| or |dy| >= order).
  int numerator(int dx, int dy) const;
  Rational at(int dx, int dy) const { return Rational(numerator(dx, dy), denominator()); }

  /// Rows are dy, columns dx, both shifted by order - 1.
  const Eigen::MatrixXi& numerators() const { return numerators_; }

 private:
  int order_;
  Eigen::MatrixXi numerators_;
};

/// Normalized Hadamard-product sum: -1 is full attraction, +1 full repulsion.
Rational aligned_score(const Encoding& a, const Encoding& b);

CorrelationMap translation_map(const Encoding& a, const Encoding& b);

/// aligned score of `a` against `b` rotated by n quarter turns about its center.
Rational quarter_rotation_score(const Encoding& a, const Encoding& b, int n);

Rational pose_score(const Encoding& a, const Encoding& b, const Pose& pose);

/// Score at an arbitrary angle. Multiples of 90 degrees take the exact lattice
/// path; any other angle uses discretized_rotation_score.
Rational arbitrary_rotation_score(const Encoding& a, const Encoding& b, double theta_deg,
                                  int upsample = 10);

/// Both faces are upsampled by `upsample`; `b` is rotated about the grid center
/// by inverse mapping with nearest-neighbour sampling, smoothed with a 3x3 box
/// filter (outside the rotated footprint counts as 0) and multiplied against
/// the unsmoothed upsampled `a`. Normalized by (order * upsample)^2.
Rational discretized_rotation_score(const Encoding& a, const Encoding& b, double theta_deg,
                                    int upsample = 10);

struct RotationProfile {
  std::vector<double> angles;
  std::vector<Rational> scores;
  int upsample = 10;
};

/// Scores from start_deg to stop_deg inclusive at step_deg increments.
RotationProfile rotation_profile(const Encoding& a, const Encoding& b, double start_deg = -180.0,
                                 double stop_deg = 180.0, double step_deg = 10.0, int upsample = 10);

struct ScoreReport {
  Rational local_score;
  Pose worst;
};

/// Most attractive score between `a` and its mate over every scored pose except
/// the single mating pose.
ScoreReport local_score(const Encoding& a, ConfigSet set = ConfigSet::RotatedTranslations);

struct PairReport {
  Rational score;
  Pose worst;
  /// The worst pose is attractive between `a` and mate(b) rather than `a` and `b`.
  bool against_mate = false;
};

/// Worst attraction between the face pairs {a, a'} x {b, b'} over every scored
/// pose. Uses (-a) . b = -(a . b), so this is -max |score(a, b, pose)|.
PairReport pair_report(const Encoding& a, const Encoding& b,
                       ConfigSet set = ConfigSet::RotatedTranslations);

inline Rational pair_score(const Encoding& a, const Encoding& b,
                           ConfigSet set = ConfigSet::RotatedTranslations) {
  return pair_report(a, b, set).score;
}

}  // namespace magcode
