#include "magcode/scoring.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace magcode {

namespace {

void require_same_order(const Encoding& a, const Encoding& b) {
  if (a.order() != b.order()) {
    throw DimensionError("encoding orders differ: " + std::to_string(a.order()) + " vs " +
                         std::to_string(b.order()));
  }
}

bool is_quarter_angle(double theta_deg, int& quarters) {
  const double q = theta_deg / 90.0;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-12) return false;
  quarters = static_cast<int>(std::fmod(r, 4.0));
  return true;
}

}  // namespace

const char* to_string(ConfigSet set) {
  return set == ConfigSet::RotatedTranslations ? "rotated-translations" : "centered-rotations";
}

ConfigSet config_set_from_string(const std::string& name) {
  if (name == "rotated-translations") return ConfigSet::RotatedTranslations;
  if (name == "centered-rotations") return ConfigSet::CenteredRotations;
  throw ValidationError("unknown configuration set '" + name + "'");
}

std::vector<Pose> scored_poses(int order, ConfigSet set) {
  std::vector<Pose> poses;
  const int r = order - 1;
  for (int n = 0; n < 4; ++n) {
    if (n > 0 && set == ConfigSet::CenteredRotations) {
      poses.push_back({n, 0, 0});
      continue;
    }
    for (int dy = -r; dy <= r; ++dy)
      for (int dx = -r; dx <= r; ++dx) poses.push_back({n, dx, dy});
  }
  return poses;
}

CorrelationMap::CorrelationMap(int order, Eigen::MatrixXi numerators)
    : order_(order), numerators_(std::move(numerators)) {}

int CorrelationMap::numerator(int dx, int dy) const {
  const int r = order_ - 1;
  if (std::abs(dx) > r || std::abs(dy) > r) return 0;
  return numerators_(dy + r, dx + r);
}

Rational aligned_score(const Encoding& a, const Encoding& b) {
  require_same_order(a, b);
  const int n = a.order();
  return Rational(a.cells().cwiseProduct(b.cells()).sum(), std::int64_t{n} * n);
}

CorrelationMap translation_map(const Encoding& a, const Encoding& b) {
  require_same_order(a, b);
  const int n = a.order();
  Eigen::MatrixXi values(2 * n - 1, 2 * n - 1);
  for (int dy = -(n - 1); dy <= n - 1; ++dy)
    for (int dx = -(n - 1); dx <= n - 1; ++dx)
      values(dy + n - 1, dx + n - 1) = translation_numerator(a.cells(), b.cells(), dx, dy);
  return CorrelationMap(n, std::move(values));
}

Rational quarter_rotation_score(const Encoding& a, const Encoding& b, int n) {
  require_same_order(a, b);
  const CellMatrix rotated = rotate_quarter(b.cells(), n);
  const int order = a.order();
  return Rational(a.cells().cwiseProduct(rotated).sum(), std::int64_t{order} * order);
}

Rational pose_score(const Encoding& a, const Encoding& b, const Pose& pose) {
  require_same_order(a, b);
  const CellMatrix rotated = rotate_quarter(b.cells(), pose.rotation);
  const int order = a.order();
  return Rational(translation_numerator(a.cells(), rotated, pose.dx, pose.dy),
                  std::int64_t{order} * order);
}

Rational arbitrary_rotation_score(const Encoding& a, const Encoding& b, double theta_deg,
                                  int upsample) {
  require_same_order(a, b);
  if (upsample < 1) throw ValidationError("upsample factor must be at least 1");
  if (int quarters = 0; is_quarter_angle(theta_deg, quarters)) {
    return quarter_rotation_score(a, b, quarters);
  }
  return discretized_rotation_score(a, b, theta_deg, upsample);
}

Rational discretized_rotation_score(const Encoding& a, const Encoding& b, double theta_deg,
                                    int upsample) {
  require_same_order(a, b);
  if (upsample < 1) throw ValidationError("upsample factor must be at least 1");
  const int m = a.order() * upsample;
  const double half = m / 2.0;
  const double theta = theta_deg * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  // Target cell centers in a y-up frame about the grid center; the source point
  // is the target rotated by -theta.
  Eigen::MatrixXi rotated = Eigen::MatrixXi::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const double y = half - (i + 0.5);
    for (int j = 0; j < m; ++j) {
      const double x = (j + 0.5) - half;
      const double sx = c * x + s * y;
      const double sy = -s * x + c * y;
      const auto col = static_cast<int>(std::floor(sx + half));
      const auto row = static_cast<int>(std::floor(half - sy));
      if (row < 0 || row >= m || col < 0 || col >= m) continue;
      rotated(i, j) = b(row / upsample, col / upsample);
    }
  }

  Eigen::MatrixXi padded = Eigen::MatrixXi::Zero(m + 2, m + 2);
  padded.block(1, 1, m, m) = rotated;
  std::int64_t total = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const int window = padded.block(i, j, 3, 3).sum();
      total += std::int64_t{a(i / upsample, j / upsample)} * window;
    }
  }
  return Rational(total, std::int64_t{9} * m * m);
}

RotationProfile rotation_profile(const Encoding& a, const Encoding& b, double start_deg,
                                 double stop_deg, double step_deg, int upsample) {
  if (step_deg <= 0) throw ValidationError("rotation step must be positive");
  RotationProfile profile;
  profile.upsample = upsample;
  const auto count = static_cast<int>(std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
  for (int k = 0; k < count; ++k) {
    const double theta = start_deg + k * step_deg;
    profile.angles.push_back(theta);
    profile.scores.push_back(arbitrary_rotation_score(a, b, theta, upsample));
  }
  return profile;
}

ScoreReport local_score(const Encoding& a, ConfigSet set) {
  const Encoding partner = mate(a);
  const int n = a.order();
  const std::int64_t den = std::int64_t{n} * n;

  std::array<CellMatrix, 4> rotations;
  for (int q = 0; q < 4; ++q) rotations[q] = rotate_quarter(partner.cells(), q);

  ScoreReport report{Rational(1), Pose{}};
  bool any = false;
  int best = 0;
  for (const Pose& pose : scored_poses(n, set)) {
    if (pose.is_mating()) continue;
    const int v = translation_numerator(a.cells(), rotations[pose.rotation], pose.dx, pose.dy);
    if (!any || v < best) {
      best = v;
      report.worst = pose;
      any = true;
    }
  }
  // Quarter turns are always scored, so `any` only guards an empty pose set.
  report.local_score = any ? Rational(std::min(best, 0), den) : Rational(0);
  return report;
}

PairReport pair_report(const Encoding& a, const Encoding& b, ConfigSet set) {
  require_same_order(a, b);
  const int n = a.order();
  std::array<CellMatrix, 4> rotations;
  for (int q = 0; q < 4; ++q) rotations[q] = rotate_quarter(b.cells(), q);

  PairReport report{Rational(0), Pose{}, false};
  int worst = -1;
  for (const Pose& pose : scored_poses(n, set)) {
    const int v = translation_numerator(a.cells(), rotations[pose.rotation], pose.dx, pose.dy);
    if (std::abs(v) > worst) {
      worst = std::abs(v);
      report.worst = pose;
      // v > 0 repels a against b, so it attracts a against b' = -b.
      report.against_mate = v > 0;
    }
  }
  report.score = Rational(-worst, std::int64_t{n} * n);
  return report;
}

}  // namespace magcode
