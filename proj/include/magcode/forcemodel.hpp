#pragma once

#include <string>
#include <vector>

#include "magcode/encoding.hpp"
#include "magcode/rational.hpp"

namespace magcode {

/// Physical constants of one square face.
struct FaceSpec {
  double side_length_mm = 25.0;
  double peak_pressure_pa = 256.0;
  /// Repulsive forces are scaled by this factor relative to attraction.
  double repulsion_scale = 0.09;

  void validate() const;
  /// Force at full attraction, in mN (positive magnitude).
  double peak_force_mn() const;
};

/// Scores map to forces linearly, with repulsion scaled by repulsion_scale.
/// Negative is attraction. Throws ValidationError outside [-1, 1].
double score_to_force(const Rational& score, const FaceSpec& spec = {});

struct ForceSample {
  int dx = 0;
  int dy = 0;
  double force_mn = 0.0;
};

struct ForceProfile {
  std::vector<ForceSample> samples;

  /// Most negative force; 0 if nothing attracts.
  double peak_attraction() const;
};

/// translation_map of (a, b) passed through score_to_force, ordered by (dy, dx).
ForceProfile predicted_profile(const Encoding& a, const Encoding& b, const FaceSpec& spec = {});

/// The profile divided by its largest |force|. For mate profiles that is the
/// peak attraction; using the magnitude keeps normalized(-p) == -normalized(p).
ForceProfile normalized(const ForceProfile& p);

/// Mean squared difference of the two normalized profiles over their offsets.
/// Throws AlignmentError when the offset sets differ.
double compare_sse(const ForceProfile& predicted, const ForceProfile& measured);

class AlignmentError : public ValidationError {
 public:
  AlignmentError(const std::string& what, std::vector<std::pair<int, int>> missing)
      : ValidationError(what), missing_(std::move(missing)) {}
  const std::vector<std::pair<int, int>>& missing() const { return missing_; }

 private:
  std::vector<std::pair<int, int>> missing_;
};

}  // namespace magcode
