#include "magcode/forcemodel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "magcode/scoring.hpp"

namespace magcode {

void FaceSpec::validate() const {
  if (!(side_length_mm > 0)) throw ValidationError("face side length must be positive");
  if (!(peak_pressure_pa > 0)) throw ValidationError("peak pressure must be positive");
  if (!(repulsion_scale > 0 && repulsion_scale <= 1)) throw ValidationError("repulsion scale must lie in (0, 1]");
}

double FaceSpec::peak_force_mn() const {
  // Pa * mm^2 = 1e-6 N = 1e-3 mN.
  return peak_pressure_pa * side_length_mm * side_length_mm * 1e-3;
}

double score_to_force(const Rational& score, const FaceSpec& spec) {
  spec.validate();
  if (score < Rational(-1) || score > Rational(1)) {
    throw ValidationError("score " + score.str() + " outside [-1, 1]");
  }
  const double f = score.to_double() * spec.peak_force_mn();
  return score > Rational(0) ? f * spec.repulsion_scale : f;
}

double ForceProfile::peak_attraction() const {
  double peak = 0.0;
  for (const auto& s : samples) peak = std::min(peak, s.force_mn);
  return peak;
}

ForceProfile predicted_profile(const Encoding& a, const Encoding& b, const FaceSpec& spec) {
  const CorrelationMap map = translation_map(a, b);
  ForceProfile p;
  const int r = map.order() - 1;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) p.samples.push_back({dx, dy, score_to_force(map.at(dx, dy), spec)});
  return p;
}

ForceProfile normalized(const ForceProfile& p) {
  double peak = 0.0;
  for (const auto& s : p.samples) peak = std::max(peak, std::abs(s.force_mn));
  if (peak == 0.0) throw ValidationError("profile is zero everywhere; nothing to normalize by");
  ForceProfile out = p;
  for (auto& s : out.samples) s.force_mn /= peak;
  return out;
}

double compare_sse(const ForceProfile& predicted, const ForceProfile& measured) {
  std::map<std::pair<int, int>, double> lhs, rhs;
  for (const auto& s : normalized(predicted).samples) lhs[{s.dx, s.dy}] = s.force_mn;
  for (const auto& s : normalized(measured).samples) rhs[{s.dx, s.dy}] = s.force_mn;

  std::vector<std::pair<int, int>> missing;
  for (const auto& [k, v] : lhs)
    if (!rhs.count(k)) missing.push_back(k);
  for (const auto& [k, v] : rhs)
    if (!lhs.count(k)) missing.push_back(k);
  if (!missing.empty()) {
    std::string list;
    for (const auto& [dx, dy] : missing) {
      if (!list.empty()) list += ' ';
      list += "(" + std::to_string(dx) + "," + std::to_string(dy) + ")";
    }
    throw AlignmentError("profiles cover different offsets: " + list, std::move(missing));
  }
  if (lhs.empty()) throw ValidationError("empty profiles");

  double total = 0.0;
  for (const auto& [k, v] : lhs) {
    const double d = v - rhs.at(k);
    total += d * d;
  }
  return total / static_cast<double>(lhs.size());
}

}  // namespace magcode
