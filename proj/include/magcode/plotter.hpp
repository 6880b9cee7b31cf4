#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magcode/encoding.hpp"

namespace magcode {

/// Geometry and motion parameters of the dual-magnet plotter head.
///
/// The primary magnet stamps +1 pixels at the commanded position. The
/// secondary, oppositely polarized magnet sits dual_magnet_offset_mm further
/// along X, so a -1 pixel is stamped by commanding X + dual_magnet_offset_mm.
struct ToolConfig {
  double pixel_pitch_mm = 3.125;
  double dual_magnet_offset_mm = 40.0;
  double plunge_z_mm = 0.0;
  double travel_z_mm = 5.0;
  double feed_xy_mm_min = 1500.0;
  double feed_z_mm_min = 600.0;
  double dwell_s = 0.2;
  /// Pixel (0, 0) center; row index grows along +Y, column index along +X.
  double origin_x_mm = 20.0;
  double origin_y_mm = 20.0;
  /// Machine envelope, X in [0, travel_x_mm] and Y in [0, travel_y_mm].
  double travel_x_mm = 320.0;
  double travel_y_mm = 350.0;

  /// Order-independent invariants.
  void validate() const;
  /// Also checks that the idle magnet clears a face of this order.
  void validate_for(int order) const;
  /// Stable hex digest of every field.
  std::string hash() const;
};

class EnvelopeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DuplicateStampError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

struct GCodeCommand {
  enum class Kind { Units, Absolute, Rapid, Linear, Dwell };
  Kind kind = Kind::Rapid;
  std::optional<double> x, y, z;
  std::optional<double> feed_mm_min;
  double dwell_s = 0.0;
};

struct GCodeProgram {
  /// Comment lines without the leading "; ".
  std::vector<std::string> header;
  std::vector<GCodeCommand> commands;

  /// LF-terminated text, coordinates with three decimals.
  std::string text() const;
  static GCodeProgram parse(std::string_view text);

  /// Value of a "key: value" header line, if present.
  std::optional<std::string> header_value(std::string_view key) const;
};

/// One dwell-at-depth stamp per pixel in serpentine row order.
GCodeProgram encoding_to_gcode(const Encoding& e, const ToolConfig& cfg);

/// Rebuilds the encoding from the plunge positions of a program.
Encoding gcode_to_encoding(const GCodeProgram& p, const ToolConfig& cfg);

/// Number of plunges (feed moves down to plunge depth) in a program.
std::size_t count_plunges(const GCodeProgram& p, const ToolConfig& cfg);

/// Seconds: move lengths over their feed rates plus dwell time. The first move
/// on each axis starts from the position it commands.
double job_estimate(const GCodeProgram& p);

}  // namespace magcode
