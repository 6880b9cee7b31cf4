#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "magcode/assembly.hpp"
#include "magcode/encoding.hpp"
#include "magcode/forcemodel.hpp"
#include "magcode/plotter.hpp"
#include "magcode/scoring.hpp"
#include "magcode/sweep.hpp"
#include "magcode/universe.hpp"

namespace magcode::io {

using nlohmann::json;

// Encoding: {"order": N, "label": "...", "rows": [[1, -1, ...], ...]}
json to_json(const Encoding& e);
Encoding encoding_from_json(const json& j);
Encoding read_encoding(const std::filesystem::path& path);
void write_encoding(const std::filesystem::path& path, const Encoding& e);

// CorrelationMap CSV: dx,dy,score_num,score_den,score_float (one row per offset).
void write_correlation_csv(std::ostream& os, const CorrelationMap& map);
// RotationProfile CSV: theta_deg,score_float
void write_rotation_csv(std::ostream& os, const RotationProfile& profile);

json to_json(const ScoreReport& r);
json to_json(const PairReport& r);
json to_json(const Pose& p);

/// Universe manifest. Row-permutation universes are stored as their base
/// matrix plus each member's permutation; anything else lists member rows.
json universe_to_json(const MatrixUniverse& u, const Encoding* base = nullptr);
MatrixUniverse universe_from_json(const json& j);

json to_json(const SweepResult& s);
json to_json(const Clique& c, const MatrixUniverse& u);
/// Reads the member rows of a clique export back as encodings.
std::vector<Encoding> clique_encodings_from_json(const json& j);
// Sweep CSV: clique_size,count,S_G (one row per tau_G step)
void write_clique_size_csv(std::ostream& os, const SweepResult& s);

ToolConfig tool_config_from_json(const json& j);
json to_json(const ToolConfig& c);

FaceSpec face_spec_from_json(const json& j);

// Measurement CSV: dx,dy,force_mN at 0.1 mN resolution.
void write_force_csv(std::ostream& os, const ForceProfile& p);
ForceProfile read_force_csv(std::istream& is);

/// Scenario: {"clique": "<clique export path>", "f_f": -0.6, "seed": 1,
/// "max_steps": 10000000, "arbitrary_angles": false}
struct Scenario {
  std::filesystem::path clique_path;
  FluidParams fluid;
  std::uint64_t max_steps = 10'000'000;
};
Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir);

json to_json(const AssemblyReport& r, std::size_t max_events = 1000);
// Ensemble CSV: seed,completed,steps,misassembly_events
void write_ensemble_header(std::ostream& os);
void write_ensemble_row(std::ostream& os, std::uint64_t seed, const AssemblyReport& r);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
json read_json(const std::filesystem::path& path);
/// indent < 0 writes compact JSON (used for large manifests).
void write_json(const std::filesystem::path& path, const json& j, int indent = 2);

/// FNV-1a of a file's bytes as 16 hex digits.
std::string file_hash(const std::filesystem::path& path);

/// Shortest decimal that round-trips, used for every float in CSV output.
std::string format_double(double v);

}  // namespace magcode::io
