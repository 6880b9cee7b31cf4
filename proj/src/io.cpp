#include "magcode/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace magcode::io {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + path.string());
  os << text;
  if (!os) throw IoError("failed writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j, int indent) {
  write_text(path, j.dump(indent) + "\n");
}

std::string file_hash(const std::filesystem::path& path) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : read_text(path)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const Encoding& e) {
  json rows = json::array();
  for (const auto& r : e.rows()) rows.push_back(r);
  return {{"order", e.order()}, {"label", e.label()}, {"rows", rows}};
}

Encoding encoding_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows")) throw ValidationError("encoding JSON needs a 'rows' array");
  std::vector<std::vector<int>> rows;
  for (const auto& r : j.at("rows")) {
    std::vector<int> row;
    for (const auto& v : r) {
      if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
        throw ValidationError("encoding values must be exactly 1 or -1");
      }
      row.push_back(v.get<int>());
    }
    rows.push_back(std::move(row));
  }
  Encoding e = Encoding::from_rows(rows, j.value("label", std::string{}));
  if (j.contains("order") && j.at("order").get<int>() != e.order()) {
    throw ValidationError("encoding 'order' field disagrees with its rows");
  }
  return e;
}

Encoding read_encoding(const std::filesystem::path& path) { return encoding_from_json(read_json(path)); }

void write_encoding(const std::filesystem::path& path, const Encoding& e) { write_json(path, to_json(e)); }

void write_correlation_csv(std::ostream& os, const CorrelationMap& map) {
  os << "dx,dy,score_num,score_den,score_float\n";
  const int r = map.order() - 1;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) {
      const int num = map.numerator(dx, dy);
      os << dx << ',' << dy << ',' << num << ',' << map.denominator() << ','
         << format_double(static_cast<double>(num) / static_cast<double>(map.denominator())) << '\n';
    }
}

void write_rotation_csv(std::ostream& os, const RotationProfile& profile) {
  os << "theta_deg,score_float\n";
  for (std::size_t k = 0; k < profile.angles.size(); ++k) {
    os << format_double(profile.angles[k]) << ',' << format_double(profile.scores[k].to_double()) << '\n';
  }
}

json to_json(const Pose& p) { return {{"rotation", p.rotation}, {"dx", p.dx}, {"dy", p.dy}}; }

json to_json(const ScoreReport& r) {
  return {{"local_score", r.local_score.str()},
          {"local_score_float", r.local_score.to_double()},
          {"worst_local_config", to_json(r.worst)}};
}

json to_json(const PairReport& r) {
  return {{"pair_score", r.score.str()},
          {"pair_score_float", r.score.to_double()},
          {"worst_config", to_json(r.worst)},
          {"against_mate", r.against_mate}};
}

json universe_to_json(const MatrixUniverse& u, const Encoding* base) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(universe_hash(u.members)));
  json j = {{"order", u.order},
            {"provenance", to_string(u.provenance)},
            {"count", u.members.size()},
            {"hash", hash}};
  json members = json::array();
  if (base && u.provenance == Provenance::SylvesterRowPermutations) {
    j["base"] = to_json(*base);
    for (std::size_t k = 0; k < u.members.size(); ++k) {
      members.push_back({{"index", k}, {"label", u.members[k].label()}, {"permutation", nth_permutation(u.order, k)}});
    }
  } else {
    for (std::size_t k = 0; k < u.members.size(); ++k) {
      json m = to_json(u.members[k]);
      m["index"] = k;
      members.push_back(m);
    }
  }
  j["members"] = members;
  return j;
}

MatrixUniverse universe_from_json(const json& j) {
  if (!j.is_object() || !j.contains("members")) throw ValidationError("universe manifest needs 'members'");
  MatrixUniverse u;
  if (j.contains("base")) {
    u = permute_rows(encoding_from_json(j.at("base")));
  } else {
    for (const auto& m : j.at("members")) u.members.push_back(encoding_from_json(m));
    if (u.members.empty()) throw ValidationError("universe manifest has no members");
    u.order = u.members.front().order();
    for (const auto& m : u.members) {
      if (m.order() != u.order) throw DimensionError("universe members differ in order");
    }
  }
  if (j.contains("count") && j.at("count").get<std::size_t>() != u.members.size()) {
    throw ValidationError("universe manifest count does not match its members");
  }
  if (j.contains("hash")) {
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(universe_hash(u.members)));
    if (j.at("hash").get<std::string>() != hash) throw ValidationError("universe manifest hash mismatch");
  }
  return u;
}

json to_json(const SweepResult& s) {
  json schedule = json::array();
  for (const auto& row : s.schedule) {
    schedule.push_back({{"tau_g", row.tau_g.str()},
                        {"tau_g_float", row.tau_g.to_double()},
                        {"lattice_bound", row.lattice_bound.str()},
                        {"edges", row.edges},
                        {"max_clique_size", row.max_size},
                        {"max_clique_count", row.count}});
  }
  json cliques = json::array();
  for (const auto& c : s.cliques_at_final) {
    cliques.push_back({{"members", c.members},
                       {"achieved_sg", c.achieved_sg.str()},
                       {"achieved_sl", c.achieved_sl.str()}});
  }
  return {{"tau_l", s.tau_l.value.str()},
          {"precision", s.precision},
          {"config_set", to_string(s.config_set)},
          {"vertex_count", s.vertex_count},
          {"schedule", schedule},
          {"final_tau_g", s.final_tau_g.str()},
          {"final_tau_g_float", s.final_tau_g.to_double()},
          {"cliques", cliques}};
}

json to_json(const Clique& c, const MatrixUniverse& u) {
  json members = json::array();
  for (auto idx : c.members) {
    json m = to_json(u.members.at(idx));
    m["index"] = idx;
    members.push_back(m);
  }
  return {{"size", c.members.size()},
          {"achieved_sg", c.achieved_sg.str()},
          {"achieved_sg_float", c.achieved_sg.to_double()},
          {"achieved_sl", c.achieved_sl.str()},
          {"achieved_sl_float", c.achieved_sl.to_double()},
          {"members", members}};
}

std::vector<Encoding> clique_encodings_from_json(const json& j) {
  if (!j.contains("members")) throw ValidationError("clique JSON needs a 'members' array");
  std::vector<Encoding> out;
  for (const auto& m : j.at("members")) out.push_back(encoding_from_json(m));
  return out;
}

void write_clique_size_csv(std::ostream& os, const SweepResult& s) {
  os << "clique_size,count,S_G\n";
  for (const auto& row : s.schedule) {
    os << row.max_size << ',' << row.count << ',' << format_double(row.tau_g.to_double()) << '\n';
  }
}

ToolConfig tool_config_from_json(const json& j) {
  ToolConfig c;
  auto take = [&](const char* key, double& field) {
    if (j.contains(key)) field = j.at(key).get<double>();
  };
  take("pixel_pitch_mm", c.pixel_pitch_mm);
  take("dual_magnet_offset_mm", c.dual_magnet_offset_mm);
  take("plunge_z_mm", c.plunge_z_mm);
  take("travel_z_mm", c.travel_z_mm);
  take("feed_xy_mm_min", c.feed_xy_mm_min);
  take("feed_z_mm_min", c.feed_z_mm_min);
  take("dwell_s", c.dwell_s);
  take("origin_x_mm", c.origin_x_mm);
  take("origin_y_mm", c.origin_y_mm);
  take("travel_x_mm", c.travel_x_mm);
  take("travel_y_mm", c.travel_y_mm);
  c.validate();
  return c;
}

json to_json(const ToolConfig& c) {
  return {{"pixel_pitch_mm", c.pixel_pitch_mm}, {"dual_magnet_offset_mm", c.dual_magnet_offset_mm},
          {"plunge_z_mm", c.plunge_z_mm},       {"travel_z_mm", c.travel_z_mm},
          {"feed_xy_mm_min", c.feed_xy_mm_min}, {"feed_z_mm_min", c.feed_z_mm_min},
          {"dwell_s", c.dwell_s},               {"origin_x_mm", c.origin_x_mm},
          {"origin_y_mm", c.origin_y_mm},       {"travel_x_mm", c.travel_x_mm},
          {"travel_y_mm", c.travel_y_mm}};
}

FaceSpec face_spec_from_json(const json& j) {
  FaceSpec s;
  if (j.contains("side_length_mm")) s.side_length_mm = j.at("side_length_mm").get<double>();
  if (j.contains("peak_pressure_pa")) s.peak_pressure_pa = j.at("peak_pressure_pa").get<double>();
  if (j.contains("repulsion_scale")) s.repulsion_scale = j.at("repulsion_scale").get<double>();
  s.validate();
  return s;
}

void write_force_csv(std::ostream& os, const ForceProfile& p) {
  os << "dx,dy,force_mN\n";
  char buf[64];
  for (const auto& s : p.samples) {
    std::snprintf(buf, sizeof buf, "%.1f", s.force_mn);
    std::string v = buf;
    if (v == "-0.0") v = "0.0";
    os << s.dx << ',' << s.dy << ',' << v << '\n';
  }
}

ForceProfile read_force_csv(std::istream& is) {
  ForceProfile p;
  std::string line;
  if (!std::getline(is, line)) throw ValidationError("empty force CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "dx,dy,force_mN") throw ValidationError("force CSV header must be 'dx,dy,force_mN'");
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ForceSample s;
    char c1 = 0, c2 = 0;
    std::istringstream ls(line);
    if (!(ls >> s.dx >> c1 >> s.dy >> c2 >> s.force_mn) || c1 != ',' || c2 != ',') {
      throw ValidationError("force CSV line " + std::to_string(line_no) + " is malformed");
    }
    p.samples.push_back(s);
  }
  return p;
}

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
  Scenario s;
  if (!j.contains("clique") || !j.contains("f_f")) throw ValidationError("scenario needs 'clique' and 'f_f'");
  s.clique_path = j.at("clique").get<std::string>();
  if (s.clique_path.is_relative()) s.clique_path = base_dir / s.clique_path;
  const auto& ff = j.at("f_f");
  s.fluid.f_f = ff.is_string() ? Rational::parse(ff.get<std::string>()) : Rational::parse(format_double(ff.get<double>()));
  s.fluid.seed = j.value("seed", std::uint64_t{1});
  s.fluid.arbitrary_angles = j.value("arbitrary_angles", false);
  s.fluid.upsample = j.value("upsample", 10);
  s.max_steps = j.value("max_steps", std::uint64_t{10'000'000});
  s.fluid.validate();
  if (s.max_steps == 0) throw ValidationError("max_steps must be positive");
  return s;
}

json to_json(const AssemblyReport& r, std::size_t max_events) {
  json events = json::array();
  for (std::size_t k = 0; k < r.events.size() && k < max_events; ++k) {
    const auto& e = r.events[k];
    events.push_back({{"step", e.step},
                      {"kind", e.kind == AssemblyEvent::Kind::Bond ? "bond" : "break"},
                      {"face_a", e.face_a},
                      {"face_b", e.face_b},
                      {"pose", to_json(e.pose)},
                      {"angle_deg", e.angle_deg},
                      {"score", e.score.str()},
                      {"misassembly", e.misassembly}});
  }
  return {{"completed", r.completed},
          {"steps", r.steps},
          {"bonds_formed", r.bonds_formed},
          {"breaks", r.breaks},
          {"misassembly_events", r.misassembly_events},
          {"permanent_misassemblies", r.permanent_misassemblies},
          {"event_count", r.events.size()},
          {"events_truncated", r.events.size() > max_events},
          {"events", events}};
}

void write_ensemble_header(std::ostream& os) { os << "seed,completed,steps,misassembly_events\n"; }

void write_ensemble_row(std::ostream& os, std::uint64_t seed, const AssemblyReport& r) {
  os << seed << ',' << (r.completed ? "true" : "false") << ',' << r.steps << ',' << r.misassembly_events << '\n';
}

}  // namespace magcode::io
