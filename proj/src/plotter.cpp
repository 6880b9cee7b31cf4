#include "magcode/plotter.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace magcode {

namespace {

constexpr double kTolerance = 0.01;

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // Avoid "-0.000".
  if (std::strcmp(buf, "-0.000") == 0) return "0.000";
  return buf;
}

}  // namespace

void ToolConfig::validate() const {
  if (!(pixel_pitch_mm > 0)) throw ValidationError("pixel pitch must be positive");
  if (!(travel_z_mm > plunge_z_mm)) throw ValidationError("travel height must be above plunge height");
  if (!(feed_xy_mm_min > 0) || !(feed_z_mm_min > 0)) throw ValidationError("feed rates must be positive");
  if (dwell_s < 0) throw ValidationError("dwell must be non-negative");
  if (!(dual_magnet_offset_mm > 0)) throw ValidationError("dual magnet offset must be positive");
}

void ToolConfig::validate_for(int order) const {
  validate();
  if (!(dual_magnet_offset_mm > order * pixel_pitch_mm)) {
    throw ValidationError("dual magnet offset " + fmt3(dual_magnet_offset_mm) + " mm does not clear a face of " +
                          std::to_string(order) + " x " + fmt3(pixel_pitch_mm) + " mm pixels");
  }
}

std::string ToolConfig::hash() const {
  std::ostringstream os;
  for (double v : {pixel_pitch_mm, dual_magnet_offset_mm, plunge_z_mm, travel_z_mm, feed_xy_mm_min, feed_z_mm_min,
                   dwell_s, origin_x_mm, origin_y_mm, travel_x_mm, travel_y_mm}) {
    os << fmt3(v) << ';';
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string GCodeProgram::text() const {
  std::ostringstream os;
  for (const auto& line : header) os << "; " << line << '\n';
  for (const auto& c : commands) {
    switch (c.kind) {
      case GCodeCommand::Kind::Units: os << "G21"; break;
      case GCodeCommand::Kind::Absolute: os << "G90"; break;
      case GCodeCommand::Kind::Dwell:
        os << "G4 P" << static_cast<long long>(std::llround(c.dwell_s * 1000.0));
        break;
      case GCodeCommand::Kind::Rapid:
      case GCodeCommand::Kind::Linear:
        os << (c.kind == GCodeCommand::Kind::Rapid ? "G0" : "G1");
        if (c.x) os << " X" << fmt3(*c.x);
        if (c.y) os << " Y" << fmt3(*c.y);
        if (c.z) os << " Z" << fmt3(*c.z);
        if (c.feed_mm_min) os << " F" << fmt3(*c.feed_mm_min);
        break;
    }
    os << '\n';
  }
  return os.str();
}

GCodeProgram GCodeProgram::parse(std::string_view text) {
  GCodeProgram p;
  std::size_t line_no = 0;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line[start] == ';') {
      std::string body = line.substr(start + 1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      // Header comments are the ones before the first command.
      if (p.commands.empty()) p.header.push_back(body);
      continue;
    }
    if (const auto semi = line.find(';'); semi != std::string::npos) line.resize(semi);

    std::istringstream words(line);
    std::string word;
    GCodeCommand cmd;
    bool have_code = false;
    while (words >> word) {
      const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      double value = 0.0;
      try {
        std::size_t used = 0;
        value = std::stod(word.substr(1), &used);
        if (used != word.size() - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ValidationError("g-code line " + std::to_string(line_no) + ": bad word '" + word + "'");
      }
      switch (letter) {
        case 'G': {
          have_code = true;
          const int code = static_cast<int>(value);
          if (code == 0) cmd.kind = GCodeCommand::Kind::Rapid;
          else if (code == 1) cmd.kind = GCodeCommand::Kind::Linear;
          else if (code == 4) cmd.kind = GCodeCommand::Kind::Dwell;
          else if (code == 21) cmd.kind = GCodeCommand::Kind::Units;
          else if (code == 90) cmd.kind = GCodeCommand::Kind::Absolute;
          else throw ValidationError("g-code line " + std::to_string(line_no) + ": unsupported G" + std::to_string(code));
          break;
        }
        case 'X': cmd.x = value; break;
        case 'Y': cmd.y = value; break;
        case 'Z': cmd.z = value; break;
        case 'F': cmd.feed_mm_min = value; break;
        case 'P': cmd.dwell_s = value / 1000.0; break;
        default:
          throw ValidationError("g-code line " + std::to_string(line_no) + ": unsupported word '" + word + "'");
      }
    }
    if (!have_code) throw ValidationError("g-code line " + std::to_string(line_no) + ": no G word");
    p.commands.push_back(cmd);
  }
  return p;
}

std::optional<std::string> GCodeProgram::header_value(std::string_view key) const {
  for (const auto& line : header) {
    if (line.size() > key.size() + 1 && line.compare(0, key.size(), key) == 0 && line[key.size()] == ':') {
      auto v = line.substr(key.size() + 1);
      const auto s = v.find_first_not_of(' ');
      return s == std::string::npos ? std::string{} : v.substr(s);
    }
  }
  return std::nullopt;
}

GCodeProgram encoding_to_gcode(const Encoding& e, const ToolConfig& cfg) {
  cfg.validate_for(e.order());
  const int n = e.order();
  const double max_x = cfg.origin_x_mm + (n - 1) * cfg.pixel_pitch_mm + cfg.dual_magnet_offset_mm;
  const double max_y = cfg.origin_y_mm + (n - 1) * cfg.pixel_pitch_mm;
  if (cfg.origin_x_mm < 0 || cfg.origin_y_mm < 0 || max_x > cfg.travel_x_mm || max_y > cfg.travel_y_mm) {
    throw EnvelopeError("face plus magnet offset spans X up to " + fmt3(max_x) + " and Y up to " + fmt3(max_y) +
                        " mm, outside the " + fmt3(cfg.travel_x_mm) + " x " + fmt3(cfg.travel_y_mm) + " mm envelope");
  }

  GCodeProgram p;
  p.header = {
      "magcode plotter program",
      "label: " + (e.label().empty() ? std::string("unlabeled") : e.label()),
      "order: " + std::to_string(n),
      "config: " + cfg.hash(),
      "polarity: +1 primary magnet at pixel center; -1 secondary magnet, commanded at X + " +
          fmt3(cfg.dual_magnet_offset_mm),
      "units: mm, absolute; dwell G4 P in milliseconds",
  };
  using K = GCodeCommand::Kind;
  p.commands.push_back({K::Units, {}, {}, {}, {}, 0.0});
  p.commands.push_back({K::Absolute, {}, {}, {}, {}, 0.0});
  p.commands.push_back({K::Rapid, {}, {}, cfg.travel_z_mm, cfg.feed_z_mm_min, 0.0});
  for (int i = 0; i < n; ++i) {
    for (int step = 0; step < n; ++step) {
      const int j = (i % 2 == 0) ? step : n - 1 - step;
      double x = cfg.origin_x_mm + j * cfg.pixel_pitch_mm;
      if (e(i, j) < 0) x += cfg.dual_magnet_offset_mm;
      const double y = cfg.origin_y_mm + i * cfg.pixel_pitch_mm;
      p.commands.push_back({K::Rapid, x, y, {}, cfg.feed_xy_mm_min, 0.0});
      p.commands.push_back({K::Linear, {}, {}, cfg.plunge_z_mm, cfg.feed_z_mm_min, 0.0});
      p.commands.push_back({K::Dwell, {}, {}, {}, {}, cfg.dwell_s});
      p.commands.push_back({K::Linear, {}, {}, cfg.travel_z_mm, cfg.feed_z_mm_min, 0.0});
    }
  }
  return p;
}

namespace {

template <typename Visit>
void for_each_plunge(const GCodeProgram& p, const ToolConfig& cfg, Visit visit) {
  std::optional<double> x, y;
  for (const auto& c : p.commands) {
    if (c.kind != GCodeCommand::Kind::Rapid && c.kind != GCodeCommand::Kind::Linear) continue;
    if (c.x) x = c.x;
    if (c.y) y = c.y;
    if (c.z && *c.z <= cfg.plunge_z_mm + kTolerance) {
      if (!x || !y) throw GeometryError("plunge before any XY positioning");
      visit(*x, *y);
    }
  }
}

}  // namespace

std::size_t count_plunges(const GCodeProgram& p, const ToolConfig& cfg) {
  std::size_t n = 0;
  for_each_plunge(p, cfg, [&](double, double) { ++n; });
  return n;
}

Encoding gcode_to_encoding(const GCodeProgram& p, const ToolConfig& cfg) {
  const auto order_text = p.header_value("order");
  if (!order_text) throw ValidationError("g-code header has no 'order:' line");
  const int n = std::stoi(*order_text);
  if (n < 1) throw ValidationError("g-code header order must be positive");
  cfg.validate_for(n);

  CellMatrix cells = CellMatrix::Zero(n, n);
  auto locate = [&](double offset, const char* axis) {
    const double idx = offset / cfg.pixel_pitch_mm;
    const long k = std::lround(idx);
    if (std::abs(offset - k * cfg.pixel_pitch_mm) > kTolerance || k < 0 || k >= n) {
      throw GeometryError(std::string("plunge ") + axis + " offset " + fmt3(offset) +
                          " mm does not land on a pixel center");
    }
    return static_cast<int>(k);
  };
  for_each_plunge(p, cfg, [&](double x, double y) {
    double dx = x - cfg.origin_x_mm;
    int polarity = 1;
    if (dx > (n - 1) * cfg.pixel_pitch_mm + kTolerance) {
      dx -= cfg.dual_magnet_offset_mm;
      polarity = -1;
    }
    const int j = locate(dx, "X");
    const int i = locate(y - cfg.origin_y_mm, "Y");
    if (cells(i, j) != 0) {
      throw DuplicateStampError("pixel (" + std::to_string(i) + ", " + std::to_string(j) + ") stamped twice");
    }
    cells(i, j) = polarity;
  });
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cells(i, j) == 0) {
        throw GeometryError("pixel (" + std::to_string(i) + ", " + std::to_string(j) + ") never stamped");
      }
  auto label = p.header_value("label");
  return Encoding(std::move(cells), label && *label != "unlabeled" ? *label : std::string{});
}

double job_estimate(const GCodeProgram& p) {
  std::optional<double> pos[3];
  double seconds = 0.0;
  for (const auto& c : p.commands) {
    if (c.kind == GCodeCommand::Kind::Dwell) {
      seconds += c.dwell_s;
      continue;
    }
    if (c.kind != GCodeCommand::Kind::Rapid && c.kind != GCodeCommand::Kind::Linear) continue;
    const std::optional<double> target[3] = {c.x, c.y, c.z};
    double dist2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      if (!target[a]) continue;
      if (pos[a]) dist2 += (*target[a] - *pos[a]) * (*target[a] - *pos[a]);
      pos[a] = target[a];
    }
    if (dist2 > 0.0) {
      if (!c.feed_mm_min || *c.feed_mm_min <= 0) throw ValidationError("motion without a feed rate");
      seconds += std::sqrt(dist2) / (*c.feed_mm_min / 60.0);
    }
  }
  return seconds;
}

}  // namespace magcode
