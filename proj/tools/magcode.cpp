// magcode: generate, score, search, plot and simulate magnetic face encodings.
//
// Every subcommand writes its outputs plus <command>.manifest.json into --out.
// Exit codes: 0 success, 1 validation, 2 I/O, 3 budget exhaustion.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "magcode/assembly.hpp"
#include "magcode/error.hpp"
#include "magcode/forcemodel.hpp"
#include "magcode/io.hpp"
#include "magcode/plotter.hpp"
#include "magcode/scoring.hpp"
#include "magcode/sweep.hpp"
#include "magcode/universe.hpp"

namespace fs = std::filesystem;
using namespace magcode;
using io::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects what a command read and wrote, then writes the run manifest.
class Run {
 public:
  Run(std::string command, fs::path out_dir) : command_(std::move(command)), out_(std::move(out_dir)) {
    started_ = utc_now();
    fs::create_directories(out_);
  }

  json& params() { return params_; }
  void input(const fs::path& p) { inputs_[p.string()] = io::file_hash(p); }

  fs::path output(const std::string& name) {
    outputs_.push_back(name);
    return out_ / name;
  }

  void write_text(const std::string& name, const std::string& text) { io::write_text(output(name), text); }
  void write_json(const std::string& name, const json& j, int indent = 2) {
    io::write_json(output(name), j, indent);
  }

  void finish() {
    json m = {{"command", command_},
              {"parameters", params_},
              {"input_hashes", inputs_},
              {"tool_version", kVersion},
              {"outputs", outputs_},
              {"timestamps", {{"started", started_}, {"finished", utc_now()}}}};
    io::write_json(out_ / (command_ + ".manifest.json"), m);
  }

 private:
  std::string command_;
  fs::path out_;
  std::string started_;
  json params_ = json::object();
  json inputs_ = json::object();
  std::vector<std::string> outputs_;
};

Encoding load_encoding(Run& run, const fs::path& p) {
  run.input(p);
  return io::read_encoding(p);
}

std::string slug(const Encoding& e, const std::string& fallback) {
  std::string s = e.label().empty() ? fallback : e.label();
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  int k = 3;
  bool permutations = false;
  fs::path out = ".";
};

void cmd_gen(const GenArgs& a) {
  Run run("gen", a.out);
  run.params() = {{"k", a.k}, {"permutations", a.permutations}};
  const Encoding h = sylvester(a.k);
  run.write_json(h.label() + ".json", io::to_json(h));
  if (a.permutations) {
    const MatrixUniverse u = permute_rows(h);
    run.write_json("universe.json", io::universe_to_json(u, &h), -1);
    std::cout << "universe: " << u.members.size() << " members\n";
  }
  run.finish();
}

// ---- score -----------------------------------------------------------------

struct ScoreArgs {
  std::vector<fs::path> files;
  std::string mode = "local";
  std::string config_set = "rotated-translations";
  int upsample = 10;
  fs::path face_spec;
  fs::path out = ".";
};

void cmd_score(const ScoreArgs& a) {
  Run run("score", a.out);
  run.params() = {{"mode", a.mode}, {"config_set", a.config_set}, {"upsample", a.upsample}};
  const ConfigSet set = config_set_from_string(a.config_set);

  std::vector<Encoding> enc;
  for (const auto& f : a.files) enc.push_back(load_encoding(run, f));

  auto need = [&](std::size_t n) {
    if (enc.size() != n) {
      throw ValidationError("mode '" + a.mode + "' takes " + std::to_string(n) + " encoding file(s)");
    }
  };

  std::ostringstream os;
  if (a.mode == "local") {
    need(1);
    json j = io::to_json(local_score(enc[0], set));
    j["label"] = enc[0].label();
    j["config_set"] = to_string(set);
    run.write_json("score-local.json", j);
    std::cout << "S_L = " << j["local_score"].get<std::string>() << '\n';
  } else if (a.mode == "pair") {
    need(2);
    json j = io::to_json(pair_report(enc[0], enc[1], set));
    j["config_set"] = to_string(set);
    run.write_json("score-pair.json", j);
    std::cout << "S_G = " << j["pair_score"].get<std::string>() << '\n';
  } else if (a.mode == "translation") {
    need(2);
    io::write_correlation_csv(os, translation_map(enc[0], enc[1]));
    run.write_text("correlation.csv", os.str());
  } else if (a.mode == "rotation") {
    need(2);
    io::write_rotation_csv(os, rotation_profile(enc[0], enc[1], -180.0, 180.0, 10.0, a.upsample));
    run.write_text("rotation.csv", os.str());
  } else if (a.mode == "force") {
    need(2);
    FaceSpec spec;
    if (!a.face_spec.empty()) {
      run.input(a.face_spec);
      spec = io::face_spec_from_json(io::read_json(a.face_spec));
    }
    io::write_force_csv(os, predicted_profile(enc[0], enc[1], spec));
    run.write_text("force.csv", os.str());
  } else {
    throw ValidationError("unknown score mode '" + a.mode + "'");
  }
  run.finish();
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  fs::path universe;
  std::string tau_l = "-0.2";
  std::string tau_start = "-0.2";
  std::string step = "0.02";
  std::size_t target = 12;
  int precision = 2;
  std::string config_set = "rotated-translations";
  std::size_t index = 0;
  std::string cache_dir;
  bool no_build_cache = false;
  std::uint64_t budget = 1'000'000'000ULL;
  unsigned threads = 0;
  fs::path out = ".";
};

void cmd_sweep(const SweepArgs& a) {
  Run run("sweep", a.out);
  std::string cache_dir = a.cache_dir;
  if (cache_dir.empty()) {
    if (const char* env = std::getenv("MAGCODE_CACHE_DIR")) cache_dir = env;
  }
  run.params() = {{"tau_l", a.tau_l},   {"tau_start", a.tau_start},   {"step", a.step},
                  {"target", a.target}, {"precision", a.precision},   {"config_set", a.config_set},
                  {"index", a.index},   {"build_cache", !a.no_build_cache}, {"budget", a.budget}};

  run.input(a.universe);
  const MatrixUniverse u = io::universe_from_json(io::read_json(a.universe));

  SweepOptions opts;
  opts.graph.config_set = config_set_from_string(a.config_set);
  opts.graph.threads = a.threads;
  opts.graph.build_cache = !a.no_build_cache;
  if (!cache_dir.empty()) opts.graph.cache_dir = fs::path(cache_dir);
  opts.cliques.budget = a.budget;

  const SweepResult s = threshold_sweep(u, Rational::parse(a.tau_l), Rational::parse(a.tau_start),
                                        Rational::parse(a.step), a.target, a.precision, opts);
  run.write_json("sweep.json", io::to_json(s));
  std::ostringstream fig;
  io::write_clique_size_csv(fig, s);
  run.write_text("clique-sizes.csv", fig.str());

  for (const auto& row : s.schedule) {
    std::cout << "tau_G " << row.tau_g.to_double() << ": max clique " << row.max_size << " (x" << row.count
              << ")\n";
  }
  if (!s.cliques_at_final.empty()) {
    const Clique c = select_clique(s, u, a.index);
    run.write_json("clique.json", io::to_json(c, u));
    std::cout << "selected clique " << a.index << " of " << s.cliques_at_final.size() << ": size "
              << c.members.size() << ", S_G " << c.achieved_sg << ", S_L " << c.achieved_sl << '\n';
  }
  run.finish();
}

// ---- gcode / verify-gcode --------------------------------------------------

ToolConfig load_tool_config(Run& run, const fs::path& p) {
  if (p.empty()) return {};
  run.input(p);
  return io::tool_config_from_json(io::read_json(p));
}

struct GcodeArgs {
  fs::path encoding;
  fs::path config;
  fs::path out = ".";
};

void cmd_gcode(const GcodeArgs& a) {
  Run run("gcode", a.out);
  const Encoding e = load_encoding(run, a.encoding);
  const ToolConfig cfg = load_tool_config(run, a.config);
  run.params() = {{"tool_config", io::to_json(cfg)}};
  const GCodeProgram prog = encoding_to_gcode(e, cfg);
  run.write_text(slug(e, "encoding") + ".gcode", prog.text());
  std::cout << "estimated job time: " << job_estimate(prog) << " s\n";
  run.finish();
}

void cmd_verify_gcode(const GcodeArgs& a) {
  Run run("verify-gcode", a.out);
  run.input(a.encoding);
  const ToolConfig cfg = load_tool_config(run, a.config);
  run.params() = {{"tool_config", io::to_json(cfg)}};
  const GCodeProgram prog = GCodeProgram::parse(io::read_text(a.encoding));
  Encoding e = gcode_to_encoding(prog, cfg);
  const std::size_t plunges = count_plunges(prog, cfg);
  run.write_json("decoded.json", io::to_json(e));
  std::cout << "plunges: " << plunges << '\n';
  run.finish();
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  fs::path scenario;
  std::size_t ensemble = 0;
  fs::path out = ".";
};

void cmd_simulate(const SimulateArgs& a) {
  Run run("simulate", a.out);
  run.input(a.scenario);
  const io::Scenario sc = io::scenario_from_json(io::read_json(a.scenario), a.scenario.parent_path());
  run.input(sc.clique_path);
  const TargetAssembly target = build_meta_cube_target(io::clique_encodings_from_json(io::read_json(sc.clique_path)));
  run.params() = {{"f_f", sc.fluid.f_f.str()},
                  {"seed", sc.fluid.seed},
                  {"arbitrary_angles", sc.fluid.arbitrary_angles},
                  {"upsample", sc.fluid.upsample},
                  {"max_steps", sc.max_steps},
                  {"ensemble", a.ensemble}};

  if (a.ensemble == 0) {
    const AssemblyReport r = magcode::run(target, sc.fluid, sc.max_steps);
    run.write_json("report.json", io::to_json(r));
    std::cout << "completed: " << std::boolalpha << r.completed << ", steps " << r.steps << ", misassembly events "
              << r.misassembly_events << '\n';
  } else {
    std::ostringstream os;
    io::write_ensemble_header(os);
    for (std::size_t k = 0; k < a.ensemble; ++k) {
      FluidParams f = sc.fluid;
      f.seed = sc.fluid.seed + k;
      io::write_ensemble_row(os, f.seed, magcode::run(target, f, sc.max_steps));
    }
    run.write_text("ensemble.csv", os.str());
  }
  run.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design, search, plot and simulate programmable magnetic face encodings"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Emit a Sylvester Hadamard matrix (and its row-permutation universe)");
  g->add_option("--k", gen.k, "Order exponent: N = 2^k")->required();
  g->add_flag("--permutations", gen.permutations, "Also write the row-permutation universe manifest");
  g->add_option("--out", gen.out, "Output directory");

  ScoreArgs score;
  auto* s = app.add_subcommand("score", "Score one encoding (local) or a pair (pair, translation, rotation, force)");
  s->add_option("files", score.files, "Encoding JSON files")->required();
  s->add_option("--mode", score.mode)->check(CLI::IsMember({"local", "pair", "translation", "rotation", "force"}));
  s->add_option("--config-set", score.config_set)
      ->check(CLI::IsMember({"rotated-translations", "centered-rotations"}));
  s->add_option("--upsample", score.upsample, "Rotation discretization factor");
  s->add_option("--face-spec", score.face_spec, "FaceSpec JSON for force mode");
  s->add_option("--out", score.out);

  SweepArgs sweep;
  auto* w = app.add_subcommand("sweep", "Lower tau_G until the maximum clique reaches the target size");
  w->add_option("universe", sweep.universe, "Universe manifest")->required();
  w->add_option("--tau-l", sweep.tau_l, "Local threshold (decimal or p/q)");
  w->add_option("--tau-start", sweep.tau_start, "Starting global threshold");
  w->add_option("--step", sweep.step, "Global threshold decrement");
  w->add_option("--target", sweep.target, "Target clique size");
  w->add_option("--precision", sweep.precision, "Decimal places scores are rounded to (0 = exact)");
  w->add_option("--config-set", sweep.config_set)
      ->check(CLI::IsMember({"rotated-translations", "centered-rotations"}));
  w->add_option("--index", sweep.index, "Which final clique to export (canonical order)");
  w->add_option("--cache-dir", sweep.cache_dir, "Pair-score cache directory (default $MAGCODE_CACHE_DIR)");
  w->add_flag("--no-build-cache", sweep.no_build_cache, "Fail instead of computing a missing pair table");
  w->add_option("--budget", sweep.budget, "Clique search expansion budget per step");
  w->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");
  w->add_option("--out", sweep.out);

  GcodeArgs gcode;
  auto* gc = app.add_subcommand("gcode", "Emit plotter G-code for an encoding");
  gc->add_option("encoding", gcode.encoding)->required();
  gc->add_option("--config", gcode.config, "ToolConfig JSON");
  gc->add_option("--out", gcode.out);

  GcodeArgs verify;
  auto* vg = app.add_subcommand("verify-gcode", "Decode a G-code program back to its encoding");
  vg->add_option("gcode", verify.encoding)->required();
  vg->add_option("--config", verify.config, "ToolConfig JSON");
  vg->add_option("--out", verify.out);

  SimulateArgs sim;
  auto* sm = app.add_subcommand("simulate", "Run the stochastic self-assembly simulation");
  sm->add_option("scenario", sim.scenario)->required();
  sm->add_option("--ensemble", sim.ensemble, "Run n consecutive seeds and write a CSV");
  sm->add_option("--out", sim.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*g) cmd_gen(gen);
    else if (*s) cmd_score(score);
    else if (*w) cmd_sweep(sweep);
    else if (*gc) cmd_gcode(gcode);
    else if (*vg) cmd_verify_gcode(verify);
    else if (*sm) cmd_simulate(sim);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return 3;
  } catch (const SweepExhaustedError& e) {
    std::cerr << "sweep exhausted: " << e.what() << '\n';
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
