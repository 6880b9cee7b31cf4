// End-to-end runs of the command-line tool. The binary path comes from the
// build system; every case works in its own scratch directory.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "magcode/io.hpp"

namespace fs = std::filesystem;
using magcode::io::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "magcode-test-cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "stdout.txt";
  const std::string cmd = std::string("\"") + MAGCODE_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = magcode::io::read_text(log);
  return r;
}

std::size_t line_count(const fs::path& p) {
  const std::string t = magcode::io::read_text(p);
  return static_cast<std::size_t>(std::count(t.begin(), t.end(), '\n'));
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("gen writes matrices and the permutation universe") {
  const auto d = scratch("gen");
  REQUIRE(cli("gen --k 3 --out " + q(d), d).code == 0);
  const auto h = magcode::io::read_encoding(d / "sylvester-3.json");
  CHECK(h == magcode::sylvester(3));
  CHECK(fs::exists(d / "gen.manifest.json"));

  REQUIRE(cli("gen --k 3 --permutations --out " + q(d), d).code == 0);
  const json u = magcode::io::read_json(d / "universe.json");
  CHECK(u.at("count") == 40320);
  CHECK(magcode::io::universe_from_json(u).size() == 40320);

  CHECK(cli("gen --k 20 --out " + q(d), d).code != 0);
  CHECK(cli("gen --out " + q(d), d).code == 1);
}

TEST_CASE("score modes") {
  const auto d = scratch("score");
  REQUIRE(cli("gen --k 3 --out " + q(d), d).code == 0);
  const auto h = d / "sylvester-3.json";
  auto e = magcode::io::read_encoding(h);
  magcode::io::write_encoding(d / "mate.json", magcode::mate(e));
  const auto m = d / "mate.json";

  REQUIRE(cli("score " + q(h) + " " + q(m) + " --mode translation --out " + q(d), d).code == 0);
  const std::string csv = magcode::io::read_text(d / "correlation.csv");
  CHECK(csv.find("\n0,0,-64,64,-1\n") != std::string::npos);
  CHECK(line_count(d / "correlation.csv") == 1 + 15 * 15);

  REQUIRE(cli("score " + q(h) + " " + q(m) + " --mode rotation --out " + q(d), d).code == 0);
  CHECK(line_count(d / "rotation.csv") == 1 + 37);

  REQUIRE(cli("score " + q(h) + " --mode local --out " + q(d), d).code == 0);
  const json local = magcode::io::read_json(d / "score-local.json");
  CHECK(local.at("local_score_float").get<double>() <= 0.0);

  REQUIRE(cli("score " + q(h) + " " + q(m) + " --mode pair --out " + q(d), d).code == 0);
  CHECK(magcode::io::read_json(d / "score-pair.json").at("pair_score") == "-1");

  REQUIRE(cli("score " + q(h) + " " + q(m) + " --mode force --out " + q(d), d).code == 0);
  CHECK(magcode::io::read_text(d / "force.csv").find("\n0,0,-160.0\n") != std::string::npos);

  CHECK(cli("score " + q(h) + " --mode pair --out " + q(d), d).code == 1);
  CHECK(cli("score " + q(d / "missing.json") + " --mode local --out " + q(d), d).code == 2);
  magcode::io::write_text(d / "bad.json", R"({"rows": [[1, 0], [1, 1]]})");
  CHECK(cli("score " + q(d / "bad.json") + " --mode local --out " + q(d), d).code == 1);
  magcode::io::write_encoding(d / "small.json", magcode::sylvester(2));
  CHECK(cli("score " + q(h) + " " + q(d / "small.json") + " --mode pair --out " + q(d), d).code == 1);
}

TEST_CASE("sweep, gcode, verify and simulate end to end") {
  const auto d = scratch("pipeline");
  REQUIRE(cli("gen --k 3 --permutations --out " + q(d), d).code == 0);
  const auto cache = d / "cache";

  SUBCASE("small target and cache policy") {
    CHECK(cli("sweep " + q(d / "universe.json") + " --no-build-cache --cache-dir " + q(cache) + " --out " + q(d),
              d).code == 2);
    const Result r = cli("sweep " + q(d / "universe.json") + " --target 1 --cache-dir " + q(cache) + " --out " +
                             q(d / "t1"),
                         d);
    REQUIRE(r.code == 0);
    const json s = magcode::io::read_json(d / "t1" / "sweep.json");
    CHECK(s.at("final_tau_g") == "-1/5");
    CHECK(s.at("vertex_count") == 240);
    // A second run must find the table it just stored.
    CHECK(cli("sweep " + q(d / "universe.json") + " --target 1 --no-build-cache --cache-dir " + q(cache) +
                  " --out " + q(d / "t1b"),
              d).code == 0);
    CHECK(magcode::io::read_text(d / "t1" / "sweep.json") == magcode::io::read_text(d / "t1b" / "sweep.json"));
  }

  SUBCASE("full pipeline") {
    REQUIRE(cli("sweep " + q(d / "universe.json") + " --cache-dir " + q(cache) + " --out " + q(d / "sw"), d).code ==
            0);
    const json clique = magcode::io::read_json(d / "sw" / "clique.json");
    CHECK(clique.at("size") == 12);
    CHECK(line_count(d / "sw" / "clique-sizes.csv") == 1 + 9);
    const json manifest = magcode::io::read_json(d / "sw" / "sweep.manifest.json");
    CHECK(manifest.at("command") == "sweep");
    CHECK(manifest.at("input_hashes").size() == 1);
    CHECK(manifest.at("outputs").size() == 3);

    const auto faces = magcode::io::clique_encodings_from_json(clique);
    magcode::io::write_encoding(d / "face.json", faces.front());
    REQUIRE(cli("gcode " + q(d / "face.json") + " --out " + q(d / "g"), d).code == 0);
    fs::path program;
    for (const auto& entry : fs::directory_iterator(d / "g"))
      if (entry.path().extension() == ".gcode") program = entry.path();
    REQUIRE_FALSE(program.empty());
    const Result v = cli("verify-gcode " + q(program) + " --out " + q(d / "v"), d);
    REQUIRE(v.code == 0);
    CHECK(v.out.find("64") != std::string::npos);
    CHECK(magcode::io::read_encoding(d / "v" / "decoded.json") == faces.front());

    magcode::io::write_json(d / "offset.json", json{{"dual_magnet_offset_mm", -5.0}});
    CHECK(cli("gcode " + q(d / "face.json") + " --config " + q(d / "offset.json") + " --out " + q(d / "g2"), d)
              .code == 1);

    magcode::io::write_json(d / "scenario.json", json{{"clique", "sw/clique.json"}, {"f_f", -0.6}, {"seed", 1}});
    REQUIRE(cli("simulate " + q(d / "scenario.json") + " --ensemble 20 --out " + q(d / "sim"), d).code == 0);
    CHECK(line_count(d / "sim" / "ensemble.csv") == 21);
    const std::string ens = magcode::io::read_text(d / "sim" / "ensemble.csv");
    CHECK(ens.rfind("seed,completed,steps,misassembly_events\n1,", 0) == 0);

    REQUIRE(cli("simulate " + q(d / "scenario.json") + " --out " + q(d / "one"), d).code == 0);
    const json report = magcode::io::read_json(d / "one" / "report.json");
    CHECK(report.at("completed") == true);
    REQUIRE(cli("simulate " + q(d / "scenario.json") + " --out " + q(d / "two"), d).code == 0);
    CHECK(magcode::io::read_text(d / "one" / "report.json") == magcode::io::read_text(d / "two" / "report.json"));

    magcode::io::write_json(d / "bad-scenario.json", json{{"clique", "sw/clique.json"}, {"f_f", -1.5}});
    CHECK(cli("simulate " + q(d / "bad-scenario.json") + " --out " + q(d / "bad"), d).code == 1);
  }
}
