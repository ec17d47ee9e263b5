#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <swim/cli.hpp>
#include <swim/errors.hpp>

using namespace swim;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json base_config() {
  return json{
      {"engine", "explicit3"},
      {"params", {{"M", 1.0}, {"rho", 1.0}, {"rho0", 1.0}}},
      {"epsilon", 0.01},
      {"stroke",
       {{"kind", "circle23"}, {"s0", {0.1, 0.0, 0.0}}, {"T", 1.0}, {"amplitude", 0.1}}},
      {"integration", {{"dt", 0.002}, {"n_periods", 1}}},
  };
}

std::string write_config(const json& doc, const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "swim_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << doc.dump(2);
  return p.string();
}

std::string out_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "swim_cli_test" / name;
  fs::remove_all(dir);
  return dir.string();
}

std::string slurp(const fs::path& p) {
  std::ostringstream ss;
  ss << std::ifstream(p).rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("valid config parses with defaults applied") {
  const RunConfig cfg = parse_config(base_config());
  CHECK(cfg.engine == Engine::Explicit3);
  CHECK(cfg.epsilon == 0.01);
  CHECK(cfg.stroke.kind == StrokeSpec::Kind::Circle23);
  CHECK(cfg.integration.n_periods == 1);
  CHECK(cfg.outputs.format == "ndjson");
  CHECK(cfg.resolved["schema_version"] == 1);
}

TEST_CASE("unknown keys are rejected at every level") {
  json doc = base_config();
  doc["frobnicate"] = 1;
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
  doc = base_config();
  doc["params"]["viscosity"] = 0.1;  // no such physics knob
  CHECK_THROWS_WITH_AS(parse_config(doc),
                       doctest::Contains("params.viscosity"), ConfigError);
  doc = base_config();
  doc["stroke"]["radius"] = 0.1;
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("type and range errors carry the field path") {
  json doc = base_config();
  doc["epsilon"] = "big";
  CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("epsilon"), ConfigError);
  doc = base_config();
  doc["params"]["M"] = -2.0;
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("missing required sections are config errors") {
  json doc = base_config();
  doc.erase("stroke");
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
  doc = base_config();
  doc.erase("engine");
  CHECK_THROWS_AS(parse_config(doc), ConfigError);
}

TEST_CASE("simulate writes a trajectory and exits 0") {
  const std::string cfg = write_config(base_config(), "sim.json");
  const std::string out = out_dir("sim");
  CHECK(run_command("simulate", cfg, out, {}) == 0);
  CHECK(fs::exists(fs::path(out) / "trajectory.ndjson"));
}

TEST_CASE("identical configs produce byte-identical outputs") {
  const std::string cfg = write_config(base_config(), "det.json");
  const std::string o1 = out_dir("det1"), o2 = out_dir("det2");
  REQUIRE(run_command("simulate", cfg, o1, {}) == 0);
  REQUIRE(run_command("simulate", cfg, o2, {}) == 0);
  CHECK(slurp(fs::path(o1) / "trajectory.ndjson") ==
        slurp(fs::path(o2) / "trajectory.ndjson"));
}

TEST_CASE("trajectory files embed the resolved config") {
  json doc = base_config();
  doc["outputs"] = {{"format", "csv"}, {"trajectory", "t.csv"}};
  const std::string cfg = write_config(doc, "emb.json");
  const std::string out = out_dir("emb");
  REQUIRE(run_command("simulate", cfg, out, {}) == 0);
  const std::string body = slurp(fs::path(out) / "t.csv");
  CHECK(body.find("schema_version") != std::string::npos);
  CHECK(body.find("circle23") != std::string::npos);
}

TEST_CASE("malformed config exits 2") {
  const fs::path dir = fs::temp_directory_path() / "swim_cli_test";
  fs::create_directories(dir);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(run_command("simulate", (dir / "broken.json").string(), out_dir("b"), {}) == 2);
  CHECK(run_command("simulate", (dir / "missing.json").string(), out_dir("b2"), {}) == 2);
}

TEST_CASE("phase run writes a closure report") {
  json doc = base_config();
  doc["initial"] = {{"p_star", {0.05, 0.03, 0.02}}};
  doc["integration"]["dt"] = 0.00025;
  const std::string cfg = write_config(doc, "phase.json");
  const std::string out = out_dir("phase");
  CHECK(run_command("phase", cfg, out, {}) == 0);
  const json rep = json::parse(slurp(fs::path(out) / "phase.json"));
  CHECK(rep["schema_version"] == 1);
  CHECK(rep["report"].contains("geometric"));
  CHECK(rep["report"].contains("residual"));
}

TEST_CASE("rank scan off the loci exits 0 and writes both formats") {
  json doc = base_config();
  doc["rank"] = {{"with_impulse", false}, {"n_samples", 16},
                 {"lo", {-0.5, -0.5, -1.0, 0.1, 0.1, 0.1}},
                 {"hi", {0.5, 0.5, 1.0, 0.6, 0.6, 0.6}}};
  const std::string cfg = write_config(doc, "rank.json");
  const std::string out = out_dir("rank");
  CHECK(run_command("rank", cfg, out, {}) == 0);
  CHECK(fs::exists(fs::path(out) / "rank.json"));
  CHECK(fs::exists(fs::path(out) / "rank.csv"));
}

TEST_CASE("corrupted-field hook forces exit 4") {
  json doc = base_config();
  doc["rank"] = {{"n_samples", 4}, {"corrupt_field", true}};
  const std::string cfg = write_config(doc, "rank4.json");
  CHECK(run_command("rank", cfg, out_dir("rank4"), {}) == 4);
}

TEST_CASE("sweep requires a non-empty grid") {
  json doc = base_config();
  doc["sweep"] = {{"parameter", "epsilon"}, {"values", json::array()}};
  const std::string cfg = write_config(doc, "sweep0.json");
  CHECK(run_command("sweep", cfg, out_dir("sweep0"), {}) == 2);
}

TEST_CASE("sweep writes one row per grid value in order") {
  json doc = base_config();
  doc["sweep"] = {{"parameter", "amplitude"}, {"values", {0.2, 0.1, 0.05}}};
  const std::string cfg = write_config(doc, "sweep.json");
  const std::string out = out_dir("sweep");
  CHECK(run_command("sweep", cfg, out, {}) == 0);
  const std::string body = slurp(fs::path(out) / "sweep.csv");
  const auto p1 = body.find("\n0.2000");
  const auto p2 = body.find("\n0.1000");
  const auto p3 = body.find("\n0.0500");
  CHECK(p1 != std::string::npos);
  CHECK(p2 != std::string::npos);
  CHECK(p3 != std::string::npos);
  CHECK(p1 < p2);
  CHECK(p2 < p3);
}

TEST_CASE("unknown command is a config error") {
  const std::string cfg = write_config(base_config(), "cmd.json");
  CHECK(run_command("render", cfg, out_dir("cmd"), {}) == 2);
}
