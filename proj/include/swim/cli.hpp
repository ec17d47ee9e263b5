#ifndef SWIM_CLI_HPP
#define SWIM_CLI_HPP

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "swim/control.hpp"
#include "swim/dynamics.hpp"

namespace swim {

struct RankConfig {
  bool with_impulse = false;
  Eigen::VectorXd lo, hi;
  int n_samples = 1000;
  std::uint64_t seed = 1234567ULL;
  double tol = 1e-12;
  double formula_tol = 1e-8;    // closed-form vs assembled determinant
  bool check_closed_form = true;
  bool corrupt_field = false;   // test hook: perturb one comparison
};

struct SweepConfig {
  std::string parameter;  // epsilon | amplitude | rho | M | dt
  std::vector<double> values;
};

struct OutputConfig {
  std::string trajectory = "trajectory.ndjson";
  std::string phase = "phase.json";
  std::string rank = "rank";     // basename; .json and .csv are appended
  std::string sweep = "sweep.csv";
  std::string format = "ndjson";  // ndjson | csv
};

struct RunConfig {
  Engine engine = Engine::Assembled;
  PRowMode p_row_mode = PRowMode::Structural;
  BodyParams params;
  double epsilon = 0.01;
  Eigen::Vector2d d0{0.0, 0.0};
  double theta0 = 0.0;
  Eigen::Vector3d p0{0.0, 0.0, 0.0};
  StrokeSpec stroke;
  IntegrateOptions integration;
  OutputConfig outputs;
  std::optional<RankConfig> rank;
  std::optional<SweepConfig> sweep;
  nlohmann::json resolved;  // full document echoed into every output file
};

/** Strict parse: unknown keys and type mismatches raise ConfigError with the
 *  offending field path. */
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir);
int cmd_phase(const RunConfig& cfg, const std::string& out_dir);
int cmd_rank(const RunConfig& cfg, const std::string& out_dir);
int cmd_sweep(const RunConfig& cfg, const std::string& out_dir);

/** Loads the config, applies the optional seed override, dispatches, and maps
 *  exceptions to exit codes (2 config, 3 integration, 4 verification). */
int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir,
                std::optional<std::uint64_t> seed_override);

}  // namespace swim

#endif
