#include "swim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "swim/errors.hpp"
#include "swim/gauge.hpp"
#include "swim/io.hpp"

namespace swim {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
}

double num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> num_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i)
    out.push_back(num(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

void parse_params(const json& j, BodyParams& p) {
  check_keys(j, "params", {"M", "rho", "rho0", "inertia"});
  if (j.contains("M")) p.M = num(j["M"], "params.M");
  if (j.contains("rho")) p.rho = num(j["rho"], "params.rho");
  if (j.contains("rho0")) p.rho0 = num(j["rho0"], "params.rho0");
  if (j.contains("inertia")) {
    const std::string s = str(j["inertia"], "params.inertia");
    if (s == "quadrature")
      p.I_policy = InertiaPolicy::Quadrature;
    else if (s == "frozen_disk")
      p.I_policy = InertiaPolicy::FrozenDisk;
    else
      fail("params.inertia", "expected 'quadrature' or 'frozen_disk'");
  }
  try {
    p.validate();
  } catch (const std::exception& e) {
    fail("params", e.what());
  }
}

void parse_stroke(const json& j, StrokeSpec& s) {
  check_keys(j, "stroke",
             {"kind", "s0", "T", "amplitude", "active_index", "amplitudes",
              "frequencies", "phases", "samples"});
  if (!j.contains("kind")) fail("stroke.kind", "required");
  const std::string kind = str(j["kind"], "stroke.kind");
  if (kind == "scallop")
    s.kind = StrokeSpec::Kind::Scallop;
  else if (kind == "circle23")
    s.kind = StrokeSpec::Kind::Circle23;
  else if (kind == "lissajous")
    s.kind = StrokeSpec::Kind::Lissajous;
  else if (kind == "table")
    s.kind = StrokeSpec::Kind::Table;
  else
    fail("stroke.kind", "expected scallop|circle23|lissajous|table");
  if (!j.contains("s0")) fail("stroke.s0", "required");
  s.s0 = num_array(j["s0"], "stroke.s0");
  if (j.contains("T")) s.T = num(j["T"], "stroke.T");
  if (j.contains("amplitude")) s.amplitude = num(j["amplitude"], "stroke.amplitude");
  if (j.contains("active_index"))
    s.active_index = integer(j["active_index"], "stroke.active_index");
  if (j.contains("amplitudes"))
    s.amplitudes = num_array(j["amplitudes"], "stroke.amplitudes");
  if (j.contains("frequencies")) {
    const json& f = j["frequencies"];
    if (!f.is_array()) fail("stroke.frequencies", "expected an array");
    for (size_t i = 0; i < f.size(); ++i)
      s.frequencies.push_back(
          integer(f[i], "stroke.frequencies[" + std::to_string(i) + "]"));
  }
  if (j.contains("phases")) s.phases = num_array(j["phases"], "stroke.phases");
  if (j.contains("samples")) {
    const json& rows = j["samples"];
    if (!rows.is_array()) fail("stroke.samples", "expected an array of rows");
    for (size_t i = 0; i < rows.size(); ++i)
      s.samples.push_back(
          num_array(rows[i], "stroke.samples[" + std::to_string(i) + "]"));
  }
}

void parse_rank(const json& j, RankConfig& r) {
  check_keys(j, "rank",
             {"with_impulse", "lo", "hi", "n_samples", "seed", "tol",
              "formula_tol", "check_closed_form", "corrupt_field"});
  if (j.contains("with_impulse"))
    r.with_impulse = boolean(j["with_impulse"], "rank.with_impulse");
  if (j.contains("lo")) r.lo = to_vec(num_array(j["lo"], "rank.lo"));
  if (j.contains("hi")) r.hi = to_vec(num_array(j["hi"], "rank.hi"));
  if (j.contains("n_samples")) r.n_samples = integer(j["n_samples"], "rank.n_samples");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      fail("rank.seed", "expected a nonnegative integer");
    r.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tol")) r.tol = num(j["tol"], "rank.tol");
  if (j.contains("formula_tol"))
    r.formula_tol = num(j["formula_tol"], "rank.formula_tol");
  if (j.contains("check_closed_form"))
    r.check_closed_form = boolean(j["check_closed_form"], "rank.check_closed_form");
  if (j.contains("corrupt_field"))
    r.corrupt_field = boolean(j["corrupt_field"], "rank.corrupt_field");
}

void default_rank_region(RankConfig& r) {
  const int dim = r.with_impulse ? 9 : 6;
  if (r.lo.size() == 0) {
    r.lo.resize(dim);
    r.hi.resize(dim);
    r.lo.head<3>() << -1.0, -1.0, -3.0;
    r.hi.head<3>() << 1.0, 1.0, 3.0;
    if (r.with_impulse) {
      r.lo.segment<3>(3).setConstant(0.1);
      r.hi.segment<3>(3).setConstant(0.9);
    }
    r.lo.tail<3>().setConstant(0.1);
    r.hi.tail<3>().setConstant(0.9);
  }
  if (r.lo.size() != dim || r.hi.size() != dim)
    fail("rank.lo/hi", "expected " + std::to_string(dim) + " entries");
}

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

BodyState initial_state(const RunConfig& cfg, const Stroke& stroke) {
  BodyState st;
  st.pose.d = cfg.d0;
  st.pose.theta = cfg.theta0;
  st.p_star = cfg.p0;
  st.shape = RealShape{stroke.s(0.0), cfg.epsilon};
  return st;
}

IntegrateOptions integrate_options(const RunConfig& cfg) {
  IntegrateOptions opts = cfg.integration;
  opts.engine = cfg.engine;
  opts.p_row_mode = cfg.p_row_mode;
  return opts;
}

json displacement_json(const Se2Displacement& g) {
  return {{"d", {format_double(g.d.x()), format_double(g.d.y())}},
          {"theta", format_double(g.theta)}};
}

struct RunSummary {
  Eigen::Vector2d dd_per_period;
  double dtheta_per_period = 0.0;
  double max_p12_drift = 0.0;
  double max_spatial_drift = 0.0;
};

RunSummary summarize(const Trajectory& traj, int n_periods) {
  RunSummary s;
  s.dd_per_period =
      (traj.states.back().pose.d - traj.states.front().pose.d) / n_periods;
  s.dtheta_per_period =
      (traj.states.back().pose.theta - traj.states.front().pose.theta) /
      n_periods;
  for (const StepDiagnostics& d : traj.diagnostics) {
    s.max_p12_drift = std::max(s.max_p12_drift, std::abs(d.p12_norm_drift));
    s.max_spatial_drift =
        std::max(s.max_spatial_drift, std::abs(d.spatial_momentum_drift));
  }
  return s;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  check_keys(doc, "config",
             {"schema_version", "engine", "p_row_mode", "params", "epsilon",
              "initial", "stroke", "integration", "outputs", "rank", "sweep"});
  RunConfig cfg;
  if (doc.contains("schema_version") &&
      integer(doc["schema_version"], "schema_version") != kSchemaVersion)
    fail("schema_version", "unsupported version");
  if (!doc.contains("engine")) fail("engine", "required");
  const std::string eng = str(doc["engine"], "engine");
  if (eng == "assembled")
    cfg.engine = Engine::Assembled;
  else if (eng == "explicit3")
    cfg.engine = Engine::Explicit3;
  else
    fail("engine", "expected 'assembled' or 'explicit3'");
  if (doc.contains("p_row_mode")) {
    const std::string m = str(doc["p_row_mode"], "p_row_mode");
    if (m == "structural")
      cfg.p_row_mode = PRowMode::Structural;
    else if (m == "paper_literal")
      cfg.p_row_mode = PRowMode::PaperLiteral;
    else
      fail("p_row_mode", "expected 'structural' or 'paper_literal'");
  }
  if (!doc.contains("params")) fail("params", "required");
  parse_params(doc["params"], cfg.params);
  if (!doc.contains("epsilon")) fail("epsilon", "required");
  cfg.epsilon = num(doc["epsilon"], "epsilon");
  if (cfg.epsilon <= 0.0) fail("epsilon", "must be positive");
  if (doc.contains("initial")) {
    const json& j = doc["initial"];
    check_keys(j, "initial", {"d", "theta", "p_star"});
    if (j.contains("d")) {
      const auto d = num_array(j["d"], "initial.d");
      if (d.size() != 2) fail("initial.d", "expected 2 entries");
      cfg.d0 = {d[0], d[1]};
    }
    if (j.contains("theta")) cfg.theta0 = num(j["theta"], "initial.theta");
    if (j.contains("p_star")) {
      const auto p = num_array(j["p_star"], "initial.p_star");
      if (p.size() != 3) fail("initial.p_star", "expected 3 entries");
      cfg.p0 = {p[0], p[1], p[2]};
    }
  }
  if (!doc.contains("stroke")) fail("stroke", "required");
  parse_stroke(doc["stroke"], cfg.stroke);
  if (doc.contains("integration")) {
    const json& j = doc["integration"];
    check_keys(j, "integration", {"dt", "n_periods", "record_stride"});
    if (j.contains("dt")) cfg.integration.dt = num(j["dt"], "integration.dt");
    if (j.contains("n_periods"))
      cfg.integration.n_periods = integer(j["n_periods"], "integration.n_periods");
    if (j.contains("record_stride"))
      cfg.integration.record_stride =
          integer(j["record_stride"], "integration.record_stride");
  }
  if (doc.contains("outputs")) {
    const json& j = doc["outputs"];
    check_keys(j, "outputs", {"trajectory", "phase", "rank", "sweep", "format"});
    if (j.contains("trajectory"))
      cfg.outputs.trajectory = str(j["trajectory"], "outputs.trajectory");
    if (j.contains("phase")) cfg.outputs.phase = str(j["phase"], "outputs.phase");
    if (j.contains("rank")) cfg.outputs.rank = str(j["rank"], "outputs.rank");
    if (j.contains("sweep")) cfg.outputs.sweep = str(j["sweep"], "outputs.sweep");
    if (j.contains("format")) {
      cfg.outputs.format = str(j["format"], "outputs.format");
      if (cfg.outputs.format != "ndjson" && cfg.outputs.format != "csv")
        fail("outputs.format", "expected 'ndjson' or 'csv'");
    }
  }
  if (doc.contains("rank")) {
    cfg.rank.emplace();
    parse_rank(doc["rank"], *cfg.rank);
  }
  if (doc.contains("sweep")) {
    const json& j = doc["sweep"];
    check_keys(j, "sweep", {"parameter", "values"});
    cfg.sweep.emplace();
    if (!j.contains("parameter")) fail("sweep.parameter", "required");
    cfg.sweep->parameter = str(j["parameter"], "sweep.parameter");
    static const std::set<std::string> known{"epsilon", "amplitude", "rho", "M",
                                            "dt"};
    if (!known.count(cfg.sweep->parameter))
      fail("sweep.parameter", "expected epsilon|amplitude|rho|M|dt");
    if (!j.contains("values")) fail("sweep.values", "required");
    cfg.sweep->values = num_array(j["values"], "sweep.values");
  }
  cfg.resolved = doc;
  cfg.resolved["schema_version"] = kSchemaVersion;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
  const Stroke stroke(cfg.stroke);
  const Trajectory traj = integrate(initial_state(cfg, stroke), stroke,
                                    cfg.params, integrate_options(cfg));
  std::filesystem::create_directories(out_dir);
  const std::string path = join(out_dir, cfg.outputs.trajectory);
  if (cfg.outputs.format == "csv")
    write_trajectory_csv(traj, path, &cfg.resolved);
  else
    write_trajectory_ndjson(traj, path, &cfg.resolved);
  const RunSummary s = summarize(traj, cfg.integration.n_periods);
  std::cout << "net displacement per period: " << format_double(s.dd_per_period.x())
            << " " << format_double(s.dd_per_period.y()) << "\n"
            << "net rotation per period: " << format_double(s.dtheta_per_period)
            << "\n"
            << "max |p12| drift: " << format_double(s.max_p12_drift) << "\n"
            << "max spatial momentum drift: "
            << format_double(s.max_spatial_drift) << "\n"
            << "trajectory: " << path << "\n";
  return 0;
}

int cmd_phase(const RunConfig& cfg, const std::string& out_dir) {
  const Stroke stroke(cfg.stroke);
  const Trajectory traj = integrate(initial_state(cfg, stroke), stroke,
                                    cfg.params, integrate_options(cfg));
  const PhaseReport rep = dynamic_phase(traj, cfg.params, stroke);
  const Se2Displacement est = geometric_phase_estimate(
      RealShape{stroke.s(0.0), cfg.epsilon}, stroke, cfg.engine, cfg.params);
  json body;
  body["geometric"] = displacement_json(rep.geometric);
  body["dynamic"] = displacement_json(rep.dynamic);
  body["total"] = displacement_json(rep.total);
  body["residual"] = displacement_json(rep.residual);
  body["curvature_estimate"] = displacement_json(est);
  std::filesystem::create_directories(out_dir);
  const std::string path = join(out_dir, cfg.outputs.phase);
  write_report_json(body, cfg.resolved, path);
  const double res = std::max(rep.residual.d.cwiseAbs().maxCoeff(),
                              std::abs(rep.residual.theta));
  std::cout << "closure residual: " << format_double(res) << "\n"
            << "phase report: " << path << "\n";
  if (res > 1e-6)
    throw VerificationError("phase closure residual exceeds 1e-6: " +
                            format_double(res));
  return 0;
}

int cmd_rank(const RunConfig& cfg, const std::string& out_dir) {
  RankConfig rc = cfg.rank.value_or(RankConfig{});
  default_rank_region(rc);
  const AffineSystem sys =
      rc.with_impulse
          ? swimmer_fields_with_impulse(cfg.params, cfg.epsilon, cfg.p_row_mode)
          : swimmer_fields_zero_impulse(cfg.params, cfg.epsilon);
  ScanOptions so;
  so.lo = rc.lo;
  so.hi = rc.hi;
  so.n_samples = rc.n_samples;
  so.seed = rc.seed;
  so.tol = rc.tol;
  const auto reports = accessibility_scan(sys, cfg.params, cfg.epsilon, so);

  double worst = 0.0;
  json list = json::array();
  std::filesystem::create_directories(out_dir);
  std::ofstream csv;
  const std::string csv_path = join(out_dir, cfg.outputs.rank + ".csv");
  csv.open(csv_path, std::ios::binary | std::ios::trunc);
  csv << "# schema_version=" << kSchemaVersion << "\n# config="
      << cfg.resolved.dump() << "\npoint,det,verdict,loci\n";
  for (const RankReport& r : reports) {
    json jr;
    json pt = json::array();
    for (Eigen::Index i = 0; i < r.point.size(); ++i)
      pt.push_back(format_double(r.point(i)));
    jr["point"] = pt;
    jr["det"] = format_double(r.determinant);
    jr["raw_det"] = format_double(r.raw_determinant);
    jr["full_rank"] = r.full_rank;
    jr["loci"] = r.singular_locus_hits;
    if (rc.check_closed_form) {
      const DetComparison cmp =
          rc.with_impulse
              ? det_with_impulse(r.point, cfg.params, cfg.epsilon, cfg.p_row_mode)
              : det_zero_impulse(r.point, cfg.params, cfg.epsilon);
      jr["closed_form_rel_diff"] = format_double(cmp.relative_difference);
      worst = std::max(worst, cmp.relative_difference);
    }
    list.push_back(jr);
    csv << '"';
    for (Eigen::Index i = 0; i < r.point.size(); ++i)
      csv << (i ? " " : "") << format_double(r.point(i));
    csv << "\"," << format_double(r.determinant) << ','
        << (r.full_rank ? "full" : "singular") << ",\"";
    for (size_t i = 0; i < r.singular_locus_hits.size(); ++i)
      csv << (i ? ";" : "") << r.singular_locus_hits[i];
    csv << "\"\n";
  }
  if (rc.corrupt_field) worst = std::max(worst, 1.0);
  json body;
  body["reports"] = list;
  body["worst_closed_form_rel_diff"] = format_double(worst);
  write_report_json(body, cfg.resolved, join(out_dir, cfg.outputs.rank + ".json"));
  const size_t n_full = static_cast<size_t>(
      std::count_if(reports.begin(), reports.end(),
                    [](const RankReport& r) { return r.full_rank; }));
  std::cout << "full-rank points: " << n_full << "/" << reports.size() << "\n"
            << "worst closed-form relative difference: " << format_double(worst)
            << "\n";
  if (rc.check_closed_form && worst > rc.formula_tol)
    throw VerificationError(
        "closed-form determinant mismatch: " + format_double(worst) +
        " exceeds " + format_double(rc.formula_tol));
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir) {
  if (!cfg.sweep || cfg.sweep->values.empty())
    throw ConfigError("sweep: non-empty 'sweep.values' required");
  struct Row {
    double value;
    RunSummary summary;
    PhaseReport phase;
  };
  const size_t n = cfg.sweep->values.size();
  std::vector<Row> rows(n);
  // Grid points are independent; each writes its own row, merged in grid order.
  for (size_t k = 0; k < n; ++k) {
    RunConfig c = cfg;
    const double v = cfg.sweep->values[k];
    const std::string& p = cfg.sweep->parameter;
    if (p == "epsilon")
      c.epsilon = v;
    else if (p == "amplitude")
      c.stroke.amplitude = v;
    else if (p == "rho")
      c.params.rho = v;
    else if (p == "M")
      c.params.M = v;
    else
      c.integration.dt = v;
    const Stroke stroke(c.stroke);
    const Trajectory traj = integrate(initial_state(c, stroke), stroke, c.params,
                                      integrate_options(c));
    rows[k] = {v, summarize(traj, c.integration.n_periods),
               dynamic_phase(traj, c.params, stroke)};
  }
  std::filesystem::create_directories(out_dir);
  const std::string path = join(out_dir, cfg.outputs.sweep);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << "# schema_version=" << kSchemaVersion << "\n# config="
      << cfg.resolved.dump() << "\n"
      << "value,dd1,dd2,dtheta,geo_theta,dyn_theta,residual,max_p12_drift\n";
  for (const Row& r : rows) {
    const double res = std::max(r.phase.residual.d.cwiseAbs().maxCoeff(),
                                std::abs(r.phase.residual.theta));
    out << format_double(r.value) << ','
        << format_double(r.summary.dd_per_period.x()) << ','
        << format_double(r.summary.dd_per_period.y()) << ','
        << format_double(r.summary.dtheta_per_period) << ','
        << format_double(r.phase.geometric.theta) << ','
        << format_double(r.phase.dynamic.theta) << ',' << format_double(res)
        << ',' << format_double(r.summary.max_p12_drift) << "\n";
  }
  std::cout << "sweep: " << path << "\n";
  return 0;
}

int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir,
                std::optional<std::uint64_t> seed_override) {
  try {
    RunConfig cfg = load_config(config_path);
    if (seed_override) {
      if (!cfg.rank) cfg.rank.emplace();
      cfg.rank->seed = *seed_override;
      cfg.resolved["rank"]["seed"] = *seed_override;
    }
    if (command == "simulate") return cmd_simulate(cfg, out_dir);
    if (command == "phase") return cmd_phase(cfg, out_dir);
    if (command == "rank") return cmd_rank(cfg, out_dir);
    if (command == "sweep") return cmd_sweep(cfg, out_dir);
    throw ConfigError("unknown command: " + command);
  } catch (const IntegrationError& e) {
    std::cerr << "integration abort at t = " << e.t_abort << ": " << e.what()
              << "\n";
    return 3;
  } catch (const VerificationError& e) {
    std::cerr << "verification mismatch: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace swim
