#include "swim/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace swim {

namespace {

using nlohmann::json;

void open_or_throw(std::ofstream& out, const std::string& path) {
  out.open(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
}

json double_array(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(format_double(v(i)));
  return arr;
}

json double_array(const std::vector<double>& v) {
  json arr = json::array();
  for (double x : v) arr.push_back(format_double(x));
  return arr;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json trajectory_record(double t, const BodyState& state,
                       const StepDiagnostics& diag) {
  json rec;
  rec["t"] = format_double(t);
  rec["d"] = double_array(state.pose.d);
  rec["theta"] = format_double(state.pose.theta);
  rec["p_star"] = double_array(state.p_star);
  rec["s"] = double_array(state.shape.s);
  rec["T_kin"] = format_double(diag.energy);
  rec["diag"] = {{"p12_norm_drift", format_double(diag.p12_norm_drift)},
                 {"spatial_momentum_drift",
                  format_double(diag.spatial_momentum_drift)}};
  return rec;
}

void write_trajectory_ndjson(const Trajectory& traj, const std::string& path,
                             const json* header) {
  std::ofstream out;
  open_or_throw(out, path);
  if (header)
    out << json{{"schema_version", kSchemaVersion}, {"config", *header}}.dump()
        << "\n";
  for (size_t k = 0; k < traj.times.size(); ++k)
    out << trajectory_record(traj.times[k], traj.states[k], traj.diagnostics[k])
               .dump()
        << "\n";
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const json* header) {
  std::ofstream out;
  open_or_throw(out, path);
  if (header)
    out << "# schema_version=" << kSchemaVersion << "\n# config="
        << header->dump() << "\n";
  const int m = traj.states.empty() ? 0 : traj.states.front().shape.m();
  out << "t,d1,d2,theta,p1,p2,p3";
  for (int i = 0; i < m; ++i) out << ",s" << i + 1;
  out << ",T_kin,p12_norm_drift,spatial_momentum_drift\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    const BodyState& s = traj.states[k];
    const StepDiagnostics& dg = traj.diagnostics[k];
    out << format_double(traj.times[k]) << ',' << format_double(s.pose.d.x())
        << ',' << format_double(s.pose.d.y()) << ','
        << format_double(s.pose.theta);
    for (int i = 0; i < 3; ++i) out << ',' << format_double(s.p_star(i));
    for (int i = 0; i < m; ++i) out << ',' << format_double(s.shape.s[i]);
    out << ',' << format_double(dg.energy) << ','
        << format_double(dg.p12_norm_drift) << ','
        << format_double(dg.spatial_momentum_drift) << "\n";
  }
}

void write_report_json(const json& body, const json& resolved_config,
                       const std::string& path) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = resolved_config;
  doc["report"] = body;
  std::ofstream out;
  open_or_throw(out, path);
  out << doc.dump(2) << "\n";
}

}  // namespace swim
