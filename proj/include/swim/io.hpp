#ifndef SWIM_IO_HPP
#define SWIM_IO_HPP

#include <json.hpp>

#include <string>

#include "swim/dynamics.hpp"

namespace swim {

inline constexpr int kSchemaVersion = 1;

/** Fixed-width decimal rendering so identical runs produce identical bytes. */
std::string format_double(double x);

nlohmann::json trajectory_record(double t, const BodyState& state,
                                 const StepDiagnostics& diag);

/** When `header` is non-null the file starts with the schema version and the
 *  resolved config: as a leading JSON record (NDJSON) or '#'-prefixed comment
 *  lines (CSV). */
void write_trajectory_ndjson(const Trajectory& traj, const std::string& path,
                             const nlohmann::json* header = nullptr);
void write_trajectory_csv(const Trajectory& traj, const std::string& path,
                          const nlohmann::json* header = nullptr);

/** Wraps a report body with the resolved config and schema version. */
void write_report_json(const nlohmann::json& body,
                       const nlohmann::json& resolved_config,
                       const std::string& path);

}  // namespace swim

#endif
