#ifndef SWIM_DYNAMICS_HPP
#define SWIM_DYNAMICS_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "swim/energy.hpp"
#include "swim/se2.hpp"
#include "swim/shape.hpp"

namespace swim {

struct BodyState {
  Pose pose;
  Eigen::Vector3d p_star{0.0, 0.0, 0.0};
  RealShape shape;
};

enum class Engine { Assembled, Explicit3 };

/** p-row handling of the first explicit control field, see control module. */
enum class PRowMode { Structural, PaperLiteral };

struct StrokeSpec {
  enum class Kind { Scallop, Circle23, Lissajous, Table } kind = Kind::Scallop;
  std::vector<double> s0;          // base shape offsets
  double T = 1.0;                  // period
  double amplitude = 0.1;          // scallop amplitude / circle23 radius
  int active_index = 0;            // scallop: which s_i oscillates
  std::vector<double> amplitudes;  // lissajous per-component amplitudes
  std::vector<int> frequencies;    // lissajous integer frequencies
  std::vector<double> phases;      // lissajous phases
  std::vector<std::vector<double>> samples;  // table: rows s(t_j), uniform grid
};

/** Periodic shape path s(t) with continuously differentiable rate. */
class Stroke {
 public:
  explicit Stroke(StrokeSpec spec);
  std::vector<double> s(double t) const;
  std::vector<double> sdot(double t) const;
  double period() const { return spec_.T; }
  int m() const { return static_cast<int>(spec_.s0.size()); }
  const StrokeSpec& spec() const { return spec_; }

 private:
  StrokeSpec spec_;
  std::vector<std::vector<double>> dft_cos_, dft_sin_;  // table interpolation
};

struct StepDiagnostics {
  double p12_norm_drift = 0.0;
  double spatial_momentum_drift = 0.0;
  double energy = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<BodyState> states;
  std::vector<StepDiagnostics> diagnostics;
  Engine engine = Engine::Assembled;
};

struct Derivative {
  Eigen::Vector2d ddot;
  double thetadot = 0.0;
  Eigen::Vector3d pdot;
  Eigen::Vector2d dstar_dot;  // body-frame translation rate, pre-rotation
};

using MmProvider = std::function<MassMatrices(const RealShape&)>;

/** Default provider assembling from the spectral solver; memoized variant
 *  caches on quantized s for strokes that revisit shapes. */
MmProvider make_assembled_provider(BodyParams params, SolverSettings st = {});
MmProvider make_memoized_provider(MmProvider inner, double quantum = 1e-12);

Derivative rhs_assembled(const BodyState& state, const std::vector<double>& sdot,
                         const MmProvider& mm_provider);

Derivative rhs_explicit3(const BodyState& state, const Eigen::Vector3d& u,
                         const BodyParams& params,
                         PRowMode mode = PRowMode::Structural);

/** Frozen-disk rigid matrix diag(M + pi rho, M + pi rho, M/2) used by the
 *  closed-form engine's drift. */
Eigen::Matrix3d explicit_rigid_matrix(const BodyParams& params);

/** Controls of the closed-form engine are shape rates: u = sdot, with the
 *  eps^2 scale applied to the pose/impulse rows only. */
Eigen::Vector3d stroke_rate_to_control(const std::vector<double>& sdot);

struct IntegrateOptions {
  double dt = 0.0;  // 0 -> T / 2000
  int n_periods = 1;
  Engine engine = Engine::Assembled;
  PRowMode p_row_mode = PRowMode::Structural;
  bool memoize = true;
  int record_stride = 1;
};

Trajectory integrate(const BodyState& initial, const Stroke& stroke,
                     const BodyParams& params, const IntegrateOptions& opts,
                     const SolverSettings& st = {});

Eigen::Vector2d reconstruct_increment(const Pose& pose,
                                      const Eigen::Vector2d& dstar_dot);

struct ImpulseSplit {
  Eigen::Vector2d P;
  double Pi = 0.0;
  Eigen::Vector2d L;
  double Lambda = 0.0;
};

ImpulseSplit impulse_split(const BodyState& state, const std::vector<double>& sdot,
                           const MassMatrices& mm);

}  // namespace swim

#endif
