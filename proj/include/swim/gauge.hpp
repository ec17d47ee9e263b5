#ifndef SWIM_GAUGE_HPP
#define SWIM_GAUGE_HPP

#include <Eigen/Dense>
#include <vector>

#include "swim/dynamics.hpp"

namespace swim {

/** Local connection A(s): column i maps sdot_i to minus the body rigid
 *  velocity, (dstar_dot, thetadot) = -A(s) sdot. Row order (d1*, d2*, theta). */
struct ConnectionLocal {
  Eigen::MatrixXd A;  // 3 x m
};

/** Curvature F_ij = dA_j/ds_i - dA_i/ds_j - [A_i, A_j], antisymmetric in (i, j).
 *  Entries are se(2) coefficient vectors in the same (d1*, d2*, theta) order. */
struct CurvatureTensor {
  int m = 0;
  std::vector<Eigen::Vector3d> F;  // row-major m x m, F[i*m+j]

  const Eigen::Vector3d& at(int i, int j) const { return F[i * m + j]; }
};

struct Se2Displacement {
  Eigen::Vector2d d{0.0, 0.0};
  double theta = 0.0;
};

struct PhaseReport {
  Se2Displacement geometric;
  Se2Displacement dynamic;
  Se2Displacement total;
  Se2Displacement residual;
};

ConnectionLocal local_connection(const RealShape& s, Engine engine,
                                 const BodyParams& params,
                                 const SolverSettings& st = {});

CurvatureTensor curvature(const RealShape& s, Engine engine,
                          const BodyParams& params, double h = 1e-4,
                          const SolverSettings& st = {});

/** Leading-order holonomy estimate exp(-1/2 F_ij(s0) Area^{ij}) over a closed
 *  loop sampled from the stroke. */
Se2Displacement geometric_phase_estimate(const RealShape& s0, const Stroke& loop,
                                         Engine engine, const BodyParams& params,
                                         int n_samples = 2048,
                                         const SolverSettings& st = {});

/** Holonomy by direct integration of gdot = -g A(s(t)) sdot(t) at p* = 0. */
Se2Displacement integrate_holonomy(const Stroke& loop, double epsilon,
                                   Engine engine, const BodyParams& params,
                                   int n_steps = 2000,
                                   const SolverSettings& st = {});

PhaseReport dynamic_phase(const Trajectory& traj, const BodyParams& params,
                          const Stroke& stroke, const SolverSettings& st = {});

}  // namespace swim

#endif
