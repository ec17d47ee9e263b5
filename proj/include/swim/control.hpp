#ifndef SWIM_CONTROL_HPP
#define SWIM_CONTROL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swim/dynamics.hpp"

namespace swim {

using Field = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/** Affine control system qdot = f(q) + sum_i g_i(q) u_i. */
struct AffineSystem {
  int dim = 0;
  Field drift;
  std::vector<Field> controls;
  std::vector<std::string> labels;
};

struct RankReport {
  Eigen::VectorXd point;
  double determinant = 0.0;      // of the pre-normalized basis columns
  double raw_determinant = 0.0;  // of the unnormalized columns
  bool full_rank = false;
  std::vector<std::string> singular_locus_hits;
};

/** 6-state system (d1, d2, theta, s1, s2, s3) valid on the invariant set
 *  p* = 0. */
AffineSystem swimmer_fields_zero_impulse(const BodyParams& params, double epsilon);

/** 9-state system (d1, d2, theta, p1*, p2*, p3*, s1, s2, s3) with drift. */
AffineSystem swimmer_fields_with_impulse(const BodyParams& params, double epsilon,
                                         PRowMode mode = PRowMode::Structural);

/** [X, Y](q) = DY(q) X(q) - DX(q) Y(q), central differences. */
Eigen::VectorXd lie_bracket_numeric(const Field& X, const Field& Y,
                                    const Eigen::VectorXd& q, double h = 1e-5);

/** Closed-form brackets. 6-state names: "12", "13", "23"; 9-state names:
 *  "g12", "g13", "g23" (first order) and "g123", "g223", "g323" (second
 *  order, [g_i, [g_2, g_3]]). */
Eigen::VectorXd closed_form_bracket(const std::string& which,
                                    const Eigen::VectorXd& q,
                                    const BodyParams& params, double epsilon);

struct DetComparison {
  double assembled = 0.0;
  double closed_form = 0.0;
  double relative_difference = 0.0;
};

DetComparison det_zero_impulse(const Eigen::VectorXd& q, const BodyParams& params,
                               double epsilon);

DetComparison det_with_impulse(const Eigen::VectorXd& q, const BodyParams& params,
                               double epsilon,
                               PRowMode mode = PRowMode::PaperLiteral);

struct ScanOptions {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  int n_samples = 1000;
  std::uint64_t seed = 1234567ULL;
  double tol = 1e-12;
};

std::vector<RankReport> accessibility_scan(const AffineSystem& system,
                                           const BodyParams& params,
                                           double epsilon,
                                           const ScanOptions& opts);

struct KalmanResult {
  int rank = 0;
  bool sufficient = false;
};

KalmanResult kalman_linearization_test(const AffineSystem& system,
                                       const Eigen::VectorXd& q_e,
                                       double tol = 1e-10);

struct GeneralMReport {
  int m = 0;
  bool with_impulse = false;
  int embedded_rank = 0;        // rank of the m = 3 closed bracket basis
  int extra_rank = 0;           // independent extra shape directions
  bool intersection_trivial = false;
  int dimension_bound = 0;      // embedded_rank + extra_rank
};

GeneralMReport general_m_rank_argument(int m, bool with_impulse,
                                       const BodyParams& params, double epsilon,
                                       const SolverSettings& st = {});

}  // namespace swim

#endif
