#ifndef SWIM_SE2_HPP
#define SWIM_SE2_HPP

#include <Eigen/Dense>

namespace swim {

/** Planar pose (d, theta). theta is stored unwrapped: it accumulates across
 *  full turns so that integrated trajectories stay continuous. */
struct Pose {
  Eigen::Vector2d d{0.0, 0.0};
  double theta = 0.0;

  Eigen::Matrix3d homogeneous() const;
};

/** Element of se(2), component order (omega, v1, v2). */
struct Se2Vector {
  double omega = 0.0;
  Eigen::Vector2d v{0.0, 0.0};

  Eigen::Vector3d as_vector() const { return {omega, v.x(), v.y()}; }
  static Se2Vector from_vector(const Eigen::Vector3d& w) {
    return {w(0), {w(1), w(2)}};
  }
};

Eigen::Matrix2d rot(double theta);

Pose se2_exp(const Se2Vector& xi);

Eigen::Matrix3d hat(const Se2Vector& xi);
Se2Vector vee(const Eigen::Matrix3d& m);
Se2Vector lie_bracket(const Se2Vector& a, const Se2Vector& b);

}  // namespace swim

#endif
