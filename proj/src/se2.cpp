#include "swim/se2.hpp"

#include <cmath>
#include <stdexcept>

namespace swim {

Eigen::Matrix3d Pose::homogeneous() const {
  Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
  m.topLeftCorner<2, 2>() = rot(theta);
  m.topRightCorner<2, 1>() = d;
  return m;
}

Eigen::Matrix2d rot(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rot: non-finite angle");
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix2d m;
  m << c, -s, s, c;
  return m;
}

Pose se2_exp(const Se2Vector& xi) {
  if (!std::isfinite(xi.omega) || !xi.v.allFinite())
    throw std::invalid_argument("se2_exp: non-finite input");
  const double w = xi.omega;
  double a, b;  // d = [[a, -b], [b, a]] v
  if (std::abs(w) < 1e-8) {
    a = 1.0 - w * w / 6.0;
    b = w / 2.0 - w * w * w / 24.0;
  } else {
    a = std::sin(w) / w;
    b = (1.0 - std::cos(w)) / w;
  }
  Eigen::Matrix2d V;
  V << a, -b, b, a;
  return Pose{V * xi.v, w};
}

Eigen::Matrix3d hat(const Se2Vector& xi) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 1) = -xi.omega;
  m(1, 0) = xi.omega;
  m(0, 2) = xi.v.x();
  m(1, 2) = xi.v.y();
  return m;
}

Se2Vector vee(const Eigen::Matrix3d& m) {
  return {m(1, 0), {m(0, 2), m(1, 2)}};
}

Se2Vector lie_bracket(const Se2Vector& a, const Se2Vector& b) {
  const Eigen::Matrix3d c = hat(a) * hat(b) - hat(b) * hat(a);
  return vee(c);
}

}  // namespace swim
