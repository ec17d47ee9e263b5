#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include <swim/se2.hpp>

using namespace swim;

TEST_CASE("rotation matrix basics") {
  const Eigen::Matrix2d R = rot(0.3);
  CHECK(R(0, 0) == doctest::Approx(std::cos(0.3)));
  CHECK(R(1, 0) == doctest::Approx(std::sin(0.3)));
  CHECK((R * rot(-0.3) - Eigen::Matrix2d::Identity()).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("exp of a pure translation") {
  const Pose g = se2_exp(Se2Vector{0.0, {1.5, -0.25}});
  CHECK(g.theta == doctest::Approx(0.0));
  CHECK(g.d.x() == doctest::Approx(1.5));
  CHECK(g.d.y() == doctest::Approx(-0.25));
}

TEST_CASE("exp of a pure rotation leaves the origin fixed") {
  const Pose g = se2_exp(Se2Vector{0.7, {0.0, 0.0}});
  CHECK(g.theta == doctest::Approx(0.7));
  CHECK(g.d.norm() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("exp matches the matrix exponential via homogeneous form") {
  const Se2Vector xi{0.4, {0.2, -0.6}};
  const Pose g = se2_exp(xi);
  // Scaling-and-squaring on the hat matrix as an independent oracle.
  Eigen::Matrix3d X = hat(xi) / 1024.0;
  Eigen::Matrix3d E = Eigen::Matrix3d::Identity() + X + 0.5 * X * X +
                      X * X * X / 6.0 + X * X * X * X / 24.0;
  for (int i = 0; i < 10; ++i) E = E * E;
  CHECK((g.homogeneous() - E).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("exp is continuous through omega = 0") {
  const Pose a = se2_exp(Se2Vector{1e-9, {1.0, 2.0}});
  const Pose b = se2_exp(Se2Vector{1e-7, {1.0, 2.0}});
  CHECK((a.d - b.d).norm() < 1e-6);
}

TEST_CASE("hat/vee round trip") {
  const Se2Vector xi{-0.9, {0.3, 0.8}};
  const Se2Vector back = vee(hat(xi));
  CHECK(back.omega == doctest::Approx(xi.omega));
  CHECK((back.v - xi.v).norm() == doctest::Approx(0.0));
}

TEST_CASE("bracket of the standard basis closes as [A1, A2] = A3") {
  const Se2Vector A1{1.0, {0.0, 0.0}};  // rotation generator
  const Se2Vector A2{0.0, {1.0, 0.0}};
  const Se2Vector A3{0.0, {0.0, 1.0}};
  const Se2Vector b = lie_bracket(A1, A2);
  CHECK((b.as_vector() - A3.as_vector()).norm() ==
        doctest::Approx(0.0).epsilon(1e-15));
  // and [A2, A3] = 0 for two translations
  CHECK(lie_bracket(A2, A3).as_vector().norm() == doctest::Approx(0.0));
}

TEST_CASE("bracket is the matrix commutator") {
  const Se2Vector a{0.3, {1.0, -2.0}}, b{-1.1, {0.5, 0.4}};
  const Eigen::Matrix3d comm = hat(a) * hat(b) - hat(b) * hat(a);
  CHECK((hat(lie_bracket(a, b)) - comm).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("theta accumulates beyond pi") {
  const Pose g = se2_exp(Se2Vector{2.0 * std::numbers::pi + 0.1, {0.0, 0.0}});
  CHECK(g.theta == doctest::Approx(2.0 * std::numbers::pi + 0.1));
}
