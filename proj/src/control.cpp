#include "swim/control.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "swim/errors.hpp"
#include "swim/gauge.hpp"
#include "swim/parallel.hpp"

namespace swim {

namespace {

constexpr double kPi = std::numbers::pi;

struct FieldParams {
  double M, rho, mu, e2;
};

FieldParams field_params(const BodyParams& params, double epsilon) {
  return {params.M, params.rho, mu(params), epsilon * epsilon};
}

Eigen::VectorXd g_zero_impulse(const FieldParams& fp, const Eigen::VectorXd& q,
                               int i) {
  const double th = q(2), s1 = q(3), s2 = q(4), s3 = q(5);
  Eigen::Vector2d dstar;
  double w = 0.0;
  if (i == 0) {
    dstar = {-(1.0 - fp.mu) * s2, -(1.0 - fp.mu) * s3};
  } else if (i == 1) {
    dstar = {-s1, 0.0};
    w = 2.0 * kPi * fp.rho * s3 / fp.M;
  } else {
    dstar = {0.0, -s1};
    w = -2.0 * kPi * fp.rho * s2 / fp.M;
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(6);
  g.head<2>() = rot(th) * dstar;
  g(2) = w;
  g(3 + i) = 1.0;
  return fp.e2 * g;
}

Eigen::VectorXd g_with_impulse(const FieldParams& fp, const Eigen::VectorXd& q,
                               int i, PRowMode mode) {
  const double th = q(2), p1 = q(3), p2 = q(4);
  const double s1 = q(6), s2 = q(7), s3 = q(8);
  Eigen::Vector2d dstar;
  double w = 0.0, p3row;
  if (i == 0) {
    dstar = {-(1.0 - fp.mu) * s2, -(1.0 - fp.mu) * s3};
    p3row = mode == PRowMode::PaperLiteral
                ? -(1.0 - fp.mu) * (s3 * p1 + s2 * p2)
                : -(1.0 - fp.mu) * s3 * p1 + (1.0 - fp.mu) * s2 * p2;
  } else if (i == 1) {
    dstar = {-s1, 0.0};
    w = 2.0 * kPi * fp.rho * s3 / fp.M;
    p3row = s1 * p2;
  } else {
    dstar = {0.0, -s1};
    w = -2.0 * kPi * fp.rho * s2 / fp.M;
    p3row = -s1 * p2;
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(9);
  g.head<2>() = rot(th) * dstar;
  g(2) = w;
  g(3) = w * p2;
  g(4) = -w * p1;
  g(5) = p3row;
  g(6 + i) = 1.0;
  return fp.e2 * g;
}

}  // namespace

AffineSystem swimmer_fields_zero_impulse(const BodyParams& params, double epsilon) {
  const FieldParams fp = field_params(params, epsilon);
  AffineSystem sys;
  sys.dim = 6;
  sys.labels = {"d1", "d2", "theta", "s1", "s2", "s3"};
  sys.drift = [](const Eigen::VectorXd& q) {
    return Eigen::VectorXd::Zero(q.size()).eval();
  };
  for (int i = 0; i < 3; ++i)
    sys.controls.push_back(
        [fp, i](const Eigen::VectorXd& q) { return g_zero_impulse(fp, q, i); });
  return sys;
}

AffineSystem swimmer_fields_with_impulse(const BodyParams& params, double epsilon,
                                         PRowMode mode) {
  const FieldParams fp = field_params(params, epsilon);
  const Eigen::Matrix3d Minv = explicit_rigid_matrix(params).inverse();
  AffineSystem sys;
  sys.dim = 9;
  sys.labels = {"d1", "d2", "theta", "p1", "p2", "p3", "s1", "s2", "s3"};
  sys.drift = [Minv](const Eigen::VectorXd& q) {
    const Eigen::Vector3d p = q.segment<3>(3);
    const Eigen::Vector3d v = Minv * p;
    Eigen::VectorXd f = Eigen::VectorXd::Zero(9);
    f.head<2>() = rot(q(2)) * v.head<2>();
    f(2) = v(2);
    f(3) = v(2) * p(1);
    f(4) = -v(2) * p(0);
    f(5) = v(1) * p(0) - v(0) * p(1);
    return f;
  };
  for (int i = 0; i < 3; ++i)
    sys.controls.push_back([fp, i, mode](const Eigen::VectorXd& q) {
      return g_with_impulse(fp, q, i, mode);
    });
  return sys;
}

Eigen::VectorXd lie_bracket_numeric(const Field& X, const Field& Y,
                                    const Eigen::VectorXd& q, double h) {
  const int n = static_cast<int>(q.size());
  auto jac = [&](const Field& F) {
    Eigen::MatrixXd J(n, n);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd qp = q, qm = q;
      qp(k) += h;
      qm(k) -= h;
      J.col(k) = (F(qp) - F(qm)) / (2.0 * h);
    }
    return J;
  };
  const Eigen::VectorXd out = jac(Y) * X(q) - jac(X) * Y(q);
  if (!out.allFinite())
    throw std::domain_error("lie_bracket_numeric: non-finite field evaluation");
  return out;
}

Eigen::VectorXd closed_form_bracket(const std::string& which,
                                    const Eigen::VectorXd& q,
                                    const BodyParams& params, double epsilon) {
  const double M = params.M, rho = params.rho, m = mu(params);
  const double e4 = std::pow(epsilon, 4), e6 = std::pow(epsilon, 6);
  const bool six = which.size() == 2;
  const double th = q(2);
  const double s1 = six ? q(3) : q(6);
  const double s2 = six ? q(4) : q(7);
  const double s3 = six ? q(5) : q(8);
  const double p1 = six ? 0.0 : q(3);
  const double p2 = six ? 0.0 : q(4);
  const double sn = std::sin(th), cs = std::cos(th);

  Eigen::VectorXd out = Eigen::VectorXd::Zero(six ? 6 : 9);
  auto set_d = [&](double x, double y) {
    out(0) = x;
    out(1) = y;
  };
  const std::string key = six ? which : which.substr(1);

  if (key == "12") {
    set_d((2.0 * kPi * s2 * s3 * (m - 1.0) * rho * sn -
           cs * (M * m - 2.0 * kPi * s3 * s3 * (m - 1.0) * rho)) /
              M,
          (sn * (2.0 * kPi * s3 * s3 * (m - 1.0) * rho - M * m) -
           2.0 * kPi * s2 * s3 * (m - 1.0) * rho * cs) /
              M);
    if (!six)
      out(5) = (2.0 * kPi * s3 * (m - 1.0) * rho * (p1 * s2 - p2 * s3) -
                M * p2 * (m - 2.0)) /
               M;
    out *= e4;
  } else if (key == "13") {
    // The second component carries the opposite sign of the printed formula;
    // the corrected sign matches the finite-difference bracket and is the one
    // under which the basis determinant reproduces its closed form.
    set_d((sn * (M * m - 2.0 * kPi * s2 * s2 * (m - 1.0) * rho) -
           2.0 * kPi * s2 * s3 * (m - 1.0) * rho * cs) /
              M,
          -(cs * (M * m - 2.0 * kPi * s2 * s2 * (m - 1.0) * rho) +
            2.0 * kPi * s2 * s3 * (m - 1.0) * rho * sn) /
              M);
    if (!six)
      out(5) = (2.0 * kPi * s2 * (m - 1.0) * rho * (p1 * s2 + p2 * s3) -
                M * (p1 * (m - 1.0) + p2)) /
               M;
    out *= e4;
  } else if (key == "23") {
    set_d(2.0 * kPi * s1 * rho * (s2 * sn + s3 * cs) / M,
          2.0 * kPi * s1 * rho * (s3 * sn - s2 * cs) / M);
    out(2) = -4.0 * kPi * rho / M;
    if (!six) {
      out(3) = -4.0 * kPi * rho * (M * p2 - 2.0 * kPi * p1 * s2 * s3 * rho) /
               (M * M);
      out(4) = -8.0 * kPi * kPi * p2 * s2 * s3 * rho * rho / (M * M);
      out(5) = 2.0 * kPi * p1 * s1 * rho * (s2 + s3) / M;
    }
    out *= e4;
  } else if (!six && key == "123") {
    set_d(-2.0 * kPi * (2.0 * m - 3.0) * rho * (s2 * sn + s3 * cs) / M,
          2.0 * kPi * (2.0 * m - 3.0) * rho * (s2 * cs - s3 * sn) / M);
    out(5) = 2.0 * kPi * rho *
             (M * (p1 * (s2 + s3) + 2.0 * p2 * s3 * (m - 1.0)) +
              4.0 * kPi * s2 * s3 * (m - 1.0) * rho * (p2 * s2 - p1 * s3)) /
             (M * M);
    out *= e6;
  } else if (!six && key == "223") {
    set_d(2.0 * kPi * s1 * rho *
              (sn * (3.0 * M - 2.0 * kPi * s3 * s3 * rho) +
               2.0 * kPi * s2 * s3 * rho * cs) /
              (M * M),
          2.0 * kPi * s1 * rho *
              (2.0 * kPi * s3 * rho * (s2 * sn + s3 * cs) - 3.0 * M * cs) /
              (M * M));
    out(3) = 16.0 * kPi * kPi * s3 * rho * rho *
             (M * p1 + 2.0 * kPi * p2 * s2 * s3 * rho) / (M * M * M);
    out(4) = -16.0 * kPi * kPi * s3 * rho * rho *
             (M * p2 - 2.0 * kPi * p1 * s2 * s3 * rho) / (M * M * M);
    out(5) = 2.0 * kPi * s1 * rho *
             (M * p1 + 2.0 * kPi * p2 * s3 * rho * (3.0 * s2 + s3)) / (M * M);
    out *= e6;
  } else if (!six && key == "323") {
    set_d(2.0 * kPi * s1 * rho *
              (cs * (3.0 * M - 2.0 * kPi * s2 * s2 * rho) +
               2.0 * kPi * s2 * s3 * rho * sn) /
              (M * M),
          2.0 * kPi * s1 * rho *
              (3.0 * M * sn - 2.0 * kPi * s2 * rho * (s2 * sn + s3 * cs)) /
              (M * M));
    out(3) = 16.0 * kPi * kPi * s2 * rho * rho *
             (M * p1 - 2.0 * kPi * p2 * s2 * s3 * rho) / (M * M * M);
    out(4) = -16.0 * kPi * kPi * s2 * rho * rho *
             (M * p2 - 2.0 * kPi * p1 * s2 * s3 * rho) / (M * M * M);
    out(5) = 2.0 * kPi * s1 * rho *
             (M * p1 - 2.0 * kPi * p2 * s2 * rho * (s2 + 3.0 * s3)) / (M * M);
    out *= e6;
  } else {
    throw std::invalid_argument("closed_form_bracket: unknown bracket " + which);
  }
  return out;
}

namespace {

/** Basis columns of the explicit rank certificates. First-order bracket
 *  columns enter with the orientation under which the printed determinant
 *  values were computed, which is the negative of the convention used by
 *  lie_bracket_numeric; second-order brackets are orientation-invariant. */
Eigen::MatrixXd basis_zero_impulse(const Eigen::VectorXd& q,
                                   const BodyParams& params, double epsilon) {
  const FieldParams fp = field_params(params, epsilon);
  Eigen::MatrixXd B(6, 6);
  for (int i = 0; i < 3; ++i) B.col(i) = g_zero_impulse(fp, q, i);
  B.col(3) = -closed_form_bracket("12", q, params, epsilon);
  B.col(4) = -closed_form_bracket("23", q, params, epsilon);
  B.col(5) = -closed_form_bracket("13", q, params, epsilon);
  return B;
}

Eigen::MatrixXd basis_with_impulse(const Eigen::VectorXd& q,
                                   const BodyParams& params, double epsilon,
                                   PRowMode mode) {
  const FieldParams fp = field_params(params, epsilon);
  Eigen::MatrixXd B(9, 9);
  for (int i = 0; i < 3; ++i) B.col(i) = g_with_impulse(fp, q, i, mode);
  B.col(3) = -closed_form_bracket("g12", q, params, epsilon);
  B.col(4) = -closed_form_bracket("g13", q, params, epsilon);
  B.col(5) = -closed_form_bracket("g23", q, params, epsilon);
  B.col(6) = closed_form_bracket("g123", q, params, epsilon);
  B.col(7) = closed_form_bracket("g223", q, params, epsilon);
  B.col(8) = closed_form_bracket("g323", q, params, epsilon);
  return B;
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

DetComparison det_zero_impulse(const Eigen::VectorXd& q, const BodyParams& params,
                               double epsilon) {
  const double M = params.M, rho = params.rho, m = mu(params);
  const double s2 = q(4), s3 = q(5);
  DetComparison cmp;
  cmp.assembled = basis_zero_impulse(q, params, epsilon).determinant();
  cmp.closed_form = 4.0 * kPi * m * rho * std::pow(epsilon, 18) *
                    (m * M - 2.0 * kPi * (m - 1.0) * rho * (s2 * s2 + s3 * s3)) /
                    (M * M);
  cmp.relative_difference = relative_difference(cmp.assembled, cmp.closed_form);
  return cmp;
}

DetComparison det_with_impulse(const Eigen::VectorXd& q, const BodyParams& params,
                               double epsilon, PRowMode mode) {
  const double M = params.M, rho = params.rho, m = mu(params);
  const double p1 = q(3), p2 = q(4), s2 = q(7), s3 = q(8);
  DetComparison cmp;
  cmp.assembled = basis_with_impulse(q, params, epsilon, mode).determinant();
  const double long_factor =
      M * M *
          (p1 * ((2.0 * (m - 3.0) * m + 3.0) * s2 - m * s3) +
           p2 * ((2.0 * m - 3.0) * s2 + ((9.0 - 4.0 * m) * m - 6.0) * s3)) -
      2.0 * kPi * (m - 1.0) * M * rho *
          (2.0 * m * p1 * s2 * (s2 * s2 - 2.0 * s3 * s3) -
           p1 * (s2 + s3) * (4.0 * s2 * s2 - 3.0 * s2 * s3 + s3 * s3) -
           p2 * s3 * (-2.0 * m * s2 * s2 + s2 * s2 + s3 * s3)) +
      8.0 * kPi * kPi * (m - 1.0) * (m - 1.0) * rho * rho * s2 * s3 *
          (s2 * s2 + s3 * s3) * (p2 * s2 - p1 * s3);
  cmp.closed_form = 8192.0 / std::pow(M, 10) * std::pow(kPi, 7) * m * p2 *
                    std::pow(rho, 7) * s2 * s2 * s3 * s3 *
                    std::pow(epsilon, 36) *
                    (M * p2 - 2.0 * kPi * p1 * rho * s2 * s3) * long_factor;
  cmp.relative_difference = relative_difference(cmp.assembled, cmp.closed_form);
  return cmp;
}

std::vector<RankReport> accessibility_scan(const AffineSystem& system,
                                           const BodyParams& params,
                                           double epsilon,
                                           const ScanOptions& opts) {
  if (system.dim != 6 && system.dim != 9)
    throw std::invalid_argument("accessibility_scan: expected the 6- or 9-state system");
  if (opts.lo.size() != system.dim || opts.hi.size() != system.dim)
    throw std::invalid_argument("accessibility_scan: region dimension mismatch");
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Eigen::VectorXd> points(opts.n_samples);
  for (int k = 0; k < opts.n_samples; ++k) {
    Eigen::VectorXd q(system.dim);
    for (int i = 0; i < system.dim; ++i)
      q(i) = opts.lo(i) + (opts.hi(i) - opts.lo(i)) * unif(rng);
    points[k] = q;
  }
  std::vector<RankReport> reports(opts.n_samples);
  auto eval_point = [&](int k) {
    const Eigen::VectorXd& q = points[k];
    Eigen::MatrixXd B = system.dim == 6
                            ? basis_zero_impulse(q, params, epsilon)
                            : basis_with_impulse(q, params, epsilon,
                                                 PRowMode::PaperLiteral);
    RankReport rep;
    rep.point = q;
    rep.raw_determinant = B.determinant();
    for (int c = 0; c < B.cols(); ++c) {
      const double nrm = B.col(c).norm();
      if (nrm > 0.0) B.col(c) /= nrm;
    }
    rep.determinant = B.determinant();
    rep.full_rank = std::abs(rep.determinant) > opts.tol;
    if (system.dim == 6) {
      if (std::abs(q(4)) < 1e-12 && std::abs(q(5)) < 1e-12)
        rep.singular_locus_hits.push_back("s2=s3=0");
    } else {
      if (std::abs(q(3)) < 1e-12 && std::abs(q(4)) < 1e-12)
        rep.singular_locus_hits.push_back("p1=p2=0");
    }
    reports[k] = rep;
  };
  if (parallel_enabled()) {
#pragma omp parallel for
    for (int k = 0; k < opts.n_samples; ++k) eval_point(k);
  } else {
    for (int k = 0; k < opts.n_samples; ++k) eval_point(k);
  }
  return reports;
}

KalmanResult kalman_linearization_test(const AffineSystem& system,
                                       const Eigen::VectorXd& q_e, double tol) {
  if (system.drift(q_e).norm() > tol)
    throw std::invalid_argument("kalman_linearization_test: q_e is not an equilibrium");
  const int n = system.dim;
  const double h = 1e-6;
  Eigen::MatrixXd Df(n, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd qp = q_e, qm = q_e;
    qp(k) += h;
    qm(k) -= h;
    Df.col(k) = (system.drift(qp) - system.drift(qm)) / (2.0 * h);
  }
  const int nc = static_cast<int>(system.controls.size());
  Eigen::MatrixXd B(n, nc);
  for (int i = 0; i < nc; ++i) B.col(i) = system.controls[i](q_e);
  Eigen::MatrixXd K(n, n * nc);
  Eigen::MatrixXd block = B;
  for (int j = 0; j < n; ++j) {
    K.middleCols(j * nc, nc) = block;
    block = Df * block;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
  const double thresh = svd.singularValues()(0) * 1e-10;
  KalmanResult res;
  res.rank = static_cast<int>((svd.singularValues().array() > thresh).count());
  res.sufficient = res.rank == n;
  return res;
}

GeneralMReport general_m_rank_argument(int m, bool with_impulse,
                                       const BodyParams& params, double epsilon,
                                       const SolverSettings& st) {
  if (m <= 3)
    throw std::invalid_argument("general_m_rank_argument: requires m > 3");
  GeneralMReport rep;
  rep.m = m;
  rep.with_impulse = with_impulse;

  // Embedded 3-parameter subsystem at a generic point.
  const int dim3 = with_impulse ? 9 : 6;
  Eigen::VectorXd q3 = Eigen::VectorXd::Zero(dim3);
  q3(2) = 0.4;
  if (with_impulse) {
    q3.segment<3>(3) << 0.3, 0.5, 0.1;
    q3.segment<3>(6) << 0.25, 0.4, 0.55;
  } else {
    q3.segment<3>(3) << 0.25, 0.4, 0.55;
  }
  Eigen::MatrixXd B3 = with_impulse ? basis_with_impulse(q3, params, epsilon,
                                                         PRowMode::PaperLiteral)
                                    : basis_zero_impulse(q3, params, epsilon);
  for (int c = 0; c < B3.cols(); ++c) B3.col(c) /= B3.col(c).norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd3(B3);
  rep.embedded_rank = static_cast<int>(
      (svd3.singularValues().array() > svd3.singularValues()(0) * 1e-10).count());

  // Extra shape directions of the assembled connection at s_1 = s_2 = s_3 = 0.
  RealShape rs;
  rs.epsilon = epsilon;
  rs.s.assign(m, 0.0);
  for (int j = 3; j < m; ++j) rs.s[j] = 0.2 + 0.05 * j;
  const ConnectionLocal conn =
      local_connection(rs, Engine::Assembled, params, st);
  const int full_dim = with_impulse ? m + 6 : m + 3;
  const int p_off = 3, s_off = with_impulse ? 6 : 3;
  Eigen::MatrixXd extra = Eigen::MatrixXd::Zero(full_dim, m - 3);
  const Eigen::Vector3d p_sample{0.3, 0.5, 0.1};
  for (int j = 3; j < m; ++j) {
    Eigen::Vector3d rigid = -conn.A.col(j);
    extra.block<3, 1>(0, j - 3) = rigid;  // theta = 0 at the sample point
    if (with_impulse) {
      extra(p_off + 0, j - 3) = rigid(2) * p_sample(1);
      extra(p_off + 1, j - 3) = -rigid(2) * p_sample(0);
      extra(p_off + 2, j - 3) = rigid(1) * p_sample(0) - rigid(0) * p_sample(1);
    }
    extra(s_off + j, j - 3) = 1.0;
  }
  Eigen::MatrixXd extra_n = extra;
  for (int c = 0; c < extra_n.cols(); ++c) extra_n.col(c) /= extra_n.col(c).norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svde(extra_n);
  rep.extra_rank =
      extra_n.cols() == 0
          ? 0
          : static_cast<int>((svde.singularValues().array() >
                              svde.singularValues()(0) * 1e-10)
                                 .count());

  // Combined span: embedded basis lifted with zero rows for s_4..s_m.
  Eigen::MatrixXd combined =
      Eigen::MatrixXd::Zero(full_dim, B3.cols() + extra.cols());
  combined.topLeftCorner(dim3, B3.cols()) = B3;
  combined.rightCols(extra.cols()) = extra_n;
  Eigen::JacobiSVD<Eigen::MatrixXd> svdc(combined);
  const int combined_rank = static_cast<int>(
      (svdc.singularValues().array() > svdc.singularValues()(0) * 1e-10).count());
  rep.intersection_trivial = combined_rank == rep.embedded_rank + rep.extra_rank;
  rep.dimension_bound = rep.intersection_trivial
                            ? rep.embedded_rank + rep.extra_rank
                            : combined_rank;
  return rep;
}

}  // namespace swim
