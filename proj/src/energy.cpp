#include "swim/energy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "swim/parallel.hpp"

namespace swim {

namespace {

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
  // Golub-Welsch on [-1, 1], then shifted to [0, 1].
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
    const double v0 = es.eigenvectors()(0, i);
    w[i] = v0 * v0;  // weights on [0, 1] (total weight 1)
  }
}

Eigen::MatrixXd gram(const std::vector<const HarmonicSeries*>& xs,
                     const std::vector<const HarmonicSeries*>& ys) {
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());
  Eigen::MatrixXd g(nx, ny);
  if (parallel_enabled()) {
#pragma omp parallel for collapse(2)
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) g(i, j) = cross_energy(*xs[i], *ys[j]);
  } else {
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j) g(i, j) = cross_energy(*xs[i], *ys[j]);
  }
  return g;
}

void check_spd(const Eigen::MatrixXd& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::runtime_error(std::string("assemble: ") + what + " not SPD");
}

}  // namespace

void BodyParams::validate() const {
  if (!(M > 0.0) || !(rho >= 0.0) || !(rho0 > 0.0))
    throw std::invalid_argument("BodyParams: need M > 0, rho >= 0, rho0 > 0");
}

double mu(const BodyParams& params) {
  const double denom = params.M + std::numbers::pi * params.rho;
  if (!(denom > 0.0)) throw std::invalid_argument("mu: M + pi*rho must be positive");
  return 2.0 * std::numbers::pi * params.rho / denom;
}

double body_inertia(const ShapeCoeffs& c, const BodyParams& params, int n_r,
                    int n_sigma) {
  params.validate();
  if (params.I_policy == InertiaPolicy::FrozenDisk) return 0.5 * params.M;
  std::vector<double> xr, wr;
  gauss_legendre_01(n_r, xr, wr);
  const double dsig = 2.0 * std::numbers::pi / n_sigma;

  double area = 0.0, second_moment = 0.0;
  auto accumulate = [&](int ir) {
    const double r = xr[ir];
    double a_loc = 0.0, m_loc = 0.0;
    for (int js = 0; js < n_sigma; ++js) {
      const complexd z = std::polar(r, js * dsig);
      // Jacobian of chi: |chi_z|^2 - |chi_zbar|^2 with chi_z = 1.
      complexd dzbar = 0.0;
      complexd zbk = 1.0;
      const complexd zb = std::conj(z);
      for (int k = 1; k <= c.m_max(); ++k) {
        dzbar += static_cast<double>(k) * c.c(k) * zbk;
        zbk *= zb;
      }
      const double jac = 1.0 - std::norm(dzbar);
      const double wq = wr[ir] * r * dsig;
      a_loc += jac * wq;
      m_loc += std::norm(chi(c, z)) * jac * wq;
    }
    return std::pair{a_loc, m_loc};
  };
  if (parallel_enabled()) {
#pragma omp parallel for reduction(+ : area, second_moment)
    for (int ir = 0; ir < n_r; ++ir) {
      auto [a, m] = accumulate(ir);
      area += a;
      second_moment += m;
    }
  } else {
    for (int ir = 0; ir < n_r; ++ir) {
      auto [a, m] = accumulate(ir);
      area += a;
      second_moment += m;
    }
  }
  if (!(area > 0.0)) throw std::runtime_error("body_inertia: degenerate shape");
  return params.M / area * second_moment;
}

Eigen::MatrixXd deformation_energy_matrix(const BodyParams& params, int m_coeff) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * m_coeff, 2 * m_coeff);
  for (int k = 1; k <= m_coeff; ++k) {
    const double v = 2.0 * std::numbers::pi * params.rho0 / (k + 1);
    d(2 * (k - 1), 2 * (k - 1)) = v;
    d(2 * k - 1, 2 * k - 1) = v;
  }
  return d;
}

MassMatrices assemble(const ShapeCoeffs& c, const BodyParams& params,
                      int m_coeff, const SolverSettings& st) {
  params.validate();
  const RigidPotentials rp = rigid_potentials(c, st);
  const DeformationPotentials dp = deformation_potentials(c, m_coeff, st);

  std::vector<const HarmonicSeries*> rig{&rp.xi1, &rp.xi2, &rp.xi3};
  std::vector<const HarmonicSeries*> def;
  for (const auto& x : dp.per_rate) def.push_back(&x);

  MassMatrices mm;
  mm.Mr = Eigen::Matrix3d::Zero();
  mm.Mr(0, 0) = params.M;
  mm.Mr(1, 1) = params.M;
  mm.Mr(2, 2) = body_inertia(c, params);
  mm.Mr += params.rho * gram(rig, rig);
  mm.Ncoupling = params.rho * gram(rig, def);
  mm.Md = deformation_energy_matrix(params, m_coeff) + params.rho * gram(def, def);
  check_spd(mm.Mr, "Mr");
  check_spd(mm.Md, "Md");
  mm.Kred = mm.Md - mm.Ncoupling.transpose() * mm.Mr.inverse() * mm.Ncoupling;
  return mm;
}

MassMatrices assemble_real(const RealShape& rs, const BodyParams& params,
                           const SolverSettings& st) {
  const ShapeCoeffs c = coeffs_from_real(rs);
  const int m_coeff = c.m_max();
  const MassMatrices cm = assemble(c, params, m_coeff, st);
  const auto chain = real_chain_matrix(rs.m(), rs.epsilon);
  Eigen::MatrixXd C(2 * m_coeff, rs.m());
  for (int r = 0; r < 2 * m_coeff; ++r)
    for (int i = 0; i < rs.m(); ++i) C(r, i) = chain[r][i];

  MassMatrices mm;
  mm.Mr = cm.Mr;
  mm.Ncoupling = cm.Ncoupling * C;
  mm.Md = C.transpose() * cm.Md * C;
  mm.Kred = mm.Md - mm.Ncoupling.transpose() * mm.Mr.inverse() * mm.Ncoupling;
  return mm;
}

double total_kinetic_energy(const MassMatrices& mm,
                            const Eigen::Vector3d& rigid_rates,
                            const Eigen::VectorXd& shape_rates) {
  if (shape_rates.size() != mm.Ncoupling.cols())
    throw std::invalid_argument("total_kinetic_energy: rate dimension mismatch");
  return 0.5 * rigid_rates.dot(mm.Mr * rigid_rates) +
         rigid_rates.dot(mm.Ncoupling * shape_rates) +
         0.5 * shape_rates.dot(mm.Md * shape_rates);
}

}  // namespace swim
