#ifndef SWIM_ENERGY_HPP
#define SWIM_ENERGY_HPP

#include <Eigen/Dense>

#include "swim/potential.hpp"
#include "swim/shape.hpp"

namespace swim {

enum class InertiaPolicy { Quadrature, FrozenDisk };

struct BodyParams {
  double M = 1.0;     // body mass
  double rho = 1.0;   // fluid density
  double rho0 = 1.0;  // body density
  InertiaPolicy I_policy = InertiaPolicy::Quadrature;

  void validate() const;
};

/** Blocks of the kinetic-energy metric in a chosen shape-rate basis.
 *  basis_dim is 2*m_coeff for complex-coefficient rates (a_k, b_k) or m for
 *  the real parameters s. */
struct MassMatrices {
  Eigen::Matrix3d Mr;
  Eigen::MatrixXd Ncoupling;  // 3 x basis_dim
  Eigen::MatrixXd Md;         // basis_dim x basis_dim
  Eigen::MatrixXd Kred;       // Md - N^T Mr^{-1} N
};

double mu(const BodyParams& params);

double body_inertia(const ShapeCoeffs& c, const BodyParams& params,
                    int n_r = 64, int n_sigma = 256);

/** Diagonal body-deformation energy matrix: entry 2*pi*rho0/(k+1) for each of
 *  the a_k and b_k rates. */
Eigen::MatrixXd deformation_energy_matrix(const BodyParams& params, int m_coeff);

/** Assembles the metric blocks in the complex-coefficient rate basis. */
MassMatrices assemble(const ShapeCoeffs& c, const BodyParams& params,
                      int m_coeff, const SolverSettings& st = {});

/** Assembles in the real (s, eps) basis through the constant chain-rule map. */
MassMatrices assemble_real(const RealShape& rs, const BodyParams& params,
                           const SolverSettings& st = {});

double total_kinetic_energy(const MassMatrices& mm,
                            const Eigen::Vector3d& rigid_rates,
                            const Eigen::VectorXd& shape_rates);

}  // namespace swim

#endif
