#ifndef SWIM_POTENTIAL_HPP
#define SWIM_POTENTIAL_HPP

#include <functional>
#include <vector>

#include "swim/shape.hpp"

namespace swim {

/** Fourier coefficients of the prescribed boundary flux g(sigma), where the
 *  flux convention is g = -d(xi)/dr at r = 1. */
struct BoundaryFlux {
  std::vector<double> cos_coeffs;  // g_n^c, n = 1..N
  std::vector<double> sin_coeffs;  // g_n^s
  double mean = 0.0;

  int n_modes() const { return static_cast<int>(cos_coeffs.size()); }
};

/** Decaying exterior harmonic series
 *  xi(r, sigma) = sum_n r^{-n} (A_n cos n sigma + B_n sin n sigma). */
struct HarmonicSeries {
  std::vector<double> cos_coeffs;  // A_n
  std::vector<double> sin_coeffs;  // B_n

  int n_modes() const { return static_cast<int>(cos_coeffs.size()); }
  double eval(double r, double sigma) const;
  double radial_derivative_at_boundary(double sigma) const;
};

struct SolverSettings {
  int n_modes = 64;
  int n_quad = 1024;
};

/** Projects boundary data onto Fourier modes. subtract_mean reports and
 *  removes the mean instead of rejecting it; the removed value is stored in
 *  the returned flux. */
BoundaryFlux flux_from_function(const std::function<double(double)>& g,
                                int n_modes, int n_quad,
                                bool subtract_mean = false);

HarmonicSeries solve_exterior_neumann(const BoundaryFlux& flux);

double dirichlet_energy(const HarmonicSeries& xi);

/** Full (unhalved) Gram pairing: cross_energy(x, x) = 2 * dirichlet_energy(x). */
double cross_energy(const HarmonicSeries& x, const HarmonicSeries& y);

struct RigidPotentials {
  HarmonicSeries xi1, xi2, xi3;
};

RigidPotentials rigid_potentials(const ShapeCoeffs& c,
                                 const SolverSettings& st = {});

struct DeformationPotentials {
  std::vector<HarmonicSeries> per_rate;  // order a_1, b_1, a_2, b_2, ...
  std::vector<double> removed_means;     // O(eps^2) volume defect per rate
};

DeformationPotentials deformation_potentials(const ShapeCoeffs& c, int m_coeff,
                                             const SolverSettings& st = {});

HarmonicSeries kirchhoff_combine(const RigidPotentials& rigid,
                                 const DeformationPotentials& deform,
                                 double d1dot, double d2dot, double thetadot,
                                 const std::vector<double>& cdot_real);

}  // namespace swim

#endif
