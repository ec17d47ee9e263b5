#ifndef SWIM_SHAPE_HPP
#define SWIM_SHAPE_HPP

#include <complex>
#include <vector>

namespace swim {

using complexd = std::complex<double>;

/** Truncated coefficient sequence c_k = a_k + i b_k, k = 1..m_max, of the
 *  conformal boundary-perturbation family. */
struct ShapeCoeffs {
  std::vector<complexd> coeffs;  // coeffs[k-1] = c_k

  int m_max() const { return static_cast<int>(coeffs.size()); }
  complexd c(int k) const { return coeffs.at(k - 1); }
};

/** Real small-deformation parameters (s_1..s_m, epsilon). */
struct RealShape {
  std::vector<double> s;
  double epsilon = 1e-2;

  int m() const { return static_cast<int>(s.size()); }
};

struct AdmissibilityReport {
  bool admissible = false;
  double norm_T = 0.0;
  double area_sum = 0.0;      // sum k |c_k|^2
  double min_phi_prime = 0.0;  // boundary univalence margin
};

double norm_S(const ShapeCoeffs& c);
double norm_T(const ShapeCoeffs& c, int n_samples = 4096);
AdmissibilityReport is_admissible(const ShapeCoeffs& c);

complexd chi(const ShapeCoeffs& c, complexd z);
complexd phi(const ShapeCoeffs& c, complexd z);
complexd phi_prime(const ShapeCoeffs& c, complexd z);

/** Unit normal at boundary point e^{i sigma}. The physical orientation
 *  (pointing from the body into the fluid) is the default; paper_literal
 *  selects the opposite sign. */
complexd boundary_normal(const ShapeCoeffs& c, double sigma,
                         bool paper_literal = false);

double radial_profile(const RealShape& rs, double sigma);

/** c_1 = 2 eps s_1, c_2 = 2 eps (s_2 + i s_3); for m > 3 the remaining
 *  parameters fill a_3, b_3, a_4, ... in alternating order. */
ShapeCoeffs coeffs_from_real(const RealShape& rs);

/** d(a_1, b_1, ..., a_m, b_m)/d(s_1..s_m): constant 2m x m chain-rule matrix
 *  of the real parametrization, entries 0 or 2 eps. */
std::vector<std::vector<double>> real_chain_matrix(int m, double epsilon);

}  // namespace swim

#endif
