#include "swim/shape.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace swim {

namespace {
constexpr double kBoundaryTol = 1e-12;

void check_finite(const ShapeCoeffs& c) {
  for (const auto& ck : c.coeffs)
    if (!std::isfinite(ck.real()) || !std::isfinite(ck.imag()))
      throw std::invalid_argument("shape: non-finite coefficient");
}
}  // namespace

double norm_S(const ShapeCoeffs& c) {
  check_finite(c);
  double sum = 0.0;
  for (int k = 1; k <= c.m_max(); ++k)
    sum += k * (std::abs(c.c(k).real()) + std::abs(c.c(k).imag()));
  return sum;
}

double norm_T(const ShapeCoeffs& c, int n_samples) {
  check_finite(c);
  if (n_samples < 4 * std::max(1, c.m_max()))
    throw std::invalid_argument("norm_T: too few samples for truncation order");
  double sup = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const double sigma = 2.0 * std::numbers::pi * j / n_samples;
    const complexd z = std::polar(1.0, sigma);
    complexd acc = 0.0;
    complexd zk = 1.0;
    for (int k = 1; k <= c.m_max(); ++k) {
      zk *= z;
      acc += static_cast<double>(k) * c.c(k) * zk;
    }
    sup = std::max(sup, std::abs(acc));
  }
  return sup;
}

AdmissibilityReport is_admissible(const ShapeCoeffs& c) {
  check_finite(c);
  AdmissibilityReport rep;
  rep.norm_T = norm_T(c);
  for (int k = 1; k <= c.m_max(); ++k) rep.area_sum += k * std::norm(c.c(k));
  rep.min_phi_prime = std::numeric_limits<double>::infinity();
  const int n = 2048;
  for (int j = 0; j < n; ++j) {
    const complexd z = std::polar(1.0, 2.0 * std::numbers::pi * j / n);
    rep.min_phi_prime = std::min(rep.min_phi_prime, std::abs(phi_prime(c, z)));
  }
  if (c.m_max() == 0) rep.min_phi_prime = 1.0;
  rep.admissible = rep.norm_T <= 1.0 + kBoundaryTol &&
                   rep.area_sum <= 1.0 + kBoundaryTol &&
                   rep.min_phi_prime > 0.0;
  return rep;
}

complexd chi(const ShapeCoeffs& c, complexd z) {
  check_finite(c);
  if (std::abs(z) > 1.0 + kBoundaryTol)
    throw std::invalid_argument("chi: |z| > 1");
  complexd acc = z;
  const complexd zb = std::conj(z);
  complexd zbk = 1.0;
  for (int k = 1; k <= c.m_max(); ++k) {
    zbk *= zb;
    acc += c.c(k) * zbk;
  }
  return acc;
}

complexd phi(const ShapeCoeffs& c, complexd z) {
  check_finite(c);
  if (std::abs(z) < 1.0 - kBoundaryTol)
    throw std::invalid_argument("phi: |z| < 1");
  complexd acc = z;
  complexd zk = 1.0;
  for (int k = 1; k <= c.m_max(); ++k) {
    zk *= z;
    acc += c.c(k) / zk;
  }
  return acc;
}

complexd phi_prime(const ShapeCoeffs& c, complexd z) {
  check_finite(c);
  if (std::abs(z) < 1.0 - kBoundaryTol)
    throw std::invalid_argument("phi_prime: |z| < 1");
  complexd acc = 1.0;
  complexd zk = z;
  for (int k = 1; k <= c.m_max(); ++k) {
    zk *= z;
    acc -= static_cast<double>(k) * c.c(k) / zk;
  }
  return acc;
}

complexd boundary_normal(const ShapeCoeffs& c, double sigma, bool paper_literal) {
  const complexd z = std::polar(1.0, sigma);
  const complexd w = z * phi_prime(c, z);
  const double mag = std::abs(w);
  if (mag < 1e-10) throw std::domain_error("boundary_normal: degenerate boundary");
  return paper_literal ? -w / mag : w / mag;
}

double radial_profile(const RealShape& rs, double sigma) {
  const ShapeCoeffs c = coeffs_from_real(rs);
  double f = 1.0;
  for (int k = 1; k <= c.m_max(); ++k)
    f += c.c(k).real() * std::cos((k + 1) * sigma) +
         c.c(k).imag() * std::sin((k + 1) * sigma);
  if (f <= 0.0) throw std::domain_error("radial_profile: nonpositive radius");
  return f;
}

ShapeCoeffs coeffs_from_real(const RealShape& rs) {
  const int m = rs.m();
  const int k_max = m == 0 ? 0 : 1 + (m - 1 + 1) / 2;
  ShapeCoeffs c;
  c.coeffs.assign(k_max, 0.0);
  const auto chain = real_chain_matrix(m, rs.epsilon);
  for (int k = 1; k <= k_max; ++k) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < m; ++i) {
      a += chain[2 * (k - 1)][i] * rs.s[i];
      b += chain[2 * k - 1][i] * rs.s[i];
    }
    c.coeffs[k - 1] = complexd(a, b);
  }
  return c;
}

std::vector<std::vector<double>> real_chain_matrix(int m, double epsilon) {
  const int k_max = m == 0 ? 0 : 1 + (m - 1 + 1) / 2;
  std::vector<std::vector<double>> chain(2 * k_max, std::vector<double>(m, 0.0));
  // s_1 -> a_1; thereafter (s_2, s_3) -> (a_2, b_2), (s_4, s_5) -> (a_3, b_3), ...
  for (int i = 0; i < m; ++i) {
    int row;
    if (i == 0) {
      row = 0;
    } else {
      const int k = 2 + (i - 1) / 2;       // coefficient index
      const bool is_a = (i % 2) == 1;      // s_2, s_4, ... feed the a_k
      row = is_a ? 2 * (k - 1) : 2 * k - 1;
    }
    chain[row][i] = 2.0 * epsilon;
  }
  return chain;
}

}  // namespace swim
