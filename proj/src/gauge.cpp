#include "swim/gauge.hpp"

#include <cmath>
#include <numbers>

#include "swim/errors.hpp"

namespace swim {

namespace {

Se2Vector se2_from_rigid(const Eigen::Vector3d& rigid) {
  // Storage order (d1*, d2*, theta) -> (omega, v).
  return Se2Vector{rigid(2), {rigid(0), rigid(1)}};
}

Eigen::Vector3d rigid_from_se2(const Se2Vector& xi) {
  return {xi.v.x(), xi.v.y(), xi.omega};
}

}  // namespace

ConnectionLocal local_connection(const RealShape& s, Engine engine,
                                 const BodyParams& params,
                                 const SolverSettings& st) {
  ConnectionLocal out;
  if (engine == Engine::Assembled) {
    const MassMatrices mm = assemble_real(s, params, st);
    out.A = mm.Mr.ldlt().solve(mm.Ncoupling);
    return out;
  }
  if (s.m() != 3) throw std::invalid_argument("local_connection: explicit3 needs m = 3");
  const double e2 = s.epsilon * s.epsilon;
  const double m = mu(params);
  const double w = 2.0 * std::numbers::pi * params.rho / params.M;
  out.A = Eigen::MatrixXd::Zero(3, 3);
  out.A.col(0) << (1.0 - m) * s.s[1], (1.0 - m) * s.s[2], 0.0;
  out.A.col(1) << s.s[0], 0.0, -w * s.s[2];
  out.A.col(2) << 0.0, s.s[0], w * s.s[1];
  out.A *= e2;
  return out;
}

CurvatureTensor curvature(const RealShape& s, Engine engine,
                          const BodyParams& params, double h,
                          const SolverSettings& st) {
  const int m = s.m();
  CurvatureTensor F;
  F.m = m;
  F.F.assign(m * m, Eigen::Vector3d::Zero());

  std::vector<Eigen::MatrixXd> dA(m);  // dA[k] = dA/ds_k, 3 x m
  for (int k = 0; k < m; ++k) {
    RealShape sp = s, sm = s;
    sp.s[k] += h;
    sm.s[k] -= h;
    dA[k] = (local_connection(sp, engine, params, st).A -
             local_connection(sm, engine, params, st).A) /
            (2.0 * h);
  }
  const Eigen::MatrixXd A = local_connection(s, engine, params, st).A;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const Se2Vector br = lie_bracket(se2_from_rigid(A.col(i)),
                                       se2_from_rigid(A.col(j)));
      const Eigen::Vector3d f =
          dA[i].col(j) - dA[j].col(i) - rigid_from_se2(br);
      F.F[i * m + j] = f;
      F.F[j * m + i] = -f;
    }
  }
  return F;
}

Se2Displacement geometric_phase_estimate(const RealShape& s0, const Stroke& loop,
                                         Engine engine, const BodyParams& params,
                                         int n_samples, const SolverSettings& st) {
  const int m = loop.m();
  const CurvatureTensor F = curvature(s0, engine, params, 1e-4, st);
  // Signed-area tensor of the loop by the shoelace rule.
  Eigen::MatrixXd area = Eigen::MatrixXd::Zero(m, m);
  const double T = loop.period();
  std::vector<std::vector<double>> pts(n_samples + 1);
  for (int k = 0; k <= n_samples; ++k) pts[k] = loop.s(T * k / n_samples);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < n_samples; ++k)
        area(i, j) += 0.5 * (pts[k][i] + pts[k + 1][i]) * (pts[k + 1][j] - pts[k][j]);
  Eigen::Vector3d exponent = Eigen::Vector3d::Zero();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      exponent -= 0.5 * F.at(i, j) * (area(i, j) - area(j, i));
  const Pose g = se2_exp(se2_from_rigid(exponent));
  return {g.d, g.theta};
}

Se2Displacement integrate_holonomy(const Stroke& loop, double epsilon,
                                   Engine engine, const BodyParams& params,
                                   int n_steps, const SolverSettings& st) {
  MmProvider provider;
  if (engine == Engine::Assembled)
    provider = make_memoized_provider(make_assembled_provider(params, st));
  auto vel = [&](double t) -> Eigen::Vector3d {
    RealShape rs{loop.s(t), epsilon};
    const auto sd = loop.sdot(t);
    Eigen::VectorXd sdv(sd.size());
    for (size_t i = 0; i < sd.size(); ++i) sdv(i) = sd[i];
    const Eigen::MatrixXd A =
        engine == Engine::Assembled
            ? Eigen::MatrixXd(provider(rs).Mr.ldlt().solve(provider(rs).Ncoupling))
            : local_connection(rs, engine, params, st).A;
    return -A * sdv;  // body rigid velocity (d1*, d2*, theta)
  };
  const double T = loop.period();
  const double dt = T / n_steps;
  Eigen::Vector2d d{0.0, 0.0};
  double theta = 0.0;
  auto f = [&](double t, double th) {
    const Eigen::Vector3d v = vel(t);
    return std::pair<Eigen::Vector2d, double>{rot(th) * v.head<2>(), v(2)};
  };
  for (int k = 0; k < n_steps; ++k) {
    const double t = k * dt;
    auto k1 = f(t, theta);
    auto k2 = f(t + 0.5 * dt, theta + 0.5 * dt * k1.second);
    auto k3 = f(t + 0.5 * dt, theta + 0.5 * dt * k2.second);
    auto k4 = f(t + dt, theta + dt * k3.second);
    d += dt / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
    theta += dt / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
  }
  return {d, theta};
}

PhaseReport dynamic_phase(const Trajectory& traj, const BodyParams& params,
                          const Stroke& stroke, const SolverSettings& st) {
  const size_t n = traj.times.size();
  if (n < 2) throw std::invalid_argument("dynamic_phase: trajectory too short");
  const double span = traj.times.back() - traj.times.front();
  if (span <= 0.0 || n - 1 < 16 * span / stroke.period())
    throw std::invalid_argument("dynamic_phase: fewer than 16 samples per period");

  MmProvider provider;
  if (traj.engine == Engine::Assembled)
    provider = make_memoized_provider(make_assembled_provider(params, st));
  const Eigen::Matrix3d Mexp_inv = explicit_rigid_matrix(params).inverse();

  // Integrands at each sample: drift part Mr^{-1} p*, connection part -A sdot.
  std::vector<Eigen::Vector3d> drift(n), conn(n);
  std::vector<double> theta(n);
  for (size_t k = 0; k < n; ++k) {
    const BodyState& s = traj.states[k];
    theta[k] = s.pose.theta;
    const auto sd = stroke.sdot(traj.times[k]);
    Eigen::VectorXd sdv(sd.size());
    for (size_t i = 0; i < sd.size(); ++i) sdv(i) = sd[i];
    if (traj.engine == Engine::Assembled) {
      const MassMatrices mm = provider(s.shape);
      drift[k] = mm.Mr.ldlt().solve(s.p_star);
      conn[k] = -mm.Mr.ldlt().solve(mm.Ncoupling * sdv);
    } else {
      drift[k] = Mexp_inv * s.p_star;
      conn[k] = -local_connection(s.shape, Engine::Explicit3, params, st).A * sdv;
    }
  }
  auto trapz = [&](auto integrand) {
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    for (size_t k = 0; k + 1 < n; ++k) {
      const double h = traj.times[k + 1] - traj.times[k];
      acc += 0.5 * h * (integrand(k) + integrand(k + 1));
    }
    return acc;
  };
  auto rotated = [&](const std::vector<Eigen::Vector3d>& v) {
    return [&, v](size_t k) -> Eigen::Vector3d {
      Eigen::Vector3d out;
      out.head<2>() = rot(theta[k]) * v[k].head<2>();
      out(2) = v[k](2);
      return out;
    };
  };
  const Eigen::Vector3d dyn = trapz(rotated(drift));
  const Eigen::Vector3d geo = trapz(rotated(conn));

  PhaseReport rep;
  rep.dynamic = {dyn.head<2>(), dyn(2)};
  rep.geometric = {geo.head<2>(), geo(2)};
  rep.total = {traj.states.back().pose.d - traj.states.front().pose.d,
               traj.states.back().pose.theta - traj.states.front().pose.theta};
  rep.residual = {rep.total.d - rep.geometric.d - rep.dynamic.d,
                  rep.total.theta - rep.geometric.theta - rep.dynamic.theta};
  return rep;
}

}  // namespace swim
