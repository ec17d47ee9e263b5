#include "swim/dynamics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "swim/errors.hpp"

namespace swim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Stroke::Stroke(StrokeSpec spec) : spec_(std::move(spec)) {
  using Kind = StrokeSpec::Kind;
  const int m = static_cast<int>(spec_.s0.size());
  if (m == 0) throw ConfigError("stroke: empty shape dimension");
  if (!(spec_.T > 0.0)) throw ConfigError("stroke: period must be positive");
  switch (spec_.kind) {
    case Kind::Scallop:
      if (spec_.active_index < 0 || spec_.active_index >= m)
        throw ConfigError("stroke: scallop index out of range");
      break;
    case Kind::Circle23:
      if (m < 3) throw ConfigError("stroke: circle23 needs m >= 3");
      break;
    case Kind::Lissajous:
      if (static_cast<int>(spec_.amplitudes.size()) != m ||
          static_cast<int>(spec_.frequencies.size()) != m ||
          static_cast<int>(spec_.phases.size()) != m)
        throw ConfigError("stroke: lissajous parameter arrays must have length m");
      break;
    case Kind::Table: {
      const int n = static_cast<int>(spec_.samples.size());
      if (n < 4) throw ConfigError("stroke: table needs at least 4 samples");
      for (const auto& row : spec_.samples)
        if (static_cast<int>(row.size()) != m)
          throw ConfigError("stroke: table row dimension mismatch");
      // Trigonometric interpolation of the uniform samples keeps the rate C^1.
      const int F = n / 2;
      dft_cos_.assign(m, std::vector<double>(F + 1, 0.0));
      dft_sin_.assign(m, std::vector<double>(F + 1, 0.0));
      for (int i = 0; i < m; ++i) {
        for (int f = 0; f <= F; ++f) {
          double a = 0.0, b = 0.0;
          for (int j = 0; j < n; ++j) {
            a += spec_.samples[j][i] * std::cos(kTwoPi * f * j / n);
            b += spec_.samples[j][i] * std::sin(kTwoPi * f * j / n);
          }
          const bool shared = (f == 0) || (2 * f == n);
          dft_cos_[i][f] = (shared ? 1.0 : 2.0) * a / n;
          dft_sin_[i][f] = (shared ? 1.0 : 2.0) * b / n;
        }
        if (2 * F == n) dft_sin_[i][F] = 0.0;
      }
      break;
    }
  }
}

std::vector<double> Stroke::s(double t) const {
  using Kind = StrokeSpec::Kind;
  std::vector<double> out = spec_.s0;
  const double w = kTwoPi / spec_.T;
  switch (spec_.kind) {
    case Kind::Scallop:
      out[spec_.active_index] += spec_.amplitude * std::sin(w * t);
      break;
    case Kind::Circle23:
      out[1] += spec_.amplitude * std::cos(w * t);
      out[2] += spec_.amplitude * std::sin(w * t);
      break;
    case Kind::Lissajous:
      for (size_t i = 0; i < out.size(); ++i)
        out[i] += spec_.amplitudes[i] *
                  std::sin(w * spec_.frequencies[i] * t + spec_.phases[i]);
      break;
    case Kind::Table:
      for (size_t i = 0; i < out.size(); ++i) {
        out[i] = 0.0;
        for (size_t f = 0; f < dft_cos_[i].size(); ++f)
          out[i] += dft_cos_[i][f] * std::cos(w * f * t) +
                    dft_sin_[i][f] * std::sin(w * f * t);
      }
      break;
  }
  return out;
}

std::vector<double> Stroke::sdot(double t) const {
  using Kind = StrokeSpec::Kind;
  std::vector<double> out(spec_.s0.size(), 0.0);
  const double w = kTwoPi / spec_.T;
  switch (spec_.kind) {
    case Kind::Scallop:
      out[spec_.active_index] = spec_.amplitude * w * std::cos(w * t);
      break;
    case Kind::Circle23:
      out[1] = -spec_.amplitude * w * std::sin(w * t);
      out[2] = spec_.amplitude * w * std::cos(w * t);
      break;
    case Kind::Lissajous:
      for (size_t i = 0; i < out.size(); ++i)
        out[i] = spec_.amplitudes[i] * w * spec_.frequencies[i] *
                 std::cos(w * spec_.frequencies[i] * t + spec_.phases[i]);
      break;
    case Kind::Table:
      for (size_t i = 0; i < out.size(); ++i)
        for (size_t f = 1; f < dft_cos_[i].size(); ++f)
          out[i] += w * f *
                    (dft_sin_[i][f] * std::cos(w * f * t) -
                     dft_cos_[i][f] * std::sin(w * f * t));
      break;
  }
  return out;
}

MmProvider make_assembled_provider(BodyParams params, SolverSettings st) {
  return [params, st](const RealShape& rs) { return assemble_real(rs, params, st); };
}

MmProvider make_memoized_provider(MmProvider inner, double quantum) {
  auto cache = std::make_shared<std::map<std::vector<long long>, MassMatrices>>();
  auto mtx = std::make_shared<std::mutex>();
  return [inner = std::move(inner), cache, mtx, quantum](const RealShape& rs) {
    std::vector<long long> key;
    key.reserve(rs.s.size() + 1);
    key.push_back(std::llround(rs.epsilon / quantum));
    for (double v : rs.s) key.push_back(std::llround(v / quantum));
    {
      std::lock_guard<std::mutex> lock(*mtx);
      auto it = cache->find(key);
      if (it != cache->end()) return it->second;
    }
    MassMatrices mm = inner(rs);
    std::lock_guard<std::mutex> lock(*mtx);
    return cache->emplace(key, std::move(mm)).first->second;
  };
}

Derivative rhs_assembled(const BodyState& state, const std::vector<double>& sdot,
                         const MmProvider& mm_provider) {
  const MassMatrices mm = mm_provider(state.shape);
  Eigen::VectorXd sd(sdot.size());
  for (size_t i = 0; i < sdot.size(); ++i) sd(i) = sdot[i];
  const Eigen::Vector3d rigid =
      mm.Mr.ldlt().solve(state.p_star - mm.Ncoupling * sd);
  Derivative d;
  d.dstar_dot = rigid.head<2>();
  d.thetadot = rigid(2);
  d.ddot = rot(state.pose.theta) * d.dstar_dot;
  const Eigen::Vector3d& p = state.p_star;
  d.pdot = {d.thetadot * p(1), -d.thetadot * p(0),
            d.dstar_dot(1) * p(0) - d.dstar_dot(0) * p(1)};
  return d;
}

Eigen::Matrix3d explicit_rigid_matrix(const BodyParams& params) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = params.M + std::numbers::pi * params.rho;
  m(1, 1) = params.M + std::numbers::pi * params.rho;
  m(2, 2) = 0.5 * params.M;
  return m;
}

Eigen::Vector3d stroke_rate_to_control(const std::vector<double>& sdot) {
  if (sdot.size() != 3)
    throw std::invalid_argument("stroke_rate_to_control: m must be 3");
  return {sdot[0], sdot[1], sdot[2]};
}

Derivative rhs_explicit3(const BodyState& state, const Eigen::Vector3d& u,
                         const BodyParams& params, PRowMode mode) {
  if (state.shape.m() != 3)
    throw std::invalid_argument("rhs_explicit3: m must be 3");
  const double e2 = state.shape.epsilon * state.shape.epsilon;
  const double m = mu(params);
  const double M = params.M;
  const double rho = params.rho;
  const double s1 = state.shape.s[0], s2 = state.shape.s[1], s3 = state.shape.s[2];
  const Eigen::Vector3d& p = state.p_star;

  // Drift: frozen-disk rigid matrix, impulse rows from the body-frame closure.
  const Eigen::Vector3d v = explicit_rigid_matrix(params).inverse() * p;
  Eigen::Vector2d dstar = v.head<2>();
  double thetadot = v(2);
  Eigen::Vector3d pdot{v(2) * p(1), -v(2) * p(0), v(1) * p(0) - v(0) * p(1)};

  // Control columns: eps^2 on the pose/impulse rows, controls are shape rates.
  const Eigen::Vector2d g1d{-(1.0 - m) * s2, -(1.0 - m) * s3};
  const Eigen::Vector2d g2d{-s1, 0.0};
  const Eigen::Vector2d g3d{0.0, -s1};
  const double g2w = kTwoPi * rho * s3 / M;
  const double g3w = -kTwoPi * rho * s2 / M;

  dstar += e2 * (g1d * u(0) + g2d * u(1) + g3d * u(2));
  thetadot += e2 * (g2w * u(1) + g3w * u(2));

  pdot(0) += e2 * (g2w * u(1) + g3w * u(2)) * p(1);
  pdot(1) += -e2 * (g2w * u(1) + g3w * u(2)) * p(0);
  // g2, g3 third impulse rows coincide in both modes.
  pdot(2) += e2 * (s1 * p(1) * u(1) - s1 * p(1) * u(2));
  if (mode == PRowMode::PaperLiteral)
    pdot(2) += e2 * (-(1.0 - m) * (s3 * p(0) + s2 * p(1))) * u(0);
  else
    pdot(2) += e2 * (-(1.0 - m) * s3 * p(0) + (1.0 - m) * s2 * p(1)) * u(0);

  Derivative d;
  d.dstar_dot = dstar;
  d.thetadot = thetadot;
  d.ddot = rot(state.pose.theta) * dstar;
  d.pdot = pdot;
  return d;
}

Eigen::Vector2d reconstruct_increment(const Pose& pose,
                                      const Eigen::Vector2d& dstar_dot) {
  return rot(pose.theta) * dstar_dot;
}

ImpulseSplit impulse_split(const BodyState& state, const std::vector<double>& sdot,
                           const MassMatrices& mm) {
  Eigen::VectorXd sd(sdot.size());
  for (size_t i = 0; i < sdot.size(); ++i) sd(i) = sdot[i];
  const Eigen::Vector3d NL = mm.Ncoupling * sd;
  const Eigen::Vector3d PPi = state.p_star - NL;
  ImpulseSplit sp;
  sp.P = PPi.head<2>();
  sp.Pi = PPi(2);
  sp.L = NL.head<2>();
  sp.Lambda = NL(2);
  return sp;
}

namespace {

struct RawState {
  Eigen::Vector2d d;
  double theta;
  Eigen::Vector3d p;
};

RawState axpy(const RawState& y, double a, const RawState& k) {
  return {y.d + a * k.d, y.theta + a * k.theta, y.p + a * k.p};
}

}  // namespace

Trajectory integrate(const BodyState& initial, const Stroke& stroke,
                     const BodyParams& params, const IntegrateOptions& opts,
                     const SolverSettings& st) {
  const double T = stroke.period();
  const double dt = opts.dt > 0.0 ? opts.dt : T / 2000.0;
  const long steps_per_period = std::lround(T / dt);
  if (std::abs(steps_per_period * dt - T) > 1e-9 * T)
    throw ConfigError("integrate: dt must divide the period");
  {
    const auto s_start = stroke.s(0.0);
    for (size_t i = 0; i < s_start.size(); ++i)
      if (std::abs(s_start[i] - initial.shape.s[i]) > 1e-9)
        throw ConfigError("integrate: initial shape does not match stroke at t=0");
  }

  MmProvider provider;
  if (opts.engine == Engine::Assembled) {
    provider = make_assembled_provider(params, st);
    if (opts.memoize) provider = make_memoized_provider(std::move(provider));
  }

  auto deriv = [&](double t, const RawState& y) {
    BodyState s;
    s.pose = {y.d, y.theta};
    s.p_star = y.p;
    s.shape = RealShape{stroke.s(t), initial.shape.epsilon};
    const auto sd = stroke.sdot(t);
    Derivative dd = opts.engine == Engine::Assembled
                        ? rhs_assembled(s, sd, provider)
                        : rhs_explicit3(s, stroke_rate_to_control(sd), params,
                                        opts.p_row_mode);
    return RawState{dd.ddot, dd.thetadot, dd.pdot};
  };

  RawState y{initial.pose.d, initial.pose.theta, initial.p_star};
  Trajectory traj;
  traj.engine = opts.engine;

  const double p12_sq0 = initial.p_star.head<2>().squaredNorm();
  const Eigen::Vector2d spatial0 =
      rot(initial.pose.theta) * initial.p_star.head<2>();
  double energy0 = 0.0;

  const Eigen::Matrix3d Mexp = explicit_rigid_matrix(params);
  auto record = [&](double t, long step) {
    BodyState s;
    s.pose = {y.d, y.theta};
    s.p_star = y.p;
    s.shape = RealShape{stroke.s(t), initial.shape.epsilon};
    const auto rep = is_admissible(coeffs_from_real(s.shape));
    if (!rep.admissible)
      throw IntegrationError("integrate: shape left the admissible set", t);
    StepDiagnostics diag;
    if (opts.engine == Engine::Assembled) {
      const MassMatrices mm = provider(s.shape);
      Eigen::VectorXd sd(stroke.m());
      const auto sdv = stroke.sdot(t);
      for (int i = 0; i < stroke.m(); ++i) sd(i) = sdv[i];
      const Eigen::Vector3d rigid = mm.Mr.ldlt().solve(s.p_star - mm.Ncoupling * sd);
      diag.energy = total_kinetic_energy(mm, rigid, sd);
    } else {
      diag.energy = 0.5 * s.p_star.dot(Mexp.inverse() * s.p_star);
    }
    if (step == 0) energy0 = diag.energy;
    diag.p12_norm_drift = std::abs(y.p.head<2>().squaredNorm() - p12_sq0);
    diag.spatial_momentum_drift =
        (rot(y.theta) * y.p.head<2>() - spatial0).norm();
    if (step % opts.record_stride == 0 || step == steps_per_period * opts.n_periods) {
      traj.times.push_back(t);
      traj.states.push_back(s);
      traj.diagnostics.push_back(diag);
    }
  };

  record(0.0, 0);
  const long n_steps = steps_per_period * opts.n_periods;
  for (long step = 0; step < n_steps; ++step) {
    const double t = step * dt;
    const RawState k1 = deriv(t, y);
    const RawState k2 = deriv(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    const RawState k3 = deriv(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    const RawState k4 = deriv(t + dt, axpy(y, dt, k3));
    y.d += dt / 6.0 * (k1.d + 2.0 * k2.d + 2.0 * k3.d + k4.d);
    y.theta += dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
    y.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    record((step + 1) * dt, step + 1);
  }
  (void)energy0;
  return traj;
}

}  // namespace swim
