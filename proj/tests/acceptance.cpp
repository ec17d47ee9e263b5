// Acceptance gate: one verdict line per criterion, exit 0 iff all requested
// criteria pass. Usage: acceptance [--criterion N]
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <swim/cli.hpp>
#include <swim/control.hpp>
#include <swim/dynamics.hpp>
#include <swim/energy.hpp>
#include <swim/gauge.hpp>

using namespace swim;

namespace {

constexpr double kPi = std::numbers::pi;
const SolverSettings kFast{32, 256};

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

Stroke make_scallop(double amp, std::vector<double> s0 = {0.1, 0.05, 0.0}) {
  StrokeSpec sp;
  sp.kind = StrokeSpec::Kind::Scallop;
  sp.s0 = std::move(s0);
  sp.T = 1.0;
  sp.amplitude = amp;
  sp.active_index = 1;
  return Stroke(sp);
}

Stroke make_circle(double r, std::vector<double> s0 = {0.0, 0.0, 0.0}) {
  StrokeSpec sp;
  sp.kind = StrokeSpec::Kind::Circle23;
  sp.s0 = std::move(s0);
  sp.T = 1.0;
  sp.amplitude = r;
  return Stroke(sp);
}

BodyState at_rest(const Stroke& st, double eps,
                  Eigen::Vector3d p = {0.0, 0.0, 0.0}) {
  BodyState b;
  b.p_star = p;
  b.shape = RealShape{st.s(0.0), eps};
  return b;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// 1. One-degree-of-freedom periodic strokes produce no net motion at zero
//    impulse, on both engines.
Check criterion1() {
  Check c;
  const Stroke st = make_scallop(0.08);
  const BodyParams bp;
  for (Engine eng : {Engine::Explicit3, Engine::Assembled}) {
    IntegrateOptions o;
    o.engine = eng;
    o.n_periods = 2;
    o.dt = eng == Engine::Assembled ? 1.0 / 400 : 0.0;
    const Trajectory tr = integrate(at_rest(st, 1e-2), st, bp, o, kFast);
    for (size_t k = 0; k < tr.times.size(); ++k) {
      const double t = tr.times[k];
      if (std::abs(t - std::round(t)) > 1e-12 || t == 0.0) continue;
      const double dd = tr.states[k].pose.d.norm();
      const double dth = std::abs(tr.states[k].pose.theta);
      c.require(dd <= 1e-8, "|dd| = " + fmt(dd) + " at t = " + fmt(t));
      c.require(dth <= 1e-8, "|dtheta| = " + fmt(dth) + " at t = " + fmt(t));
    }
  }
  return c;
}

// 2. p* = 0 is invariant over 10 periods.
Check criterion2() {
  Check c;
  const BodyParams bp;
  const Stroke st = make_circle(0.1, {0.1, 0.0, 0.0});
  IntegrateOptions o;
  o.engine = Engine::Explicit3;
  o.n_periods = 10;
  double worst = 0.0;
  for (const BodyState& s : integrate(at_rest(st, 1e-2), st, bp, o).states)
    worst = std::max(worst, s.p_star.norm());
  IntegrateOptions oa;
  oa.engine = Engine::Assembled;
  oa.n_periods = 10;
  oa.dt = 1.0 / 250;
  for (const BodyState& s : integrate(at_rest(st, 1e-2), st, bp, oa, kFast).states)
    worst = std::max(worst, s.p_star.norm());
  c.require(worst <= 1e-10, "max |p*| = " + fmt(worst));
  c.detail = "max |p*| = " + fmt(worst);
  return c;
}

// 3. Conserved quantities with impulse over 1e4 RK4 steps at dt = 1e-3.
Check criterion3() {
  Check c;
  const BodyParams bp;
  const Stroke st = make_circle(0.1, {0.1, 0.0, 0.0});
  IntegrateOptions o;
  o.engine = Engine::Explicit3;
  o.dt = 1e-3;
  o.n_periods = 10;
  double p12 = 0.0, spat = 0.0;
  for (const StepDiagnostics& d :
       integrate(at_rest(st, 1e-2, {0.3, 0.2, 0.1}), st, bp, o).diagnostics) {
    p12 = std::max(p12, d.p12_norm_drift);
    spat = std::max(spat, d.spatial_momentum_drift);
  }
  c.require(p12 <= 1e-9, "p12 drift = " + fmt(p12));
  c.require(spat <= 1e-9, "spatial momentum drift = " + fmt(spat));

  const Stroke frozen = make_scallop(0.0);
  const Trajectory tf =
      integrate(at_rest(frozen, 1e-2, {0.3, 0.2, 0.1}), frozen, bp, o, kFast);
  double edrift = 0.0;
  const double e0 = tf.diagnostics.front().energy;
  for (const StepDiagnostics& d : tf.diagnostics)
    edrift = std::max(edrift, std::abs(d.energy - e0));
  c.require(edrift <= 1e-9, "frozen-shape energy drift = " + fmt(edrift));
  c.detail = "p12 " + fmt(p12) + ", spatial " + fmt(spat) + ", energy " + fmt(edrift);
  return c;
}

// 4. Added mass of the disk.
Check criterion4() {
  Check c;
  BodyParams bp;
  bp.M = 2.0;
  bp.rho = 1.3;
  const ShapeCoeffs disk{{complexd{0.0, 0.0}}};
  const MassMatrices mm = assemble(disk, bp, 1);
  const double added = mm.Mr(0, 0) - bp.M;
  c.require(std::abs(added - kPi * bp.rho) <= 1e-8,
            "translational added mass error = " + fmt(std::abs(added - kPi * bp.rho)));
  const double rot_added = mm.Mr(2, 2) - body_inertia(disk, bp);
  c.require(std::abs(rot_added) <= 1e-10,
            "rotational added inertia = " + fmt(rot_added));
  c.detail = "added mass " + fmt(added) + " vs pi rho " + fmt(kPi * bp.rho);
  return c;
}

// 5. Rigid/deformation coupling vanishes at the disk.
Check criterion5() {
  Check c;
  const BodyParams bp;
  const MassMatrices mm = assemble(ShapeCoeffs{{complexd{0.0, 0.0}}}, bp, 1);
  c.require(mm.Ncoupling.norm() <= 1e-10, "|N(0)| = " + fmt(mm.Ncoupling.norm()));
  c.detail = "|N(0)| = " + fmt(mm.Ncoupling.norm());
  return c;
}

// 6. Assembled connection converges entrywise to the closed-form one at first
//    order in eps.
Check criterion6() {
  Check c;
  const BodyParams bp;
  auto worst_rel = [&](double eps) {
    const RealShape rs{{0.3, 0.5, 0.7}, eps};
    const Eigen::MatrixXd Aa = local_connection(rs, Engine::Assembled, bp).A;
    const Eigen::MatrixXd Ac = local_connection(rs, Engine::Explicit3, bp).A;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (std::abs(Ac(i, j)) < 1e-30) continue;
        worst = std::max(worst, std::abs(Aa(i, j) - Ac(i, j)) / std::abs(Ac(i, j)));
      }
    return worst;
  };
  const double e2 = worst_rel(1e-2), e3 = worst_rel(1e-3);
  c.require(e3 <= 0.05, "worst entry rel error at eps = 1e-3: " + fmt(e3));
  c.require(e2 / e3 >= 5.0 && e2 / e3 <= 20.0,
            "convergence ratio = " + fmt(e2 / e3));
  c.detail = "rel err " + fmt(e2) + " -> " + fmt(e3) + ", ratio " + fmt(e2 / e3);
  return c;
}

// 7. Closed-form brackets vs central finite differences at 50 random
//    admissible points.
Check criterion7() {
  Check c;
  const BodyParams bp;
  const double eps = 1.0;
  const AffineSystem s6 = swimmer_fields_zero_impulse(bp, eps);
  const AffineSystem s9 = swimmer_fields_with_impulse(bp, eps, PRowMode::PaperLiteral);
  const Field fd23 = [&](const Eigen::VectorXd& q) {
    return lie_bracket_numeric(s9.controls[1], s9.controls[2], q, 1e-5);
  };
  std::mt19937_64 rng(20260823ULL);
  std::uniform_real_distribution<double> us(0.02, 0.12), up(-1.0, 1.0),
      uth(-kPi, kPi);
  std::vector<double> worst(9, 0.0);
  const char* names[] = {"12", "13", "23", "g12", "g13", "g23",
                         "g123", "g223", "g323"};
  for (int trial = 0; trial < 50; ++trial) {
    const double th = uth(rng), s1 = us(rng), s2 = us(rng), s3 = us(rng);
    if (!is_admissible(coeffs_from_real(RealShape{{s1, s2, s3}, eps})).admissible)
      continue;
    Eigen::VectorXd q6(6), q9(9);
    q6 << up(rng), up(rng), th, s1, s2, s3;
    q9 << up(rng), up(rng), th, up(rng), up(rng), up(rng), s1, s2, s3;
    const std::function<Eigen::VectorXd(int)> fd[] = {
        [&](int) { return lie_bracket_numeric(s6.controls[0], s6.controls[1], q6); },
        [&](int) { return lie_bracket_numeric(s6.controls[0], s6.controls[2], q6); },
        [&](int) { return lie_bracket_numeric(s6.controls[1], s6.controls[2], q6); },
        [&](int) { return lie_bracket_numeric(s9.controls[0], s9.controls[1], q9); },
        [&](int) { return lie_bracket_numeric(s9.controls[0], s9.controls[2], q9); },
        [&](int) { return lie_bracket_numeric(s9.controls[1], s9.controls[2], q9); },
        [&](int) { return lie_bracket_numeric(s9.controls[0], fd23, q9, 1e-4); },
        [&](int) { return lie_bracket_numeric(s9.controls[1], fd23, q9, 1e-4); },
        [&](int) { return lie_bracket_numeric(s9.controls[2], fd23, q9, 1e-4); },
    };
    for (int k = 0; k < 9; ++k) {
      const Eigen::VectorXd& q = k < 3 ? q6 : q9;
      const Eigen::VectorXd diff = fd[k](0) - closed_form_bracket(names[k], q, bp, eps);
      worst[k] = std::max(worst[k], diff.cwiseAbs().maxCoeff());
    }
  }
  for (int k = 0; k < 9; ++k)
    c.require(worst[k] <= 1e-6,
              std::string("[") + names[k] + "] max dev = " + fmt(worst[k]));
  return c;
}

// 8. Determinant identities against the printed closed forms.
Check criterion8() {
  Check c;
  const BodyParams bp;
  std::mt19937_64 rng(99ULL);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  double worst6 = 0.0, worst9 = 0.0;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd q6(6), q9(9);
    q6 << u(rng), u(rng), u(rng), u(rng), u(rng), u(rng);
    q9 << u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng);
    worst6 = std::max(worst6, det_zero_impulse(q6, bp, 1.0).relative_difference);
    worst9 = std::max(worst9, det_with_impulse(q9, bp, 1.0).relative_difference);
  }
  c.require(worst6 <= 1e-10, "6x6 rel diff = " + fmt(worst6));
  c.require(worst9 <= 1e-8, "9x9 rel diff = " + fmt(worst9));

  Eigen::VectorXd axis(6);
  axis << 0.2, -0.1, 0.4, 0.3, 0.0, 0.0;  // s2 = s3 = 0
  const double det_axis = det_zero_impulse(axis, bp, 1.0).assembled;
  c.require(std::abs(det_axis) <= 1e-8,
            "6x6 determinant on {s2=s3=0} = " + fmt(det_axis));

  // Zero sets of the printed 9x9 factors.
  auto det9_at = [&](const std::function<void(Eigen::VectorXd&)>& edit) {
    Eigen::VectorXd q(9);
    q << 0.2, -0.1, 0.4, 0.3, 0.5, 0.1, 0.3, 0.5, 0.7;
    edit(q);
    return det_with_impulse(q, bp, 1.0).assembled;
  };
  const double f_p2 = det9_at([](Eigen::VectorXd& q) { q(4) = 0.0; });
  const double f_s2 = det9_at([](Eigen::VectorXd& q) { q(7) = 0.0; });
  const double f_s3 = det9_at([](Eigen::VectorXd& q) { q(8) = 0.0; });
  const double f_mix = det9_at([&](Eigen::VectorXd& q) {
    q(3) = bp.M * q(4) / (2.0 * kPi * bp.rho * q(7) * q(8));
  });
  c.require(std::abs(f_p2) <= 1e-8, "9x9 on {p2=0} = " + fmt(f_p2));
  c.require(std::abs(f_s2) <= 1e-8, "9x9 on {s2=0} = " + fmt(f_s2));
  c.require(std::abs(f_s3) <= 1e-8, "9x9 on {s3=0} = " + fmt(f_s3));
  c.require(std::abs(f_mix) <= 1e-8, "9x9 on {M p2 = 2 pi rho p1 s2 s3} = " + fmt(f_mix));
  return c;
}

// 9. Rank scans: full rank off the loci, restriction and tangency on
//    {p1 = p2 = 0}.
Check criterion9() {
  Check c;
  const BodyParams bp;
  const double eps = 1e-2;
  {
    const AffineSystem sys = swimmer_fields_zero_impulse(bp, eps);
    ScanOptions so;
    so.lo = Eigen::VectorXd(6);
    so.hi = Eigen::VectorXd(6);
    so.lo << -1, -1, -kPi, 0.1, 0.1, 0.1;
    so.hi << 1, 1, kPi, 0.9, 0.9, 0.9;
    int full = 0;
    for (const auto& r : accessibility_scan(sys, bp, eps, so)) full += r.full_rank;
    c.require(full == so.n_samples,
              "6-state full-rank " + std::to_string(full) + "/1000");
  }
  {
    const AffineSystem sys = swimmer_fields_with_impulse(bp, eps, PRowMode::PaperLiteral);
    ScanOptions so;
    so.lo = Eigen::VectorXd(9);
    so.hi = Eigen::VectorXd(9);
    so.lo << -1, -1, -kPi, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1;
    so.hi << 1, 1, kPi, 0.9, 0.9, 0.9, 0.9, 0.9, 0.9;
    int full = 0;
    for (const auto& r : accessibility_scan(sys, bp, eps, so)) full += r.full_rank;
    c.require(full == so.n_samples,
              "9-state full-rank " + std::to_string(full) + "/1000");

    // Tangency to {p1 = p2 = 0} and full rank of the restricted system there.
    std::mt19937_64 rng(5ULL);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd q(9);
      q << u(rng), u(rng), u(rng), 0.0, 0.0, u(rng), u(rng), u(rng), u(rng);
      for (const auto& g : sys.controls)
        worst = std::max(worst, g(q).segment<2>(3).cwiseAbs().maxCoeff());
      worst = std::max(worst, sys.drift(q).segment<2>(3).cwiseAbs().maxCoeff());
    }
    c.require(worst <= 1e-14, "tangency defect = " + fmt(worst));
  }
  {
    const AffineSystem restricted = swimmer_fields_zero_impulse(bp, eps);
    ScanOptions so;
    so.lo = Eigen::VectorXd(6);
    so.hi = Eigen::VectorXd(6);
    so.lo << -1, -1, -kPi, 0.1, 0.1, 0.1;
    so.hi << 1, 1, kPi, 0.9, 0.9, 0.9;
    so.seed = 31337ULL;
    int full = 0;
    for (const auto& r : accessibility_scan(restricted, bp, eps, so))
      full += r.full_rank;
    c.require(full == so.n_samples, "restricted full-rank "
              + std::to_string(full) + "/1000");
  }
  return c;
}

// 10. Geometric phase area law for circle strokes.
Check criterion10() {
  Check c;
  const BodyParams bp;
  const double eps = 1e-2;
  std::vector<double> radii{0.2, 0.1, 0.05}, dth;
  for (double r : radii) {
    const Stroke st = make_circle(r);
    IntegrateOptions o;
    o.engine = Engine::Explicit3;
    const Trajectory tr = integrate(at_rest(st, eps), st, bp, o);
    const double got = std::abs(tr.states.back().pose.theta);
    dth.push_back(got);
    const double oracle = 4.0 * kPi * kPi * bp.rho * eps * eps * r * r / bp.M;
    c.require(std::abs(got - oracle) <= 0.01 * oracle,
              "r = " + fmt(r) + ": dtheta " + fmt(got) + " vs " + fmt(oracle));
  }
  const double slope = std::log(dth[0] / dth[2]) / std::log(radii[0] / radii[2]);
  c.require(std::abs(slope - 2.0) <= 0.05, "log-log slope = " + fmt(slope));
  c.detail = "slope " + fmt(slope);
  return c;
}

// 11. Curvature estimate vs integrated holonomy: error decays faster than r^2.
Check criterion11() {
  Check c;
  const BodyParams bp;
  const double eps = 1e-2;
  auto err = [&](double r) {
    const Stroke loop = make_circle(r, {0.1, 0.0, 0.0});
    const Se2Displacement hol =
        integrate_holonomy(loop, eps, Engine::Explicit3, bp, 4000);
    const Se2Displacement est = geometric_phase_estimate(
        RealShape{loop.s(0.0), eps}, loop, Engine::Explicit3, bp, 16384);
    return (hol.d - est.d).norm() + std::abs(hol.theta - est.theta);
  };
  const double e1 = err(0.2), e2 = err(0.1), e3 = err(0.05);
  c.require(e1 / e2 >= 6.0, "ratio r=0.2->0.1: " + fmt(e1 / e2));
  c.require(e2 / e3 >= 6.0, "ratio r=0.1->0.05: " + fmt(e2 / e3));
  c.detail = "ratios " + fmt(e1 / e2) + ", " + fmt(e2 / e3);
  return c;
}

// 12. Phase decomposition closes on a drifting run.
Check criterion12() {
  Check c;
  const BodyParams bp;
  const Stroke loop = make_circle(0.1, {0.1, 0.0, 0.0});
  IntegrateOptions o;
  o.engine = Engine::Explicit3;
  o.dt = 1.0 / 8000;
  const Trajectory tr =
      integrate(at_rest(loop, 1e-2, {0.05, 0.03, 0.02}), loop, bp, o);
  const PhaseReport rep = dynamic_phase(tr, bp, loop);
  const double worst = std::max({std::abs(rep.residual.d.x()),
                                 std::abs(rep.residual.d.y()),
                                 std::abs(rep.residual.theta)});
  c.require(worst <= 1e-8, "closure residual = " + fmt(worst));
  c.detail = "residual " + fmt(worst);
  return c;
}

// 13. RK4 order on the net displacement.
Check criterion13() {
  Check c;
  const BodyParams bp;
  const Stroke st = make_circle(0.25, {0.2, 0.0, 0.0});
  BodyState init = at_rest(st, 0.3, {0.5, 0.3, 0.4});
  auto net = [&](double dt) {
    IntegrateOptions o;
    o.engine = Engine::Explicit3;
    o.dt = dt;
    return integrate(init, st, bp, o).states.back().pose.d;
  };
  const Eigen::Vector2d d1 = net(1.0 / 50), d2 = net(1.0 / 100), d3 = net(1.0 / 200);
  const double ratio = (d1 - d2).norm() / (d2 - d3).norm();
  c.require(ratio >= 16.0 * 0.8 && ratio <= 16.0 * 1.2,
            "halving ratio = " + fmt(ratio));
  c.detail = "ratio " + fmt(ratio);
  return c;
}

// 14. Dimension bounds for m = 4, 5.
Check criterion14() {
  Check c;
  const BodyParams bp;
  for (int m : {4, 5}) {
    const GeneralMReport z = general_m_rank_argument(m, false, bp, 1e-2);
    c.require(z.intersection_trivial && z.dimension_bound >= m + 3,
              "m = " + std::to_string(m) + " zero-impulse bound " +
                  std::to_string(z.dimension_bound));
    const GeneralMReport w = general_m_rank_argument(m, true, bp, 1e-2);
    c.require(w.intersection_trivial && w.dimension_bound >= m + 6,
              "m = " + std::to_string(m) + " with-impulse bound " +
                  std::to_string(w.dimension_bound));
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);

  const std::function<Check()> criteria[] = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10,
      criterion11, criterion12, criterion13, criterion14};

  bool all_ok = true;
  for (int n = 1; n <= 14; ++n) {
    if (only != 0 && only != n) continue;
    const Check c = criteria[n - 1]();
    std::printf("criterion %d: %s%s%s\n", n, c.ok ? "PASS" : "FAIL",
                c.detail.empty() ? "" : " — ", c.detail.c_str());
    std::fflush(stdout);
    all_ok = all_ok && c.ok;
  }
  return all_ok ? 0 : 1;
}
