#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nanokit/nanopteron.hpp"

using namespace nanokit;
using namespace std::complex_literals;

namespace {

// coefficient set with every remainder term switched on, small enough that
// the iteration stays well inside the contraction regime
ReducedCoeffs configured(double w = 2.0) {
  ReducedCoeffs k = ReducedCoeffs::from_mass_ratio(w);
  k.c33 = 0.6;
  k.c34 = -0.9;
  k.e31 = 0.35;
  k.e32 = 1.2;
  k.e33 = -0.5;
  k.e34 = 0.8;
  return k;
}

}  // namespace

TEST_CASE("cutoff plateaus, seams, and derivative support") {
  CHECK(cutoff(0.0) == 0.0);
  CHECK(cutoff(0.99) == 0.0);
  CHECK(cutoff(-0.5) == 0.0);
  CHECK(cutoff(2.0) == 1.0);
  CHECK(cutoff(-3.7) == 1.0);
  CHECK(cutoff(1.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cutoff(1.5) + cutoff(-1.5) == doctest::Approx(1.0));
  // C^1 seams and interior consistency of the derivative
  for (double t : {1.0 + 1e-7, 2.0 - 1e-7, 1.2, 1.8, -1.3, -1.9}) {
    const double fd = (cutoff(t + 5e-6) - cutoff(t - 5e-6)) / 1e-5;
    CHECK(std::fabs(fd - cutoff_prime(t)) < 1e-4);
  }
  CHECK(cutoff_prime(0.9) == 0.0);
  CHECK(cutoff_prime(2.1) == 0.0);
  CHECK(cutoff_prime(1.5) == doctest::Approx(30.0 * 0.25 * 0.25));
}

TEST_CASE("context grid resolves both the ripple and the core decay") {
  Params p;  // w = 2, eps = 0.1, I0 = 1
  SolveContext ctx = make_context(p);
  const double rate = std::sqrt(2.0 * ctx.k.c31) * p.eps;
  CHECK(ctx.tau.front() == 0.0);
  CHECK(ctx.tau.back() == doctest::Approx(25.0 / rate).epsilon(1e-12));
  CHECK(ctx.h <= 0.02 / rate + 1e-12);
  CHECK(ctx.h <= 2.0 * std::numbers::pi / (24.0 * ctx.k.s0));
  CHECK((ctx.tau.size() - 1) % 2 == 0);
  CHECK(ctx.nu == doctest::Approx(0.75 * rate));
  // eps guard comes from the config ceiling
  Params big = p;
  big.eps = 0.2;
  CHECK_THROWS_AS(make_context(big), ConfigError);
}

TEST_CASE("nonlinearity vanishes with the cutoff and matches the seam term") {
  Params p;
  SolveContext ctx = make_context(p);
  const double I = p.I();
  // inside the cutoff plateau at 0 the dominant truncation is exact
  for (double t : {0.0, 0.4, 0.99}) {
    const Vec5 N = nonlinearity_N(t, Vec5{}, ctx);
    CHECK(max_abs(N) < 1e-15);
  }
  // beyond the ramp the orbit solves the system, cross terms cancel at Z=0
  for (double t : {2.5, 5.0, 20.0}) {
    const Vec5 N = nonlinearity_N(t, Vec5{}, ctx);
    CHECK(max_abs(N) < 1e-15 * std::max(1.0, I));
  }
  // on the ramp only the -zeta' X_p row survives at the dominant truncation
  for (double t : {1.2, 1.5, 1.8}) {
    const Vec5 N = nonlinearity_N(t, Vec5{}, ctx);
    const Vec5 Xp = ctx.orbit.eval(t, ctx.theta);
    CHECK(std::abs(N[0]) < 1e-18);
    CHECK(std::abs(N[1]) < 1e-18);
    CHECK(std::abs(N[2]) < 1e-18);
    CHECK(std::abs(N[3] + cutoff_prime(t) * Xp[3]) < 1e-18);
    CHECK(std::abs(N[4] + cutoff_prime(t) * Xp[4]) < 1e-18);
  }
}

TEST_CASE("configured nonlinearity beyond the ramp is the cross-term defect") {
  Params p;
  const ReducedCoeffs k = configured();
  SolveContext ctx = make_context(p, k);
  const double eps = p.eps;
  for (double t : {2.5, 6.0}) {
    const Vec5 N = nonlinearity_N(t, Vec5{}, ctx);
    // compose the expected defect by hand: with zeta = 1, zeta' = 0, Z = 0
    // the linear parts telescope and only the P3/P5 products survive.  Note
    // the homoclinic is subtracted through the dominant field only, so its
    // P3 stays truncated.
    const Vec5 H = ctx.hom.state(t);
    const Vec5 Xp = ctx.orbit.eval(t, 0.0);
    const Vec5 X = H + Xp;
    auto P3 = [&](const Vec5& Y) {
      return k.c31 * eps * eps - k.c32 * Y[0] +
             k.c33 * (Y[1] * Y[1] - 2.0 * Y[0] * Y[2]) + k.c34 * Y[3] * Y[4];
    };
    auto P5 = [&](const Vec5& Y) {
      return k.e31 * eps * eps + k.e32 * Y[0] +
             k.e33 * (Y[1] * Y[1] - 2.0 * Y[0] * Y[2]) + k.e34 * Y[3] * Y[4];
    };
    const cplx P3H_dom = k.c31 * eps * eps - k.c32 * H[0];
    Vec5 want;
    want[0] = 0.0;
    want[1] = X[0] * P3(X) - H[0] * P3H_dom - Xp[0] * P3(Xp);
    want[2] = X[1] * P3(X) - H[1] * P3H_dom - Xp[1] * P3(Xp);
    want[3] = 1i * (X[3] * P5(X) - Xp[3] * P5(Xp));
    want[4] = -1i * (X[4] * P5(X) - Xp[4] * P5(Xp));
    for (int slot = 0; slot < 5; ++slot)
      CHECK(std::abs(N[slot] - want[slot]) < 1e-15);
  }
}

TEST_CASE("first Picard application from zero") {
  Params p;
  SolveContext ctx = make_context(p);
  CorrectionZ Z0;
  Z0.tau = ctx.tau;
  Z0.nu = ctx.nu;
  Z0.val.assign(ctx.tau.size(), Vec5{});
  const CorrectionZ A0 = apply_A(Z0, ctx);
  const double eps4 = std::pow(p.eps, 4);
  CHECK(A0.weighted_norm() / eps4 > 0.5);
  CHECK(A0.weighted_norm() / eps4 < 5.0);
  // the dominant seam term only feeds the oscillatory pair
  double m123 = 0.0;
  for (size_t i = 0; i < A0.val.size(); ++i)
    for (int slot = 0; slot < 3; ++slot)
      m123 = std::max(m123, std::abs(A0.val[i][slot]));
  CHECK(m123 < 1e-18);
}

TEST_CASE("dominant correction: two applications, closed form, ball") {
  Params p;
  SolveContext ctx = make_context(p);
  CorrectionZ Z = solve_Z(ctx);
  CHECK(ctx.picard_iters == 2);
  REQUIRE(ctx.picard_ratios.size() == 1);
  CHECK(ctx.picard_ratios[0] < 1e-15);

  const double I = p.I();
  const double C = Z.weighted_norm() / std::pow(p.eps, 4);
  INFO("C = ", C);
  CHECK(C == doctest::Approx(1.2287).epsilon(5e-3));
  CHECK(Z.weighted_norm() < ctx.cfg.rho * std::pow(p.eps, 11.0 / 3.0));

  double m123 = 0.0, m4 = 0.0, beyond = 0.0, conj_dev = 0.0;
  for (size_t i = 0; i < Z.val.size(); ++i) {
    for (int slot = 0; slot < 3; ++slot)
      m123 = std::max(m123, std::abs(Z.val[i][slot]));
    const cplx closed = 1i * I * std::exp(1i * ctx.k.s0 * ctx.tau[i]) *
                        (1.0 - cutoff(ctx.tau[i]));
    m4 = std::max(m4, std::abs(Z.val[i][3] - closed));
    if (ctx.tau[i] > 2.01) beyond = std::max(beyond, std::abs(Z.val[i][3]));
    conj_dev = std::max(conj_dev,
                        std::abs(Z.val[i][4] - std::conj(Z.val[i][3])));
  }
  INFO("closed-form deviation ", m4 / I);
  CHECK(m123 < 1e-18);
  CHECK(m4 < 1e-3 * I);       // quadrature error of the ramp integral
  CHECK(beyond < 1e-20);      // rounding dust where the stencil taps the ramp
  CHECK(conj_dev < 1e-18);
  CHECK(std::abs(Z.val[0][1]) == 0.0);  // Z2(0) = 0 automatically
}

TEST_CASE("phase solve stays at zero for the symmetric dominant wave") {
  Params p;
  SolveContext ctx = make_context(p);
  CorrectionZ Z;
  const double theta = solve_theta(ctx, Z);
  CHECK(std::fabs(theta) < 1e-12);
  CHECK(std::fabs(theta) / p.eps <= 10.0);
  CHECK(std::fabs(ctx.theta_residual) < 1e-10 * p.I());
  CHECK(ctx.theta_iters <= 3);
}

TEST_CASE("assembled wave: jump, symmetry slots, far-field attraction") {
  Params p;
  SolveContext ctx = make_context(p);
  CorrectionZ Z;
  const double theta = solve_theta(ctx, Z);
  const WaveAssembly wave = assemble(ctx, Z, theta);
  CHECK(wave.jump < 1e-12);

  // slots u2 and u4 of (1 - S) X(0) vanish identically
  const Vec5 X0 = wave.eval(0.0);
  const Vec5 J = X0 - reverse_state(X0);
  CHECK(std::abs(J[0]) == 0.0);
  CHECK(std::abs(J[2]) == 0.0);

  // evaluator continuity across the matching point
  CHECK(max_abs(wave.eval(1e-9) - wave.eval(-1e-9)) < 1e-7);

  // nodal agreement with the raw synthesis
  for (size_t i = 0; i < ctx.tau.size(); i += 97) {
    const Vec5 direct = ctx.hom.state(ctx.tau[i]) + Z.val[i] +
                        cplx(cutoff(ctx.tau[i])) * ctx.orbit.eval(ctx.tau[i], theta);
    CHECK(max_abs(wave.eval(ctx.tau[i]) - direct) < 1e-15);
  }

  // between nodes the Hermite interpolant tracks the closed form
  const double I = p.I();
  double interp_dev = 0.0;
  for (double t = 0.05; t < 4.0; t += 0.031) {
    const cplx closed = 1i * I * std::exp(1i * (-ctx.k.s0 * theta)) *
                        std::exp(1i * ctx.k.s0 * t) * (1.0 - cutoff(t));
    interp_dev = std::max(interp_dev, std::abs(wave.correction(t)[3] - closed));
  }
  INFO("interpolation deviation ", interp_dev / I);
  CHECK(interp_dev < 1e-3 * I);

  // far field: |X - X_p| <= M eps^3 e^{-(3/4) sqrt(2 c31) eps tau}
  double M = 0.0;
  for (double t = 0.0; t < wave.T(); t += 0.37) {
    const Vec5 d = wave.eval(t) - wave.orbit.eval(t, theta);
    M = std::max(M, max_abs(d) / (std::pow(p.eps, 3) * std::exp(-wave.nu * t)));
  }
  INFO("far-field constant ", M);
  CHECK(M < 50.0);
}

TEST_CASE("corrupted correction trips the jump guard") {
  Params p;
  SolveContext ctx = make_context(p);
  CorrectionZ Z;
  const double theta = solve_theta(ctx, Z);
  Z.val[0][3] += 1e-6;
  CHECK_THROWS_AS(assemble(ctx, Z, theta), JumpTooLarge);
}

TEST_CASE("zero ripple amplitude collapses to the pure front") {
  Params p;
  p.I0 = 0.0;
  NanopteronSolution sol = construct_wave(p);
  CHECK(sol.theta == 0.0);
  CHECK(sol.Z.weighted_norm() < 1e-18);
  CHECK(sol.wave.jump == 0.0);
  // x1 is exactly the kink; the synthesized ripple carries no amplitude
  const double coef = std::sqrt(3.0 * (p.w * p.w - p.w + 1.0)) /
                      std::sqrt(2.0 * p.w * (1.0 + p.w)) * p.eps;
  const double arate = std::sqrt(sol.ctx.k.c31 / 2.0) * p.eps;
  for (double t : {0.0, 1.3, 7.7, 40.0, -3.1}) {
    CHECK(sol.wave.x1(t) ==
          doctest::Approx(coef * std::tanh(arate * t)).epsilon(1e-12));
  }
}

TEST_CASE("reconstructed profiles: oddness, ripple ratio, no linear growth") {
  Params p;
  NanopteronSolution sol = construct_wave(p);
  TravelingProfile prof = reconstruct_profile(sol.wave);
  CHECK(prof.c == doctest::Approx(std::sqrt(p.csq())));
  CHECK(prof.w == p.w);

  for (double t : {0.3, 1.7, 5.0, 22.0, 61.0}) {
    CHECK(std::fabs(prof.x1(t) + prof.x1(-t)) < 1e-12);
    CHECK(std::fabs(prof.x2(t) + prof.x2(-t)) < 1e-12);
  }
  CHECK(std::fabs(prof.x1(0.0)) < 1e-15);

  // far-field ripple amplitudes against the synthesis coefficients
  const double T = sol.wave.T();
  const double I = p.I();
  double mx1 = -1e300, mn1 = 1e300, mx2 = -1e300, mn2 = 1e300;
  double mean1 = 0.0, mean2 = 0.0;
  const int ns = 4001;
  for (int i = 0; i < ns; ++i) {
    const double t = 0.5 * T + (0.4 * T * i) / (ns - 1);
    mean1 += prof.x1(t);
    mean2 += prof.x2(t);
  }
  mean1 /= ns;
  mean2 /= ns;
  for (int i = 0; i < ns; ++i) {
    const double t = 0.5 * T + (0.4 * T * i) / (ns - 1);
    const double a1 = prof.x1(t) - mean1, a2 = prof.x2(t) - mean2;
    mx1 = std::max(mx1, a1);
    mn1 = std::min(mn1, a1);
    mx2 = std::max(mx2, a2);
    mn2 = std::min(mn2, a2);
  }
  const double amp1 = 0.5 * (mx1 - mn1), amp2 = 0.5 * (mx2 - mn2);
  const double s0 = sol.ctx.k.s0, w = p.w;
  const double want_ratio =
      std::fabs(1.0 + w - s0 * s0 * w) / ((1.0 + w) * std::fabs(std::cos(s0)));
  INFO("amp1 ", amp1, " amp2 ", amp2, " ratio ", amp2 / amp1);
  CHECK(amp2 / amp1 == doctest::Approx(want_ratio).epsilon(0.01));
  CHECK(amp1 == doctest::Approx(2.0 * I * std::fabs(std::cos(s0))).epsilon(0.02));

  // no linear growth: the ripple-region residual of x1 against the
  // synthesized tanh + ripple has slope below 1e-6 eps
  const double coef = 2.0 * std::sqrt(2.0 * sol.ctx.k.c31) / sol.ctx.k.c32 * p.eps;
  const double arate = std::sqrt(sol.ctx.k.c31 / 2.0) * p.eps;
  const double Om = sol.wave.orbit.Omega();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const int nfit = 600;
  for (int i = 0; i < nfit; ++i) {
    const double t = 0.75 * T + (0.25 * T - 1.0) * i / (nfit - 1);
    const double model = coef * std::tanh(arate * t) -
                         2.0 * I * std::cos(s0) *
                             std::sin(Om * (t - sol.theta)) * cutoff(t);
    const double r = prof.x1(t) - model;
    sx += t;
    sy += r;
    sxx += t * t;
    sxy += t * r;
  }
  const double slope =
      (nfit * sxy - sx * sy) / (nfit * sxx - sx * sx);
  INFO("residual slope ", slope);
  CHECK(std::fabs(slope) < 1e-6 * p.eps);
}

TEST_CASE("configured coefficients: real slots, monotone tail of diffs, scaling") {
  Params p;
  const ReducedCoeffs k = configured();
  NanopteronSolution sol = construct_wave(p, k);
  const double C1 = sol.Z.weighted_norm() / std::pow(p.eps, 4);
  INFO("iters ", sol.ctx.picard_iters, " C ", C1, " theta ", sol.theta);
  CHECK(sol.ctx.picard_iters < 60);
  CHECK(std::fabs(sol.theta) / p.eps <= 10.0);
  CHECK(std::fabs(sol.ctx.theta_residual) <= 1e-10 * p.I());
  CHECK(sol.wave.jump < 1e-9);

  // the iteration preserves the reversible slot structure
  double im123 = 0.0, conj_dev = 0.0;
  for (const Vec5& v : sol.Z.val) {
    for (int slot = 0; slot < 3; ++slot)
      im123 = std::max(im123, std::fabs(v[slot].imag()));
    conj_dev = std::max(conj_dev, std::abs(v[4] - std::conj(v[3])));
  }
  CHECK(im123 < 1e-16);
  CHECK(conj_dev < 1e-16);

  // geometric contraction holds until the diffs reach the rounding floor
  // near tau = T, where e^{nu tau} amplifies last-bit suffix noise
  const auto& diffs = sol.ctx.picard_diffs;
  size_t above = 0;
  while (above + 1 < diffs.size() && diffs[above + 1] > 1e-8) ++above;
  CHECK(above >= 2);
  for (size_t i = 1; i <= above; ++i) CHECK(diffs[i] < 0.5 * diffs[i - 1]);
  CHECK(sol.ctx.picard_floored);
  for (size_t i = above + 1; i < diffs.size(); ++i)
    CHECK(diffs[i] < 1e-3 * sol.Z.weighted_norm());

  // eps^4 law: C stable as eps halves
  Params ph = p;
  ph.eps = 0.05;
  NanopteronSolution sol2 = construct_wave(ph, k);
  const double C2 = sol2.Z.weighted_norm() / std::pow(ph.eps, 4);
  INFO("C(0.05) ", C2, " ratio ", C2 / C1);
  CHECK(C2 / C1 > 0.5);
  CHECK(C2 / C1 < 2.0);
}

TEST_CASE("dominant scaling matches the frozen ratio") {
  Params p1, p2;
  p2.eps = 0.05;
  SolveContext c1 = make_context(p1), c2 = make_context(p2);
  CorrectionZ Z1 = solve_Z(c1), Z2 = solve_Z(c2);
  const double C1 = Z1.weighted_norm() / std::pow(p1.eps, 4);
  const double C2 = Z2.weighted_norm() / std::pow(p2.eps, 4);
  INFO("C(0.1) ", C1, " C(0.05) ", C2);
  CHECK(C2 / C1 == doctest::Approx(0.896).epsilon(0.02));
}

TEST_CASE("guards: contraction ball, stalled ratios, fat tail") {
  Params p;
  SolverConfig tiny;
  tiny.rho = 1e-9;  // ball far below the first iterate
  SolveContext ctx = make_context(p, tiny);
  CHECK_THROWS_AS(solve_Z(ctx), NoContraction);

  // a strong u2-u5 coupling makes the map expansive; tail guard is disabled
  // so the escape from the contraction ball is what reports
  ReducedCoeffs bad = ReducedCoeffs::from_mass_ratio(p.w);
  bad.e32 = 400.0;
  SolverConfig loose;
  loose.tail_frac = 1e9;
  SolveContext ctx2 = make_context(p, bad, loose);
  CHECK_THROWS_AS(solve_Z(ctx2), NoContraction);

  // configured run has real (tiny but nonzero) tails; an absurd admissible
  // fraction flags them
  SolverConfig strict;
  strict.tail_frac = 1e-22;
  SolveContext ctx3 = make_context(p, configured(), strict);
  CHECK_THROWS_AS(solve_Z(ctx3), TailTooFat);
}
