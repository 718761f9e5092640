#include "nanokit/nanopteron.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <numbers>

namespace nanokit {
namespace {

// Integrals of a smooth sampled function over each grid cell [tau_k, tau_k+1],
// 4th order, from the cubic through the four nearest nodes.  The error varies
// smoothly with k, so prefix sums of these cells stay smooth too.
std::vector<cplx> cell_integrals(const std::vector<cplx>& f, double h) {
  const int n = static_cast<int>(f.size());
  std::vector<cplx> cell(n - 1);
  for (int k = 0; k + 1 < n; ++k) {
    if (k == 0)
      cell[k] = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    else if (k == n - 2)
      cell[k] = h / 24.0 *
                (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
    else
      cell[k] = h / 24.0 *
                (-f[k - 1] + 13.0 * f[k] + 13.0 * f[k + 1] - f[k + 2]);
  }
  return cell;
}

double wnorm_diff(const CorrectionZ& a, const CorrectionZ& b) {
  double out = 0.0;
  for (int slot = 0; slot < 5; ++slot) {
    double sup = 0.0;
    for (size_t i = 0; i < a.val.size(); ++i)
      sup = std::max(sup, std::abs(a.val[i][slot] - b.val[i][slot]) *
                              std::exp(a.nu * a.tau[i]));
    out = std::max(out, sup);
  }
  return out;
}

// N(tau, Z) with an explicit phase (ctx.theta is the solver's current value;
// assemble re-evaluates at the final phase).
Vec5 calN(double tau, const Vec5& Z, const SolveContext& ctx, double theta) {
  const double ze = cutoff(tau);
  const double dz = cutoff_prime(tau);
  const double eps = ctx.p.eps;
  const Vec5 H = ctx.hom.state(tau);
  const Vec5 Xp = ctx.orbit.eval(tau, theta);
  const Vec5 X = H + Z + cplx(ze) * Xp;
  Vec5 out = reduced_field(X, eps, ctx.k) - dominant_field(H, eps, ctx.k) -
             cplx(ze) * reduced_field(Xp, eps, ctx.k) -
             dominant_jacobian_apply(H, Z, eps, ctx.k) - cplx(dz) * Xp;
  return out;
}

// Beyond-window piece int_T^inf g, extrapolated from the exponential envelope
// of |g| over the last fifth of the grid.  Returns the extrapolated value and
// a magnitude bound used for the TailTooFat check.
struct TailEstimate {
  cplx value{0.0, 0.0};
  double bound = 0.0;
};

TailEstimate estimate_tail(const std::vector<cplx>& g,
                           const std::vector<double>& tau, double s0) {
  const int n = static_cast<int>(g.size());
  const int i0 = (8 * (n - 1)) / 10, i1 = (9 * (n - 1)) / 10;
  double m1 = 0.0, m2 = 0.0;
  for (int i = i0; i < i1; ++i) m1 = std::max(m1, std::abs(g[i]));
  for (int i = i1; i < n; ++i) m2 = std::max(m2, std::abs(g[i]));
  TailEstimate t;
  if (m2 == 0.0) return t;  // integrand dead at the far end, no tail
  if (m1 <= m2) {
    // envelope not decaying; refuse to extrapolate and report a fat bound
    t.bound = m2 * (tau.back() - tau.front());
    return t;
  }
  const double rate = std::log(m1 / m2) / (tau[i1] - tau[i0]);
  // envelope at the cut: max over the last half carrier period, so the
  // doubled-frequency modulation of the oscillator channels cannot hide it
  // in a null while the 0.9T window level stays far too pessimistic
  double mt = std::abs(g[n - 1]);
  for (int i = n - 1; i >= 0 && tau[i] >= tau.back() - std::numbers::pi / s0; --i)
    mt = std::max(mt, std::abs(g[i]));
  t.value = g[n - 1] / rate;
  t.bound = mt / rate;
  return t;
}

// Hermite basis on a unit cell.
inline double herm00(double s) { return (2.0 * s - 3.0) * s * s + 1.0; }
inline double herm10(double s) { return ((s - 2.0) * s + 1.0) * s; }
inline double herm01(double s) { return (3.0 - 2.0 * s) * s * s; }
inline double herm11(double s) { return (s - 1.0) * s * s; }

}  // namespace

double cutoff(double tau) {
  const double x = std::fabs(tau);
  if (x <= 1.0) return 0.0;
  if (x >= 2.0) return 1.0;
  const double u = x - 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double cutoff_prime(double tau) {
  const double x = std::fabs(tau);
  if (x <= 1.0 || x >= 2.0) return 0.0;
  const double u = x - 1.0;
  const double d = 30.0 * u * u * (1.0 - u) * (1.0 - u);
  return tau > 0.0 ? d : -d;
}

double CorrectionZ::weighted_norm() const {
  double out = 0.0;
  for (int slot = 0; slot < 5; ++slot) {
    double sup = 0.0;
    for (size_t i = 0; i < val.size(); ++i)
      sup = std::max(sup, std::abs(val[i][slot]) * std::exp(nu * tau[i]));
    out = std::max(out, sup);
  }
  return out;
}

SolveContext make_context(const Params& p, const SolverConfig& cfg) {
  return make_context(p, ReducedCoeffs::from_mass_ratio(p.w), cfg);
}

SolveContext make_context(const Params& p, const ReducedCoeffs& k,
                          const SolverConfig& cfg) {
  p.validate(cfg.eps_max);
  SolveContext ctx;
  ctx.p = p;
  ctx.k = k;
  ctx.cfg = cfg;
  const double rate = std::sqrt(2.0 * k.c31) * p.eps;
  ctx.nu = 0.75 * rate;
  const double T = cfg.T > 0.0 ? cfg.T : 25.0 / rate;
  const double h0 =
      cfg.h > 0.0
          ? cfg.h
          : std::min(2.0 * std::numbers::pi / (24.0 * k.s0), 0.02 / rate);
  int n = static_cast<int>(std::ceil(T / h0));
  n += n % 2;
  if (n < 16) throw GridTooCoarse("solve window shorter than 16 steps");
  ctx.h = T / n;
  ctx.tau.resize(n + 1);
  for (int i = 0; i <= n; ++i) ctx.tau[i] = T * i / n;

  ctx.orbit = solve_periodic(p.eps, p.I(), cfg.K, k, cfg.max_newton);
  ctx.hom = homoclinic(p.eps, k);
  const FundamentalSet f = fundamental_solutions(p.eps, k);
  ctx.fs.resize(n + 1);
  ctx.fstar.resize(n + 1);
  ctx.zeta.resize(n + 1);
  ctx.dzeta.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int l = 0; l < 5; ++l) {
      ctx.fs[i][l] = f.s(l + 1, ctx.tau[i]);
      ctx.fstar[i][l] = f.sstar(l + 1, ctx.tau[i]);
    }
    ctx.zeta[i] = cutoff(ctx.tau[i]);
    ctx.dzeta[i] = cutoff_prime(ctx.tau[i]);
    for (int l = 0; l < 5; ++l)
      for (int slot = 0; slot < 5; ++slot)
        ctx.smax[l] = std::max(ctx.smax[l], std::abs(ctx.fs[i][l][slot]) *
                                                std::exp(ctx.nu * ctx.tau[i]));
  }
  return ctx;
}

Vec5 nonlinearity_N(double tau, const Vec5& Z, const SolveContext& ctx) {
  return calN(tau, Z, ctx, ctx.theta);
}

CorrectionZ apply_A(const CorrectionZ& Z, const SolveContext& ctx) {
  const int n = static_cast<int>(ctx.tau.size());
  std::vector<Vec5> NN(n);
  for (int i = 0; i < n; ++i)
    NN[i] = calN(ctx.tau[i], Z.val[i], ctx, ctx.theta);

  CorrectionZ out;
  out.tau = ctx.tau;
  out.nu = ctx.nu;
  out.val.assign(n, Vec5{});

  std::vector<cplx> g(n);
  // growing direction: int_0^tau <N, s1*> s1
  for (int i = 0; i < n; ++i) g[i] = pairing(NN[i], ctx.fstar[i][0]);
  {
    const auto cell = cell_integrals(g, ctx.h);
    cplx G = 0.0;
    for (int i = 1; i < n; ++i) {
      G += cell[i - 1];
      out.val[i] = out.val[i] + G * ctx.fs[i][0];
    }
  }

  // decaying directions: suffix integrals int_tau^T plus extrapolated tails
  std::array<TailEstimate, 5> tails;
  for (int l = 1; l < 5; ++l) {
    for (int i = 0; i < n; ++i) g[i] = pairing(NN[i], ctx.fstar[i][l]);
    const auto cell = cell_integrals(g, ctx.h);
    tails[l] = estimate_tail(g, ctx.tau, ctx.k.s0);
    cplx S = 0.0;  // tail deferred until the fatness check below
    for (int i = n - 2; i >= 0; --i) {
      S += cell[i];
      out.val[i] = out.val[i] - S * ctx.fs[i][l];
    }
  }

  // The tail shifts every suffix integral by a constant, so its imprint on
  // the weighted norm is |tail| * sup |s_l| e^{nu tau}.  Compare against the
  // larger of the input and output scales (both vanish only when the tails
  // do too).
  const double ref = std::max(Z.weighted_norm(), out.weighted_norm());
  for (int l = 1; l < 5; ++l) {
    if (tails[l].bound * ctx.smax[l] > ctx.cfg.tail_frac * ref) {
      char msg[128];
      std::snprintf(msg, sizeof(msg),
                    "suffix integral tail beyond T is %.3e in direction %d"
                    " against norm scale %.3e",
                    tails[l].bound * ctx.smax[l], l + 1, ref);
      throw TailTooFat(msg);
    }
    if (tails[l].value != 0.0)
      for (int i = 0; i < n; ++i)
        out.val[i] = out.val[i] - tails[l].value * ctx.fs[i][l];
  }
  return out;
}

CorrectionZ solve_Z(SolveContext& ctx) {
  const int n = static_cast<int>(ctx.tau.size());
  CorrectionZ Z;
  Z.tau = ctx.tau;
  Z.nu = ctx.nu;
  Z.val.assign(n, Vec5{});
  ctx.picard_diffs.clear();
  ctx.picard_ratios.clear();
  const double ball = ctx.cfg.rho * std::pow(ctx.p.eps, 11.0 / 3.0);
  const double tol = ctx.cfg.picard_tol * std::pow(ctx.p.eps, 4);
  double last = -1.0;
  double best = std::numeric_limits<double>::infinity();
  int stalled = 0, no_gain = 0;
  int it = 0;
  ctx.picard_floored = false;
  while (it < ctx.cfg.picard_cap) {
    ++it;
    CorrectionZ Zn = apply_A(Z, ctx);
    const double d = wnorm_diff(Zn, Z);
    ctx.picard_diffs.push_back(d);
    // diffs below this are rounding rattle near tau = T, where e^{nu tau}
    // amplifies last-bit noise of the suffix integrals; only meaningful
    // growth counts toward non-contraction, and sustained stagnation in the
    // rattle regime counts as converged
    const double floor_gate =
        1e-3 * std::max(std::pow(ctx.p.eps, 4), Zn.weighted_norm());
    if (last > 1e-300) {
      const double r = d / last;
      ctx.picard_ratios.push_back(r);
      stalled = (r >= 1.0 && d > floor_gate) ? stalled + 1 : 0;
      if (stalled >= 5)
        throw NoContraction("successive Picard diffs grew 5 times in a row "
                            "(eps too large or grid too coarse)");
    }
    Z = std::move(Zn);
    last = d;
    if (Z.weighted_norm() > ball) {
      char msg[96];
      std::snprintf(msg, sizeof msg,
                    "iterate left the contraction ball rho eps^{11/3} = %.3e",
                    ball);
      throw NoContraction(msg);
    }
    if (d < tol) break;
    if (d < best) {
      best = d;
      no_gain = 0;
    } else if (++no_gain >= 10 && best < floor_gate) {
      ctx.picard_floored = true;
      break;
    }
  }
  ctx.picard_iters = it;
  return Z;
}

namespace {

// Re int_0^T N_4(t, Z) e^{-i s0 t} dt at the current phase.
double phase_residual(const SolveContext& ctx, const CorrectionZ& Z,
                      double theta) {
  const int n = static_cast<int>(ctx.tau.size());
  std::vector<cplx> g(n);
  for (int i = 0; i < n; ++i) {
    const Vec5 NN = calN(ctx.tau[i], Z.val[i], ctx, theta);
    g[i] = NN[3] * std::exp(cplx(0.0, -ctx.k.s0 * ctx.tau[i]));
  }
  const auto cell = cell_integrals(g, ctx.h);
  cplx G = 0.0;
  for (const cplx& c : cell) G += c;
  return G.real();
}

}  // namespace

double solve_theta(SolveContext& ctx, CorrectionZ& Z) {
  const double I = ctx.p.I();
  if (I == 0.0) {
    // no far-field ripple: the phase is immaterial, keep it at zero
    ctx.theta = 0.0;
    ctx.theta_iters = 0;
    Z = solve_Z(ctx);
    ctx.theta_residual = phase_residual(ctx, Z, 0.0);
    return 0.0;
  }
  double theta = 0.0;
  int oit = 0;
  while (oit < ctx.cfg.theta_cap) {
    ++oit;
    ctx.theta = theta;
    Z = solve_Z(ctx);
    const double G = phase_residual(ctx, Z, theta);
    const double arg = (G + I * std::sin(ctx.k.s0 * theta)) / I;
    if (std::fabs(arg) > 1.0)
      throw ArcsinDomain("phase update |Theta/I| = " + std::to_string(arg) +
                         " exceeds 1 (ripple amplitude too small for the "
                         "residual terms)");
    const double tn = std::asin(arg) / ctx.k.s0;
    if (std::fabs(tn - theta) < ctx.cfg.theta_tol) {
      theta = tn;
      break;
    }
    theta = tn;
  }
  ctx.theta = theta;
  ctx.theta_iters = oit;
  Z = solve_Z(ctx);
  ctx.theta_residual = phase_residual(ctx, Z, theta);
  return theta;
}

WaveAssembly assemble(const SolveContext& ctx, const CorrectionZ& Z,
                      double theta) {
  const int n = static_cast<int>(ctx.tau.size());
  WaveAssembly a;
  a.p = ctx.p;
  a.k = ctx.k;
  a.theta = theta;
  a.nu = ctx.nu;
  a.hom = ctx.hom;
  a.orbit = ctx.orbit;
  a.h = ctx.h;
  a.tau = ctx.tau;
  a.Z = Z.val;
  a.Zdot.resize(n);
  a.u1c.resize(n);
  a.u1s.resize(n);
  std::vector<cplx> w1(n);
  for (int i = 0; i < n; ++i) {
    const Vec5 H = ctx.hom.state(ctx.tau[i]);
    a.Zdot[i] = dominant_jacobian_apply(H, Z.val[i], ctx.p.eps, ctx.k) +
                calN(ctx.tau[i], Z.val[i], ctx, theta);
    const Vec5 Xp = ctx.orbit.eval(ctx.tau[i], theta);
    a.u1s[i] = Z.val[i][0].real() + ctx.zeta[i] * Xp[0].real();
    w1[i] = a.u1s[i];
  }
  const auto cell = cell_integrals(w1, ctx.h);
  a.u1c[0] = 0.0;
  for (int i = 1; i < n; ++i) a.u1c[i] = a.u1c[i - 1] + cell[i - 1].real();

  const Vec5 X0 = a.eval(0.0);
  const Vec5 J = X0 - reverse_state(X0);
  a.jump = max_abs(J);
  if (a.jump > ctx.cfg.jump_tol)
    throw JumpTooLarge("(1 - S) X(0) = " + std::to_string(a.jump) +
                       " (phase not converged)");
  return a;
}

Vec5 WaveAssembly::correction(double t) const {
  const int n = static_cast<int>(tau.size());
  if (t >= tau.back() || n < 2) return Vec5{};
  int j = std::min(static_cast<int>(t / h), n - 2);
  if (t < tau[j]) --j;
  j = std::clamp(j, 0, n - 2);
  const double s = (t - tau[j]) / h;
  const double b0 = herm00(s), b1 = herm10(s) * h, b2 = herm01(s),
               b3 = herm11(s) * h;
  Vec5 out;
  for (int slot = 0; slot < 5; ++slot)
    out[slot] = b0 * Z[j][slot] + b1 * Zdot[j][slot] + b2 * Z[j + 1][slot] +
                b3 * Zdot[j + 1][slot];
  return out;
}

Vec5 WaveAssembly::periodic_part(double t) const {
  if (t < 0.0) return reverse_state(periodic_part(-t));
  return cplx(cutoff(t)) * orbit.eval(t, theta);
}

Vec5 WaveAssembly::eval(double t) const {
  if (t < 0.0) return reverse_state(eval(-t));
  return hom.state(t) + correction(t) + cplx(cutoff(t)) * orbit.eval(t, theta);
}

double WaveAssembly::u1(double t) const {
  if (t < 0.0) return -u1(-t);
  const int n = static_cast<int>(tau.size());
  double corr;
  if (t >= tau.back() || n < 2) {
    corr = u1c.back();  // integrand dead beyond the window (orbit has no u2)
  } else {
    int j = std::min(static_cast<int>(t / h), n - 2);
    if (t < tau[j]) --j;
    j = std::clamp(j, 0, n - 2);
    const double s = (t - tau[j]) / h;
    corr = herm00(s) * u1c[j] + herm10(s) * h * u1s[j] + herm01(s) * u1c[j + 1] +
           herm11(s) * h * u1s[j + 1];
  }
  return hom.u1(t) + corr;
}

double WaveAssembly::x1(double t) const {
  return u1(t) + std::cos(k.s0) * 2.0 * eval(t)[3].real();
}

double WaveAssembly::x2(double t) const {
  const double w = p.w;
  const double gw = (w - 1.0) / (2.0 * (1.0 + w));
  const double k5 = (1.0 + w - k.s0 * k.s0 * w) / (1.0 + w);
  const Vec5 X = eval(t);
  return u1(t) + gw * X[1].real() + k5 * 2.0 * X[3].real();
}

TravelingProfile reconstruct_profile(const WaveAssembly& wave) {
  auto sp = std::make_shared<const WaveAssembly>(wave);
  TravelingProfile prof;
  prof.x1 = [sp](double t) { return sp->x1(t); };
  prof.x2 = [sp](double t) { return sp->x2(t); };
  prof.csq = wave.p.csq();
  prof.c = wave.p.c();
  prof.w = wave.p.w;
  return prof;
}

NanopteronSolution construct_wave(const Params& p, const SolverConfig& cfg) {
  return construct_wave(p, ReducedCoeffs::from_mass_ratio(p.w), cfg);
}

NanopteronSolution construct_wave(const Params& p, const ReducedCoeffs& k,
                                  const SolverConfig& cfg) {
  NanopteronSolution sol;
  sol.ctx = make_context(p, k, cfg);
  sol.theta = solve_theta(sol.ctx, sol.Z);
  sol.wave = assemble(sol.ctx, sol.Z, sol.theta);
  return sol;
}

}  // namespace nanokit
