#include "nanokit/dispersion.hpp"

#include <cmath>

#include "nanokit/errors.hpp"
#include "nanokit/params.hpp"

namespace nanokit {

cplx symbol(cplx lam, double csq, double w) {
  if (std::abs(lam.real()) > 300.0)
    throw Overflow("symbol evaluated at |Re lambda| > 300");
  const cplx l2 = lam * lam;
  // 1 - cosh(2 lam) = -2 sinh(lam)^2, stable near lam = 0 where the quartic
  // degeneracy makes the naive form lose all significant digits.
  const cplx sh = std::sinh(lam);
  return csq * csq * l2 * l2 + 2.0 * csq * (1.0 + w) * l2 -
         4.0 * w * sh * sh;
}

cplx symbol_dlam(cplx lam, double csq, double w) {
  if (std::abs(lam.real()) > 300.0)
    throw Overflow("symbol derivative evaluated at |Re lambda| > 300");
  // sinh(2 lam) = 2 sinh(lam) cosh(lam), matching the stable symbol form
  return 4.0 * csq * csq * lam * lam * lam + 4.0 * csq * (1.0 + w) * lam -
         8.0 * w * std::sinh(lam) * std::cosh(lam);
}

double symbol_iq(double q, double csq, double w) {
  const double q2 = q * q;
  // 1 - cos(2q) = 2 sin(q)^2
  const double sq = std::sin(q);
  return csq * csq * q2 * q2 - 2.0 * csq * (1.0 + w) * q2 + 4.0 * w * sq * sq;
}

double symbol_iq_dq(double q, double csq, double w) {
  return 4.0 * csq * csq * q * q * q - 4.0 * csq * (1.0 + w) * q +
         4.0 * w * std::sin(2.0 * q);
}

namespace {

// Bisection on [a, b] with f(a) f(b) < 0 down to bracket width 1e-15.
template <class F>
double bisect(F f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

template <class F, class DF>
double newton(F f, DF df, double x0, const char* what) {
  double x = x0;
  for (int i = 0; i < 50; ++i) {
    const double fx = f(x);
    const double dfx = df(x);
    const double step = fx / dfx;
    x -= step;
    // 1e-12 relative: the symbol is quartically flat near the small root, so
    // cancellation noise keeps steps above machine epsilon there.
    if (std::abs(step) < 1e-12 * (1.0 + std::abs(x))) return x;
  }
  throw NoConvergence(std::string("Newton failed for ") + what);
}

}  // namespace

double find_s0(double w) {
  const double c0sq = 2.0 * w / (1.0 + w);
  const double lo = std::sqrt(2.0) + 1e-6;
  const double hi = 20.0;
  const double step = 0.01;
  auto f = [&](double q) { return symbol_iq(q, c0sq, w); };
  double a = lo;
  double fa = f(a);
  for (double b = lo + step; b <= hi + 0.5 * step; b += step) {
    const double fb = f(b);
    if ((fa < 0.0) != (fb < 0.0)) return bisect(f, a, b);
    a = b;
    fa = fb;
  }
  throw NoBracket("no imaginary-axis symbol root in (sqrt(2), 20)");
}

int count_imag_axis_roots(double w, double step) {
  const double c0sq = 2.0 * w / (1.0 + w);
  const double lo = std::sqrt(2.0) + 1e-6;
  const double hi = 20.0;
  int count = 0;
  double fa = symbol_iq(lo, c0sq, w);
  for (double b = lo + step; b <= hi + 0.5 * step; b += step) {
    const double fb = symbol_iq(b, c0sq, w);
    if ((fa < 0.0) != (fb < 0.0)) ++count;
    fa = fb;
  }
  return count;
}

double s0_identity_residual(double w, double s0) {
  const double s2 = s0 * s0;
  const double cs = std::cos(s0);
  return w * (s2 - (1.0 + w) / w) * (s2 - 1.0 - w) -
         (1.0 + w) * (1.0 + w) * cs * cs;
}

double lambda0(double w, double eps) {
  const double c0sq = 2.0 * w / (1.0 + w);
  const double csq = c0sq + eps * eps;
  const double seed = std::sqrt(2.0 * ReducedCoeffs::from_mass_ratio(w).c31) * eps;
  auto f = [&](double l) { return symbol(cplx(l, 0.0), csq, w).real(); };
  auto df = [&](double l) { return symbol_dlam(cplx(l, 0.0), csq, w).real(); };
  return newton(f, df, seed, "lambda0");
}

double s1_root(double w, double eps) {
  const double c0sq = 2.0 * w / (1.0 + w);
  const double csq = c0sq + eps * eps;
  const double seed = find_s0(w);
  auto f = [&](double q) { return symbol_iq(q, csq, w); };
  auto df = [&](double q) { return symbol_iq_dq(q, csq, w); };
  return newton(f, df, seed, "s1");
}

double s1_shift_coefficient(double w) {
  const double c0sq = 2.0 * w / (1.0 + w);
  const double s0 = find_s0(w);
  const cplx dN = symbol_dlam(cplx(0.0, s0), c0sq, w);
  const cplx coef = 2.0 * s0 * s0 *
                    ((1.0 + w) * (1.0 + w) - 2.0 * s0 * s0 * w) /
                    (cplx(0.0, 1.0) * (1.0 + w) * dN);
  return coef.real();
}

double root_modulus_bound(double w, double csq, double lam1) {
  const double l2 = lam1 * lam1;
  const double ch = std::cosh(lam1);
  const double inner = 19.0 * csq * csq * l2 * l2 +
                       2.0 * csq * (1.0 + w) * l2 + 4.0 * w * ch * ch +
                       2.0 * (1.0 + w) * (1.0 + w);
  const double bound2 =
      std::sqrt(2.0) / csq * (std::sqrt(2.0) * (1.0 + w) + std::sqrt(inner));
  return std::sqrt(bound2);
}

}  // namespace nanokit
