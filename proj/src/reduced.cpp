#include "nanokit/reduced.hpp"

#include <cmath>

namespace nanokit {

namespace {

cplx P3_extra(const Vec5& X, const ReducedCoeffs& k) {
  return k.c33 * (X[1] * X[1] - 2.0 * X[0] * X[2]) + k.c34 * X[3] * X[4];
}

cplx P5_full(const Vec5& X, double eps, const ReducedCoeffs& k) {
  return k.e31 * eps * eps + k.e32 * X[0] +
         k.e33 * (X[1] * X[1] - 2.0 * X[0] * X[2]) + k.e34 * X[3] * X[4];
}

}  // namespace

Vec5 dominant_field(const Vec5& X, double eps, const ReducedCoeffs& k) {
  const cplx P3 = k.c31 * eps * eps - k.c32 * X[0];
  const cplx is0(0.0, k.s0);
  return {X[1], X[2] + X[0] * P3, X[1] * P3, is0 * X[3], -is0 * X[4]};
}

Vec5 remainder_field(const Vec5& X, double eps, const ReducedCoeffs& k) {
  const cplx p3e = P3_extra(X, k);
  const cplx P5 = P5_full(X, eps, k);
  const cplx i1(0.0, 1.0);
  return {0.0, X[0] * p3e, X[1] * p3e, i1 * X[3] * P5, -i1 * X[4] * P5};
}

Vec5 reduced_field(const Vec5& X, double eps, const ReducedCoeffs& k) {
  return dominant_field(X, eps, k) + remainder_field(X, eps, k);
}

Vec5 dominant_jacobian_apply(const Vec5& X, const Vec5& Z, double eps,
                             const ReducedCoeffs& k) {
  const double e2 = eps * eps;
  const cplx is0(0.0, k.s0);
  return {Z[1],
          Z[2] + (k.c31 * e2 - 2.0 * k.c32 * X[0]) * Z[0],
          (k.c31 * e2 - k.c32 * X[0]) * Z[1] - k.c32 * X[1] * Z[0],
          is0 * Z[3],
          -is0 * Z[4]};
}

Vec5 reverse_state(const Vec5& X) {
  return {X[0], -X[1], X[2], -X[4], -X[3]};
}

Vec5 operator+(const Vec5& a, const Vec5& b) {
  Vec5 r;
  for (int i = 0; i < 5; ++i) r[i] = a[i] + b[i];
  return r;
}

Vec5 operator-(const Vec5& a, const Vec5& b) {
  Vec5 r;
  for (int i = 0; i < 5; ++i) r[i] = a[i] - b[i];
  return r;
}

Vec5 operator*(cplx s, const Vec5& a) {
  Vec5 r;
  for (int i = 0; i < 5; ++i) r[i] = s * a[i];
  return r;
}

double max_abs(const Vec5& a) {
  double m = 0.0;
  for (const auto& z : a) m = std::max(m, std::abs(z));
  return m;
}

cplx pairing(const Vec5& a, const Vec5& b) {
  cplx s = 0.0;
  for (int i = 0; i < 5; ++i) s += a[i] * std::conj(b[i]);
  return s;
}

double Homoclinic::decay_rate() const { return std::sqrt(2.0 * k.c31) * eps; }

double Homoclinic::H1(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  const double se = 1.0 / std::cosh(a * tau);
  return (2.0 * k.c31 / k.c32) * eps * eps * se * se;
}

double Homoclinic::H2(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  return -2.0 * a * std::tanh(a * tau) * H1(tau);
}

double Homoclinic::H2prime(double tau) const {
  const double h1 = H1(tau);
  return 2.0 * k.c31 * eps * eps * h1 - 1.5 * k.c32 * h1 * h1;
}

double Homoclinic::H3(double tau) const {
  const double h1 = H1(tau);
  return k.c31 * eps * eps * h1 - 0.5 * k.c32 * h1 * h1;
}

double Homoclinic::u1(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  return (2.0 * std::sqrt(2.0 * k.c31) / k.c32) * eps * std::tanh(a * tau);
}

Vec5 Homoclinic::state(double tau) const {
  return {H1(tau), H2(tau), H3(tau), 0.0, 0.0};
}

Homoclinic homoclinic(double eps, const ReducedCoeffs& k) {
  return Homoclinic{eps, k};
}

// --- fundamental set -------------------------------------------------------
//
// With a = sqrt(c31/2) eps, sigma = a tau, th = tanh sigma:
//   a1 = eps^-3 H2               (decaying solution, s1 = (a1, a1', kappa a1))
//   a2 = eps^4  u1tilde          (growing solution)
//   a3 = eps^2  u2tilde          (bounded, forced slot +eps^2)
// kappa = c31 eps^2 - c32 H1.  u2tilde is evaluated in a form polynomial in
// (sigma, th), which is smooth everywhere; the equivalent quotient form has a
// removable singularity where sigma th = 1.

double FundamentalSet::u1tilde(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  const double sg = a * tau, th = std::tanh(sg);
  const double se2 = 1.0 / (std::cosh(sg) * std::cosh(sg));
  const double pref =
      k.c32 / (16.0 * std::sqrt(2.0) * k.c31 * k.c31 * std::pow(eps, 4));
  const double r2 = std::sqrt(2.0);
  return pref * (6.0 * r2 + r2 * std::cosh(2.0 * sg) -
                 15.0 * se2 * (r2 - std::sqrt(k.c31) * eps * tau * th));
}

double FundamentalSet::u1tilde_prime(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  const double sg = a * tau, th = std::tanh(sg);
  const double se2 = 1.0 / (std::cosh(sg) * std::cosh(sg));
  const double pref =
      k.c32 / (16.0 * std::sqrt(2.0) * k.c31 * k.c31 * std::pow(eps, 4));
  const double r2 = std::sqrt(2.0);
  const double rc = std::sqrt(k.c31) * eps;
  return pref * (2.0 * a * r2 * std::sinh(2.0 * sg) +
                 30.0 * a * se2 * th * (r2 - rc * tau * th) +
                 15.0 * se2 * (rc * th + rc * tau * a * se2));
}

double FundamentalSet::u2tilde(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  const double sg = a * tau, th = std::tanh(sg);
  return (6.0 * sg * th * th * th - 6.0 * th * th - 6.0 * sg * th + 4.0) /
         (4.0 * k.c31 * eps * eps);
}

double FundamentalSet::u2tilde_prime(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  const double sg = a * tau, th = std::tanh(sg);
  const double se2 = 1.0 - th * th;
  return a *
         (6.0 * th * th * th + 18.0 * sg * th * th * se2 -
          12.0 * th * se2 - 6.0 * th - 6.0 * sg * se2) /
         (4.0 * k.c31 * eps * eps);
}

double FundamentalSet::s11(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  return 4.0 * k.c31 / (k.c32 * eps * (1.0 + std::cosh(2.0 * a * tau)));
}

double FundamentalSet::s21(double tau) const {
  const double a = std::sqrt(k.c31 / 2.0) * eps;
  const double sg = a * tau;
  const double se2 = 1.0 / (std::cosh(sg) * std::cosh(sg));
  const double rc = std::sqrt(k.c31) * eps;
  return k.c32 / (32.0 * std::pow(k.c31, 2.5) * eps) *
         (12.0 * rc * tau - 15.0 * rc * tau * se2 +
          std::sqrt(2.0) * (std::sinh(2.0 * sg) - 15.0 * std::tanh(sg)));
}

Vec5 FundamentalSet::s(int l, double tau) const {
  const Homoclinic H{eps, k};
  const double kap = k.c31 * eps * eps - k.c32 * H.H1(tau);
  const cplx ph = std::exp(cplx(0.0, k.s0 * tau));
  switch (l) {
    case 1: {
      const double e3 = std::pow(eps, 3);
      return {H.H2(tau) / e3, H.H2prime(tau) / e3, kap * H.H2(tau) / e3, 0.0,
              0.0};
    }
    case 2: {
      const double e4 = std::pow(eps, 4);
      return {e4 * u1tilde(tau), e4 * u1tilde_prime(tau),
              e4 * kap * u1tilde(tau), 0.0, 0.0};
    }
    case 3: {
      const double e2 = eps * eps;
      return {e2 * u2tilde(tau), e2 * u2tilde_prime(tau),
              e2 * (kap * u2tilde(tau) + 1.0), 0.0, 0.0};
    }
    case 4:
      return {0.0, 0.0, 0.0, ph, std::conj(ph)};
    case 5:
      return {0.0, 0.0, 0.0, cplx(0.0, -1.0) * ph,
              cplx(0.0, 1.0) * std::conj(ph)};
    default:
      throw ConfigError("fundamental solution index must be 1..5");
  }
}

Vec5 FundamentalSet::sstar(int l, double tau) const {
  const Homoclinic H{eps, k};
  const double kap = k.c31 * eps * eps - k.c32 * H.H1(tau);
  const cplx ph = std::exp(cplx(0.0, k.s0 * tau));
  switch (l) {
    case 1: {
      const double e4 = std::pow(eps, 4);
      const double a2 = e4 * u1tilde(tau), a2p = e4 * u1tilde_prime(tau);
      const double s2v = s21(tau);
      return cplx(-1.0 / eps) *
             Vec5{a2p - kap * s2v, -a2, s2v, 0.0, 0.0};
    }
    case 2: {
      const double e3 = std::pow(eps, 3);
      const double a1 = H.H2(tau) / e3, a1p = H.H2prime(tau) / e3;
      const double s1v = s11(tau);
      return cplx(1.0 / eps) * Vec5{a1p - kap * s1v, -a1, s1v, 0.0, 0.0};
    }
    case 3:
      return cplx(1.0 / (eps * eps)) * Vec5{-kap, 0.0, 1.0, 0.0, 0.0};
    case 4:
      return cplx(0.5) * Vec5{0.0, 0.0, 0.0, ph, std::conj(ph)};
    case 5:
      return cplx(-0.5) * Vec5{0.0, 0.0, 0.0, cplx(0.0, 1.0) * ph,
                               cplx(0.0, -1.0) * std::conj(ph)};
    default:
      throw ConfigError("adjoint solution index must be 1..5");
  }
}

FundamentalSet fundamental_solutions(double eps, const ReducedCoeffs& k) {
  return FundamentalSet{eps, k};
}

}  // namespace nanokit
