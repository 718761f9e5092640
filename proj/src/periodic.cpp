#include "nanokit/periodic.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace nanokit {

namespace {

// unknown layout: p0..pK, q1..qK, r0..rK, beta_{-K..K} without k=1, rtilde
struct Unknowns {
  std::vector<double> p, q, r, beta;
  double rt;
};

Unknowns unpack(const Eigen::VectorXd& x, int K, double I) {
  Unknowns u;
  u.p.assign(K + 1, 0.0);
  u.q.assign(K + 1, 0.0);
  u.r.assign(K + 1, 0.0);
  u.beta.assign(2 * K + 1, 0.0);
  int i = 0;
  for (int j = 0; j <= K; ++j) u.p[j] = x[i++];
  for (int j = 1; j <= K; ++j) u.q[j] = x[i++];
  for (int j = 0; j <= K; ++j) u.r[j] = x[i++];
  for (int j = -K; j <= K; ++j)
    if (j != 1) u.beta[j + K] = x[i++];
  u.beta[1 + K] = I;
  u.rt = x[i];
  return u;
}

Eigen::VectorXd residual(const Eigen::VectorXd& x, int K, double I,
                         double eps, const ReducedCoeffs& co) {
  const Unknowns u = unpack(x, K, I);
  const double Om = co.s0 + u.rt;
  const int Nc = 8 * K + 16;

  // collocated residual rows R1..R4 at theta_j = 2 pi j / Nc
  std::vector<double> R1(Nc), R2(Nc), R3(Nc);
  std::vector<cplx> R4(Nc);
  for (int j = 0; j < Nc; ++j) {
    const double th = 2.0 * M_PI * j / Nc;
    double u2 = 0.0, u3 = 0.0, u4 = 0.0;
    double du2 = 0.0, du3 = 0.0, du4 = 0.0;
    for (int kk = 0; kk <= K; ++kk) {
      const double c = std::cos(kk * th), s = std::sin(kk * th);
      u2 += u.p[kk] * c;
      u3 += u.q[kk] * s;
      u4 += u.r[kk] * c;
      du2 -= Om * kk * u.p[kk] * s;
      du3 += Om * kk * u.q[kk] * c;
      du4 -= Om * kk * u.r[kk] * s;
    }
    cplx u5 = 0.0, du5 = 0.0;
    for (int kk = -K; kk <= K; ++kk) {
      const cplx e = std::exp(cplx(0.0, kk * th));
      u5 += cplx(0.0, 1.0) * u.beta[kk + K] * e;
      du5 += cplx(0.0, 1.0) * u.beta[kk + K] * cplx(0.0, Om * kk) * e;
    }
    const Vec5 X = {u2, u3, u4, u5, std::conj(u5)};
    const Vec5 F = reduced_field(X, eps, co);
    R1[j] = du2 - std::real(F[0]);
    R2[j] = du3 - std::real(F[1]);
    R3[j] = du4 - std::real(F[2]);
    R4[j] = du5 - F[3];
  }

  // projections: R1 sin 1..K, R2 cos 0..K, R3 sin 1..K,
  // R4 Fourier modes -K..K (real parts), plus the u2 zero-mode pin
  Eigen::VectorXd eqs(5 * K + 3);
  int i = 0;
  for (int kk = 1; kk <= K; ++kk) {
    double s = 0.0;
    for (int j = 0; j < Nc; ++j)
      s += R1[j] * std::sin(kk * 2.0 * M_PI * j / Nc);
    eqs[i++] = 2.0 / Nc * s;
  }
  {
    double s = 0.0;
    for (int j = 0; j < Nc; ++j) s += R2[j];
    eqs[i++] = s / Nc;
  }
  for (int kk = 1; kk <= K; ++kk) {
    double s = 0.0;
    for (int j = 0; j < Nc; ++j)
      s += R2[j] * std::cos(kk * 2.0 * M_PI * j / Nc);
    eqs[i++] = 2.0 / Nc * s;
  }
  for (int kk = 1; kk <= K; ++kk) {
    double s = 0.0;
    for (int j = 0; j < Nc; ++j)
      s += R3[j] * std::sin(kk * 2.0 * M_PI * j / Nc);
    eqs[i++] = 2.0 / Nc * s;
  }
  for (int kk = -K; kk <= K; ++kk) {
    cplx s = 0.0;
    for (int j = 0; j < Nc; ++j)
      s += R4[j] * std::exp(cplx(0.0, -kk * 2.0 * M_PI * j / Nc));
    eqs[i++] = std::real(s) / Nc;  // Im vanishes for the reversible ansatz
  }
  eqs[i++] = u.p[0];
  return eqs;
}

}  // namespace

PeriodicOrbit solve_periodic(double eps, double I, int K,
                             const ReducedCoeffs& co, int max_iter) {
  if (K < 3) throw ConfigError("harmonic truncation K must be at least 3");
  if (I < 0.0) throw ConfigError("orbit amplitude I must be nonnegative");

  const int n = 5 * K + 3;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  double res = 0.0;
  int it = 0;
  bool done = false;
  for (; it <= max_iter; ++it) {
    Eigen::VectorXd F0 = residual(x, K, I, eps, co);
    res = F0.cwiseAbs().maxCoeff();
    if (res < 1e-13) {
      done = true;
      break;
    }
    if (it == max_iter) break;
    Eigen::MatrixXd J(n, n);
    const double dlt = 1e-7;
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd xp = x;
      xp[j] += dlt;
      J.col(j) = (residual(xp, K, I, eps, co) - F0) / dlt;
    }
    x -= J.partialPivLu().solve(F0);
  }
  if (!done)
    throw NoConvergence("harmonic balance stalled at residual " +
                        std::to_string(res));

  const Unknowns u = unpack(x, K, I);
  PeriodicOrbit orb;
  orb.eps = eps;
  orb.I = I;
  orb.K = K;
  orb.k = co;
  orb.rtilde = u.rt;
  orb.p = u.p;
  orb.q = u.q;
  orb.r = u.r;
  orb.beta = u.beta;
  orb.newton_residual = res;
  orb.newton_iters = it;
  return orb;
}

Vec5 PeriodicOrbit::eval(double tau) const {
  const double th = Omega() * tau;
  double u2 = 0.0, u3 = 0.0, u4 = 0.0;
  for (int kk = 0; kk <= K; ++kk) {
    u2 += p[kk] * std::cos(kk * th);
    u3 += q[kk] * std::sin(kk * th);
    u4 += r[kk] * std::cos(kk * th);
  }
  cplx u5 = 0.0;
  for (int kk = -K; kk <= K; ++kk)
    u5 += cplx(0.0, 1.0) * beta[kk + K] * std::exp(cplx(0.0, kk * th));
  return {u2, u3, u4, u5, std::conj(u5)};
}

double PeriodicOrbit::u1p(double tau) const {
  const double th = Omega() * tau;
  double s = 0.0;
  for (int kk = 1; kk <= K; ++kk)
    s += p[kk] / (kk * Omega()) * std::sin(kk * th);
  return s;
}

double PeriodicOrbit::ode_residual(int nfine) const {
  const double period = 2.0 * M_PI / Omega();
  const double Om = Omega();
  double worst = 0.0;
  for (int j = 0; j < nfine; ++j) {
    const double tau = period * j / nfine;
    const double th = Om * tau;
    // term-by-term derivative of the Fourier synthesis
    Vec5 d = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int kk = 0; kk <= K; ++kk) {
      d[0] -= Om * kk * p[kk] * std::sin(kk * th);
      d[1] += Om * kk * q[kk] * std::cos(kk * th);
      d[2] -= Om * kk * r[kk] * std::sin(kk * th);
    }
    for (int kk = -K; kk <= K; ++kk)
      d[3] += cplx(0.0, 1.0) * beta[kk + K] * cplx(0.0, Om * kk) *
              std::exp(cplx(0.0, kk * th));
    d[4] = std::conj(d[3]);
    worst = std::max(worst, max_abs(d - reduced_field(eval(tau), eps, k)));
  }
  return worst;
}

}  // namespace nanokit
