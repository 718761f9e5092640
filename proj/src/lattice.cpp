#include "nanokit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace nanokit {

namespace {

double d1_5pt(const std::function<double(double)>& f, double t, double h) {
  return (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
}

double d2_5pt(const std::function<double(double)>& f, double t, double h) {
  return (-f(t - 2 * h) + 16 * f(t - h) - 30 * f(t) + 16 * f(t + h) -
          f(t + 2 * h)) /
         (12 * h * h);
}

// 5-point stencil at h and h/2 combined to cancel the h^4 term.
double d2_richardson(const std::function<double(double)>& f, double t,
                     double h) {
  const double full = d2_5pt(f, t, h);
  const double half = d2_5pt(f, t, 0.5 * h);
  return (16.0 * half - full) / 15.0;
}

double sponge_gamma(const ChainParams& p, int j) {
  if (!p.sponge) return 0.0;
  const int w = p.sponge_width;
  if (j < w) return p.sponge_max * (1.0 - double(j) / (w - 1));
  if (j >= p.n - w) return p.sponge_max * (1.0 - double(p.n - 1 - j) / (w - 1));
  return 0.0;
}

void check_chain(const ChainParams& p, const ChainState& s) {
  if (p.n < 3) throw ConfigError("chain needs at least 3 particles");
  if (p.sponge && (p.sponge_width < 2 || 2 * p.sponge_width > p.n))
    throw ConfigError("sponge width must fit twice into the chain");
  if (static_cast<int>(s.y.size()) != p.n ||
      static_cast<int>(s.v.size()) != p.n)
    throw ConfigError("state arrays do not match n_particles");
}

void accel(const ChainParams& p, const std::vector<double>& y,
           const std::vector<double>& v, std::vector<double>& a) {
  const int n = p.n;
  std::fill(a.begin(), a.end(), 0.0);
  for (int j = 0; j + 1 < n; ++j) {
    const double r = y[j + 1] - y[j];
    const double f = p.nonlinear ? r + r * r : r;
    a[j] += f;
    a[j + 1] -= f;
  }
  for (int j = 0; j < n; ++j) {
    const double minv = (j % 2 == 1) ? 1.0 : p.w;
    a[j] = minv * a[j] - sponge_gamma(p, j) * v[j];
  }
}

}  // namespace

AdvanceDelayResidual advance_delay_residual(const TravelingProfile& p,
                                            const std::vector<double>& taus,
                                            double fd_step) {
  if (taus.empty()) throw ConfigError("no sample points for the residual");
  AdvanceDelayResidual out;
  double s1 = 0.0, s2 = 0.0;
  for (double t : taus) {
    const double d2x1 = d2_richardson(p.x1, t, fd_step);
    const double d2x2 = d2_richardson(p.x2, t, fd_step);
    const double rp1 = p.x2(t + 1) - p.x1(t);
    const double rm1 = p.x1(t) - p.x2(t - 1);
    const double r1 =
        p.csq * d2x1 - (p.x2(t + 1) - 2 * p.x1(t) + p.x2(t - 1) +
                        rp1 * rp1 - rm1 * rm1);
    const double rp2 = p.x1(t + 1) - p.x2(t);
    const double rm2 = p.x2(t) - p.x1(t - 1);
    const double r2 =
        p.csq / p.w * d2x2 - (p.x1(t + 1) - 2 * p.x2(t) + p.x1(t - 1) +
                              rp2 * rp2 - rm2 * rm2);
    out.linf1 = std::max(out.linf1, std::fabs(r1));
    out.linf2 = std::max(out.linf2, std::fabs(r2));
    s1 += r1 * r1;
    s2 += r2 * r2;
  }
  out.l2_1 = std::sqrt(s1 / taus.size());
  out.l2_2 = std::sqrt(s2 / taus.size());
  return out;
}

double first_integral(const TravelingProfile& p, double tau) {
  const double h = 1e-4;
  // composite Simpson, 65 nodes on s in [-1, 0]
  const int m = 65;
  const double ds = 1.0 / (m - 1);
  double i1 = 0.0, i2 = 0.0;
  for (int k = 0; k < m; ++k) {
    const double wt =
        (k == 0 || k == m - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    const double s = -1.0 + k * ds;
    const double g1 = p.x2(tau + s + 1) - p.x1(tau + s);
    const double g2 = p.x1(tau + s + 1) - p.x2(tau + s);
    i1 += wt * (g1 + g1 * g1);
    i2 += wt * (g2 + g2 * g2);
  }
  i1 *= ds / 3.0;
  i2 *= ds / 3.0;
  return p.csq * d1_5pt(p.x1, tau, h) + p.csq / p.w * d1_5pt(p.x2, tau, h) -
         i1 - i2;
}

std::vector<double> chain_rhs(const ChainParams& p, const ChainState& s) {
  check_chain(p, s);
  std::vector<double> a(p.n);
  accel(p, s.y, s.v, a);
  return a;
}

ChainState make_chain_initial(const ChainParams& p,
                              const TravelingProfile& prof, int center) {
  if (p.n < 3) throw ConfigError("chain needs at least 3 particles");
  ChainState s;
  s.t = 0.0;
  s.y.resize(p.n);
  s.v.resize(p.n);
  const double h = 1e-4;
  for (int j = 0; j < p.n; ++j) {
    const auto& x = (j % 2 == 1) ? prof.x1 : prof.x2;
    const double tau = j - center;
    s.y[j] = x(tau);
    s.v[j] = -prof.c * d1_5pt(x, tau, h);
  }
  return s;
}

ChainState integrate_chain(const ChainParams& p, ChainState s, double dt,
                           int steps, int sample_every,
                           std::vector<ChainState>* samples) {
  check_chain(p, s);
  if (!(dt > 0.0) || dt > 0.01)
    throw ConfigError("dt must lie in (0, 0.01] for the unit-stiffness chain");
  const int n = p.n;
  std::vector<double> a1(n), a2(n), a3(n), a4(n), yt(n), vt(n);
  for (int step = 0; step < steps; ++step) {
    const std::vector<double>&y0 = s.y, &v0 = s.v;
    accel(p, y0, v0, a1);
    for (int j = 0; j < n; ++j) {
      yt[j] = y0[j] + 0.5 * dt * v0[j];
      vt[j] = v0[j] + 0.5 * dt * a1[j];
    }
    accel(p, yt, vt, a2);
    std::vector<double> k2y = vt;
    for (int j = 0; j < n; ++j) {
      yt[j] = y0[j] + 0.5 * dt * k2y[j];
      vt[j] = v0[j] + 0.5 * dt * a2[j];
    }
    accel(p, yt, vt, a3);
    std::vector<double> k3y = vt;
    for (int j = 0; j < n; ++j) {
      yt[j] = y0[j] + dt * k3y[j];
      vt[j] = v0[j] + dt * a3[j];
    }
    accel(p, yt, vt, a4);
    for (int j = 0; j < n; ++j) {
      const double k4y = vt[j];
      s.y[j] = y0[j] + dt / 6.0 * (v0[j] + 2 * k2y[j] + 2 * k3y[j] + k4y);
      s.v[j] = v0[j] + dt / 6.0 * (a1[j] + 2 * a2[j] + 2 * a3[j] + a4[j]);
    }
    s.t += dt;
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(s.y[j]) || std::fabs(s.y[j]) > 1e6)
        throw Instability("position exceeded 1e6 at t = " + std::to_string(s.t));
    if (samples && sample_every > 0 && (step + 1) % sample_every == 0)
      samples->push_back(s);
  }
  return s;
}

double chain_hamiltonian(const ChainParams& p, const ChainState& s) {
  check_chain(p, s);
  double H = 0.0;
  for (int j = 0; j < p.n; ++j) {
    const double m = (j % 2 == 1) ? 1.0 : 1.0 / p.w;
    H += 0.5 * m * s.v[j] * s.v[j];
  }
  for (int j = 0; j + 1 < p.n; ++j) {
    const double r = s.y[j + 1] - s.y[j];
    H += 0.5 * r * r + r * r * r / 3.0;
  }
  return H;
}

double measure_speed(const ChainState& before, const ChainState& after,
                     int window, int max_shift) {
  const int n = static_cast<int>(before.y.size());
  if (static_cast<int>(after.y.size()) != n || n < 3)
    throw ConfigError("snapshots must share a chain of at least 3 sites");
  const double elapsed = after.t - before.t;
  if (!(elapsed > 0.0)) throw ConfigError("snapshots must be time-ordered");
  std::vector<double> r0(n - 1), r1(n - 1);
  for (int j = 0; j + 1 < n; ++j) {
    r0[j] = before.y[j + 1] - before.y[j];
    r1[j] = after.y[j + 1] - after.y[j];
  }
  int ctr = 0;
  for (int j = 1; j + 1 < n; ++j)
    if (std::fabs(r0[j]) > std::fabs(r0[ctr])) ctr = j;
  if (ctr - window < 0 || ctr + window >= n - 1)
    throw ConfigError("correlation template does not fit the chain");
  auto corr = [&](int sft) {
    double q = 0.0;
    for (int j = -window; j <= window; ++j) q += r1[ctr + j + sft] * r0[ctr + j];
    return q;
  };
  const int smax = std::min(max_shift, (n - 2) - (ctr + window));
  int best = 0;
  double qbest = corr(0);
  for (int sft = 1; sft < smax; ++sft) {
    const double q = corr(sft);
    if (q > qbest) {
      qbest = q;
      best = sft;
    }
  }
  double refined = best;
  if (best > 0 && best + 1 < smax) {
    const double qm = corr(best - 1), qp = corr(best + 1);
    const double den = qm - 2 * qbest + qp;
    if (den != 0.0) refined = best + 0.5 * (qm - qp) / den;
  }
  return refined / elapsed;
}

double measure_wavelength(const ChainState& s, int lo, int hi) {
  const int n = static_cast<int>(s.y.size());
  if (lo < 0 || hi > n || hi - lo < 16)
    throw ConfigError("wavelength window needs at least 16 sites inside the chain");
  const int m = hi - lo;
  // least-squares line removes the core's slowly varying background
  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = i, yv = s.y[lo + i];
    sx += x;
    sxx += x * x;
    sy += yv;
    sxy += x * yv;
  }
  const double det = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / det;
  const double icept = (sy - slope * sx) / m;
  std::vector<double> res(m);
  for (int i = 0; i < m; ++i) {
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (m - 1));
    res[i] = (s.y[lo + i] - slope * i - icept) * hann;
  }
  // discrete Fourier peak, skipping the detrend-contaminated lowest bins
  int kpk = 3;
  double pbest = -1.0;
  for (int k = 3; k <= m / 2; ++k) {
    std::complex<double> acc = 0.0;
    for (int i = 0; i < m; ++i)
      acc += res[i] * std::polar(1.0, -2.0 * std::numbers::pi * k * i / m);
    const double pw = std::norm(acc);
    if (pw > pbest) {
      pbest = pw;
      kpk = k;
    }
  }
  return double(m) / kpk;
}

}  // namespace nanokit
