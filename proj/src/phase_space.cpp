#include "nanokit/phase_space.hpp"

#include <algorithm>
#include <cmath>

namespace nanokit {

VGrid::VGrid(int n) : n_(n) {
  if (n < 16) throw GridTooCoarse("history grid needs at least 16 nodes");
  if (n % 2 == 0)
    throw ConfigError("history grid node count must be odd (Simpson rule)");
  h_ = 2.0 / (n - 1);
  mid_ = (n - 1) / 2;
  v_.resize(n);
  for (int i = 0; i < n; ++i) v_[i] = -1.0 + i * h_;
}

std::vector<cplx> VGrid::deriv(const std::vector<cplx>& f) const {
  const int n = n_;
  const double h = h_;
  std::vector<cplx> d(n);
  for (int i = 2; i < n - 2; ++i)
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
  // 6-point one-sided closure at the outermost nodes, offset 5-point next in
  const double c6[6] = {-137.0 / 60.0, 5.0, -5.0, 10.0 / 3.0, -5.0 / 4.0,
                        1.0 / 5.0};
  cplx acc = 0.0;
  for (int j = 0; j < 6; ++j) acc += c6[j] * f[j];
  d[0] = acc / h;
  acc = 0.0;
  for (int j = 0; j < 6; ++j) acc += -c6[j] * f[n - 1 - j];
  d[n - 1] = acc / h;
  const double c5[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
  acc = 0.0;
  for (int j = 0; j < 5; ++j) acc += c5[j] * f[j];
  d[1] = acc / (12.0 * h);
  acc = 0.0;
  for (int j = 0; j < 5; ++j) acc += -c5[j] * f[n - 1 - j];
  d[n - 2] = acc / (12.0 * h);
  return d;
}

cplx VGrid::integrate(const std::vector<cplx>& f, int i0, int i1) const {
  if ((i1 - i0) % 2 != 0 || i1 <= i0)
    throw ConfigError("Simpson range must span an even number of cells");
  cplx s = f[i0] + f[i1];
  for (int i = i0 + 1; i < i1; i += 2) s += 4.0 * f[i];
  for (int i = i0 + 2; i < i1; i += 2) s += 2.0 * f[i];
  return s * (h_ / 3.0);
}

std::vector<cplx> VGrid::cumulative_from_zero(const std::vector<cplx>& f) const {
  const int n = n_;
  const double h = h_;
  // Per-interval cubic rule.  The error constant is the same on every
  // interior interval, so the accumulated error varies smoothly with v and
  // stays benign under the derivative stencil (a scheme that alternates
  // rules between even and odd nodes leaves a sawtooth that the stencil
  // amplifies by 1/h).
  auto cell = [&](int k) {  // integral of f over [v_k, v_{k+1}]
    if (k == 0)
      return h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    if (k == n - 2)
      return h / 24.0 *
             (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
    return h / 24.0 *
           (-f[k - 1] + 13.0 * f[k] + 13.0 * f[k + 1] - f[k + 2]);
  };
  std::vector<cplx> G(n, cplx(0.0));
  for (int k = mid_; k + 1 < n; ++k) G[k + 1] = G[k] + cell(k);
  for (int k = mid_; k - 1 >= 0; --k) G[k - 1] = G[k] - cell(k - 1);
  return G;
}

PhasePoint PhasePoint::zero(const VGrid& g) {
  PhasePoint p;
  p.w1.assign(g.n(), cplx(0.0));
  p.w2.assign(g.n(), cplx(0.0));
  return p;
}

PhasePoint& PhasePoint::operator+=(const PhasePoint& o) {
  x1 += o.x1;
  u1 += o.u1;
  x2 += o.x2;
  u2 += o.u2;
  for (size_t i = 0; i < w1.size(); ++i) w1[i] += o.w1[i];
  for (size_t i = 0; i < w2.size(); ++i) w2[i] += o.w2[i];
  return *this;
}

PhasePoint& PhasePoint::operator-=(const PhasePoint& o) {
  x1 -= o.x1;
  u1 -= o.u1;
  x2 -= o.x2;
  u2 -= o.u2;
  for (size_t i = 0; i < w1.size(); ++i) w1[i] -= o.w1[i];
  for (size_t i = 0; i < w2.size(); ++i) w2[i] -= o.w2[i];
  return *this;
}

PhasePoint& PhasePoint::operator*=(cplx s) {
  x1 *= s;
  u1 *= s;
  x2 *= s;
  u2 *= s;
  for (auto& z : w1) z *= s;
  for (auto& z : w2) z *= s;
  return *this;
}

double PhasePoint::max_abs() const {
  double m = std::max(std::max(std::abs(x1), std::abs(u1)),
                      std::max(std::abs(x2), std::abs(u2)));
  for (const auto& z : w1) m = std::max(m, std::abs(z));
  for (const auto& z : w2) m = std::max(m, std::abs(z));
  return m;
}

PhasePoint operator+(PhasePoint a, const PhasePoint& b) { return a += b; }
PhasePoint operator-(PhasePoint a, const PhasePoint& b) { return a -= b; }
PhasePoint operator*(cplx s, PhasePoint a) { return a *= s; }

PhasePoint apply_L(const PhasePoint& U, double csq, double w, const VGrid& g) {
  const int n = g.n();
  PhasePoint out;
  out.x1 = U.u1;
  out.u1 = (U.w2[n - 1] - 2.0 * U.x1 + U.w2[0]) / csq;
  out.w1 = g.deriv(U.w1);
  out.x2 = U.u2;
  out.u2 = w * (U.w1[n - 1] - 2.0 * U.x2 + U.w1[0]) / csq;
  out.w2 = g.deriv(U.w2);
  return out;
}

PhasePoint apply_S(const PhasePoint& U, const VGrid& g) {
  const int n = g.n();
  PhasePoint out;
  out.x1 = -U.x1;
  out.u1 = U.u1;
  out.x2 = -U.x2;
  out.u2 = U.u2;
  out.w1.resize(n);
  out.w2.resize(n);
  for (int i = 0; i < n; ++i) {
    out.w1[i] = -U.w1[n - 1 - i];
    out.w2[i] = -U.w2[n - 1 - i];
  }
  return out;
}

double domain_residual(const PhasePoint& U, const VGrid& g) {
  return std::max(std::abs(U.w1[g.mid()] - U.x1),
                  std::abs(U.w2[g.mid()] - U.x2));
}

PhasePoint resolvent_solve(cplx lam, const PhasePoint& f, double csq, double w,
                           const VGrid& g) {
  const cplx N = symbol(lam, csq, w);
  if (std::abs(N) <= 1e-8)
    throw NearSingular("resolvent requested within 1e-8 of a symbol root");
  const int n = g.n();
  const int mid = g.mid();
  const auto& v = g.nodes();

  // boundary-trace integrals I[g] = int_0^1 e^{lam (1-s)} g(s) ds with
  // g(s) = w_i(s) or g(s) = w_i(-s)
  auto upper = [&](const std::vector<cplx>& field, bool reflect,
                   cplx rate) {
    std::vector<cplx> integrand(mid + 1);
    for (int j = 0; j <= mid; ++j) {
      const double s = v[mid + j];
      const cplx val = reflect ? field[mid - j] : field[mid + j];
      integrand[j] = std::exp(rate * (1.0 - s)) * val;
    }
    // local Simpson over the [0,1] half-grid
    cplx acc = integrand[0] + integrand[mid];
    for (int j = 1; j < mid; j += 2) acc += 4.0 * integrand[j];
    for (int j = 2; j < mid; j += 2) acc += 2.0 * integrand[j];
    return acc * (g.h() / 3.0);
  };

  const cplx F1 = f.u1 + lam * f.x1 -
                  (upper(f.w2, false, lam) - upper(f.w2, true, -lam)) / csq;
  const cplx F2 = f.u2 + lam * f.x2 -
                  w * (upper(f.w1, false, lam) - upper(f.w1, true, -lam)) / csq;

  const cplx c4 = csq * csq;
  const cplx ee = std::exp(lam) + std::exp(-lam);
  PhasePoint out = PhasePoint::zero(g);
  out.x1 = c4 / N * ((lam * lam + 2.0 * w / csq) * F1 + ee / csq * F2);
  out.x2 = c4 / N * (w * ee / csq * F1 + (lam * lam + 2.0 / csq) * F2);
  out.u1 = lam * out.x1 - f.x1;
  out.u2 = lam * out.x2 - f.x2;

  // w_i(v) = e^{lam v} (x_i - int_0^v e^{-lam s} f_{w_i}(s) ds)
  auto history = [&](cplx xi, const std::vector<cplx>& fw) {
    std::vector<cplx> integrand(n);
    for (int k = 0; k < n; ++k)
      integrand[k] = std::exp(-lam * v[k]) * fw[k];
    const auto C = g.cumulative_from_zero(integrand);
    std::vector<cplx> out_w(n);
    for (int k = 0; k < n; ++k)
      out_w[k] = std::exp(lam * v[k]) * (xi - C[k]);
    return out_w;
  };
  out.w1 = history(out.x1, f.w1);
  out.w2 = history(out.x2, f.w2);
  return out;
}

}  // namespace nanokit
