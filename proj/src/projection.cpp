#include "nanokit/projection.hpp"

#include <cmath>

#include "nanokit/dispersion.hpp"

namespace nanokit {

EigenBasis EigenBasis::build(double w, const VGrid& g) {
  EigenBasis b;
  b.w = w;
  b.s0 = find_s0(w);
  const double s0 = b.s0;
  const double gc = (w - 1.0) / (2.0 * (1.0 + w));
  const double k5 = (1.0 + w - s0 * s0 * w) / (1.0 + w);
  const int n = g.n();
  const auto& v = g.nodes();
  for (auto& u : b.U) u = PhasePoint::zero(g);

  b.U[0].x1 = 1.0;
  b.U[0].x2 = 1.0;
  b.U[1].u1 = 1.0;
  b.U[1].u2 = 1.0;
  b.U[2].x2 = gc;
  b.U[3].u2 = gc;
  b.U[4].x1 = std::cos(s0);
  b.U[4].u1 = cplx(0.0, s0) * std::cos(s0);
  b.U[4].x2 = k5;
  b.U[4].u2 = cplx(0.0, s0) * k5;
  for (int i = 0; i < n; ++i) {
    const double x = v[i];
    b.U[0].w1[i] = 1.0;
    b.U[0].w2[i] = 1.0;
    b.U[1].w1[i] = x;
    b.U[1].w2[i] = x;
    b.U[2].w1[i] = x * x / 2.0;
    b.U[2].w2[i] = gc + x * x / 2.0;
    b.U[3].w1[i] = x * x * x / 6.0;
    b.U[3].w2[i] = gc * x + x * x * x / 6.0;
    const cplx ph = std::exp(cplx(0.0, s0 * x));
    b.U[4].w1[i] = ph * std::cos(s0);
    b.U[4].w2[i] = ph * k5;
  }
  return b;
}

namespace {

// Simpson over s in [0,1] of kern(s) * trace, where trace walks the upper
// (sign=+1) or reflected lower (sign=-1) half of a sampled history.
template <typename Kern>
cplx half_moment(const VGrid& g, const std::vector<cplx>& wfield, int sign,
                 Kern kern) {
  const int mid = g.mid();
  std::vector<cplx> f(mid + 1);
  for (int i = 0; i <= mid; ++i) {
    const double s = g.nodes()[mid + i];
    f[i] = kern(s) * wfield[mid + sign * i];
  }
  return g.integrate(f, 0, mid);
}

struct DTable {
  // d[j][k]: j = trace index 1..4, k = moment order 0..3
  cplx d[5][4];
};

DTable build_dtable(const VGrid& g, const PhasePoint& f, DualTable table) {
  DTable t{};
  auto mono = [](int k) {
    return [k](double s) {
      double om = 1.0 - s, p = 1.0;
      for (int i = 0; i < k; ++i) p *= om;
      static const double fact[4] = {1.0, 1.0, 2.0, 6.0};
      return p / fact[k];
    };
  };
  const std::vector<cplx>* field[5] = {nullptr, &f.w2, &f.w2, &f.w1, &f.w1};
  const int sign[5] = {0, +1, -1, +1, -1};
  // reflected traces carry (-1)^k from the change of variable
  const double refl[5] = {0.0, +1.0, -1.0, +1.0, -1.0};
  for (int j = 1; j <= 4; ++j)
    for (int k = 0; k <= 3; ++k) {
      double sgn = (k % 2 == 1 && refl[j] < 0.0) ? -1.0 : 1.0;
      const std::vector<cplx>* fld = field[j];
      int sgnarg = sign[j];
      if (table == DualTable::first_trace && k >= 2) {
        // degenerate table: every higher moment reads the first trace
        fld = &f.w2;
        sgnarg = +1;
        sgn = ((j == 2 || j == 4) && k == 3) ? -1.0 : 1.0;
      }
      t.d[j][k] = sgn * half_moment(g, *fld, sgnarg, mono(k));
    }
  return t;
}

}  // namespace

CenterProjection::CenterProjection(double w, const VGrid& g, DualTable table)
    : g_(&g), w_(w), table_(table), basis_(EigenBasis::build(w, g)) {
  const double c0sq = 2.0 * w / (1.0 + w);
  dsym_is0_ = symbol_dlam(cplx(0.0, basis_.s0), c0sq, w);
  for (int j = 0; j < 5; ++j) {
    const auto col = raw_coeffs(basis_.U[j]);
    for (int k = 0; k < 5; ++k) G_(k, j) = col[k];
  }
  Eigen::Matrix<cplx, 5, 5> dev =
      G_ - Eigen::Matrix<cplx, 5, 5>::Identity();
  gram_dev_ = dev.cwiseAbs().maxCoeff();
  if (gram_dev_ > 1e-6) {
    repaired_ = true;
    Ginv_ = G_.partialPivLu().inverse();
  } else {
    Ginv_.setIdentity();
  }
}

std::array<cplx, 5> CenterProjection::raw_coeffs(const PhasePoint& f) const {
  const double w = w_;
  const double s0 = basis_.s0;
  const cplx f1 = f.x1, f2 = f.u1, f4 = f.x2, f5 = f.u2;
  const DTable t = build_dtable(*g_, f, table_);
  const double q = 1.0 - w + w * w;
  const double p1 = 1.0 + w;

  const cplx m1 = -2.0 * w * f1 - 2.0 * f4 +
                  p1 * (t.d[1][1] - t.d[2][1] + t.d[3][1] - t.d[4][1]);
  const cplx m2 = -2.0 * w * f2 - 2.0 * f5 +
                  p1 * (t.d[1][0] - t.d[2][0] + t.d[3][0] - t.d[4][0]);

  const cplx a1 =
      -std::pow(p1, 3) / (5.0 * q * q) * m1 -
      3.0 / (4.0 * q) *
          (4.0 * w * f1 - 2.0 * p1 * (t.d[1][1] - t.d[2][1]) -
           2.0 * p1 * p1 * (t.d[1][3] - t.d[2][3]) +
           p1 * (2.0 * f4 + p1 * (t.d[4][1] - t.d[3][1] +
                                  2.0 * (t.d[4][3] - t.d[3][3]))));
  const cplx a2 =
      -std::pow(p1, 3) / (5.0 * q * q) * m2 -
      3.0 / (4.0 * q) *
          (4.0 * w * f2 - 2.0 * p1 * (t.d[1][0] - t.d[2][0]) -
           2.0 * p1 * p1 * (t.d[1][2] - t.d[2][2]) +
           p1 * (2.0 * f5 + p1 * (-t.d[3][0] + t.d[4][0]) +
                 2.0 * p1 * (-t.d[3][2] + t.d[4][2])));
  const cplx a3 = 3.0 * p1 / (2.0 * q) * m1;
  const cplx a4 = 3.0 * p1 / (2.0 * q) * m2;

  // oscillatory moments for the a5 functional
  auto osc = [&](const std::vector<cplx>& fld, int sign, double rate) {
    return half_moment(*g_, fld, sign, [rate](double s) {
      return std::exp(cplx(0.0, rate * (1.0 - s)));
    });
  };
  const cplx d10 = osc(f.w2, +1, s0), d20 = osc(f.w2, -1, -s0);
  const cplx d30 = osc(f.w1, +1, s0), d40 = osc(f.w1, -1, -s0);
  const cplx is0(0.0, s0);
  const cplx pref = 2.0 * w / (p1 * p1 * dsym_is0_);
  const cplx inner =
      (p1 * p1 / w) / (p1 / w - s0 * s0) * std::cos(s0) *
          (2.0 * w * (f2 + is0 * f1) + p1 * (d20 - d10)) +
      2.0 * p1 * (f5 + is0 * f4) - p1 * p1 * (d30 - d40);
  const cplx a5 = pref * inner;

  return {a1, a2, a3, a4, a5};
}

std::array<cplx, 5> CenterProjection::project_coeffs(
    const PhasePoint& f) const {
  const auto raw = raw_coeffs(f);
  if (!repaired_) return raw;
  std::array<cplx, 5> out{};
  for (int k = 0; k < 5; ++k) {
    cplx s = 0.0;
    for (int j = 0; j < 5; ++j) s += Ginv_(k, j) * raw[j];
    out[k] = s;
  }
  return out;
}

}  // namespace nanokit
