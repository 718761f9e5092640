#pragma once
#include <complex>
#include <vector>

#include "nanokit/dispersion.hpp"
#include "nanokit/errors.hpp"

namespace nanokit {

// Uniform grid on [-1, 1] carrying the history fields. Quadrature is
// composite Simpson (odd node count required); differentiation is the
// 5-point interior stencil with 6-point one-sided closures at the two
// boundary nodes (the extra order keeps generalized-eigenvector residuals
// below 1e-8; see apply_L tests).
class VGrid {
 public:
  explicit VGrid(int n = 257);

  int n() const { return n_; }
  double h() const { return h_; }
  int mid() const { return mid_; }  // index of v = 0
  const std::vector<double>& nodes() const { return v_; }

  std::vector<cplx> deriv(const std::vector<cplx>& f) const;

  // integral of f over [v[i0], v[i1]]; i1 - i0 must be even
  cplx integrate(const std::vector<cplx>& f, int i0, int i1) const;

  // cumulative integral from v = 0: out[k] = integral of f over [0, v[k]]
  std::vector<cplx> cumulative_from_zero(const std::vector<cplx>& f) const;

 private:
  int n_;
  double h_;
  int mid_;
  std::vector<double> v_;
};

// State of the dynamical-systems formulation of the traveling wave:
// scalars (x1, u1, x2, u2) with u_i the tau-derivative proxies, and history
// fields w_i(v) = x_i(tau + v) sampled on the grid.
struct PhasePoint {
  cplx x1{}, u1{}, x2{}, u2{};
  std::vector<cplx> w1, w2;

  static PhasePoint zero(const VGrid& g);
  PhasePoint& operator+=(const PhasePoint& o);
  PhasePoint& operator-=(const PhasePoint& o);
  PhasePoint& operator*=(cplx s);
  double max_abs() const;
};

PhasePoint operator+(PhasePoint a, const PhasePoint& b);
PhasePoint operator-(PhasePoint a, const PhasePoint& b);
PhasePoint operator*(cplx s, PhasePoint a);

// Linear part of the traveling-wave system at squared speed csq:
//   L U = (u1, (w2(1) - 2 x1 + w2(-1)) / csq, w1',
//          u2, w (w1(1) - 2 x2 + w1(-1)) / csq, w2').
PhasePoint apply_L(const PhasePoint& U, double csq, double w, const VGrid& g);

// Reverser S: (x1,u1,w1,x2,u2,w2) -> (-x1, u1, -w1(-.), -x2, u2, -w2(-.)).
// Solutions with S X(-tau) = X(tau) are the reversible ones.
PhasePoint apply_S(const PhasePoint& U, const VGrid& g);

// Residual of the compatibility conditions w1(0) = x1, w2(0) = x2 that a
// genuine phase point satisfies.
double domain_residual(const PhasePoint& U, const VGrid& g);

// Solves (lambda I - L) U = f in closed form via the symbol. Throws
// NearSingular when |N(lambda)| <= 1e-8 (lambda too close to an eigenvalue).
PhasePoint resolvent_solve(cplx lam, const PhasePoint& f, double csq, double w,
                           const VGrid& g);

}  // namespace nanokit
