#pragma once
#include <vector>

#include "nanokit/reduced.hpp"

namespace nanokit {

// Small reversible periodic orbit of the reduced system, found by harmonic
// balance with the u5 fundamental amplitude pinned to I:
//   u2 = sum p_k cos(k O tau),  u3 = sum q_k sin(k O tau),
//   u4 = sum r_k cos(k O tau),  u5 = i sum beta_k e^{i k O tau},
// O = s0 + rtilde.  All coefficient arrays are real (reversible ansatz).
struct PeriodicOrbit {
  double eps = 0.0;
  double I = 0.0;
  int K = 0;
  ReducedCoeffs k;
  double rtilde = 0.0;
  std::vector<double> p;     // index 0..K
  std::vector<double> q;     // index 0..K, q[0] unused
  std::vector<double> r;     // index 0..K
  std::vector<double> beta;  // index 0..2K for harmonics -K..K
  double newton_residual = 0.0;
  int newton_iters = 0;

  double Omega() const { return k.s0 + rtilde; }
  Vec5 eval(double tau) const;
  Vec5 eval(double tau, double theta) const { return eval(tau - theta); }

  // companion periodic part of u1 (zero mean): u1p' = u2p
  double u1p(double tau) const;

  // max |X' - field(X)| over a fine period grid (collocated ODE residual)
  double ode_residual(int nfine = 1024) const;
};

// Harmonic-balance Newton solve; throws NoConvergence if the projected
// residual cannot be brought below 1e-13 within max_iter iterations.
PeriodicOrbit solve_periodic(double eps, double I, int K,
                             const ReducedCoeffs& k, int max_iter = 50);

}  // namespace nanokit
