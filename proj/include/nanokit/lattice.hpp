#pragma once
#include <functional>
#include <vector>

#include "nanokit/errors.hpp"

namespace nanokit {

// Traveling-wave view of the diatomic chain: odd sites (mass 1) follow
// x1(j - c t), even sites (mass 1/w) follow x2(j - c t).
struct TravelingProfile {
  std::function<double(double)> x1, x2;
  double c = 0.0;    // wave speed
  double csq = 0.0;  // c^2 kept exactly (c^2 = c0^2 + eps^2)
  double w = 0.0;    // mass ratio
};

// L_inf and L2 norms of the two advance-delay residuals
//   c^2 x1'' - [x2(t+1) - 2 x1 + x2(t-1) + (x2(t+1)-x1)^2 - (x1-x2(t-1))^2]
// and the analogous equation with 1 <-> 2 and c^2/w, sampled pointwise.
struct AdvanceDelayResidual {
  double linf1 = 0.0, linf2 = 0.0;
  double l2_1 = 0.0, l2_2 = 0.0;
};

// Second derivatives via 5-point differences at fd_step with one Richardson
// refinement (the evaluators are smooth synthesized expressions).
AdvanceDelayResidual advance_delay_residual(const TravelingProfile& p,
                                            const std::vector<double>& taus,
                                            double fd_step = 1e-4);

// Conserved quantity of the advance-delay system,
//   c^2 x1' + (c^2/w) x2' - int_{-1}^0 [x2(t+s+1)-x1(t+s)] + [..]^2 ds
//            - int_{-1}^0 [x1(t+s+1)-x2(t+s)] + [..]^2 ds,
// with composite Simpson (65 nodes) on s and 5-point first derivatives.
double first_integral(const TravelingProfile& p, double tau);

struct ChainParams {
  int n = 2048;
  double w = 2.0;
  bool nonlinear = true;  // include the quadratic spring force
  bool sponge = true;     // linear damping ramps at both free ends
  int sponge_width = 40;
  double sponge_max = 1.0;
};

struct ChainState {
  double t = 0.0;
  std::vector<double> y, v;
};

// Accelerations m_j^{-1} [(r_j + r_j^2) - (r_{j-1} + r_{j-1}^2)] with
// r_j = y_{j+1} - y_j, free ends, minus the sponge damping gamma_j v_j.
std::vector<double> chain_rhs(const ChainParams& p, const ChainState& s);

// Sample the profile as y_j = x_{1|2}(j - center), v_j = -c x'.
ChainState make_chain_initial(const ChainParams& p, const TravelingProfile& prof,
                              int center);

// Fixed-step RK4 on the second-order system.  Appends a copy of the state
// every sample_every steps when samples is given.
ChainState integrate_chain(const ChainParams& p, ChainState s, double dt,
                           int steps, int sample_every = 0,
                           std::vector<ChainState>* samples = nullptr);

double chain_hamiltonian(const ChainParams& p, const ChainState& s);

// Core translation between two snapshots of the same run, via integer
// cross-correlation of the strain profiles plus parabolic refinement,
// divided by the elapsed time.
double measure_speed(const ChainState& before, const ChainState& after,
                     int window = 40, int max_shift = 300);

// Dominant wavelength (in sites) of y over the index range [lo, hi):
// linear detrend, Hann window, discrete Fourier peak.
double measure_wavelength(const ChainState& s, int lo, int hi);

}  // namespace nanokit
