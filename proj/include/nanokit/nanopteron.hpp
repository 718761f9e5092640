#pragma once
#include <array>
#include <vector>

#include "nanokit/lattice.hpp"
#include "nanokit/params.hpp"
#include "nanokit/periodic.hpp"
#include "nanokit/reduced.hpp"

namespace nanokit {

// Quintic smoothstep cutoff: 0 on |tau| <= 1, 1 on |tau| >= 2, C^2 at the
// seams.  cutoff_prime is its derivative (supported in 1 < |tau| < 2 only).
double cutoff(double tau);
double cutoff_prime(double tau);

struct SolverConfig {
  double T = 0.0;       // half-length of the solve window; 0 = 25/(sqrt(2 c31) eps)
  double h = 0.0;       // grid step; 0 = min(2 pi/(24 s0), 0.02/(sqrt(2 c31) eps))
  int K = 7;            // harmonic truncation of the far-field orbit
  double eps_max = 0.15;
  double rho = 1.0;     // correction confined to ||Z||_nu <= rho * eps^{11/3}
  double picard_tol = 1e-12;  // stop when successive diff < picard_tol * eps^4
  int picard_cap = 200;
  double theta_tol = 1e-14;
  int theta_cap = 20;
  double tail_frac = 1e-3;  // admissible beyond-window tail fraction of ||Z||_nu
  double jump_tol = 1e-9;
  int max_newton = 50;  // iteration budget for the orbit solve
};

// Correction profile on the uniform grid over [0, T].  The norm is
// max over components k of sup_i |Z_k(tau_i)| e^{nu tau_i}.
struct CorrectionZ {
  std::vector<double> tau;
  std::vector<Vec5> val;
  double nu = 0.0;
  double weighted_norm() const;
};

// Everything a solve needs: parameters, core, far-field orbit, fundamental
// solutions and adjoints tabulated on the grid, plus diagnostics of the most
// recent Picard / phase iterations.
struct SolveContext {
  Params p;
  ReducedCoeffs k;
  SolverConfig cfg;
  double nu = 0.0;
  double theta = 0.0;  // current phase offset of the far-field orbit
  Homoclinic hom;
  PeriodicOrbit orbit;
  double h = 0.0;
  std::vector<double> tau;
  std::vector<std::array<Vec5, 5>> fs;     // s_1..s_5 at each node
  std::vector<std::array<Vec5, 5>> fstar;  // adjoints s_1*..s_5*
  std::vector<double> zeta, dzeta;
  std::array<double, 5> smax{};  // sup of |s_l| e^{nu tau}, for tail bounds

  // diagnostics of the last solve_Z / solve_theta
  int picard_iters = 0;
  bool picard_floored = false;  // stopped at the rounding floor, not the tolerance
  std::vector<double> picard_diffs;
  std::vector<double> picard_ratios;
  int theta_iters = 0;
  double theta_residual = 0.0;
};

SolveContext make_context(const Params& p, const SolverConfig& cfg = {});
SolveContext make_context(const Params& p, const ReducedCoeffs& k,
                          const SolverConfig& cfg = {});

// Residual nonlinearity at one point,
//   N(tau, Z) = F(X) - F(H) - zeta F(X_p) - dF(H) Z
//             + N0(X) - zeta N0(X_p) - zeta' X_p,
// where X = H + Z + zeta X_p, F is the dominant field, N0 the configured
// remainder terms, and X_p the orbit evaluated at tau - theta.
Vec5 nonlinearity_N(double tau, const Vec5& Z, const SolveContext& ctx);

// One application of the solution operator
//   A[Z](tau) = int_0^tau <N, s1*> dt s1(tau)
//             - sum_{k=2..5} int_tau^inf <N, sk*> dt sk(tau),
// with the beyond-window piece int_T^inf extrapolated from the exponential
// envelope of each integrand.
CorrectionZ apply_A(const CorrectionZ& Z, const SolveContext& ctx);

// Picard iteration of apply_A from Z = 0; records diffs and ratios in ctx.
CorrectionZ solve_Z(SolveContext& ctx);

// Outer phase iteration theta -> arcsin((G + I sin(s0 theta))/I)/s0 where G
// is the real part of int_0^T N_4 e^{-i s0 t} dt at the inner fixed point.
// Leaves the final correction in Z and the residual G in ctx.
double solve_theta(SolveContext& ctx, CorrectionZ& Z);

// Two-sided wave: X(tau) = H + Z + zeta X_p(tau - theta) for tau >= 0 and the
// S-mirror S X(-tau) for tau < 0.  Off-grid correction values use cubic
// Hermite interpolation with nodal derivatives from the solved equation
// Z' = dF(H) Z + N(tau, Z).
struct WaveAssembly {
  Params p;
  ReducedCoeffs k;
  double theta = 0.0;
  double nu = 0.0;
  double jump = 0.0;  // max component of (1 - S) X(0)
  Homoclinic hom;
  PeriodicOrbit orbit;
  double h = 0.0;
  std::vector<double> tau;
  std::vector<Vec5> Z, Zdot;
  std::vector<double> u1c, u1s;  // cumulative of Re Z_1 + zeta u2p and its integrand

  double T() const { return tau.back(); }
  Vec5 correction(double t) const;     // interpolated Z, zero beyond the grid
  Vec5 periodic_part(double t) const;  // zeta * X_p(t - theta), S-mirrored
  Vec5 eval(double t) const;           // full state, S-mirrored for t < 0
  double u1(double t) const;           // companion coordinate, odd, u1(0) = 0
  double x1(double t) const;           // odd-site displacement profile
  double x2(double t) const;           // even-site displacement profile
};

WaveAssembly assemble(const SolveContext& ctx, const CorrectionZ& Z,
                      double theta);

// Lattice view of the assembled wave (x1/x2 evaluators and the speed).
TravelingProfile reconstruct_profile(const WaveAssembly& wave);

// Full pipeline: context, phase + correction solve, assembly.
struct NanopteronSolution {
  SolveContext ctx;
  CorrectionZ Z;
  double theta = 0.0;
  WaveAssembly wave;
};

NanopteronSolution construct_wave(const Params& p, const SolverConfig& cfg = {});
NanopteronSolution construct_wave(const Params& p, const ReducedCoeffs& k,
                                  const SolverConfig& cfg = {});

}  // namespace nanokit
