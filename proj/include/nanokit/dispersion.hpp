#pragma once
#include <complex>

namespace nanokit {

using cplx = std::complex<double>;

// Symbol of the linearized traveling-wave system at squared speed csq:
//   N(lambda) = csq^2 lambda^4 + 2 csq (1+w) lambda^2 + 2w (1 - cosh(2 lambda)),
// an entire function whose roots are the linear eigenvalues. Throws Overflow
// for |Re lambda| > 300 (cosh would leave double range).
cplx symbol(cplx lam, double csq, double w);
cplx symbol_dlam(cplx lam, double csq, double w);

// Restriction to the imaginary axis lambda = i q, which is real-valued:
//   N(iq) = csq^2 q^4 - 2 csq (1+w) q^2 + 2w (1 - cos(2q)).
double symbol_iq(double q, double csq, double w);
double symbol_iq_dq(double q, double csq, double w);

// The unique imaginary-axis root s0 > sqrt(2) of the symbol at sonic speed:
// coarse scan of (sqrt(2)+1e-6, 20) in steps of 0.01, then bisection until
// the bracket width drops below 1e-15 (residual well under 1e-12).
// Throws NoBracket if the scan finds no sign change.
double find_s0(double w);

// Number of sign changes of N(iq) on (sqrt(2)+1e-6, 20) at sonic speed,
// scanned with the given step; used as a uniqueness check.
int count_imag_axis_roots(double w, double step);

// Residual of the algebraic identity satisfied by s0:
//   w (s0^2 - (1+w)/w) (s0^2 - 1 - w) = (1+w)^2 cos^2(s0).
double s0_identity_residual(double w, double s0);

// Small positive real root lambda0(eps) of the symbol at csq = c0^2 + eps^2
// (Newton from the asymptotic seed sqrt(2 c31) * eps) and the nearby
// imaginary-axis root s1(eps) (Newton from s0). 50-iteration cap, throws
// NoConvergence.
double lambda0(double w, double eps);
double s1_root(double w, double eps);

// Predicted eps^2 coefficient of s1(eps) - s0 from first-order perturbation
// of the symbol in csq.
double s1_shift_coefficient(double w);

// Upper bound on |lambda| for any symbol root in the strip |Re lambda| <= lam1.
double root_modulus_bound(double w, double csq, double lam1);

}  // namespace nanokit
