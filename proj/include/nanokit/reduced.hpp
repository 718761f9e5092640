#pragma once
#include <array>
#include <complex>

#include "nanokit/params.hpp"

namespace nanokit {

// State of the reduced system on the center subspace, slot order
// (u2, u3, u4, u5, conj u5).  The companion coordinate u1 (u1' = u2) is
// decoupled and carried separately where needed, so the vector field cannot
// depend on it by construction.
using Vec5 = std::array<cplx, 5>;

// full configured field: dominant part plus the c33/c34/e-terms
Vec5 reduced_field(const Vec5& X, double eps, const ReducedCoeffs& k);

// dominant truncation (c31, c32 only)
Vec5 dominant_field(const Vec5& X, double eps, const ReducedCoeffs& k);

// reduced_field - dominant_field, composed directly from the extra terms
Vec5 remainder_field(const Vec5& X, double eps, const ReducedCoeffs& k);

// derivative of dominant_field at X applied to Z
Vec5 dominant_jacobian_apply(const Vec5& X, const Vec5& Z, double eps,
                             const ReducedCoeffs& k);

// reverser S: (u2, -u3, u4, -conj u5, -u5)
Vec5 reverse_state(const Vec5& X);

Vec5 operator+(const Vec5& a, const Vec5& b);
Vec5 operator-(const Vec5& a, const Vec5& b);
Vec5 operator*(cplx s, const Vec5& a);
double max_abs(const Vec5& a);

// pairing sum_i a_i conj(b_i); second argument is the adjoint vector
cplx pairing(const Vec5& a, const Vec5& b);

// Exact homoclinic orbit of the dominant system,
//   H1 = (2 c31/c32) eps^2 sech^2(a tau),  a = sqrt(c31/2) eps,
// with H2 = H1', H3 = c31 eps^2 H1 - (c32/2) H1^2, plus the companion
// kink u1 (u1' = H1).
struct Homoclinic {
  double eps = 0.0;
  ReducedCoeffs k;

  double decay_rate() const;  // sqrt(2 c31) eps
  double H1(double tau) const;
  double H2(double tau) const;
  double H2prime(double tau) const;
  double H3(double tau) const;
  double u1(double tau) const;
  Vec5 state(double tau) const;  // (H1, H2, H3, 0, 0)
};
Homoclinic homoclinic(double eps, const ReducedCoeffs& k);

// Fundamental solutions s1..s5 of the linearization of the dominant field
// about the homoclinic, and the adjoint set s1*..s5* biorthogonal to them
// under `pairing` for every tau.  All evaluators are closed forms.
struct FundamentalSet {
  double eps = 0.0;
  ReducedCoeffs k;

  // scalar building blocks (see implementation for the closed forms)
  double u1tilde(double tau) const;
  double u1tilde_prime(double tau) const;
  double u2tilde(double tau) const;
  double u2tilde_prime(double tau) const;
  double s11(double tau) const;  // primitive of eps^-3 H2
  double s21(double tau) const;  // primitive of eps^4 u1tilde

  Vec5 s(int l, double tau) const;      // l = 1..5
  Vec5 sstar(int l, double tau) const;  // adjoints, l = 1..5
};
FundamentalSet fundamental_solutions(double eps, const ReducedCoeffs& k);

}  // namespace nanokit
