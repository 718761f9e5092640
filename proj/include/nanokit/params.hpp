#pragma once
#include <cmath>

#include "nanokit/dispersion.hpp"
#include "nanokit/errors.hpp"

namespace nanokit {

// Physical setup: mass ratio w > 1 (heavy sites have mass 1, light sites
// 1/w), wave speed slightly above the sonic speed, c^2 = c0^2 + eps^2 with
// c0^2 = 2w/(1+w), and far-field ripple amplitude I = I0 * eps^4.
struct Params {
  double w = 2.0;
  double eps = 0.1;
  double I0 = 1.0;

  double c0sq() const { return 2.0 * w / (1.0 + w); }
  double csq() const { return c0sq() + eps * eps; }
  double c() const { return std::sqrt(csq()); }
  double I() const { return I0 * eps * eps * eps * eps; }

  void validate(double eps_max = 0.15) const {
    if (!(w > 1.0)) throw ConfigError("mass ratio w must exceed 1");
    if (!(eps > 0.0) || !(eps <= eps_max))
      throw ConfigError("eps must lie in (0, " + std::to_string(eps_max) + "]");
    if (!(I0 >= 0.0)) throw ConfigError("I0 must be nonnegative");
  }
};

// Coefficients of the reduced vector field on the center subspace:
//   u2' = u3
//   u3' = u4 + u2 * P3
//   u4' = u3 * P3
//   u5' = i s0 u5 + i u5 * P5
// with
//   P3 = c31 eps^2 - c32 u2 + c33 (u3^2 - 2 u2 u4) + c34 u5 conj(u5)
//   P5 = e31 eps^2 + e32 u2 + e33 (u3^2 - 2 u2 u4) + e34 u5 conj(u5).
// c31 and c32 are fixed by the mass ratio; the remaining coefficients are
// not determined at leading order and default to zero (dominant truncation).
struct ReducedCoeffs {
  double c31 = 0.0;
  double c32 = 0.0;
  double s0 = 0.0;
  double c33 = 0.0, c34 = 0.0;
  double e31 = 0.0, e32 = 0.0, e33 = 0.0, e34 = 0.0;

  static ReducedCoeffs from_mass_ratio(double w) {
    ReducedCoeffs co;
    const double q = 1.0 - w + w * w;
    co.c31 = 3.0 * (1.0 + w) * (1.0 + w) * (1.0 + w) / (4.0 * w * q);
    co.c32 = 2.0 * (1.0 + w) * (1.0 + w) / q;
    co.s0 = find_s0(w);
    return co;
  }

  bool dominant() const {
    return c33 == 0.0 && c34 == 0.0 && e31 == 0.0 && e32 == 0.0 &&
           e33 == 0.0 && e34 == 0.0;
  }
};

}  // namespace nanokit
