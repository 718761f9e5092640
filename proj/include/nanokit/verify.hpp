#pragma once
#include <string>
#include <vector>

#include "nanokit/nanopteron.hpp"
#include "nanokit/params.hpp"

namespace nanokit {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // the quantity compared against bound
  double bound = 0.0;
};

// Invariant suite over a freshly constructed wave: dispersion root quality,
// biorthogonality of the fundamental set, matching jump at 0, phase bound,
// oddness of the reconstructed coordinates, far-field ripple ratio, core
// slope coefficient, first-integral constancy, and the contraction ball.
std::vector<CheckResult> verify_wave(const Params& p,
                                     const SolverConfig& cfg = {});

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace nanokit
