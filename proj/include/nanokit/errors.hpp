#pragma once
#include <stdexcept>
#include <string>
#include <utility>

namespace nanokit {

// Solver and validation failures carry a stable name; the CLI maps names to
// exit codes and tests assert on them.
struct Error : std::runtime_error {
  Error(std::string n, const std::string& what)
      : std::runtime_error(n + ": " + what), name(std::move(n)) {}
  std::string name;
};

#define NANOKIT_DEFINE_ERROR(Name)                                        \
  struct Name : Error {                                                   \
    explicit Name(const std::string& what) : Error(#Name, what) {}        \
  }

NANOKIT_DEFINE_ERROR(NoBracket);      // root scan found no sign change
NANOKIT_DEFINE_ERROR(NoConvergence);  // iteration cap reached
NANOKIT_DEFINE_ERROR(NearSingular);   // resolvent too close to a symbol root
NANOKIT_DEFINE_ERROR(GridTooCoarse);
NANOKIT_DEFINE_ERROR(TailTooFat);     // quadrature tail beyond the grid is not negligible
NANOKIT_DEFINE_ERROR(NoContraction);  // fixed-point iteration stopped contracting
NANOKIT_DEFINE_ERROR(ArcsinDomain);   // phase update left the arcsin domain
NANOKIT_DEFINE_ERROR(JumpTooLarge);   // symmetry matching residual at tau = 0
NANOKIT_DEFINE_ERROR(Overflow);
NANOKIT_DEFINE_ERROR(Instability);    // chain simulation blow-up
NANOKIT_DEFINE_ERROR(ConfigError);

#undef NANOKIT_DEFINE_ERROR

}  // namespace nanokit
