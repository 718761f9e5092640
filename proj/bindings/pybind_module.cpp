#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <vector>

#include "nanokit/dispersion.hpp"
#include "nanokit/lattice.hpp"
#include "nanokit/nanopteron.hpp"
#include "nanokit/params.hpp"
#include "nanokit/verify.hpp"

namespace py = pybind11;
using namespace nanokit;

namespace {

Params make_params(double w, double eps, double I0) {
  Params p;
  p.w = w;
  p.eps = eps;
  p.I0 = I0;
  p.validate();
  return p;
}

py::dict constants(double w) {
  const auto k = ReducedCoeffs::from_mass_ratio(w);
  py::dict d;
  d["s0"] = k.s0;
  d["c0sq"] = 2.0 * w / (1.0 + w);
  d["c31"] = k.c31;
  d["c32"] = k.c32;
  d["decay_coefficient"] = std::sqrt(2.0 * k.c31);
  return d;
}

py::dict construct(double w, double eps, double I0) {
  const NanopteronSolution sol = construct_wave(make_params(w, eps, I0));
  const int n = static_cast<int>(sol.wave.tau.size());
  std::vector<double> tau, u1, x1, x2;
  for (int i = -(n - 1); i < n; ++i) {
    const double t = (i < 0 ? -sol.wave.tau[-i] : sol.wave.tau[i]);
    tau.push_back(t);
    u1.push_back(sol.wave.u1(t));
    x1.push_back(sol.wave.x1(t));
    x2.push_back(sol.wave.x2(t));
  }
  py::dict d;
  d["tau"] = tau;
  d["u1"] = u1;
  d["x1"] = x1;
  d["x2"] = x2;
  d["c"] = sol.ctx.p.c();
  d["I"] = sol.ctx.p.I();
  d["theta"] = sol.theta;
  d["rtilde"] = sol.ctx.orbit.rtilde;
  d["znorm_nu"] = sol.Z.weighted_norm();
  d["jump"] = sol.wave.jump;
  d["picard_iterations"] = sol.ctx.picard_iters;
  d["theta_iterations"] = sol.ctx.theta_iters;
  return d;
}

py::list verify(double w, double eps, double I0) {
  py::list out;
  for (const CheckResult& c : verify_wave(make_params(w, eps, I0))) {
    py::dict d;
    d["name"] = c.name;
    d["passed"] = c.pass;
    d["measured"] = c.measured;
    d["bound"] = c.bound;
    out.append(d);
  }
  return out;
}

py::dict simulate(double w, double eps, double I0, int sites, double dt,
                  double time, int sample_every) {
  const Params p = make_params(w, eps, I0);
  if (dt <= 0.0 || time <= 0.0) throw ConfigError("dt and time must be positive");
  if (sample_every <= 0) throw ConfigError("sample_every must be positive");
  const NanopteronSolution sol = construct_wave(p);
  const TravelingProfile prof = reconstruct_profile(sol.wave);

  ChainParams cp;
  cp.n = sites;
  cp.w = w;
  ChainState s = make_chain_initial(cp, prof, cp.n / 2);
  const int steps = static_cast<int>(std::lround(time / dt));

  std::vector<ChainState> frames;
  frames.push_back(s);
  s = integrate_chain(cp, s, dt, steps, sample_every, &frames);
  if (frames.back().t != s.t) frames.push_back(s);

  std::vector<double> t;
  std::vector<std::vector<double>> y, v;
  for (const ChainState& f : frames) {
    t.push_back(f.t);
    y.push_back(f.y);
    v.push_back(f.v);
  }
  py::dict d;
  d["t"] = t;
  d["y"] = y;
  d["v"] = v;
  d["c"] = prof.c;
  d["hamiltonian_initial"] = chain_hamiltonian(cp, frames.front());
  d["hamiltonian_final"] = chain_hamiltonian(cp, frames.back());
  return d;
}

}  // namespace

PYBIND11_MODULE(_nanokit, m) {
  m.doc() = "diatomic lattice nanopteron toolkit";
  m.def("find_s0", &find_s0, py::arg("w"),
        "imaginary-axis root s0 of the sonic-speed dispersion symbol");
  m.def("constants", &constants, py::arg("w") = 2.0,
        "normal-form constants for mass ratio w");
  m.def("construct", &construct, py::arg("w") = 2.0, py::arg("eps") = 0.1,
        py::arg("I0") = 1.0,
        "solve for the generalized solitary wave; returns profile arrays and "
        "solver diagnostics");
  m.def("verify", &verify, py::arg("w") = 2.0, py::arg("eps") = 0.1,
        py::arg("I0") = 1.0, "run the invariant check suite");
  m.def("simulate", &simulate, py::arg("w") = 2.0, py::arg("eps") = 0.1,
        py::arg("I0") = 1.0, py::arg("sites") = 2048, py::arg("dt") = 0.005,
        py::arg("time") = 10.0, py::arg("sample_every") = 200,
        "integrate the constructed wave on a finite chain; returns sampled "
        "frames");
}
