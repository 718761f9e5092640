// nanokit: dispersion scans, nanopteron construction, lattice simulation,
// invariant verification, and eps sweeps.  Artifacts are CSV tables plus one
// key=value summary per run; identical configs produce identical bytes.
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "nanokit/dispersion.hpp"
#include "nanokit/errors.hpp"
#include "nanokit/io.hpp"
#include "nanokit/lattice.hpp"
#include "nanokit/nanopteron.hpp"
#include "nanokit/params.hpp"
#include "nanokit/verify.hpp"

namespace {

using namespace nanokit;

struct RunConfig {
  double w = 2.0;
  double eps = 0.1;
  double I0 = 1.0;
  std::string output_dir;  // empty = NANOKIT_OUTPUT_DIR, then cwd
  SolverConfig solver;
  // simulate extras
  int sites = 2048;
  double dt = 0.005;
  double time = 10.0;
  int sample_every = 200;
  // sweep extras
  std::vector<double> eps_list;
};

void add_common(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--w", rc.w, "mass ratio of heavy to light sites (> 1)");
  cmd->add_option("-o,--output-dir", rc.output_dir,
                  "artifact directory (default: $NANOKIT_OUTPUT_DIR or cwd)");
}

void add_wave(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--eps", rc.eps, "supersonic offset, c^2 = c0^2 + eps^2");
  cmd->add_option("--I0", rc.I0, "ripple amplitude scale, I = I0 eps^4");
  cmd->add_option("--T", rc.solver.T, "half-length of the solve window");
  cmd->add_option("--step", rc.solver.h, "grid step");
  cmd->add_option("--K", rc.solver.K, "orbit harmonic truncation");
  cmd->add_option("--rho", rc.solver.rho, "contraction ball radius factor");
  cmd->add_option("--picard-tol", rc.solver.picard_tol,
                  "Picard stop when diff < tol * eps^4");
  cmd->add_option("--picard-cap", rc.solver.picard_cap, "Picard iteration cap");
  cmd->add_option("--theta-tol", rc.solver.theta_tol, "phase iteration tolerance");
  cmd->add_option("--theta-cap", rc.solver.theta_cap, "phase iteration cap");
  cmd->add_option("--tail-frac", rc.solver.tail_frac,
                  "admissible beyond-window tail fraction");
  cmd->add_option("--jump-tol", rc.solver.jump_tol, "matching jump tolerance");
}

Params checked_params(const RunConfig& rc) {
  Params p;
  p.w = rc.w;
  p.eps = rc.eps;
  p.I0 = rc.I0;
  if (!(p.I0 > 0.0)) throw ConfigError("I0 must be positive");
  p.validate(rc.solver.eps_max);
  return p;
}

std::string fmt(double x) { return format_double(x); }

// --- dispersion ------------------------------------------------------------

int run_dispersion(const RunConfig& rc) {
  if (!(rc.w > 1.0)) throw ConfigError("mass ratio w must exceed 1");
  const std::string dir = resolve_output_dir(rc.output_dir);
  const double s0 = find_s0(rc.w);
  const double c0sq = 2.0 * rc.w / (1.0 + rc.w);
  const double lam_coef =
      std::sqrt(2.0 * ReducedCoeffs::from_mass_ratio(rc.w).c31);
  const double shift_coef = s1_shift_coefficient(rc.w);

  std::vector<std::vector<double>> rows;
  for (double eps : {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001}) {
    const double lam = lambda0(rc.w, eps);
    const double s1 = s1_root(rc.w, eps);
    rows.push_back({eps, lam, lam / eps, s1, (s1 - s0) / (eps * eps)});
  }
  write_csv(dir + "/dispersion.csv",
            {"eps", "lambda0", "lambda0_over_eps", "s1", "s1_shift_over_epssq"},
            rows);

  write_summary(dir + "/summary.txt",
                {{"command", "dispersion"},
                 {"w", fmt(rc.w)},
                 {"s0", fmt(s0)},
                 {"c0sq", fmt(c0sq)},
                 {"root_residual", fmt(symbol_iq(s0, c0sq, rc.w))},
                 {"identity_residual", fmt(s0_identity_residual(rc.w, s0))},
                 {"imag_axis_roots",
                  std::to_string(count_imag_axis_roots(rc.w, 1e-5))},
                 {"sqrt_2c31", fmt(lam_coef)},
                 {"s1_shift_coefficient", fmt(shift_coef)}});
  std::printf("dispersion: s0 = %.12f, c0^2 = %.12f -> %s\n", s0, c0sq,
              dir.c_str());
  return 0;
}

// --- construct -------------------------------------------------------------

std::vector<std::pair<std::string, std::string>> wave_summary(
    const NanopteronSolution& sol) {
  const Params& p = sol.ctx.p;
  const ReducedCoeffs& k = sol.ctx.k;
  return {{"command", "construct"},
          {"w", fmt(p.w)},
          {"eps", fmt(p.eps)},
          {"I0", fmt(p.I0)},
          {"I", fmt(p.I())},
          {"c", fmt(p.c())},
          {"s0", fmt(k.s0)},
          {"c31", fmt(k.c31)},
          {"c32", fmt(k.c32)},
          {"theta", fmt(sol.theta)},
          {"rtilde", fmt(sol.ctx.orbit.rtilde)},
          {"znorm_nu", fmt(sol.Z.weighted_norm())},
          {"nu", fmt(sol.ctx.nu)},
          {"jump", fmt(sol.wave.jump)},
          {"grid_T", fmt(sol.wave.T())},
          {"grid_h", fmt(sol.ctx.h)},
          {"grid_points", std::to_string(sol.ctx.tau.size())},
          {"picard_iterations", std::to_string(sol.ctx.picard_iters)},
          {"theta_iterations", std::to_string(sol.ctx.theta_iters)},
          {"orbit_newton_iterations",
           std::to_string(sol.ctx.orbit.newton_iters)},
          {"orbit_residual", fmt(sol.ctx.orbit.newton_residual)}};
}

void write_profile_csv(const std::string& path, const WaveAssembly& wave) {
  std::vector<std::vector<double>> rows;
  const int n = static_cast<int>(wave.tau.size());
  for (int i = -(n - 1); i < n; ++i) {
    const double t = (i < 0 ? -wave.tau[-i] : wave.tau[i]);
    const Vec5 u = wave.eval(t);
    rows.push_back({t, wave.u1(t), u[1].real(), u[2].real(), u[3].real(),
                    u[4].real(), u[4].imag(), wave.x1(t), wave.x2(t)});
  }
  write_csv(path, {"tau", "u1", "u2", "u3", "u4", "u5re", "u5im", "x1", "x2"},
            rows);
}

int run_construct(const RunConfig& rc) {
  const Params p = checked_params(rc);
  const std::string dir = resolve_output_dir(rc.output_dir);
  const NanopteronSolution sol = construct_wave(p, rc.solver);
  write_profile_csv(dir + "/profile.csv", sol.wave);
  write_summary(dir + "/summary.txt", wave_summary(sol));
  std::printf("construct: theta = %.6e, |Z|_nu = %.6e, %d Picard iterations -> %s\n",
              sol.theta, sol.Z.weighted_norm(), sol.ctx.picard_iters,
              dir.c_str());
  return 0;
}

// --- simulate --------------------------------------------------------------

int run_simulate(const RunConfig& rc) {
  const Params p = checked_params(rc);
  if (rc.dt <= 0.0 || rc.time <= 0.0)
    throw ConfigError("dt and time must be positive");
  if (rc.sample_every <= 0) throw ConfigError("sample-every must be positive");
  const std::string dir = resolve_output_dir(rc.output_dir);

  const NanopteronSolution sol = construct_wave(p, rc.solver);
  const TravelingProfile prof = reconstruct_profile(sol.wave);

  ChainParams cp;
  cp.n = rc.sites;
  cp.w = p.w;
  ChainState s = make_chain_initial(cp, prof, cp.n / 2);
  const int steps = static_cast<int>(std::lround(rc.time / rc.dt));

  std::vector<ChainState> samples;
  samples.push_back(s);
  s = integrate_chain(cp, s, rc.dt, steps, rc.sample_every, &samples);
  if (samples.empty() || samples.back().t != s.t) samples.push_back(s);

  std::vector<std::vector<double>> rows;
  for (const ChainState& st : samples)
    for (int j = 0; j < cp.n; ++j)
      rows.push_back({st.t, static_cast<double>(j), st.y[j], st.v[j]});
  write_csv(dir + "/trajectory.csv", {"t", "j", "y", "v"}, rows);

  write_summary(dir + "/summary.txt",
                {{"command", "simulate"},
                 {"w", fmt(p.w)},
                 {"eps", fmt(p.eps)},
                 {"I0", fmt(p.I0)},
                 {"I", fmt(p.I())},
                 {"c", fmt(p.c())},
                 {"sites", std::to_string(cp.n)},
                 {"dt", fmt(rc.dt)},
                 {"steps", std::to_string(steps)},
                 {"frames", std::to_string(samples.size())},
                 {"hamiltonian_initial", fmt(chain_hamiltonian(cp, samples.front()))},
                 {"hamiltonian_final", fmt(chain_hamiltonian(cp, s))}});
  std::printf("simulate: %d steps over %zu sites, %zu frames -> %s\n", steps,
              static_cast<size_t>(cp.n), samples.size(), dir.c_str());
  return 0;
}

// --- verify ----------------------------------------------------------------

int verify_once(const Params& p, const SolverConfig& cfg,
                const std::string& dir) {
  const std::vector<CheckResult> checks = verify_wave(p, cfg);
  std::string report;
  for (const CheckResult& c : checks) {
    char line[160];
    std::snprintf(line, sizeof line, "%s %s measured=%.6e bound=%.6e\n",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured,
                  c.bound);
    report += line;
    std::fputs(line, stdout);
  }
  const bool ok = all_pass(checks);
  report += ok ? "RESULT PASS\n" : "RESULT FAIL\n";
  FILE* f = std::fopen((dir + "/report.txt").c_str(), "wb");
  if (!f) throw ConfigError("cannot open " + dir + "/report.txt");
  std::fwrite(report.data(), 1, report.size(), f);
  std::fclose(f);
  return ok ? 0 : 4;
}

int run_verify(const RunConfig& rc) {
  const Params p = checked_params(rc);
  const std::string dir = resolve_output_dir(rc.output_dir);
  return verify_once(p, rc.solver, dir);
}

// --- sweep -----------------------------------------------------------------

int run_sweep(const RunConfig& rc) {
  std::vector<double> list = rc.eps_list;
  if (list.empty()) list = {0.05, 0.075, 0.1};
  const std::string root = resolve_output_dir(rc.output_dir);

  std::vector<std::vector<double>> rows;
  int rcode = 0;
  for (double eps : list) {
    RunConfig one = rc;
    one.eps = eps;
    const Params p = checked_params(one);
    char sub[64];
    std::snprintf(sub, sizeof sub, "%s/eps_%g", root.c_str(), eps);
    const std::string dir = resolve_output_dir(sub);

    const NanopteronSolution sol = construct_wave(p, one.solver);
    write_profile_csv(dir + "/profile.csv", sol.wave);
    write_summary(dir + "/summary.txt", wave_summary(sol));
    const int v = verify_once(p, one.solver, dir);
    if (v != 0) rcode = v;
    rows.push_back({eps, sol.theta, sol.Z.weighted_norm(), sol.wave.jump,
                    static_cast<double>(sol.ctx.picard_iters),
                    v == 0 ? 1.0 : 0.0});
  }
  write_csv(root + "/sweep.csv",
            {"eps", "theta", "znorm_nu", "jump", "picard_iterations", "verified"},
            rows);
  std::printf("sweep: %zu configurations -> %s\n", list.size(), root.c_str());
  return rcode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diatomic lattice nanopteron toolkit"};
  app.require_subcommand(1);
  RunConfig rc;

  CLI::App* disp = app.add_subcommand("dispersion", "tabulate linearization roots");
  add_common(disp, rc);

  CLI::App* cons = app.add_subcommand("construct", "solve for the traveling wave");
  add_common(cons, rc);
  add_wave(cons, rc);

  CLI::App* sim = app.add_subcommand("simulate", "integrate the wave on a chain");
  add_common(sim, rc);
  add_wave(sim, rc);
  sim->add_option("--sites", rc.sites, "number of lattice sites");
  sim->add_option("--dt", rc.dt, "integrator time step");
  sim->add_option("--time", rc.time, "integration horizon");
  sim->add_option("--sample-every", rc.sample_every, "steps between frames");

  CLI::App* ver = app.add_subcommand("verify", "run the invariant check suite");
  add_common(ver, rc);
  add_wave(ver, rc);

  CLI::App* swp = app.add_subcommand("sweep", "construct + verify over an eps list");
  add_common(swp, rc);
  add_wave(swp, rc);
  swp->add_option("--eps-list", rc.eps_list, "comma separated eps values")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (disp->parsed()) return run_dispersion(rc);
    if (cons->parsed()) return run_construct(rc);
    if (sim->parsed()) return run_simulate(rc);
    if (ver->parsed()) return run_verify(rc);
    if (swp->parsed()) return run_sweep(rc);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.name == "ConfigError" ? 2 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
