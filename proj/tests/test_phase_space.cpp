#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nanokit/phase_space.hpp"

using namespace nanokit;

namespace {

// smooth test point: polynomial plus complex exponentials in the histories
PhasePoint smooth_point(const VGrid& g, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PhasePoint p = PhasePoint::zero(g);
  p.x1 = cplx(u(rng), u(rng));
  p.u1 = cplx(u(rng), u(rng));
  p.x2 = cplx(u(rng), u(rng));
  p.u2 = cplx(u(rng), u(rng));
  const cplx a1(u(rng), u(rng)), a2(u(rng), u(rng)), mu1(u(rng), u(rng)),
      mu2(u(rng), u(rng));
  const double b1 = u(rng), b2 = u(rng);
  for (int i = 0; i < g.n(); ++i) {
    const double v = g.nodes()[i];
    p.w1[i] = a1 * std::exp(mu1 * v) + b1 * v * v * v;
    p.w2[i] = a2 * std::exp(mu2 * v) + b2 * (v * v - v);
  }
  return p;
}

}  // namespace

TEST_CASE("grid guards") {
  CHECK_THROWS_AS(VGrid(15), GridTooCoarse);
  CHECK_THROWS_AS(VGrid(32), ConfigError);
  CHECK_NOTHROW(VGrid(17));
}

TEST_CASE("derivative stencil is exact on quartics and accurate on exp") {
  VGrid g;
  std::vector<cplx> f(g.n()), expf(g.n());
  for (int i = 0; i < g.n(); ++i) {
    const double v = g.nodes()[i];
    f[i] = 1.0 + v + v * v + v * v * v + v * v * v * v;
    expf[i] = std::exp(cplx(0.7, 1.3) * v);
  }
  const auto df = g.deriv(f);
  double worst = 0.0;
  for (int i = 0; i < g.n(); ++i) {
    const double v = g.nodes()[i];
    worst = std::max(worst,
                     std::abs(df[i] - (1.0 + 2.0 * v + 3.0 * v * v +
                                       4.0 * v * v * v)));
  }
  CHECK(worst < 1e-12);
  const auto dexp = g.deriv(expf);
  worst = 0.0;
  for (int i = 0; i < g.n(); ++i)
    worst = std::max(worst,
                     std::abs(dexp[i] - cplx(0.7, 1.3) * expf[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("Simpson quadrature integrates cubics exactly") {
  VGrid g;
  std::vector<cplx> f(g.n());
  for (int i = 0; i < g.n(); ++i) {
    const double v = g.nodes()[i];
    f[i] = v * v * v - 2.0 * v * v + 0.5;
  }
  // int_{-1}^{1} = -4/3 + 1 ; int_{0}^{1} = 1/4 - 2/3 + 1/2
  CHECK(std::abs(g.integrate(f, 0, g.n() - 1) - cplx(-4.0 / 3.0 + 1.0)) <
        1e-14);
  CHECK(std::abs(g.integrate(f, g.mid(), g.n() - 1) -
                 cplx(0.25 - 2.0 / 3.0 + 0.5)) < 1e-14);
}

TEST_CASE("cumulative integral matches the antiderivative") {
  const cplx mu(0.4, 2.0);
  auto worst_err = [&](const VGrid& g) {
    std::vector<cplx> f(g.n());
    for (int i = 0; i < g.n(); ++i)
      f[i] = std::exp(mu * g.nodes()[i]);
    const auto G = g.cumulative_from_zero(f);
    CHECK(std::abs(G[g.mid()]) == 0.0);
    double worst = 0.0;
    for (int i = 0; i < g.n(); ++i) {
      const cplx exact = (std::exp(mu * g.nodes()[i]) - 1.0) / mu;
      worst = std::max(worst, std::abs(G[i] - exact));
    }
    return worst;
  };
  const double e257 = worst_err(VGrid(257));
  const double e513 = worst_err(VGrid(513));
  CHECK(e257 < 1e-8);
  // fourth-order rule: halving h should shrink the error by about 16
  CHECK(e513 < e257 / 8.0);
}

TEST_CASE("reverser is an involution and anticommutes with L") {
  VGrid g;
  std::mt19937 rng(7);
  for (int rep = 0; rep < 3; ++rep) {
    const auto p = smooth_point(g, rng);
    const auto p2 = apply_S(apply_S(p, g), g);
    CHECK((p2 - p).max_abs() < 1e-14);
    const auto lhs = apply_L(apply_S(p, g), 1.5, 2.0, g);
    auto rhs = apply_S(apply_L(p, 1.5, 2.0, g), g);
    rhs *= cplx(-1.0);
    CHECK((lhs - rhs).max_abs() < 1e-11);
  }
}

TEST_CASE("resolvent inverts lambda I - L") {
  VGrid g;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double w = 2.0, csq = 4.0 / 3.0;
  int tested = 0;
  while (tested < 5) {
    const cplx lam(1.2 * u(rng), 1.8 * u(rng));
    // quadrature error in the traces is amplified by 1/|N(lambda)|
    if (std::abs(symbol(lam, csq, w)) < 0.05) continue;
    const auto f = smooth_point(g, rng);
    const auto U = resolvent_solve(lam, f, csq, w, g);
    auto res = lam * U - apply_L(U, csq, w, g);
    res -= f;
    INFO("lambda = ", lam, "  |N| = ", std::abs(symbol(lam, csq, w)));
    CHECK(res.max_abs() < 1e-7);
    // the solution is a genuine phase point: histories match the scalars
    CHECK(domain_residual(U, g) < 1e-12);
    ++tested;
  }
}

TEST_CASE("resolvent refuses nearly singular lambda") {
  VGrid g;
  const auto f = PhasePoint::zero(g);
  // lambda = 0 is a root of the symbol at sonic speed
  CHECK_THROWS_AS(resolvent_solve(cplx(0.0, 1e-9), f, 4.0 / 3.0, 2.0, g),
                  NearSingular);
}
