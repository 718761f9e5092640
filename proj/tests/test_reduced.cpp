#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nanokit/reduced.hpp"

using namespace nanokit;

namespace {

constexpr double kW = 2.0;
constexpr double kEps = 0.1;

Vec5 random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const cplx u5(u(rng), u(rng));
  return {u(rng), u(rng), u(rng), u5, std::conj(u5)};
}

// five-point first derivative, h = 1e-4
template <typename F>
auto d1(F f, double t, double h = 1e-4) {
  return (f(t - 2 * h) - 8.0 * f(t - h) + 8.0 * f(t + h) - f(t + 2 * h)) /
         (12.0 * h);
}

}  // namespace

TEST_CASE("normal form constants at w = 2") {
  const auto k = ReducedCoeffs::from_mass_ratio(kW);
  CHECK(k.c31 == doctest::Approx(3.375).epsilon(1e-15));
  CHECK(k.c32 == doctest::Approx(6.0).epsilon(1e-15));
  // sqrt(2 c31) is also the eps-slope of the near-zero dispersion root
  CHECK(std::abs(std::sqrt(2.0 * k.c31) - 2.598076211353316) < 1e-12);
  CHECK(std::abs(k.s0 - 1.7607542224019335) < 1e-12);
  CHECK(k.dominant());
}

TEST_CASE("dominant field: fixed point, rotation block, homoclinic orbit") {
  const auto k = ReducedCoeffs::from_mass_ratio(kW);
  CHECK(max_abs(dominant_field(Vec5{0, 0, 0, 0, 0}, kEps, k)) == 0.0);

  const auto rot = dominant_field(Vec5{0, 0, 0, 1, 1}, kEps, k);
  CHECK(std::abs(rot[3] - cplx(0.0, k.s0)) < 1e-15);
  CHECK(std::abs(rot[4] + cplx(0.0, k.s0)) < 1e-15);

  const auto H = homoclinic(kEps, k);
  double worst = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double tau = -20.0 + 40.0 * i / 50.0;
    const auto F = dominant_field(H.state(tau), kEps, k);
    const double kap = k.c31 * kEps * kEps - k.c32 * H.H1(tau);
    const Vec5 Hp = {H.H2(tau), H.H2prime(tau), kap * H.H2(tau), 0.0, 0.0};
    worst = std::max(worst, max_abs(F - Hp));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("field respects reversibility and splits into dominant + rest") {
  ReducedCoeffs k = ReducedCoeffs::from_mass_ratio(kW);
  k.c33 = 0.3;
  k.c34 = -0.2;
  k.e31 = 0.5;
  k.e32 = 1.1;
  k.e33 = -0.4;
  k.e34 = 0.7;
  std::mt19937 rng(2);
  for (int rep = 0; rep < 5; ++rep) {
    const auto X = random_state(rng);
    const auto FS = reduced_field(reverse_state(X), kEps, k);
    const auto SF = cplx(-1.0) * reverse_state(reduced_field(X, kEps, k));
    CHECK(max_abs(FS - SF) < 1e-14);
    const auto split = dominant_field(X, kEps, k) + remainder_field(X, kEps, k);
    CHECK(max_abs(split - reduced_field(X, kEps, k)) < 1e-15);
  }
}

TEST_CASE("homoclinic closed-form values and decay") {
  const auto k = ReducedCoeffs::from_mass_ratio(kW);
  const auto H = homoclinic(kEps, k);
  CHECK(H.H1(0.0) == doctest::Approx(0.01125).epsilon(1e-14));
  CHECK(H.H2(0.0) == 0.0);
  CHECK(std::abs(H.H3(0.0)) < 1e-18);
  CHECK(H.u1(0.0) == 0.0);
  CHECK(H.decay_rate() == doctest::Approx(std::sqrt(2.0 * k.c31) * kEps));

  // H2 = H1' and u1' = H1 (five-point difference oracle)
  double worst2 = 0.0, worstu = 0.0, worst2p = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double tau = -20.0 + i;
    worst2 = std::max(worst2, std::abs(d1([&](double t) { return H.H1(t); },
                                          tau) -
                                       H.H2(tau)));
    worstu = std::max(worstu, std::abs(d1([&](double t) { return H.u1(t); },
                                          tau) -
                                       H.H1(tau)));
    worst2p = std::max(worst2p, std::abs(d1([&](double t) { return H.H2(t); },
                                            tau) -
                                         H.H2prime(tau)));
  }
  CHECK(worst2 < 1e-12);
  CHECK(worstu < 1e-12);
  CHECK(worst2p < 1e-12);

  // parities and the sharp sech^2 envelope |H1| e^{2a|tau|} <= 4 max
  const double amp = 2.0 * k.c31 / k.c32 * kEps * kEps;
  for (const double tau : {0.3, 1.7, 8.0, 44.0}) {
    CHECK(H.H1(-tau) == doctest::Approx(H.H1(tau)).epsilon(1e-14));
    CHECK(H.H2(-tau) == doctest::Approx(-H.H2(tau)).epsilon(1e-14));
    CHECK(H.H3(-tau) == doctest::Approx(H.H3(tau)).epsilon(1e-14));
    CHECK(std::abs(H.H1(tau)) <=
          4.0 * amp * std::exp(-H.decay_rate() * tau) * (1.0 + 1e-12));
  }
}

TEST_CASE("fundamental solutions solve the linearized system") {
  const auto k = ReducedCoeffs::from_mass_ratio(kW);
  const auto F = fundamental_solutions(kEps, k);
  const auto H = homoclinic(kEps, k);

  // s1(0) = (0, -2 c31^2 eps / c32, 0, 0, 0)
  const auto s10 = F.s(1, 0.0);
  CHECK(std::abs(s10[0]) < 1e-15);
  CHECK(std::abs(s10[1] + 2.0 * k.c31 * k.c31 * kEps / k.c32) < 1e-12);
  CHECK(std::abs(s10[2]) < 1e-15);

  // finite-difference residual of s' = (dF at H) s over tau in [-30, 30]
  double worst = 0.0;
  for (int l = 1; l <= 5; ++l) {
    for (int i = 0; i < 100; ++i) {
      const double tau = -30.0 + 60.0 * i / 99.0;
      Vec5 num{};
      for (int c = 0; c < 5; ++c)
        num[c] = d1([&](double t) { return F.s(l, t)[c]; }, tau);
      const auto lin =
          dominant_jacobian_apply(H.state(tau), F.s(l, tau), kEps, k);
      worst = std::max(worst, max_abs(num - lin));
    }
  }
  CHECK(worst < 1e-6);

  // primitives: s11' = s1 first slot, s21' = s2 first slot
  double w11 = 0.0, w21 = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double tau = -20.0 + i;
    w11 = std::max(w11, std::abs(d1([&](double t) { return F.s11(t); }, tau) -
                                 std::real(F.s(1, tau)[0])));
    w21 = std::max(w21, std::abs(d1([&](double t) { return F.s21(t); }, tau) -
                                 std::real(F.s(2, tau)[0])));
  }
  CHECK(w11 < 1e-9);
  CHECK(w21 < 1e-9);
}

TEST_CASE("biorthogonality of the fundamental and adjoint sets") {
  const auto k = ReducedCoeffs::from_mass_ratio(kW);
  const auto F = fundamental_solutions(kEps, k);

  // deviation is measured against the dot-product magnitude: at large tau
  // the pairing cancels exponentially large slot products, so the raw
  // deviation is bounded below by rounding of those products
  for (const double tau : {0.1, 1.0, 10.0 / kEps}) {
    for (int l = 1; l <= 5; ++l)
      for (int m = 1; m <= 5; ++m) {
        const auto sl = F.s(l, tau);
        const auto sm = F.sstar(m, tau);
        double scale = 0.0;
        for (int i = 0; i < 5; ++i)
          scale += std::abs(sl[i]) * std::abs(sm[i]);
        const cplx p = pairing(sl, sm);
        CHECK(std::abs(p - (l == m ? 1.0 : 0.0)) <
              1e-9 * std::max(1.0, scale));
      }
  }

  // pairing is constant in tau
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const double tau = u(rng);
    for (int l = 1; l <= 5; ++l)
      for (int m = 1; m <= 5; ++m)
        worst = std::max(worst,
                         std::abs(pairing(F.s(l, tau), F.sstar(m, tau)) -
                                  (l == m ? 1.0 : 0.0)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("symmetries and growth of the fundamental set") {
  const auto k = ReducedCoeffs::from_mass_ratio(kW);
  const auto F = fundamental_solutions(kEps, k);
  const double sgn[6] = {0.0, -1.0, 1.0, 1.0, -1.0, 1.0};
  for (const double tau : {0.2, 1.3, 7.5, 31.0}) {
    for (int l = 1; l <= 5; ++l) {
      const auto lhs = reverse_state(F.s(l, -tau));
      const auto rhs = cplx(sgn[l]) * F.s(l, tau);
      CHECK(max_abs(lhs - rhs) < 1e-12 * std::max(1.0, max_abs(rhs)));
    }
  }

  // single growth constant M over tau in [-40/eps, 40/eps]
  const double rate = std::sqrt(2.0 * k.c31) * kEps;
  double M = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double tau = -400.0 + 800.0 * i / 2000.0;
    M = std::max(M, max_abs(F.s(1, tau)) * std::exp(rate * std::abs(tau)));
    M = std::max(M, max_abs(F.s(2, tau)) * std::exp(-rate * std::abs(tau)));
    M = std::max(M, max_abs(F.s(3, tau)));
    M = std::max(M, max_abs(F.s(4, tau)));
    M = std::max(M, max_abs(F.s(5, tau)));
  }
  CHECK(M <= 50.0);
}
