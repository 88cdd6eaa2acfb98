#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "blowlab/asymptotics.hpp"
#include "blowlab/errors.hpp"
#include "blowlab/stationary.hpp"
#include "oracles.hpp"

using namespace blowlab;
constexpr double kPi = std::numbers::pi;

TEST_CASE("K_gaussian against direct quadrature") {
  // t = 1: s σ_d ∫ (4π)^{-d/2} e^{-r²/4} r^{d-1-a} dr, a = 2/(p-1).
  for (auto [d, p] : {std::pair{3, 4.0}, std::pair{5, 3.0}, std::pair{8, 2.0}, std::pair{12, 5.0}, std::pair{4, 3.5}}) {
    const double a = 2.0 / (p - 1.0);
    const double s = singular_constant(2.0, d, p);
    const double quad = oracle::simpson_log(
        [&](double r) { return std::pow(4.0 * kPi, -0.5 * d) * std::exp(-r * r / 4.0) * std::pow(r, d - 1 - a); },
        std::log(1e-8), std::log(60.0), 40000);
    INFO("d=" << d << " p=" << p);
    CHECK(K_gaussian(d, p) == doctest::Approx(s * oracle::sphere_area(d) * quad).epsilon(1e-6));
  }
  CHECK(K_gaussian(5, 3.0) == doctest::Approx(0.531923).epsilon(1e-6));
}

TEST_CASE("L_gaussian against a direct supremum") {
  for (auto [d, p] : {std::pair{3, 3.0}, std::pair{4, 2.0}, std::pair{10, 5.0}, std::pair{30, 3.0}, std::pair{6, 1.5}}) {
    const double e = 1.0 / (p - 1.0) - 0.5 * d;
    auto f = [&](double y) {
      const double t = std::exp(y);
      return std::exp(-0.5 * d * std::log(4.0 * kPi) + e * std::log(t) - 1.0 / (4.0 * t));
    };
    const double ref = oracle::max_unimodal(f, -12.0, 8.0);
    const auto L = L_gaussian(d, p);
    INFO("d=" << d << " p=" << p);
    CHECK(L.value() == doctest::Approx(ref).epsilon(1e-9));
    CHECK(L.t0 == doctest::Approx(1.0 / (4.0 * (0.5 * d - 1.0 / (p - 1.0)))).epsilon(1e-12));
  }
  CHECK(L_gaussian(4, 2.0).value() == doctest::Approx(0.0093185).epsilon(1e-5));
}

TEST_CASE("K_fractional for alpha = 1 in closed form") {
  // R = π^{-2}(1+ρ²)^{-2} in d = 3 and a = 1/2: ∫ρ^{3/2}(1+ρ²)^{-2} = Γ(5/4)Γ(3/4)/2.
  const double ref = std::sqrt(0.5) * 4.0 * kPi / (kPi * kPi) * 0.5 * std::tgamma(1.25) * std::tgamma(0.75);
  CHECK(ref == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(K_fractional(1.0, 3, 3.0) == doctest::Approx(ref).epsilon(1e-9));
  for (double t : {0.1, 1.0, 7.0}) CHECK(K_fractional_at(1.0, 3, 3.0, t) == doctest::Approx(ref).epsilon(1e-8));
  // α = 2 through the generic path agrees with the closed form.
  CHECK(K_fractional(2.0, 5, 3.0) == doctest::Approx(K_gaussian(5, 3.0)).epsilon(1e-9));
  CHECK(K_fractional_at(1.5, 3, 3.0, 0.3) == doctest::Approx(K_fractional(1.5, 3, 3.0)).epsilon(1e-6));
}

TEST_CASE("L_fractional for alpha = 1 in closed form") {
  // sup ρ^{d-a} π^{-(d+1)/2} Γ((d+1)/2) (1+ρ²)^{-(d+1)/2} at ρ² = (d-a)/(a+1).
  for (int d : {4, 7, 20}) {
    const double p = 3.0, a = 1.0 / (p - 1.0);
    const double r2 = (d - a) / (a + 1.0);
    const double ref = 0.5 * (d - a) * std::log(r2) - 0.5 * (d + 1) * std::log(kPi) + std::lgamma(0.5 * (d + 1)) -
                       0.5 * (d + 1) * std::log1p(r2);
    const auto L = L_fractional(1.0, d, p);
    CHECK(L.log_value == doctest::Approx(ref).epsilon(1e-10));
    CHECK(L.rho_star == doctest::Approx(std::sqrt(r2)).epsilon(1e-5));
    CHECK(L.lower_bound() <= L.value());
    CHECK(L.value() <= L.upper_bound());
  }
  CHECK_THROWS_AS(L_fractional(1.0, 2, 3.0), DomainError);
}

TEST_CASE("window bound") {
  // β = 1 (α = 1, p = 3/2, d = 6): (1+√2) e^{-√2}.
  CHECK(window_lower_bound(1.0, 6, 1.5) == doctest::Approx((1.0 + std::sqrt(2.0)) * std::exp(-std::sqrt(2.0))).epsilon(1e-12));
  double prev = 1.0;
  for (int d : {10, 100, 1000}) {
    const double eta = window_lower_bound(1.0, d, 3.0);
    CHECK(eta < prev);
    CHECK(eta > std::exp(-1.0));  // tends to e^{-1} from above
    prev = eta;
  }
}

TEST_CASE("sweeps") {
  const std::vector<int> ds = {100, 200, 400, 800};
  const auto k = sweep(AsymptoticQuantity::K, 2.0, 3.0, ds);
  CHECK(std::abs(k.slope) < 0.01);
  CHECK(std::abs(k.last_ratio - 1.0) < 0.02);
  const auto l = sweep(AsymptoticQuantity::L, 2.0, 2.0, ds);
  CHECK(l.slope == doctest::Approx(-0.5).epsilon(0.02));
  CHECK(l.band_ratio < 1.05);
  CHECK_FALSE(l.verdict().empty());
  for (double v : l.normalized) CHECK(v > 0.0);
}
