#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "blowlab/errors.hpp"
#include "blowlab/stationary.hpp"
#include "oracles.hpp"

using namespace blowlab;

namespace {

// (-Δ)^{α/2} |x|^{-a} = ℓ |x|^{-a-α}, ℓ = 2^α Γ((a+α)/2) Γ((d-a)/2) / (Γ(a/2) Γ((d-a-α)/2)).
double riesz_multiplier(double alpha, int d, double a) {
  return std::pow(2.0, alpha) * std::tgamma(0.5 * (a + alpha)) * std::tgamma(0.5 * (d - a)) /
         (std::tgamma(0.5 * a) * std::tgamma(0.5 * (d - a - alpha)));
}

}  // namespace

TEST_CASE("singular constant") {
  CHECK(singular_constant(2.0, 5, 3.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(singular_constant(1.0, 3, 3.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  // α = 2: s^{p-1} = (2/(p-1)) (d - 2 - 2/(p-1)).
  for (int d : {3, 4, 7, 20})
    for (double p : {2.5, 3.0, 6.0}) {
      const double g = 1.0 / (p - 1.0);
      if (d - 2.0 - 2.0 * g <= 0.0) continue;
      CHECK(singular_constant(2.0, d, p) == doctest::Approx(std::pow(2.0 * g * (d - 2.0 - 2.0 * g), g)).epsilon(1e-13));
    }
  // Generic α: s^{p-1} is the Riesz multiplier of the decay exponent.
  for (double alpha : {0.5, 1.2, 1.8}) {
    const int d = 3;
    const double p = 4.0;
    CHECK(std::pow(singular_constant(alpha, d, p), p - 1.0) ==
          doctest::Approx(riesz_multiplier(alpha, d, alpha / (p - 1.0))).epsilon(1e-12));
  }
  CHECK(std::isfinite(log_singular_constant(1.0, 100000, 3.0)));
}

TEST_CASE("parameter domain") {
  // p = 1 + α/(d-α) is the boundary.
  CHECK_THROWS_AS(SingularSolution::make(2.0, 3, 3.0), DomainError);
  CHECK_THROWS_AS(SingularSolution::make(1.5, 2, 4.0), DomainError);
  try {
    SingularSolution::make(2.0, 3, 2.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("d/2") != std::string::npos);
  }
  CHECK_NOTHROW(SingularSolution::make(2.0, 3, 3.5));
}

TEST_CASE("profile and Morrey norm") {
  const auto sol = SingularSolution::make(2.0, 5, 3.0);
  CHECK(sol.decay_exponent() == 1.0);
  CHECK(sol(2.0) == doctest::Approx(std::sqrt(2.0) / 2.0));
  const auto prof = sol.profile(1e-3, 1e3, 121);
  REQUIRE(prof.tail_exponent.has_value());
  const double sigma = oracle::sphere_area(5);
  CHECK(singular_morrey_norm(sol, 1.0) == doctest::Approx(sigma * std::sqrt(2.0) / 4.0).epsilon(1e-14));
  CHECK(singular_morrey_norm(sol, 1.0) == doctest::Approx(radial_concentration(prof, 3.0, 2.0).value).epsilon(1e-10));
  CHECK(singular_morrey_norm(sol, 2.0) == doctest::Approx(std::sqrt(sigma / 3.0) * std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(singular_morrey_norm(sol, 5.0), DomainError);
}

TEST_CASE("hypersingular multiplier against the Riesz formula") {
  for (auto [alpha, d, p] : {std::tuple{1.0, 3, 3.0}, std::tuple{1.5, 2, 5.0}, std::tuple{0.5, 5, 2.0}, std::tuple{1.2, 2, 6.0}}) {
    const auto sol = SingularSolution::make(alpha, d, p);
    const double ref = riesz_multiplier(alpha, d, sol.decay_exponent());
    INFO("alpha=" << alpha << " d=" << d << " p=" << p);
    for (double r : {0.5, 2.0}) CHECK(stationary_multiplier(sol, r) == doctest::Approx(ref).epsilon(1e-7));
    CHECK(stationary_residual(sol, 1.0) < 1e-7);
  }
  const auto lap = SingularSolution::make(2.0, 5, 3.0);
  CHECK(stationary_residual(lap, 1.0) < 1e-14);
}

TEST_CASE("large-d ratio settles") {
  const std::vector<int> ds = {100, 1000, 10000, 100000};
  const auto rep = singular_asymptotics_check(1.0, 3.0, ds);
  REQUIRE(rep.ratios.size() == ds.size());
  CHECK(rep.last_relative_change < 1e-3);
  for (double r : rep.ratios) CHECK(r > 0.0);
}
