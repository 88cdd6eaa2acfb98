#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "blowlab/blowup.hpp"
#include "blowlab/errors.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/stationary.hpp"
#include "oracles.hpp"

using namespace blowlab;
constexpr double kPi = std::numbers::pi;

TEST_CASE("moment at zero, gaussian_like kernel") {
  // k_20 carries mass 3e-6 beyond |x| = 64, so the box must be wider.
  const Mesh mesh{1, 128.0, 2048};
  const auto u0 = GridFunction::sample(mesh, [](double r) { return std::exp(-r * r); });
  for (double T : {0.2, 1.0, 5.0, 20.0}) {
    const auto m = moment_at_zero(u0, KernelSpec::gaussian_like(1), T);
    CHECK(m.value == doctest::Approx(oracle::poisson_gaussian(T, 0.0)).epsilon(1e-12));
    CHECK(m.center == mesh.flat(mesh.origin_index()));
  }
}

TEST_CASE("moment at zero, fractional kernels") {
  const Mesh mesh{1, 32.0, 1024};
  const auto u0 = GridFunction::sample(mesh, [](double r) { return std::exp(-r * r); });
  for (double T : {0.1, 1.0, 4.0})
    CHECK(moment_at_zero(u0, KernelSpec::pure_fractional(1, 2.0), T, 1.0).value ==
          doctest::Approx(1.0 / std::sqrt(1.0 + 4.0 * T)).epsilon(1e-10));

  const auto radial = RadialProfile::sample(1, [](double r) { return std::exp(-r * r); }, 1e-4, 40.0, 6000);
  for (double T : {0.1, 1.0, 3.0})
    CHECK(moment_at_zero(radial, KernelSpec::pure_fractional(1, 1.0), T) ==
          doctest::Approx(std::exp(T * T) * std::erfc(T)).epsilon(1e-6));
  CHECK_THROWS_AS(moment_at_zero(radial, KernelSpec::gaussian_like(1), 1.0), DomainError);
}

TEST_CASE("criterion on multiples of the singular solution") {
  // W_T = M K T^{-1/2} and h^{-1}(T) = (2T)^{-1/2}: the ratio is M K √2 for every T.
  const auto sol = SingularSolution::make(2.0, 5, 3.0);
  const double K = 0.531923040535;
  for (double M : {1.0, 2.0}) {
    CriterionInput in;
    in.radial = sol.profile(1e-4, 1e4, 161).scaled(M);
    in.kernel = KernelSpec::pure_fractional(5, 2.0);
    in.nonlinearity = Nonlinearity::power(1.0, 3.0);
    in.T_grid = num::logspace(0.01, 10.0, 7);
    const auto v = evaluate_criterion(in);
    for (const auto& pt : v.curve) {
      CHECK(pt.ratio == doctest::Approx(M * K * std::sqrt(2.0)).epsilon(1e-6));
      CHECK(pt.power_form == doctest::Approx(M * K).epsilon(1e-6));
    }
    if (M == 2.0) {
      REQUIRE(v.T_star.has_value());
      CHECK(*v.T_star == doctest::Approx(0.01));
      CHECK(v.classification == Classification::criterion_met);
    } else {
      CHECK_FALSE(v.T_star.has_value());
      CHECK(v.classification == Classification::fujita_supercritical_small_data);
    }
  }
}

TEST_CASE("criterion curve and T_star on grid data") {
  const Mesh mesh{1, 64.0, 1024};
  CriterionInput in;
  in.grid = GridFunction::sample(mesh, [](double r) { return 5.0 * std::exp(-r * r); });
  in.kernel = KernelSpec::gaussian_like(1);
  in.nonlinearity = Nonlinearity::power(1.0, 2.0);
  const auto v = evaluate_criterion(in);
  REQUIRE(v.T_star.has_value());
  // F = u²: h^{-1}(T) = 1/T, so the ratio is T W_T(0).
  for (const auto& pt : v.curve) {
    CHECK(pt.h_inverse == doctest::Approx(1.0 / pt.T).epsilon(1e-14));
    CHECK(pt.ratio == doctest::Approx(pt.T * 5.0 * oracle::poisson_gaussian(pt.T, 0.0)).epsilon(1e-10));
    if (pt.T < *v.T_star) CHECK(pt.ratio <= 1.0);
  }
  CHECK_FALSE(v.summary().empty());
}

TEST_CASE("small data above the Fujita exponent") {
  const Mesh mesh{1, 64.0, 1024};
  CriterionInput in;
  in.grid = GridFunction::sample(mesh, [](double r) { return 0.01 * std::exp(-r * r); });
  in.kernel = KernelSpec::gaussian_like(1);
  in.nonlinearity = Nonlinearity::power(1.0, 4.0);
  const auto v = evaluate_criterion(in);
  CHECK_FALSE(v.T_star.has_value());
  CHECK(v.classification == Classification::fujita_supercritical_small_data);
  // The kernel outgrows the 64-wide box well before T = 1e3.
  CHECK_FALSE(v.extension_note.empty());
}

TEST_CASE("criterion input errors") {
  CriterionInput in;
  in.kernel = KernelSpec::gaussian_like(1);
  CHECK_THROWS_AS(evaluate_criterion(in), DomainError);
  in.grid = GridFunction::sample(Mesh{1, 8.0, 128}, [](double r) { return std::exp(-r * r); });
  in.nonlinearity = Nonlinearity::zero();
  CHECK_THROWS_AS(evaluate_criterion(in), CriterionInapplicable);
}

TEST_CASE("Morrey sufficient condition") {
  const auto sol = SingularSolution::make(2.0, 5, 3.0);
  const double value = oracle::sphere_area(5) * std::sqrt(2.0) / 4.0;
  const auto cond = morrey_sufficient_condition(sol.profile(1e-3, 1e3, 121), 2.0, 5, 3.0, 1.0);
  CHECK(cond.value == doctest::Approx(value).epsilon(1e-10));
  CHECK(cond.met);
  CHECK(cond.kappa == doctest::Approx(value / (oracle::sphere_area(5) * std::pow(5.0, 0.25))).epsilon(1e-10));
  CHECK_FALSE(morrey_sufficient_condition(sol.profile(1e-3, 1e3, 121), 2.0, 5, 3.0, 100.0).met);
}
