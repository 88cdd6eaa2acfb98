#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "blowlab/errors.hpp"
#include "blowlab/stable.hpp"
#include "oracles.hpp"

using namespace blowlab;
constexpr double kPi = std::numbers::pi;

TEST_CASE("alpha = 1 subordinator density is the Levy density") {
  for (double lambda = 1e-3; lambda < 1e6; lambda *= 3.1) {
    const double levy = std::exp(-1.0 / (4.0 * lambda)) / (2.0 * std::sqrt(kPi) * std::pow(lambda, 1.5));
    CHECK(subordinator_density(1.0, lambda) == doctest::Approx(levy).epsilon(1e-12));
  }
  CHECK(subordinator_density(1.0, 0.0) == 0.0);
  CHECK(subordinator_density(1.0, -1.0) == 0.0);
}

TEST_CASE("Laplace transform of the subordinator density") {
  for (double alpha : {0.4, 1.0, 1.5, 1.9}) {
    const double beta = alpha / 2.0;
    for (double s : {0.3, 1.0, 2.0}) {
      const double lt = oracle::simpson_log([&](double l) { return subordinator_density(alpha, l) * std::exp(-s * l); },
                                            std::log(1e-8), std::log(1e12), 6000);
      INFO("alpha=" << alpha << " s=" << s);
      CHECK(lt == doctest::Approx(std::exp(-std::pow(s, beta))).epsilon(1e-8));
    }
  }
}

TEST_CASE("fractional moments") {
  // E[λ^s] = Γ(1 - s/β)/Γ(1 - s), s < β.
  for (double alpha : {0.8, 1.5}) {
    const double beta = alpha / 2.0;
    for (double s : {-1.0, -0.3, 0.2 * beta}) {
      const double ref = std::tgamma(1.0 - s / beta) / std::tgamma(1.0 - s);
      CHECK(subordinator_moment(alpha, s) == doctest::Approx(ref).epsilon(1e-13));
      const double top = 1e16;
      double quad = oracle::simpson_log([&](double l) { return subordinator_density(alpha, l) * std::pow(l, s); },
                                        std::log(1e-9), std::log(top), 8000);
      // Tail beyond `top` from f(λ) ~ Γ(1+β) sin(πβ)/π · λ^{-1-β}.
      quad += std::tgamma(1.0 + beta) * std::sin(kPi * beta) / kPi * std::pow(top, s - beta) / (beta - s);
      CHECK(quad == doctest::Approx(ref).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(subordinator_moment(1.0, 0.6), DomainError);
}

TEST_CASE("closed-form profiles") {
  const StableProfile gauss(2.0, 3), poisson1(1.0, 1), poisson3(1.0, 3);
  for (double rho : {0.0, 0.5, 2.0, 9.0}) {
    CHECK(gauss(rho) == doctest::Approx(std::pow(4.0 * kPi, -1.5) * std::exp(-rho * rho / 4.0)).epsilon(1e-14));
    CHECK(poisson1(rho) == doctest::Approx(1.0 / (kPi * (1.0 + rho * rho))).epsilon(1e-14));
    CHECK(poisson3(rho) == doctest::Approx(1.0 / (kPi * kPi * std::pow(1.0 + rho * rho, 2.0))).epsilon(1e-14));
  }
  CHECK(gauss.log_value(1e3) == doctest::Approx(-1.5 * std::log(4.0 * kPi) - 2.5e5).epsilon(1e-14));
  // Derivatives against centered differences.
  for (double rho : {0.3, 1.7}) {
    const double h = 1e-5;
    CHECK(poisson3.derivative(rho) == doctest::Approx((poisson3(rho + h) - poisson3(rho - h)) / (2 * h)).epsilon(1e-7));
    CHECK(gauss.derivative(rho) == doctest::Approx((gauss(rho + h) - gauss(rho - h)) / (2 * h)).epsilon(1e-7));
  }
  CHECK_THROWS_AS(StableProfile(1.5, 1).derivative(1.0), DomainError);
  CHECK_THROWS_AS(StableProfile(1.5, 1, ProfileMethod::closed_form), DomainError);
}

TEST_CASE("subordination reproduces the closed forms") {
  for (int d : {1, 2, 3}) {
    const StableProfile sub(1.0, d, ProfileMethod::subordination);
    const StableProfile exact(1.0, d, ProfileMethod::closed_form);
    for (double rho = 0.0; rho <= 10.0; rho += 0.37) CHECK(std::abs(sub(rho) - exact(rho)) < 1e-9);
  }
}

TEST_CASE("value at the origin") {
  for (double alpha : {0.7, 1.0, 1.5, 2.0})
    for (int d : {1, 2, 3}) {
      const double ref = std::pow(4.0 * kPi, -0.5 * d) * std::tgamma(1.0 + d / alpha) / std::tgamma(1.0 + 0.5 * d);
      const StableProfile R(alpha, d);
      CHECK(R.value_at_origin() == doctest::Approx(ref).epsilon(1e-13));
      CHECK(R(0.0) == doctest::Approx(ref).epsilon(1e-7));
    }
}

TEST_CASE("alpha = 1.5 profile: mass, table accuracy and scaling") {
  const StableProfile sub(1.5, 1, ProfileMethod::subordination);
  const StableProfile tab(1.5, 1, ProfileMethod::tabulated);
  const double mass = 2.0 * oracle::simpson_log([&](double r) { return tab(r); }, std::log(1e-6), std::log(1e9), 20000);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  for (double rho : {0.01, 0.2, 1.0, 4.0, 30.0, 500.0}) CHECK(tab(rho) == doctest::Approx(sub(rho)).epsilon(1e-6));
  const double t = 2.7, r = 1.3;
  CHECK(tab.kernel(t, r) == doctest::Approx(std::pow(t, -1.0 / 1.5) * tab(r * std::pow(t, -1.0 / 1.5))).epsilon(1e-14));
  // Tail: R(ρ) ~ c ρ^{-d-α} with c = Γ(1+α) sin(πα/2)/π in d = 1.
  const double c = std::tgamma(2.5) * std::sin(kPi * 0.75) / kPi;
  CHECK(sub(1e4) * std::pow(1e4, 2.5) == doctest::Approx(c).epsilon(1e-4));
}

TEST_CASE("kernel bound report") {
  std::vector<double> grid;
  for (double r = 0.0; r <= 100.0; r += 0.5) grid.push_back(r);
  const auto rep = verify_kernel_bounds(StableProfile(1.0, 2), grid);
  CHECK(rep.C > 0.0);
  CHECK(rep.min_value > 0.0);
  CHECK(rep.gradient_checked);
  CHECK(rep.C_gradient > 0.0);
  // Poisson in d = 2 decays like ρ^{-3}.
  CHECK(rep.empirical_decay_exponent == doctest::Approx(3.0).epsilon(0.02));
}
