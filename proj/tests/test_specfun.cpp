#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blowlab/errors.hpp"
#include "blowlab/specfun.hpp"
#include "oracles.hpp"

using namespace blowlab;

TEST_CASE("log_gamma matches high-precision references") {
  // mpmath at 30 digits.
  CHECK(specfun::log_gamma(171.0) == doctest::Approx(706.573062245787347).epsilon(1e-15));
  CHECK(specfun::log_gamma(0.001) == doctest::Approx(6.907178885383853).epsilon(1e-15));
  CHECK(specfun::log_gamma(1e6) == doctest::Approx(12815504.569147611660).epsilon(1e-15));
  CHECK(specfun::log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-15));
  CHECK(std::abs(specfun::log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(specfun::log_gamma(2.0)) < 1e-15);
}

TEST_CASE("log_gamma agrees with std::lgamma across scales") {
  for (double z = 1e-4; z < 1e5; z *= 1.37) {
    const double ref = std::lgamma(z);
    CHECK(std::abs(specfun::log_gamma(z) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("log_gamma rejects poles and non-finite input") {
  CHECK_THROWS_AS(specfun::log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(specfun::log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(specfun::log_gamma(std::nan("")), DomainError);
  CHECK_THROWS_AS(specfun::log_gamma(INFINITY), DomainError);
}

TEST_CASE("sphere_area") {
  CHECK(specfun::sphere_area(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(specfun::sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(specfun::sphere_area(3) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
  CHECK(specfun::sphere_area(5) == doctest::Approx(8.0 * std::numbers::pi * std::numbers::pi / 3.0).epsilon(1e-14));
  CHECK(specfun::sphere_area(5) == doctest::Approx(26.3189).epsilon(1e-5));
  // σ_{d+2} = 2π σ_d / d.
  for (int d = 1; d < 3000; d += 7)
    CHECK(specfun::log_sphere_area(d + 2) - specfun::log_sphere_area(d) ==
          doctest::Approx(std::log(2.0 * std::numbers::pi / d)).epsilon(1e-12));
  CHECK(std::isfinite(specfun::log_sphere_area(100000)));
  CHECK_THROWS_AS(specfun::sphere_area(0), DomainError);
}

TEST_CASE("gamma_ratio") {
  for (double z : {0.3, 1.7, 5.0, 40.0})
    CHECK(specfun::gamma_ratio(z, 0.5, -0.25) ==
          doctest::Approx(std::tgamma(z + 0.5) / std::tgamma(z - 0.25)).epsilon(1e-13));
  // Large z: z^{a-b} (1 + (a-b)(a+b-1)/(2z) + O(z^-2)).
  const double z = 1e8, a = 0.5, b = -0.25;
  const double approx = std::pow(z, a - b) * (1.0 + (a - b) * (a + b - 1.0) / (2.0 * z));
  CHECK(specfun::gamma_ratio(z, a, b) == doctest::Approx(approx).epsilon(1e-12));
}

TEST_CASE("stirling_ratio follows its series") {
  // Truncated after the z^{-3} term; the remainder is about 571/(2488320 z^4).
  for (double z : {10.0, 100.0, 1e4}) {
    const double series = 1.0 + 1.0 / (12.0 * z) + 1.0 / (288.0 * z * z) - 139.0 / (51840.0 * z * z * z);
    CHECK(specfun::stirling_ratio(z) == doctest::Approx(series).epsilon(3e-4 / std::pow(z, 4.0) + 1e-15));
  }
  CHECK(specfun::stirling_ratio(19.9) == doctest::Approx(specfun::stirling_ratio(20.0)).epsilon(1e-3));
  CHECK(specfun::stirling_ratio(1.0) == doctest::Approx(std::exp(1.0) / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
}
