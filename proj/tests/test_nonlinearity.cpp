#include <doctest.h>

#include <cmath>

#include "blowlab/errors.hpp"
#include "blowlab/nonlinearity.hpp"

using namespace blowlab;

TEST_CASE("power transform in closed form") {
  const OsgoodTransform h(Nonlinearity::power(2.0, 3.0));
  for (double w : {1e-3, 0.5, 7.0, 1e4}) CHECK(h.h(w) == doctest::Approx(1.0 / (4.0 * w * w)).epsilon(1e-14));
}

TEST_CASE("power_sum transform against partial fractions") {
  // 1/(u²(1+u)) = 1/u² - 1/u + 1/(1+u)  ⇒  h(w) = 1/w - ln(1 + 1/w).
  const OsgoodTransform h(Nonlinearity::power_sum(1.0, 2.0, 1.0, 3.0));
  for (double w : {1e-4, 0.1, 1.0, 3.0, 50.0, 1e5}) {
    const double exact = 1.0 / w - std::log1p(1.0 / w);
    CHECK(h.h(w) == doctest::Approx(exact).epsilon(1e-11));
  }
}

TEST_CASE("exponential transform") {
  const OsgoodTransform h(Nonlinearity::exponential());
  for (double w : {1e-3, 0.5, 2.0, 30.0})
    CHECK(h.h(w) == doctest::Approx(-std::log(1.0 - std::exp(-w))).epsilon(1e-9));
  // 1 - e^{-w} = w(1 - w/2 + ...) for tiny w.
  CHECK(h.h(1e-12) == doctest::Approx(-std::log(1e-12) + 5e-13).epsilon(1e-15));
  CHECK(h.h(40.0) == doctest::Approx(std::exp(-40.0)).epsilon(1e-12));
}

TEST_CASE("h(h^{-1}(T)) = T over six decades") {
  const Nonlinearity sources[] = {Nonlinearity::power(1.0, 2.0), Nonlinearity::power(3.0, 1.5),
                                  Nonlinearity::power_sum(1.0, 2.0, 1.0, 3.0), Nonlinearity::power_sum(0.5, 1.2, 2.0, 4.0)};
  for (const auto& F : sources) {
    const OsgoodTransform h(F);
    for (double T = 1e-3; T <= 1e3; T *= 1.9) CHECK(h.h(h.h_inverse(T)) == doctest::Approx(T).epsilon(1e-9));
  }
  const OsgoodTransform e(Nonlinearity::exponential());
  for (double T = 1e-3; T <= 700.0; T *= 1.9) CHECK(e.h(e.h_inverse(T)) == doctest::Approx(T).epsilon(1e-9));
}

TEST_CASE("h is decreasing") {
  const OsgoodTransform h(Nonlinearity::power_sum(1.0, 2.0, 1.0, 3.0));
  double prev = h.h(1e-3);
  for (double w = 2e-3; w < 1e3; w *= 2.0) {
    const double cur = h.h(w);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("source evaluation and convexity") {
  const auto F = Nonlinearity::power_sum(1.0, 2.0, 0.5, 3.0);
  CHECK(F(2.0) == doctest::Approx(4.0 + 4.0));
  CHECK(F.derivative(2.0) == doctest::Approx(4.0 + 6.0));
  CHECK(F(0.0) == 0.0);
  CHECK(F.min_second_difference() >= 0.0);
  CHECK(Nonlinearity::exponential().min_second_difference() >= 0.0);
  CHECK(Nonlinearity::exponential()(1e-10) == doctest::Approx(1e-10).epsilon(1e-12));
  CHECK_THROWS_AS(eval_F(F, -1.0), DomainError);
  CHECK(F.small_u_exponent() == 2.0);
}

TEST_CASE("invalid sources") {
  CHECK_THROWS_AS(Nonlinearity::power(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Nonlinearity::power(-1.0, 2.0), DomainError);
  CHECK_THROWS_AS(OsgoodTransform(Nonlinearity::zero()), CriterionInapplicable);
  CHECK_THROWS_AS(OsgoodTransform(Nonlinearity::power(1.0, 2.0)).h(0.0), DomainError);
  CHECK_THROWS_AS(OsgoodTransform(Nonlinearity::power(1.0, 2.0)).h_inverse(-1.0), DomainError);
}

TEST_CASE("Fujita exponent and threshold constant") {
  CHECK(fujita_exponent(2.0, 1) == 3.0);
  CHECK(fujita_exponent(1.0, 2) == 1.5);
  CHECK_THROWS_AS(fujita_exponent(2.5, 1), DomainError);
  CHECK(threshold_constant_c(2.0, 2.0).value == 1.0);
  CHECK(threshold_constant_c(2.0, 3.0).value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(threshold_constant_c(2.0, 3.0).specified);
  const auto c = threshold_constant_c(1.0, 3.0);
  CHECK_FALSE(c.specified);
  CHECK(c.value == doctest::Approx(std::sqrt(0.5)));
  CHECK(threshold_constant_c(1.0, 3.0, 0.9).value == 0.9);
}
