#include "blowlab/nonlinearity.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "blowlab/errors.hpp"
#include "blowlab/numerics.hpp"

namespace blowlab {

Nonlinearity::Nonlinearity(Kind kind, double c1, double p1, double c2, double p2,
                           std::string description)
    : kind_(kind), c1_(c1), p1_(p1), c2_(c2), p2_(p2), description_(std::move(description)) {}

Nonlinearity Nonlinearity::power(double c, double p) {
  if (!(c > 0.0)) throw DomainError("power nonlinearity: c must be positive");
  if (!(p > 1.0)) throw DomainError("power nonlinearity: p must exceed 1 (Osgood condition)");
  return {Kind::power, c, p, 0.0, 0.0, fmt::format("{}*u^{}", c, p)};
}

Nonlinearity Nonlinearity::power_sum(double a, double p, double b, double q) {
  if (a < 0.0 || b < 0.0 || a + b == 0.0)
    throw DomainError("power_sum nonlinearity: coefficients must be nonnegative, not both zero");
  if (p < 1.0 || q < 1.0) throw DomainError("power_sum nonlinearity: exponents must be >= 1 (convexity)");
  const double top = std::max(a > 0 ? p : 0.0, b > 0 ? q : 0.0);
  if (!(top > 1.0)) throw DomainError("power_sum nonlinearity: largest exponent must exceed 1 (Osgood)");
  // Keep the smaller exponent first so small_u_exponent() is c1/p1.
  if ((b > 0.0 && q < p) || a == 0.0) {
    std::swap(a, b);
    std::swap(p, q);
  }
  return {Kind::power_sum, a, p, b, q, fmt::format("{}*u^{}+{}*u^{}", a, p, b, q)};
}

Nonlinearity Nonlinearity::exponential() {
  return {Kind::exponential, 1.0, 1.0, 0.0, 0.0, "exp(u)-1"};
}

Nonlinearity Nonlinearity::zero() { return {Kind::zero, 0.0, 0.0, 0.0, 0.0, "0"}; }

double Nonlinearity::small_u_exponent() const {
  switch (kind_) {
    case Kind::power:
    case Kind::power_sum: return p1_;
    case Kind::exponential: return 1.0;
    case Kind::zero: break;
  }
  return 0.0;
}

double Nonlinearity::operator()(double u) const {
  switch (kind_) {
    case Kind::power: return c1_ * std::pow(u, p1_);
    case Kind::power_sum: return c1_ * std::pow(u, p1_) + c2_ * std::pow(u, p2_);
    case Kind::exponential: return std::expm1(u);
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

double Nonlinearity::derivative(double u) const {
  switch (kind_) {
    case Kind::power: return c1_ * p1_ * std::pow(u, p1_ - 1.0);
    case Kind::power_sum:
      return c1_ * p1_ * std::pow(u, p1_ - 1.0) + c2_ * p2_ * std::pow(u, p2_ - 1.0);
    case Kind::exponential: return std::exp(u);
    case Kind::zero: return 0.0;
  }
  return 0.0;
}

double Nonlinearity::min_second_difference(double u_max, int samples) const {
  double worst = std::numeric_limits<double>::infinity();
  const auto grid = num::logspace(1e-6, u_max, samples);
  for (double u : grid) {
    const double step = 1e-3 * u;
    const double lo = std::max(u - step, 0.0);
    const double second = (*this)(u + step) - 2.0 * (*this)(u) + (*this)(lo);
    // Relative to the scale of F so large-u samples don't dominate.
    worst = std::min(worst, second / std::max((*this)(u), 1e-300));
  }
  return worst;
}

double eval_F(const Nonlinearity& n, double u) {
  if (u < 0.0) throw DomainError("eval_F: u must be nonnegative");
  return n(u);
}

namespace {

// ∫_w^∞ du/F(u) = ∫_0^1 w / (s² F(w/s)) ds.
// -ln(1 - e^{-x}), accurate at both ends; the map is its own inverse.
double minus_log_one_minus_exp(double x) {
  return x < std::numbers::ln2 ? -std::log(-std::expm1(-x)) : -std::log1p(-std::exp(-x));
}

double compact_tail(const Nonlinearity& F, double w, double tol) {
  auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double u = w / s;
    const double f = F(u);
    if (!std::isfinite(f)) return 0.0;
    return w / (s * s * f);
  };
  const auto r = num::integrate(integrand, 0.0, 1.0, tol);
  if (!std::isfinite(r.value)) throw CriterionInapplicable("Osgood transform diverges");
  return r.value;
}

}  // namespace

OsgoodTransform::OsgoodTransform(Nonlinearity source, double tolerance)
    : source_(std::move(source)), tolerance_(tolerance) {
  if (source_.kind() == Nonlinearity::Kind::zero)
    throw CriterionInapplicable("Osgood condition fails: F = 0");
  if (source_.kind() == Nonlinearity::Kind::power || source_.kind() == Nonlinearity::Kind::exponential) return;
  // Tail audit: ∫_W^∞ du/F must be small for large W and shrink with W.
  const double W = 1e6;
  const double tail = compact_tail(source_, W, 1e-10);
  const double tail2 = compact_tail(source_, 10.0 * W, 1e-10);
  if (!(tail < 1e-3) || !(tail2 < tail))
    throw CriterionInapplicable(
        fmt::format("Osgood condition fails for F = {}: tail {:.3g}", source_.description(), tail));
}

double OsgoodTransform::h(double w) const {
  if (!(w > 0.0)) throw DomainError("osgood_h: w must be positive");
  switch (source_.kind()) {
    case Nonlinearity::Kind::power: {
      const double p = source_.exponent();
      return std::pow(w, 1.0 - p) / (source_.coefficient() * (p - 1.0));
    }
    case Nonlinearity::Kind::exponential:
      // ∫_w^∞ du/(e^u - 1) = -ln(1 - e^{-w}).
      return minus_log_one_minus_exp(w);
    default: return compact_tail(source_, w, tolerance_);
  }
}

double OsgoodTransform::h_inverse(double T) const {
  if (!(T > 0.0)) throw DomainError("osgood_h_inverse: T must be positive");
  switch (source_.kind()) {
    case Nonlinearity::Kind::power: {
      const double p = source_.exponent();
      return std::pow(source_.coefficient() * (p - 1.0) * T, -1.0 / (p - 1.0));
    }
    case Nonlinearity::Kind::exponential: return minus_log_one_minus_exp(T);
    default: break;
  }
  // Seed from the power law with the local exponent of F at a moderate scale.
  const double u_ref = 1.0;
  const double p_loc = std::max(u_ref * source_.derivative(u_ref) / source_(u_ref), 1.0 + 1e-3);
  const double c_loc = source_(u_ref) / std::pow(u_ref, p_loc);
  const double seed = std::pow(c_loc * (p_loc - 1.0) * T, -1.0 / (p_loc - 1.0));

  // h is decreasing in w; g(y) = ln h(e^y) - ln T is decreasing in y.
  auto g = [&](double y) { return std::log(h(std::exp(y))) - std::log(T); };
  double lo = std::log(seed) - 1.0;
  double hi = std::log(seed) + 1.0;
  double glo = g(lo);
  double ghi = g(hi);
  for (int i = 0; i < 200 && glo < 0.0; ++i) glo = g(lo -= 2.0);
  for (int i = 0; i < 200 && ghi > 0.0; ++i) ghi = g(hi += 2.0);
  if (glo < 0.0 || ghi > 0.0) throw DomainError("osgood_h_inverse: could not bracket the root");
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(50), iters);
  return std::exp(0.5 * (root.first + root.second));
}

double osgood_h(const OsgoodTransform& t, double w) { return t.h(w); }
double osgood_h_inverse(const OsgoodTransform& t, double T) { return t.h_inverse(T); }

double fujita_exponent(double alpha, int d) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("fujita_exponent: alpha must lie in (0, 2]");
  if (d < 1) throw DomainError("fujita_exponent: d must be >= 1");
  return 1.0 + alpha / d;
}

ThresholdConstant threshold_constant_c(double alpha, double p, double override_value) {
  if (!(p > 1.0)) throw DomainError("threshold_constant_c: p must exceed 1");
  const double c2 = std::pow(1.0 / (p - 1.0), 1.0 / (p - 1.0));
  if (alpha == 2.0) return {c2, true};
  return {override_value > 0.0 ? override_value : c2, false};
}

}  // namespace blowlab
