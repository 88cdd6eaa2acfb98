#include "blowlab/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <vector>

#include "blowlab/errors.hpp"

namespace blowlab::num {

namespace {

// One rule object per thread: the abscissa tables grow lazily.
boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule;
}

boost::math::quadrature::exp_sinh<double>& exp_sinh_rule() {
  thread_local boost::math::quadrature::exp_sinh<double> rule(12);
  return rule;
}

}  // namespace

Integral integrate(const Fn& f, double a, double b, double rel_tol) {
  if (a == b) return {};
  Integral out;
  double l1 = 0.0;
  // Two-argument form: nodes that round onto an endpoint are dropped instead
  // of tripping the rule's internal assertions.
  auto g = [&](double x, double) { return (x <= a || x >= b) ? 0.0 : f(x); };
  out.value = tanh_sinh_rule().integrate(g, a, b, rel_tol, &out.error, &l1);
  out.error *= std::max(std::abs(out.value), l1);
  return out;
}

Integral integrate_to_infinity(const Fn& f, double a, double rel_tol) {
  Integral out;
  double l1 = 0.0;
  out.value = exp_sinh_rule().integrate(f, a, std::numeric_limits<double>::infinity(), rel_tol,
                                        &out.error, &l1);
  out.error *= std::max(std::abs(out.value), l1);
  return out;
}

Integral integrate_smooth(const Fn& f, double a, double b, double rel_tol) {
  if (a == b) return {};
  Integral out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, rel_tol,
                                                                            &out.error);
  return out;
}

Extremum maximize(const Fn& f, double a, double b, int samples, double x_tol) {
  if (!(b > a)) return {a, f(a)};
  samples = std::max(samples, 3);
  const double step = (b - a) / (samples - 1);
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double v = f(a + step * i);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = a + step * std::max(best - 1, 0);
  double hi = a + step * std::min(best + 1, samples - 1);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > x_tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    }
  }
  Extremum out{0.5 * (lo + hi), f(0.5 * (lo + hi))};
  if (best_val > out.value) out = {a + step * best, best_val};
  return out;
}

double log_integral_exp(const Fn& log_integrand, double lo, double hi) {
  const Extremum peak = maximize(log_integrand, lo, hi, 256, 1e-6);
  if (!std::isfinite(peak.value)) throw QuadratureError("log_integral_exp: no finite maximum", 0.0);
  const double shift = peak.value;
  auto scaled = [&](double x) {
    const double g = log_integrand(x) - shift;
    return g > -745.0 ? std::exp(std::min(g, 700.0)) : 0.0;
  };
  // The bulk sits near the peak; integrate outward in both directions.
  const double left = integrate_to_infinity([&](double s) { return scaled(peak.x - s); }, 0.0).value;
  const double right = integrate_to_infinity([&](double s) { return scaled(peak.x + s); }, 0.0).value;
  return shift + std::log(left + right);
}

std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) throw DomainError("linear_fit: need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(std::max(n, 1)));
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace blowlab::num
