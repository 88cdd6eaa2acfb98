#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace blowlab::num {

using Fn = std::function<double(double)>;

struct Integral {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// ∫_a^b f, tanh-sinh (tolerates integrable endpoint singularities).
Integral integrate(const Fn& f, double a, double b, double rel_tol = 1e-12);

/// ∫_a^∞ f, exp-sinh.
Integral integrate_to_infinity(const Fn& f, double a, double rel_tol = 1e-12);

/// ∫_a^b f with adaptive Gauss-Kronrod 15/31; f must be smooth inside.
Integral integrate_smooth(const Fn& f, double a, double b, double rel_tol = 1e-12);

/// ln ∫_{-∞}^{∞} exp(g(x)) dx for a unimodal-ish log-integrand that may over-
/// or underflow: the maximum is located on [lo, hi] first and factored out.
double log_integral_exp(const Fn& log_integrand, double lo, double hi);

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Maximizes f on [a, b]: scan on `samples` points, then golden-section around
/// the best sample to |Δx| <= x_tol.
Extremum maximize(const Fn& f, double a, double b, int samples = 64, double x_tol = 1e-10);

/// Least-squares slope and intercept of y against x.
std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y);

/// Log-spaced grid of n points covering [lo, hi].
std::vector<double> logspace(double lo, double hi, int n);

}  // namespace blowlab::num
