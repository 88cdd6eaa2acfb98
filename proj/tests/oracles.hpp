#pragma once

// Reference numerics for the tests, written independently of the library.

#include <cmath>
#include <functional>

namespace oracle {

/// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// ∫_{e^lo}^{e^hi} f(x) dx via Simpson in y = ln x.
inline double simpson_log(const std::function<double(double)>& f, double lo, double hi, int n = 20000) {
  return simpson([&](double y) { const double x = std::exp(y); return f(x) * x; }, lo, hi, n);
}

/// Maximum of a unimodal f on [a, b] by ternary search.
inline double max_unimodal(const std::function<double(double)>& f, double a, double b, int iters = 300) {
  for (int i = 0; i < iters; ++i) {
    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2)) a = m1; else b = m2;
  }
  return f(0.5 * (a + b));
}

inline double sphere_area(int d) { return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d); }

/// (k_t * e^{-x²})(x) for the 1D gaussian_like kernel of unit scale: J^{*n} is a
/// Gaussian of variance 2n, so the Poisson series is exact.
inline double poisson_gaussian(double t, double x, bool include_atom = true) {
  double sum = include_atom ? std::exp(-x * x) : 0.0;
  double w = 1.0;
  for (int n = 1; n < 2000; ++n) {
    w *= t / n;
    const double term = w / std::sqrt(1.0 + 4.0 * n) * std::exp(-x * x / (1.0 + 4.0 * n));
    sum += term;
    if (n > t && term < 1e-18 * sum) break;
  }
  return std::exp(-t) * sum;
}

}  // namespace oracle
