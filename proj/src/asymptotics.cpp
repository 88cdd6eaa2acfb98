#include "blowlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <limits>
#include <numbers>

#include "blowlab/errors.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/specfun.hpp"
#include "blowlab/stable.hpp"
#include "blowlab/stationary.hpp"

namespace blowlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double log_sub_peak(double alpha, double gamma) {
  // ln sup_λ f(λ) λ^{1-γ}; the sup sits at moderate λ for any β ∈ (0,1).
  auto g = [&](double y) {
    const double f = subordinator_density(alpha, std::exp(y));
    return f > 0.0 ? std::log(f) + (1.0 - gamma) * y : -kInf;
  };
  return num::maximize(g, -8.0, 12.0, 81, 1e-9).value;
}

double log_window_prefactor(int d, double gamma) {
  return -gamma * std::log(4.0) + std::log(2.0) - specfun::log_sphere_area(d) - specfun::log_gamma(0.5 * d);
}

}  // namespace

double log_K_gaussian(int d, double p) {
  if (!(p > 1.0)) throw DomainError("K_gaussian: p must exceed 1");
  const double k = 1.0 / (p - 1.0);
  if (!(0.5 * d > k)) throw DomainError("K_gaussian: need d/2 > 1/(p-1)");
  return log_singular_constant(2.0, d, p) - k * std::log(4.0) + specfun::log_gamma_ratio(0.5 * d, -k, 0.0);
}

double K_gaussian(int d, double p) { return std::exp(log_K_gaussian(d, p)); }

double log_K_fractional(double alpha, int d, double p) {
  const double log_s = log_singular_constant(alpha, d, p);
  const double a = alpha / (p - 1.0);
  const StableProfile R = stable_profile(alpha, d);
  auto log_integrand = [&](double y) { return R.log_value(std::exp(y)) + (d - a) * y; };
  const double center = 0.5 * std::log(static_cast<double>(d));
  return log_s + specfun::log_sphere_area(d) + num::log_integral_exp(log_integrand, center - 30.0, center + 30.0);
}

double K_fractional(double alpha, int d, double p) { return std::exp(log_K_fractional(alpha, d, p)); }

double K_fractional_at(double alpha, int d, double p, double t) {
  if (!(t > 0.0)) throw DomainError("K_fractional_at: t must be positive");
  const SingularSolution u = SingularSolution::make(alpha, d, p);
  const StableProfile R = stable_profile(alpha, d);
  const double a = u.decay_exponent();
  auto integrand = [&](double r) { return R.kernel(t, r) * std::pow(r, d - 1.0 - a); };
  const double scale = std::pow(t, 1.0 / alpha);
  const double integral =
      num::integrate(integrand, 0.0, scale, 1e-12).value + num::integrate_to_infinity(integrand, scale, 1e-12).value;
  return std::pow(t, 1.0 / (p - 1.0)) * u.s_value * specfun::sphere_area(d) * integral;
}

double LGaussian::value() const { return std::exp(log_value); }

LGaussian L_gaussian(int d, double p) {
  if (!(p > 1.0)) throw DomainError("L_gaussian: p must exceed 1");
  const double k = 1.0 / (p - 1.0);
  const double a = 0.5 * d - k;
  if (!(a > 0.0)) throw DomainError("L_gaussian: need d/2 > 1/(p-1)");
  LGaussian out;
  out.log_value = -k * std::log(4.0) - 0.5 * d * std::log(kPi) + a * (std::log(a) - 1.0);
  out.t0 = 1.0 / (4.0 * a);
  return out;
}

double LFractional::value() const { return std::exp(log_value); }
double LFractional::upper_bound() const { return std::exp(log_upper_bound); }
double LFractional::lower_bound() const { return std::exp(log_lower_bound); }

LFractional L_fractional(double alpha, int d, double p) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("L_fractional: alpha must lie in (0, 2)");
  if (!(p > 1.0)) throw DomainError("L_fractional: p must exceed 1");
  const double gamma = alpha / (2.0 * (p - 1.0));
  const double beta = 0.5 * d - gamma - 1.0;
  if (!(beta > 0.0)) throw DomainError(fmt::format("L_fractional: beta = d/2 - alpha/(2(p-1)) - 1 = {} <= 0", beta));
  const double a = 2.0 * gamma;
  const StableProfile R = stable_profile(alpha, d);

  LFractional out;
  const double center = 0.5 * std::log(static_cast<double>(d));
  const auto peak =
      num::maximize([&](double y) { return R.log_value(std::exp(y)) + (d - a) * y; }, center - 10.0, center + 10.0, 201);
  out.log_value = peak.value;
  out.rho_star = std::exp(peak.x);

  const double prefactor = log_window_prefactor(d, gamma);
  const double log_S = log_sub_peak(alpha, gamma);
  out.log_upper_bound = prefactor + log_S + specfun::log_gamma(0.5 * d - gamma);

  // Window integral over [β, β+√(2β)], normalized by m = e^{-β}β^β.
  const double h = std::sqrt(2.0 * beta);
  const double log_m = beta * std::log(beta) - beta;
  auto window = [&](double x) {
    const double rho2 = std::exp(2.0 * x);
    auto integrand = [&](double tau) {
      const double lambda = rho2 / (4.0 * tau);
      const double f = subordinator_density(alpha, lambda);
      if (f == 0.0) return 0.0;
      return std::exp(std::log(f) + (1.0 - gamma) * std::log(lambda) + beta * std::log(tau) - tau - log_m);
    };
    const double v = num::integrate_smooth(integrand, beta, beta + h, 1e-10).value;
    return v > 0.0 ? std::log(v) : -kInf;
  };
  const double lambda_star = std::exp(num::maximize(
      [&](double y) {
        const double f = subordinator_density(alpha, std::exp(y));
        return f > 0.0 ? std::log(f) + (1.0 - gamma) * y : -kInf;
      },
      -8.0, 12.0, 81, 1e-9).x);
  const double xc = 0.5 * std::log(4.0 * beta * lambda_star);
  const auto wpeak = num::maximize(window, xc - 3.0, xc + 3.0, 25, 1e-6);
  out.log_lower_bound = prefactor + log_m + wpeak.value;
  return out;
}

double window_lower_bound(double alpha, int d, double p) {
  const double gamma = alpha / (2.0 * (p - 1.0));
  const double beta = 0.5 * d - gamma - 1.0;
  if (!(beta > 0.0)) throw DomainError("window_lower_bound: beta must be positive");
  const double h = std::sqrt(2.0 * beta);
  // e^{-τ}τ^β decreases beyond τ0 = β, so the window minimum is at τ0 + h.
  return std::exp(beta * std::log1p(h / beta) - h);
}

std::string AsymptoticReport::verdict() const {
  return fmt::format("{} alpha={} p={}: slope={:.4f} last_ratio={:.5f} band(max/min)={:.4f}",
                     quantity == AsymptoticQuantity::K ? "K" : "L", alpha, p, slope, last_ratio, band_ratio);
}

AsymptoticReport sweep(AsymptoticQuantity q, double alpha, double p, std::span<const int> d_values) {
  AsymptoticReport rep;
  rep.quantity = q;
  rep.alpha = alpha;
  rep.p = p;
  rep.d_values.assign(d_values.begin(), d_values.end());
  const std::size_t n = d_values.size();
  rep.log_values.resize(n);
  rep.normalized.resize(n);
  rep.t0_or_rho0.resize(n);
  std::vector<double> log_scaled(n);
  const double power = alpha == 2.0 ? 1.0 / (p - 1.0) - 0.5 : alpha / (2.0 * (p - 1.0));
  // Exceptions must not leave the parallel region; the first is rethrown below.
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) try {
    const int d = d_values[i];
    const double ld = std::log(static_cast<double>(d));
    if (q == AsymptoticQuantity::K) {
      rep.log_values[i] = alpha == 2.0 ? log_K_gaussian(d, p) : log_K_fractional(alpha, d, p);
      log_scaled[i] = rep.log_values[i];
      rep.normalized[i] = std::exp(rep.log_values[i]);
    } else {
      if (alpha == 2.0) {
        const auto L = L_gaussian(d, p);
        rep.log_values[i] = L.log_value;
        rep.t0_or_rho0[i] = L.t0;
      } else {
        const auto L = L_fractional(alpha, d, p);
        rep.log_values[i] = L.log_value;
        rep.t0_or_rho0[i] = L.rho_star;
      }
      log_scaled[i] = rep.log_values[i] + specfun::log_sphere_area(d);
      rep.normalized[i] = std::exp(log_scaled[i] + power * ld);
    }
  } catch (...) {
    errors[i] = std::current_exception();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  if (n >= 2) {
    std::vector<double> lx(n);
    for (std::size_t i = 0; i < n; ++i) lx[i] = std::log(static_cast<double>(d_values[i]));
    rep.slope = num::linear_fit(lx, log_scaled).first;
    rep.last_ratio = rep.normalized[n - 1] / rep.normalized[n - 2];
    const auto [lo, hi] = std::minmax_element(rep.normalized.begin(), rep.normalized.end());
    rep.band_ratio = *hi / *lo;
  }
  return rep;
}

}  // namespace blowlab
