#include "blowlab/stationary.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

#include "blowlab/errors.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/specfun.hpp"

namespace blowlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_parameters(double alpha, int d, double p) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("singular solution: alpha must lie in (0, 2]");
  if (d < 1) throw DomainError("singular solution: d must be >= 1");
  if (!(p > 1.0)) throw DomainError("singular solution: p must exceed 1");
  const double g = alpha / (2.0 * (p - 1.0));
  const struct {
    const char* name;
    double value;
  } args[] = {{"alpha/(2(p-1))", g},
              {"p*alpha/(2(p-1))", p * g},
              {"d/2 - alpha/(2(p-1))", 0.5 * d - g},
              {"d/2 - p*alpha/(2(p-1))", 0.5 * d - p * g}};
  for (const auto& a : args)
    if (!(a.value > 0.0))
      throw DomainError(fmt::format("singular solution (alpha={}, d={}, p={}): gamma argument {} = {} is not positive; "
                                    "need p > 1 + alpha/(d - alpha)",
                                    alpha, d, p, a.name, a.value));
}

}  // namespace

double log_singular_constant(double alpha, int d, double p) {
  check_parameters(alpha, d, p);
  using specfun::log_gamma;
  const double g = alpha / (2.0 * (p - 1.0));
  const double log_sp = alpha * std::log(2.0) + log_gamma(0.5 * d - g) + log_gamma(p * g) - log_gamma(g) -
                        log_gamma(0.5 * d - p * g);
  return log_sp / (p - 1.0);
}

double singular_constant(double alpha, int d, double p) { return std::exp(log_singular_constant(alpha, d, p)); }

SingularSolution SingularSolution::make(double alpha, int d, double p) {
  return {alpha, d, p, singular_constant(alpha, d, p)};
}

double SingularSolution::operator()(double r) const { return s_value * std::pow(r, -decay_exponent()); }

RadialProfile SingularSolution::profile(double r_min, double r_max, int n) const {
  RadialProfile prof = RadialProfile::sample(d, [this](double r) { return (*this)(r); }, r_min, r_max, n);
  prof.tail_exponent = decay_exponent();
  return prof;
}

double singular_morrey_norm(const SingularSolution& sol, double q) {
  if (!(q >= 1.0)) throw DomainError("singular_morrey_norm: q must be >= 1");
  const double b = sol.d - q * sol.decay_exponent();
  if (!(b > 0.0)) throw DomainError("singular_morrey_norm: u_inf^q is not locally integrable (q*alpha/(p-1) >= d)");
  return std::pow(specfun::sphere_area(sol.d) / b, 1.0 / q) * sol.s_value;
}

SingularAsymptotics singular_asymptotics_check(double alpha, double p, std::span<const int> d_list) {
  SingularAsymptotics rep;
  const double k = alpha / (2.0 * (p - 1.0));
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    if (i > 0 && d_list[i] <= d_list[i - 1]) throw DomainError("singular_asymptotics_check: d list must increase");
    rep.d_values.push_back(d_list[i]);
    rep.ratios.push_back(std::exp(log_singular_constant(alpha, d_list[i], p) - k * std::log(d_list[i])));
  }
  const std::size_t n = rep.ratios.size();
  if (n >= 2) rep.last_relative_change = std::abs(rep.ratios[n - 1] / rep.ratios[n - 2] - 1.0);
  return rep;
}

double stationary_multiplier(const SingularSolution& sol, double r) {
  if (!(r > 0.0)) throw DomainError("stationary_multiplier: probe radius must be positive");
  const double a = sol.decay_exponent();
  const double alpha = sol.alpha;
  const int d = sol.d;
  if (alpha == 2.0) return a * (d - 2.0 - a);  // -Δ r^{-a} = a(d-2-a) r^{-a-2}
  if (d < 2) throw DomainError("stationary_multiplier: the hypersingular quadrature needs d >= 2");

  // (-Δ)^{α/2}u(x) = C ∫_0^∞ s^{-1-α} Ψ(s) ds,  Ψ(s) = ∫_{S^{d-1}} (u(x) - u(x+sω)) dω,
  // with u = |x|^{-a}; Ψ(s) = σ_{d-1} ∫_0^π (u(r) - u(|x+sω|)) sin^{d-2}θ dθ.
  using specfun::log_gamma;
  const double C = std::exp(alpha * std::log(2.0) + log_gamma(0.5 * (d + alpha)) - 0.5 * d * std::log(kPi) -
                            std::log(std::abs(std::tgamma(-0.5 * alpha))));
  const double sigma_minus = specfun::sphere_area(d - 1);
  const double ur = std::pow(r, -a);
  auto psi = [&](double s) {
    auto integrand = [&](double theta) {
      const double rho2 = r * r + s * s + 2.0 * r * s * std::cos(theta);
      const double sn = std::sin(theta);
      const double w = d == 2 ? 1.0 : std::pow(sn, d - 2);
      if (rho2 <= 0.0) return 0.0;
      return (ur - std::pow(rho2, -0.5 * a)) * w;
    };
    return sigma_minus * num::integrate(integrand, 0.0, kPi, 1e-12).value;
  };
  auto integrand = [&](double s) { return std::pow(s, -1.0 - alpha) * psi(s); };

  // Inner ball: Ψ(s) = -σ_d s² Δu(r)/(2d) + O(s⁴).
  const double s0 = 1e-3 * r;
  const double laplacian = a * (a + 2.0 - d) * std::pow(r, -a - 2.0);
  double total = -specfun::sphere_area(d) * laplacian / (2.0 * d) * std::pow(s0, 2.0 - alpha) / (2.0 - alpha);
  double err = 0.0;
  for (const auto& piece : {num::integrate(integrand, s0, r, 1e-10), num::integrate(integrand, r, 2.0 * r, 1e-10),
                            num::integrate_to_infinity(integrand, 2.0 * r, 1e-10)}) {
    total += piece.value;
    err += piece.error;
  }
  if (!std::isfinite(total) || err > 1e-6 * std::abs(total))
    throw QuadratureError(fmt::format("stationary_multiplier: achieved {:.3g} relative", err / std::abs(total)),
                          err / std::abs(total));
  return C * total * std::pow(r, a + alpha);
}

double stationary_residual(const SingularSolution& sol, double probe_radius) {
  const double target = std::pow(sol.s_value, sol.p - 1.0);
  return std::abs(stationary_multiplier(sol, probe_radius) - target) / target;
}

}  // namespace blowlab
