#include "blowlab/stable.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "blowlab/errors.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/specfun.hpp"

namespace blowlab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
}

// ln of Zolotarev's K(φ) = (sin βφ / sin φ)^{1/(1-β)} sin((1-β)φ) / sin βφ.
double log_zolotarev(double phi, double beta) {
  const double sb = std::sin(beta * phi);
  const double s = std::sin(phi);
  return (std::log(sb) - std::log(s)) / (1.0 - beta) + std::log(std::sin((1.0 - beta) * phi)) - std::log(sb);
}

// Convergent series (1/π) Σ (-1)^{k+1} Γ(kβ+1)/k! sin(πkβ) λ^{-kβ-1}; used
// only where λ^{-β} is small so no cancellation occurs.
double density_series(double beta, double lambda) {
  const double x = std::pow(lambda, -beta);
  double acc = 0.0;
  double xk = 1.0;
  for (int k = 1; k <= 40; ++k) {
    xk *= x;
    const double size = std::exp(specfun::log_gamma(k * beta + 1.0) - std::lgamma(k + 1.0)) * xk;
    const double term = size * std::sin(kPi * k * beta);
    acc += (k % 2 == 1) ? term : -term;
    if (size < 1e-18 * std::abs(acc)) break;
  }
  return acc / (kPi * lambda);
}

}  // namespace

double subordinator_density(double alpha, double lambda) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw DomainError("subordinator_density: alpha must lie in (0, 2)");
  if (!(lambda > 0.0)) return 0.0;
  const double beta = 0.5 * alpha;
  if (std::pow(lambda, -beta) <= 0.05) return density_series(beta, lambda);

  const double e = 1.0 / (1.0 - beta);
  const double log_c = -beta * e * std::log(lambda);
  const double c = std::exp(log_c);
  const double log_k0 = beta * e * std::log(beta) + std::log1p(-beta);
  const double shift = c * std::exp(log_k0);  // c K(0), factored out
  if (shift > 745.0) return 0.0;

  auto integrand = [&](double phi) {
    if (phi <= 0.0 || phi >= kPi) return 0.0;
    const double lk = log_zolotarev(phi, beta);
    const double ck = std::exp(log_c + lk);
    if (!std::isfinite(ck)) return 0.0;
    return std::exp(lk - (ck - shift));
  };

  // The integrand K e^{-cK} peaks where cK = 1; split there when interior.
  double split = 0.0;
  if (log_k0 + log_c < 0.0) {
    double lo = 0.0, hi = kPi;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
      const double mid = 0.5 * (lo + hi);
      (log_zolotarev(mid, beta) + log_c < 0.0 ? lo : hi) = mid;
    }
    split = 0.5 * (lo + hi);
  }
  double integral = 0.0;
  if (split > 0.0) integral += num::integrate(integrand, 0.0, split, 1e-13).value;
  integral += num::integrate(integrand, split, kPi, 1e-13).value;
  return beta * e / kPi * std::exp(-e * std::log(lambda) - shift) * integral;
}

double subordinator_moment(double alpha, double s) {
  check_alpha(alpha);
  const double beta = 0.5 * alpha;
  if (!(s < beta)) throw DomainError("subordinator_moment: requires s < alpha/2");
  return std::exp(specfun::log_gamma(1.0 - s / beta) - specfun::log_gamma(1.0 - s));
}

struct StableProfile::Table {
  double y0 = 0.0, y1 = 0.0;
  double origin = 0.0;
  double quad_coef = 0.0;
  double tail_slope = 0.0;
  double tail_log = 0.0;
  std::optional<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline;
};

StableProfile::StableProfile(double alpha, int d, ProfileMethod method)
    : alpha_(alpha), d_(d), method_(method) {
  check_alpha(alpha);
  if (d < 1) throw DomainError("StableProfile: d must be >= 1");
  const bool closed = alpha == 1.0 || alpha == 2.0;
  if (method_ == ProfileMethod::automatic) method_ = closed ? ProfileMethod::closed_form : ProfileMethod::tabulated;
  if (method_ == ProfileMethod::closed_form && !closed)
    throw DomainError("StableProfile: closed form exists only for alpha = 1, 2");
  if (alpha == 2.0 && method_ != ProfileMethod::closed_form)
    throw DomainError("StableProfile: alpha = 2 is Gaussian; subordination needs alpha < 2");
  if (method_ != ProfileMethod::tabulated) return;

  constexpr int nodes = 481;
  const double y0 = std::log(1e-3), y1 = std::log(1e3);
  const double step = (y1 - y0) / (nodes - 1);
  std::vector<double> logs(nodes);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < nodes; ++i) logs[i] = std::log(subordinated(std::exp(y0 + i * step)));
  auto table = std::make_shared<Table>();
  table->y0 = y0;
  table->y1 = y1;
  table->origin = value_at_origin();
  const double rho0 = std::exp(y0);
  table->quad_coef = (std::exp(logs.front()) - table->origin) / (rho0 * rho0);
  table->spline.emplace(logs.begin(), logs.end(), y0, step);
  table->tail_log = logs.back();
  table->tail_slope = (logs[nodes - 1] - logs[nodes - 2]) / step;
  table_ = std::move(table);
}

StableProfile::~StableProfile() = default;
StableProfile::StableProfile(const StableProfile&) = default;
StableProfile& StableProfile::operator=(const StableProfile&) = default;
StableProfile::StableProfile(StableProfile&&) noexcept = default;
StableProfile& StableProfile::operator=(StableProfile&&) noexcept = default;

double StableProfile::value_at_origin() const {
  return std::exp(-0.5 * d_ * std::log(4.0 * kPi) + specfun::log_gamma(1.0 + d_ / alpha_) -
                  specfun::log_gamma(1.0 + 0.5 * d_));
}

double StableProfile::subordinated(double rho) const {
  const double d = d_;
  if (rho == 0.0) return value_at_origin();
  if (rho < 1e-2) {
    // Direct form ∫ f(λ)(4πλ)^{-d/2} e^{-ρ²/4λ} dλ.
    auto g = [&](double lambda) {
      if (lambda <= 0.0) return 0.0;
      const double f = subordinator_density(alpha_, lambda);
      if (f == 0.0) return 0.0;
      return f * std::exp(-0.5 * d * std::log(4.0 * kPi * lambda) - rho * rho / (4.0 * lambda));
    };
    return num::integrate(g, 0.0, 1.0, 1e-11).value + num::integrate_to_infinity(g, 1.0, 1e-11).value;
  }
  // λ = ρ²/(4τ): R = π^{-d/2} ρ^{2-d}/4 ∫ f(ρ²/4τ) τ^{d/2-2} e^{-τ} dτ.
  const double r2 = rho * rho;
  auto g = [&](double tau) {
    if (tau <= 0.0) return 0.0;
    const double f = subordinator_density(alpha_, r2 / (4.0 * tau));
    if (f == 0.0) return 0.0;
    return f * std::exp((0.5 * d - 2.0) * std::log(tau) - tau);
  };
  const double integral = num::integrate_to_infinity(g, 0.0, 1e-11).value;
  return 0.25 * std::exp(-0.5 * d * std::log(kPi) + (2.0 - d) * std::log(rho)) * integral;
}

double StableProfile::log_value(double rho) const {
  rho = std::abs(rho);
  const double d = d_;
  switch (method_) {
    case ProfileMethod::closed_form:
      if (alpha_ == 2.0) return -0.5 * d * std::log(4.0 * kPi) - 0.25 * rho * rho;
      return specfun::log_gamma(0.5 * (d + 1.0)) - 0.5 * (d + 1.0) * (std::log(kPi) + std::log1p(rho * rho));
    case ProfileMethod::subordination: return std::log(subordinated(rho));
    case ProfileMethod::tabulated: {
      const Table& t = *table_;
      if (rho == 0.0) return std::log(t.origin);
      const double y = std::log(rho);
      if (y < t.y0) return std::log(t.origin + t.quad_coef * rho * rho);
      if (y > t.y1) return t.tail_log + t.tail_slope * (y - t.y1);
      return (*t.spline)(y);
    }
    case ProfileMethod::automatic: break;
  }
  return std::log(subordinated(rho));
}

double StableProfile::operator()(double rho) const { return std::exp(log_value(rho)); }

double StableProfile::derivative(double rho) const {
  if (method_ != ProfileMethod::closed_form)
    throw DomainError("StableProfile::derivative: analytic only for alpha = 1, 2");
  const double r = (*this)(rho);
  if (alpha_ == 2.0) return -0.5 * rho * r;
  return -(d_ + 1.0) * rho / (1.0 + rho * rho) * r;
}

double StableProfile::kernel(double t, double r) const {
  if (!(t > 0.0)) throw DomainError("StableProfile::kernel: t must be positive");
  const double scale = std::pow(t, 1.0 / alpha_);
  return std::exp(log_value(r / scale) - d_ * std::log(scale));
}

StableProfile stable_profile(double alpha, int d, ProfileMethod method) { return StableProfile(alpha, d, method); }

KernelBoundReport verify_kernel_bounds(const StableProfile& profile, std::span<const double> rho_grid) {
  if (rho_grid.empty()) throw DomainError("verify_kernel_bounds: empty grid");
  KernelBoundReport rep;
  rep.min_value = std::numeric_limits<double>::infinity();
  const int d = profile.d();
  rep.gradient_checked = profile.method() == ProfileMethod::closed_form;
  for (double rho : rho_grid) {
    const double r = profile(rho);
    rep.min_value = std::min(rep.min_value, r);
    rep.C = std::max(rep.C, std::exp(profile.log_value(rho) + d * std::log1p(rho)));
    if (rep.gradient_checked)
      rep.C_gradient = std::max(rep.C_gradient, std::abs(profile.derivative(rho)) * std::pow(1.0 + rho, d + 1));
  }
  std::vector<double> lx, ly;
  const double top = *std::max_element(rho_grid.begin(), rho_grid.end());
  for (double rho : rho_grid)
    if (rho >= 0.5 * top && rho > 0.0) {
      lx.push_back(std::log(rho));
      ly.push_back(profile.log_value(rho));
    }
  if (lx.size() >= 2) rep.empirical_decay_exponent = -num::linear_fit(lx, ly).first;
  return rep;
}

}  // namespace blowlab
