#include "blowlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "blowlab/errors.hpp"
#include "blowlab/fft.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/specfun.hpp"
#include "blowlab/stable.hpp"

namespace blowlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Local power-law exponent a with u ~ r^{-a} on [r_i, r_{i+1}]; nullopt if a
// sample vanishes.
std::optional<double> segment_decay(const std::vector<double>& r, const std::vector<double>& v, std::size_t i) {
  if (v[i] <= 0.0 || v[i + 1] <= 0.0) return std::nullopt;
  return -std::log(v[i + 1] / v[i]) / std::log(r[i + 1] / r[i]);
}

// ∫_{r0}^{r1} c (ρ/r0)^{-a} ρ^{d-1} dρ.
double power_piece(double c, double a, double d, double r0, double r1) {
  const double b = d - a;
  const double lr = std::log(r1 / r0);
  const double x = b * lr;
  const double factor = std::abs(x) < 1e-12 ? lr : std::expm1(x) / b;
  return c * std::pow(r0, d) * factor;
}

// ∫_{r0}^{r1} (linear interpolant) ρ^{d-1} dρ.
double linear_piece(double v0, double v1, double d, double r0, double r1, double rend) {
  const double slope = (v1 - v0) / (r1 - r0);
  const double A = v0 - slope * r0;
  return A * (std::pow(rend, d) - std::pow(r0, d)) / d + slope * (std::pow(rend, d + 1) - std::pow(r0, d + 1)) / (d + 1);
}

/// σ_d ∫_{B_r} w for w = u^q interpolated as in RadialProfile.
class CumulativeMass {
 public:
  CumulativeMass(const RadialProfile& u, double q) : d_(u.d), r_(u.r), v_(u.values) {
    for (double& x : v_) x = std::pow(x, q);
    sigma_ = specfun::sphere_area(d_);
    prefix_.assign(r_.size(), 0.0);
    // Head ∫_0^{r_0} from the first segment's power law.
    if (v_[0] > 0.0) {
      const auto a = segment_decay(r_, v_, 0);
      const double decay = a.value_or(0.0);
      head_decay_ = decay;
      prefix_[0] = (decay < d_) ? v_[0] * std::pow(r_[0], d_) / (d_ - decay) : kInf;
    }
    for (std::size_t i = 0; i + 1 < r_.size(); ++i) prefix_[i + 1] = prefix_[i] + piece(i, r_[i + 1]);
  }

  /// ∫_{B_r} w, for r inside the sample range.
  double operator()(double r) const {
    if (r <= r_.front()) return sigma_ * prefix_.front() * std::pow(r / r_.front(), d_ - head_decay_);
    if (r >= r_.back()) return sigma_ * prefix_.back();
    const std::size_t i = std::upper_bound(r_.begin(), r_.end(), r) - r_.begin() - 1;
    return sigma_ * (prefix_[i] + piece(i, r));
  }

  bool head_diverges() const { return !std::isfinite(prefix_.front()); }

 private:
  double piece(std::size_t i, double rend) const {
    if (const auto a = segment_decay(r_, v_, i)) return power_piece(v_[i], *a, d_, r_[i], rend);
    return linear_piece(v_[i], v_[i + 1], d_, r_[i], r_[i + 1], rend);
  }

  int d_;
  std::vector<double> r_, v_, prefix_;
  double sigma_ = 0.0;
  double head_decay_ = 0.0;
};

// sup_r r^{e} (atom + mass(r)) over [r_0, r_N].
MorreyResult sup_scaled_mass(const RadialProfile& u, double q, double e, double atom) {
  const CumulativeMass mass(u, q);
  MorreyResult res;
  res.q = q;
  if (mass.head_diverges()) {
    res.value = kInf;
    res.diverged = true;
    res.argmax_radius = u.r.front();
    return res;
  }
  auto functional = [&](double r) { return std::pow(r, e) * (atom + mass(r)); };
  const auto& r = u.r;
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double f = functional(r[i]);
    if (f > best_value) {
      best_value = f;
      best = i;
    }
  }
  res.value = best_value;
  res.argmax_radius = r[best];
  if (best_value > 0.0) {
    const double lo = std::log(r[best == 0 ? 0 : best - 1]);
    const double hi = std::log(r[std::min(best + 1, r.size() - 1)]);
    if (hi > lo) {
      const auto ext = num::maximize([&](double y) { return functional(std::exp(y)); }, lo, hi, 8, 1e-12);
      if (ext.value > res.value) {
        res.value = ext.value;
        res.argmax_radius = std::exp(ext.x);
      }
    }
  }

  // Growth per decade over the outermost two decades at each end.
  auto growth = [&](double from, double to) {
    const double a = functional(from), b = functional(to);
    if (a <= 0.0 || b <= 0.0) return b > a ? kInf : 0.0;
    return std::pow(b / a, 1.0 / std::abs(std::log10(to / from)));
  };
  const double span = std::min(100.0, r.back() / r.front());
  if (span > 1.0) {
    const bool up = growth(r.back() / span, r.back()) > 1.05;
    const bool down = growth(r.front() * span, r.front()) > 1.05;
    res.diverged = up || down;
  }
  if (res.diverged) res.value = kInf;
  return res;
}

}  // namespace

RadialProfile RadialProfile::sample(int d, const std::function<double(double)>& u, double r_min, double r_max, int n) {
  RadialProfile p;
  p.d = d;
  p.r = num::logspace(r_min, r_max, n);
  p.values.reserve(p.r.size());
  for (double x : p.r) p.values.push_back(u(x));
  p.validate();
  return p;
}

RadialProfile RadialProfile::point_mass(int d, double mass, double r_min, double r_max, int n) {
  RadialProfile p;
  p.d = d;
  p.r = num::logspace(r_min, r_max, n);
  p.values.assign(p.r.size(), 0.0);
  p.atom_mass = mass;
  return p;
}

void RadialProfile::validate() const {
  if (d < 1) throw DomainError("RadialProfile: d must be >= 1");
  if (r.size() < 2 || r.size() != values.size()) throw DomainError("RadialProfile: need >= 2 matching samples");
  if (!(r.front() > 0.0)) throw DomainError("RadialProfile: radii must be positive");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && !(r[i] > r[i - 1])) throw DomainError("RadialProfile: radii must increase strictly");
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) throw DomainError("RadialProfile: values must be finite and >= 0");
  }
  if (!(atom_mass >= 0.0)) throw DomainError("RadialProfile: atom mass must be >= 0");
}

double RadialProfile::operator()(double x) const {
  if (x <= r.front()) {
    if (values[0] <= 0.0) return 0.0;
    const double a = segment_decay(r, values, 0).value_or(0.0);
    return values[0] * std::pow(x / r.front(), -a);
  }
  if (x >= r.back()) {
    const std::size_t n = r.size();
    if (values[n - 1] <= 0.0) return 0.0;
    const double a = tail_exponent ? *tail_exponent : segment_decay(r, values, n - 2).value_or(0.0);
    return values[n - 1] * std::pow(x / r.back(), -a);
  }
  const std::size_t i = std::upper_bound(r.begin(), r.end(), x) - r.begin() - 1;
  if (const auto a = segment_decay(r, values, i)) return values[i] * std::pow(x / r[i], -*a);
  return values[i] + (values[i + 1] - values[i]) * (x - r[i]) / (r[i + 1] - r[i]);
}

RadialProfile RadialProfile::scaled(double lambda) const {
  RadialProfile p = *this;
  for (double& v : p.values) v *= lambda;
  p.atom_mass *= lambda;
  return p;
}

MorreyResult radial_concentration(const RadialProfile& u, double p, double alpha) {
  u.validate();
  if (!(p > 1.0)) throw DomainError("radial_concentration: p must exceed 1");
  MorreyResult res = sup_scaled_mass(u, 1.0, alpha / (p - 1.0) - u.d, u.atom_mass);
  res.s_order = u.d * (p - 1.0) / alpha;
  return res;
}

double scaled_ball_mass(const RadialProfile& u, double p, double alpha, double r) {
  u.validate();
  if (!(p > 1.0)) throw DomainError("scaled_ball_mass: p must exceed 1");
  if (!(r > 0.0)) throw DomainError("scaled_ball_mass: radius must be positive");
  const CumulativeMass mass(u, 1.0);
  if (mass.head_diverges()) return kInf;
  return std::pow(r, alpha / (p - 1.0) - u.d) * (u.atom_mass + mass(r));
}

MorreyResult morrey_norm(const RadialProfile& u, double s_order, double q) {
  u.validate();
  if (!(q >= 1.0)) throw DomainError("morrey_norm: q must be >= 1");
  if (q > s_order) throw DomainError("morrey_norm: q must not exceed the Morrey order");
  MorreyResult res;
  if (q > 1.0 && u.atom_mass > 0.0) {
    res.value = kInf;
    res.diverged = true;
  } else {
    res = sup_scaled_mass(u, q, u.d * (q / s_order - 1.0), u.atom_mass);
    if (std::isfinite(res.value)) res.value = std::pow(res.value, 1.0 / q);
  }
  res.s_order = s_order;
  res.q = q;
  return res;
}

MorreyResult morrey_norm(const GridFunction& u, double s_order, double q, int radii) {
  const Mesh& mesh = u.mesh;
  mesh.validate();
  if (!(q >= 1.0) || q > s_order) throw DomainError("morrey_norm: need 1 <= q <= s_order");
  const int d = mesh.d;
  std::vector<double> w(u.values.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(u.values[i], q);
  Spectral spectral(mesh);
  const Spectrum w_hat = spectral.forward(w);
  MorreyResult res;
  res.s_order = s_order;
  res.q = q;
  const double h = mesh.spacing();
  for (double R : num::logspace(h, 0.5 * mesh.half_width, radii)) {
    std::vector<double> ball(mesh.size(), 0.0);
    for (std::size_t i = 0; i < ball.size(); ++i)
      if (mesh.radius(i) <= R) ball[i] = mesh.cell_volume();
    const Spectrum b_hat = spectral.forward(to_dft_order(mesh, ball));
    Spectrum prod(w_hat.size());
    for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = w_hat[k] * b_hat[k];
    const auto local = spectral.inverse(prod);
    const double best = *std::max_element(local.begin(), local.end());
    const double value = std::pow(R, d * (1.0 / s_order - 1.0 / q)) * std::pow(std::max(best, 0.0), 1.0 / q);
    if (value > res.value) {
      res.value = value;
      res.argmax_radius = R;
    }
  }
  return res;
}

double heat_evolution_at_origin(const RadialProfile& u, const StableProfile& kernel, double T) {
  if (kernel.d() != u.d) throw DomainError("heat_evolution_at_origin: kernel and profile dimension differ");
  if (!(T > 0.0)) throw DomainError("heat_evolution_at_origin: T must be positive");
  const int d = u.d;
  const double scale = std::pow(T, 1.0 / kernel.alpha());
  const double log_norm = -d * std::log(scale);
  double total = u.atom_mass > 0.0 ? u.atom_mass * std::exp(kernel.log_value(0.0) + log_norm) : 0.0;
  auto log_integrand = [&](double y) {
    const double rho = std::exp(y);
    if (!(rho > 0.0) || !std::isfinite(rho)) return -kInf;
    const double v = u(rho);
    if (v <= 0.0) return -kInf;
    return kernel.log_value(rho / scale) + log_norm + std::log(v) + d * y;
  };
  const double lo = std::log(u.r.front()) - 30.0;
  const double hi = std::max(std::log(u.r.back()), std::log(scale)) + 10.0;
  bool any = false;
  for (double v : u.values) any = any || v > 0.0;
  if (any) total += specfun::sphere_area(d) * std::exp(num::log_integral_exp(log_integrand, lo, hi));
  return total;
}

double heat_functional(const RadialProfile& u, double alpha, double gamma, double T) {
  u.validate();
  if (!(T > 0.0)) throw DomainError("heat_functional: T must be positive");
  return std::pow(T, gamma) * heat_evolution_at_origin(u, stable_profile(alpha, u.d), T);
}

HeatCharacterization heat_characterization(const RadialProfile& u, double alpha, double gamma,
                                           std::span<const double> T_grid) {
  u.validate();
  if (!(gamma > 0.0)) throw DomainError("heat_characterization: gamma must be positive");
  if (T_grid.empty()) throw DomainError("heat_characterization: empty T grid");
  const StableProfile kernel = stable_profile(alpha, u.d);
  auto functional = [&](double T) { return std::pow(T, gamma) * heat_evolution_at_origin(u, kernel, T); };
  HeatCharacterization out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    const double v = functional(T_grid[i]);
    if (v > out.value) {
      out.value = v;
      out.t_argmax = T_grid[i];
      best = i;
    }
  }
  if (out.value > 0.0 && T_grid.size() > 2) {
    const double lo = std::log(T_grid[best == 0 ? 0 : best - 1]);
    const double hi = std::log(T_grid[std::min(best + 1, T_grid.size() - 1)]);
    const auto ext = num::maximize([&](double y) { return functional(std::exp(y)); }, lo, hi, 6, 1e-8);
    if (ext.value > out.value) {
      out.value = ext.value;
      out.t_argmax = std::exp(ext.x);
    }
  }
  return out;
}

HeatCharacterization heat_characterization(const GridFunction& u, double alpha, double gamma,
                                           std::span<const double> T_grid) {
  if (!(gamma > 0.0)) throw DomainError("heat_characterization: gamma must be positive");
  Spectral spectral(u.mesh);
  const Spectrum u_hat = spectral.forward(u.values);
  const auto& xi = spectral.wavenumber_norms();
  HeatCharacterization out;
  Spectrum prod(u_hat.size());
  auto functional = [&](double T) {
    for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = u_hat[k] * std::exp(-T * std::pow(xi[k], alpha));
    const auto v = spectral.inverse(prod);
    return std::pow(T, gamma) * *std::max_element(v.begin(), v.end());
  };
  std::size_t best = 0;
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    const double value = functional(T_grid[i]);
    if (value > out.value) {
      out.value = value;
      out.t_argmax = T_grid[i];
      best = i;
    }
  }
  if (out.value > 0.0 && T_grid.size() > 2) {
    const double lo = std::log(T_grid[best == 0 ? 0 : best - 1]);
    const double hi = std::log(T_grid[std::min(best + 1, T_grid.size() - 1)]);
    const auto ext = num::maximize([&](double y) { return functional(std::exp(y)); }, lo, hi, 6, 1e-8);
    if (ext.value > out.value) {
      out.value = ext.value;
      out.t_argmax = std::exp(ext.x);
    }
  }
  return out;
}

}  // namespace blowlab
