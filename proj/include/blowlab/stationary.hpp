#pragma once

#include <span>
#include <vector>

#include "blowlab/norms.hpp"

namespace blowlab {

/// u_∞(x) = s(α,d,p) |x|^{-α/(p-1)}, the homogeneous singular stationary
/// solution of u_t = -(-Δ)^{α/2}u + u^p.
struct SingularSolution {
  double alpha = 2.0;
  int d = 3;
  double p = 3.0;
  double s_value = 0.0;

  /// Rejects parameters outside p > 1 + α/(d-α), naming the failing gamma argument.
  static SingularSolution make(double alpha, int d, double p);

  double decay_exponent() const { return alpha / (p - 1.0); }
  double operator()(double r) const;
  RadialProfile profile(double r_min, double r_max, int n) const;
};

/// s(α,d,p) = (2^α Γ(d/2-γ) Γ(pγ) / (Γ(γ) Γ(d/2-pγ)))^{1/(p-1)}, γ = α/(2(p-1)).
double singular_constant(double alpha, int d, double p);
double log_singular_constant(double alpha, int d, double p);

/// (σ_d/(d - qα/(p-1)))^{1/q} s. Requires qα/(p-1) < d.
double singular_morrey_norm(const SingularSolution& sol, double q);

struct SingularAsymptotics {
  std::vector<int> d_values;
  std::vector<double> ratios;  // s(α,d,p) / d^{α/(2(p-1))}
  double last_relative_change = 0.0;
};

SingularAsymptotics singular_asymptotics_check(double alpha, double p, std::span<const int> d_list);

/// Multiplier ℓ with (-Δ)^{α/2} |x|^{-a} = ℓ |x|^{-a-α} at |x| = probe_radius,
/// a = α/(p-1), evaluated numerically (α < 2) from the hypersingular integral
/// or from the radial Laplacian (α = 2).
double stationary_multiplier(const SingularSolution& sol, double probe_radius);

/// |ℓ - s^{p-1}| / s^{p-1}. Throws QuadratureError if the integral does not converge.
double stationary_residual(const SingularSolution& sol, double probe_radius);

}  // namespace blowlab
