#pragma once

#include <span>
#include <string>
#include <vector>

namespace blowlab {

/// K_{2,p}(d) = sup_t t^{1/(p-1)} (e^{tΔ} u_∞)(0) = s(2,d,p) 4^{-1/(p-1)} Γ(d/2 - 1/(p-1)) / Γ(d/2).
double K_gaussian(int d, double p);
double log_K_gaussian(int d, double p);

/// K_{α,p}(d) = s(α,d,p) σ_d ∫_0^∞ R(ϱ) ϱ^{d-1-α/(p-1)} dϱ by quadrature in log space.
double K_fractional(double alpha, int d, double p);
double log_K_fractional(double alpha, int d, double p);

/// t^{1/(p-1)} (P_{t,α} * u_∞)(0) at a single t, integrated in the original
/// radial variable; independent of t by homogeneity.
double K_fractional_at(double alpha, int d, double p, double t);

struct LGaussian {
  double log_value = 0.0;
  double t0 = 0.0;
  double value() const;
};

/// L_{2,p}(d) = sup_t (4π)^{-d/2} t^{1/(p-1)-d/2} e^{-1/4t}
///            = 4^{-1/(p-1)} π^{-d/2} (a/e)^a, a = d/2 - 1/(p-1), attained at t0 = 1/(4a).
LGaussian L_gaussian(int d, double p);

struct LFractional {
  double log_value = 0.0;        // ln sup_ϱ ϱ^{d-α/(p-1)} R(ϱ)
  double rho_star = 0.0;         // maximizer
  double log_upper_bound = 0.0;  // ln of 4^{-γ} (2/(σ_d Γ(d/2))) S Γ(d/2-γ), S = sup_λ f(λ) λ^{1-γ}
  double log_lower_bound = 0.0;  // same prefactor times the sup over ϱ of the window integral
  double value() const;
  double upper_bound() const;
  double lower_bound() const;
};

/// Requires β = d/2 - α/(2(p-1)) - 1 > 0.
LFractional L_fractional(double alpha, int d, double p);

/// η(d) = min_{[β, β+√(2β)]} e^{-τ}τ^β / max_τ e^{-τ}τ^β.
double window_lower_bound(double alpha, int d, double p);

enum class AsymptoticQuantity { K, L };

struct AsymptoticReport {
  AsymptoticQuantity quantity = AsymptoticQuantity::K;
  double alpha = 2.0;
  double p = 3.0;
  std::vector<int> d_values;
  std::vector<double> log_values;
  std::vector<double> normalized;  // K itself; L σ_d d^{1/(p-1)-1/2} (α=2) or L σ_d d^{α/(2(p-1))}
  std::vector<double> t0_or_rho0;
  /// Log-log slope of the value (K) or of L σ_d (L) against d.
  double slope = 0.0;
  double last_ratio = 0.0;     // normalized[n-1]/normalized[n-2]
  double band_ratio = 0.0;     // max/min of normalized
  std::string verdict() const;
};

/// Evaluates the quantity over d_values (in parallel over d).
AsymptoticReport sweep(AsymptoticQuantity q, double alpha, double p, std::span<const int> d_values);

}  // namespace blowlab
