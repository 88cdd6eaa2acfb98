#pragma once

#include <memory>
#include <span>
#include <vector>

namespace blowlab {

/// Density of the unit-time one-sided stable law of index β = α/2, i.e. the
/// function with ∫_0^∞ f(λ) e^{-sλ} dλ = exp(-s^β). Zolotarev's integral.
double subordinator_density(double alpha, double lambda);

/// E[λ^s] = Γ(1 - s/β)/Γ(1 - s) for s < β, β = α/2.
double subordinator_moment(double alpha, double s);

enum class ProfileMethod {
  automatic,     // closed form for α ∈ {1, 2}, tabulated otherwise
  closed_form,   // α ∈ {1, 2} only
  subordination, // nested quadrature at every call
  tabulated,     // subordination precomputed on a log grid, spline in log-log
};

/// Radial profile R of the fractional heat kernel:
/// P_{t,α}(x) = t^{-d/α} R(|x| t^{-1/α}).
class StableProfile {
 public:
  StableProfile(double alpha, int d, ProfileMethod method = ProfileMethod::automatic);
  ~StableProfile();
  StableProfile(const StableProfile&);
  StableProfile& operator=(const StableProfile&);
  StableProfile(StableProfile&&) noexcept;
  StableProfile& operator=(StableProfile&&) noexcept;

  double alpha() const { return alpha_; }
  int d() const { return d_; }
  ProfileMethod method() const { return method_; }

  double operator()(double rho) const;
  /// ln R(ρ); finite for any d (closed forms are evaluated in log space).
  double log_value(double rho) const;
  /// R'(ρ); analytic for α ∈ {1, 2}, throws DomainError otherwise.
  double derivative(double rho) const;
  /// P_{t,α}(r).
  double kernel(double t, double r) const;
  /// R(0) = (4π)^{-d/2} Γ(1 + d/α)/Γ(1 + d/2).
  double value_at_origin() const;

 private:
  struct Table;
  double alpha_;
  int d_;
  ProfileMethod method_;
  std::shared_ptr<const Table> table_;

  double subordinated(double rho) const;
};

StableProfile stable_profile(double alpha, int d, ProfileMethod method = ProfileMethod::automatic);

struct KernelBoundReport {
  /// Smallest C with R(ρ)(1+ρ)^d <= C on the grid.
  double C = 0.0;
  double min_value = 0.0;
  bool gradient_checked = false;
  /// Smallest C' with |R'(ρ)|(1+ρ)^{d+1} <= C' (α ∈ {1,2} only).
  double C_gradient = 0.0;
  /// Log-log slope of R over the upper half of the grid; recorded, not asserted.
  double empirical_decay_exponent = 0.0;
};

KernelBoundReport verify_kernel_bounds(const StableProfile& profile, std::span<const double> rho_grid);

}  // namespace blowlab
