#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "blowlab/grid.hpp"
#include "blowlab/stable.hpp"

namespace blowlab {

/// Radial function r ↦ u(r) in nominal dimension d, sampled on an increasing
/// grid. Between samples u is interpolated as a power law (exact for
/// homogeneous profiles); outside it is extrapolated from the end segments or
/// from `tail_exponent` (u ~ r^{-tail_exponent}) when given. `atom_mass` adds a
/// point mass at the origin (the delta proxy).
struct RadialProfile {
  int d = 1;
  std::vector<double> r;
  std::vector<double> values;
  std::optional<double> tail_exponent;
  double atom_mass = 0.0;

  static RadialProfile sample(int d, const std::function<double(double)>& u, double r_min,
                              double r_max, int n);
  static RadialProfile point_mass(int d, double mass, double r_min = 1e-3, double r_max = 1e3,
                                  int n = 121);
  void validate() const;
  /// Interpolated value at r > 0.
  double operator()(double r) const;
  RadialProfile scaled(double lambda) const;
};

struct MorreyResult {
  double s_order = 0.0;
  double q = 1.0;
  double value = 0.0;
  double argmax_radius = 0.0;
  bool diverged = false;
};

/// sup_r r^{α/(p-1)-d} ∫_{B_r} u over the sample range, refined by
/// golden-section around the discrete argmax. Divergence is flagged when the
/// functional grows by more than 5% per decade over the outermost two decades
/// at either end of the grid.
MorreyResult radial_concentration(const RadialProfile& u, double p, double alpha);

/// r^{α/(p-1)-d} ∫_{B_r} u at one radius (the functional radial_concentration maximizes).
double scaled_ball_mass(const RadialProfile& u, double p, double alpha, double r);

/// Centered Morrey norm sup_R R^{d(1/s-1/q)} ‖1_{B_R} u‖_q. Exact for radial
/// nonincreasing profiles. Requires 1 <= q <= s_order.
MorreyResult morrey_norm(const RadialProfile& u, double s_order, double q);

/// Morrey norm of grid data: sup over grid centers and a log grid of radii
/// h <= R <= L/2, ball integrals by FFT convolution.
MorreyResult morrey_norm(const GridFunction& u, double s_order, double q, int radii = 32);

struct HeatCharacterization {
  double value = 0.0;
  double t_argmax = 0.0;
};

/// max over T_grid of T^γ (P_{T,α} * u)(0), refined by golden-section between
/// neighbours of the discrete maximum.
HeatCharacterization heat_characterization(const RadialProfile& u, double alpha, double gamma,
                                           std::span<const double> T_grid);

/// (P_{T,α} * u)(0), atom included.
double heat_evolution_at_origin(const RadialProfile& u, const StableProfile& kernel, double T);

/// T^γ (P_{T,α} * u)(0) for one T.
double heat_functional(const RadialProfile& u, double alpha, double gamma, double T);

/// Grid version: spectral multiplier exp(-T|ξ|^α), sup over all grid points, refined in T.
HeatCharacterization heat_characterization(const GridFunction& u, double alpha, double gamma,
                                           std::span<const double> T_grid);

}  // namespace blowlab
