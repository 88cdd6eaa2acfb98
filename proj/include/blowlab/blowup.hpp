#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "blowlab/grid.hpp"
#include "blowlab/kernels.hpp"
#include "blowlab/nonlinearity.hpp"
#include "blowlab/norms.hpp"

namespace blowlab {

struct Moment {
  double value = 0.0;
  std::size_t center = 0;  // flat index of x* (grid data); 0 for radial data
};

/// W_T(0) = max over grid centers x* of (k_T * u0)(x*). Kernel resolution
/// errors propagate.
Moment moment_at_zero(const GridFunction& u0, const KernelSpec& kernel, double T, double boundary_tol = 1e-8);

/// (P_{T,α} * u0)(0) for radial data; the kernel must be pure_fractional.
double moment_at_zero(const RadialProfile& u0, const KernelSpec& kernel, double T);

struct CriterionInput {
  std::optional<GridFunction> grid;
  std::optional<RadialProfile> radial;
  KernelSpec kernel;
  Nonlinearity nonlinearity = Nonlinearity::power(1.0, 2.0);
  /// Empty selects 40 log-spaced points over [1e-3, 1e3].
  std::vector<double> T_grid;
  double threshold = 1.0;
  /// Append points while the ratio still rises at the right end.
  bool extend = true;
  double T_extend_max = 1e6;
  double boundary_tol = 1e-8;
};

struct CriterionPoint {
  double T = 0.0;
  double W = 0.0;
  double h_inverse = 0.0;
  double ratio = 0.0;
  /// T^{1/(p-1)} W_T(0) for power sources, NaN otherwise.
  double power_form = 0.0;
  std::size_t center = 0;
};

enum class Classification { criterion_met, not_met_on_grid, fujita_supercritical_small_data };

std::string to_string(Classification c);

struct BlowupVerdict {
  std::vector<CriterionPoint> curve;
  std::optional<double> T_star;
  std::optional<double> morrey_value;
  Classification classification = Classification::not_met_on_grid;
  /// Center x* of the first point with ratio above threshold, else of the largest ratio.
  std::size_t center = 0;
  std::string hypothesis_regime;
  /// Set when extension stopped because the grid could not resolve k_T.
  std::string extension_note;

  std::string summary() const;
};

/// Ratios W_T(0)/h^{-1}(T) on the T grid; T_star is the least T with ratio
/// above the threshold. Throws CriterionInapplicable if F violates Osgood.
BlowupVerdict evaluate_criterion(const CriterionInput& input);

struct MorreyCondition {
  double value = 0.0;
  bool met = false;
  /// value / (σ_d d^k) with k = 1/(2(p-1)) for α = 2 and α/(2(p-1)) otherwise.
  double kappa = 0.0;
};

/// Morrey norm of order d(p-1)/α (q = 1, centered) against C_threshold.
MorreyCondition morrey_sufficient_condition(const RadialProfile& u0, double alpha, int d, double p,
                                            double C_threshold);
MorreyCondition morrey_sufficient_condition(const GridFunction& u0, double alpha, double p, double C_threshold);

}  // namespace blowlab
