#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blowlab/fft.hpp"
#include "blowlab/grid.hpp"

namespace blowlab {

enum class KernelKind { gaussian_like, compact_bump, heavy_tail, pure_fractional };

/// A dispersal kernel J (radial, nonnegative, unit mass) or a pure fractional
/// generator -(-Δ)^{α/2}. Fourier convention Ĵ(ξ) = ∫ J(x) e^{-iξ·x} dx.
///
///   gaussian_like    Ĵ = exp(-ℓ²|ξ|²), J Gaussian of variance 2ℓ² per axis
///   compact_bump     J = 1_B * 1_B / |B|², B the ball of radius ℓ; Ĵ = φ_d(ℓ|ξ|)²
///                    with φ_1(r) = sin r / r and φ_2(r) = 2 J_1(r)/r
///   heavy_tail       d = 1 only, J(x) = (n-1)/2 · (1+|x|)^{-n}, n ∈ (1, 3)
///   pure_fractional  symbol exp(-t|ξ|^α) used directly by propagators
struct KernelSpec {
  KernelKind kind = KernelKind::gaussian_like;
  int d = 1;
  double scale = 1.0;
  double tail_order = 2.0;
  double alpha = 2.0;

  static KernelSpec gaussian_like(int d, double scale = 1.0);
  static KernelSpec compact_bump(int d, double scale = 1.0);
  static KernelSpec heavy_tail(double n);
  static KernelSpec pure_fractional(int d, double alpha);

  /// α of the small-ξ expansion Ĵ = 1 - A|ξ|^α + o(|ξ|^α).
  double alpha_effective() const;
  /// The coefficient A.
  double symbol_coefficient() const;
  bool has_dispersal_kernel() const { return kind != KernelKind::pure_fractional; }
  /// Spatial scale a grid must resolve (J's width; 0 for pure_fractional).
  double length_scale() const;
  std::string name() const;
  void validate() const;
};

KernelSpec parse_kernel_spec(const std::string& name, int d, double parameter);

/// J(x) at |x| = r. Throws DomainError for pure_fractional.
double dispersal_kernel(const KernelSpec& spec, double r);

/// Ĵ(ξ) at |ξ| = xi. Returns nullopt for pure_fractional (no J; propagators
/// use exp(-t|ξ|^α) directly). heavy_tail is transformed numerically along a
/// rotated contour.
std::optional<double> fourier_symbol(const KernelSpec& spec, double xi);

/// Ĵ(ξ) - 1, or -|ξ|^α for pure_fractional.
double generator_symbol(const KernelSpec& spec, double xi);

struct SymbolFit {
  double exponent = 0.0;     // fitted α
  double coefficient = 0.0;  // fitted A
};

/// Log-log regression of 1 - Ĵ(ξ) on the given |ξ| samples.
SymbolFit fit_symbol(const KernelSpec& spec, std::span<const double> xi_samples);

/// J sampled on the mesh (natural order), periodized over the box and
/// normalized to unit discrete mass.
std::vector<double> sampled_dispersal_kernel(const KernelSpec& spec, const Mesh& mesh);

/// Discrete generator symbol σ_k at every spectral index: DFT of the sampled
/// J minus one, or -|ξ_k|^α for pure_fractional. exp(tσ) is the propagator.
std::vector<double> grid_generator_symbol(const KernelSpec& spec, const Spectral& spectral);

/// k_t on a periodic grid, split as atom·δ_0 + density. The atom is e^{-t}
/// for dispersal kernels (Ĵ → 0 at high frequency) and 0 for pure_fractional.
struct SemigroupKernel {
  KernelSpec spec;
  double t = 0.0;
  Mesh mesh;
  double atom = 0.0;
  std::vector<double> density;  // natural order

  double mass() const;
  double min_density() const;
  double sup_density() const;
  /// Mass carried where |x|_∞ > L/2.
  double boundary_mass() const;
  /// Discrete weights (mass units, atom included) in DFT order.
  std::vector<double> weights_dft_order() const;
  double value_at_origin() const { return density[mesh.flat(mesh.origin_index(), mesh.d == 2 ? mesh.origin_index() : 0)]; }
};

/// Throws ResolutionError (with a suggested refinement) if h exceeds half the
/// relevant length scale or the boundary mass exceeds `boundary_tol`.
SemigroupKernel semigroup_kernel(const KernelSpec& spec, double t, const Mesh& mesh,
                                 double boundary_tol = 1e-8);

/// Doubles n (resolution) and then L and n (truncation) from `start` until
/// semigroup_kernel succeeds, up to `max_points` per axis.
Mesh auto_mesh(const KernelSpec& spec, double t, Mesh start, double boundary_tol = 1e-8,
               int max_points = 1 << 20);

/// Point-reflection symmetrization x ↦ -x of natural-order samples.
void symmetrize(const Mesh& mesh, std::span<double> natural);

/// Gauss-Weierstrass kernel of e^{tAΔ} at |x| = r in dimension d.
double gauss_weierstrass(int d, double A, double t, double r);

}  // namespace blowlab
