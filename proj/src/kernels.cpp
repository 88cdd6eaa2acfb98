#include "blowlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fmt/format.h>
#include <numbers>

#include "blowlab/errors.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/parallel.hpp"
#include "blowlab/specfun.hpp"

namespace blowlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

KernelSpec KernelSpec::gaussian_like(int d, double scale) {
  KernelSpec s;
  s.kind = KernelKind::gaussian_like;
  s.d = d;
  s.scale = scale;
  s.validate();
  return s;
}

KernelSpec KernelSpec::compact_bump(int d, double scale) {
  KernelSpec s;
  s.kind = KernelKind::compact_bump;
  s.d = d;
  s.scale = scale;
  s.validate();
  return s;
}

KernelSpec KernelSpec::heavy_tail(double n) {
  KernelSpec s;
  s.kind = KernelKind::heavy_tail;
  s.d = 1;
  s.tail_order = n;
  s.validate();
  return s;
}

KernelSpec KernelSpec::pure_fractional(int d, double alpha) {
  KernelSpec s;
  s.kind = KernelKind::pure_fractional;
  s.d = d;
  s.alpha = alpha;
  s.validate();
  return s;
}

void KernelSpec::validate() const {
  if (d < 1) throw DomainError("KernelSpec: d must be >= 1");
  switch (kind) {
    case KernelKind::gaussian_like:
    case KernelKind::compact_bump:
      if (!(scale > 0.0)) throw DomainError("KernelSpec: scale must be positive");
      if (kind == KernelKind::compact_bump && d > 2)
        throw DomainError("KernelSpec: compact_bump is implemented for d = 1, 2");
      break;
    case KernelKind::heavy_tail:
      if (d != 1) throw DomainError("KernelSpec: heavy_tail is realized in d = 1 only");
      if (!(tail_order > d && tail_order < d + 2.0))
        throw DomainError("KernelSpec: heavy_tail order n must lie in (d, d+2)");
      break;
    case KernelKind::pure_fractional:
      if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("KernelSpec: alpha must lie in (0, 2]");
      break;
  }
}

double KernelSpec::alpha_effective() const {
  switch (kind) {
    case KernelKind::heavy_tail: return tail_order - d;
    case KernelKind::pure_fractional: return alpha;
    default: return 2.0;
  }
}

double KernelSpec::symbol_coefficient() const {
  switch (kind) {
    case KernelKind::gaussian_like: return scale * scale;
    case KernelKind::compact_bump: return scale * scale * (d == 1 ? 1.0 / 3.0 : 1.0 / 4.0);
    case KernelKind::heavy_tail: {
      // 2c∫_0^∞ (1 - cos u) u^{-1-α} du with 2c = α.
      const double a = alpha_effective();
      if (std::abs(a - 1.0) < 1e-12) return kPi / 2.0;
      return std::tgamma(1.0 - a) * std::cos(kPi * a / 2.0);
    }
    case KernelKind::pure_fractional: return 1.0;
  }
  return 1.0;
}

double KernelSpec::length_scale() const {
  switch (kind) {
    case KernelKind::gaussian_like:
    case KernelKind::compact_bump: return scale;
    case KernelKind::heavy_tail: return 0.5;
    case KernelKind::pure_fractional: return 0.0;
  }
  return 0.0;
}

std::string KernelSpec::name() const {
  switch (kind) {
    case KernelKind::gaussian_like: return fmt::format("gaussian_like(d={},scale={})", d, scale);
    case KernelKind::compact_bump: return fmt::format("compact_bump(d={},scale={})", d, scale);
    case KernelKind::heavy_tail: return fmt::format("heavy_tail(n={})", tail_order);
    case KernelKind::pure_fractional: return fmt::format("pure_fractional(d={},alpha={})", d, alpha);
  }
  return "?";
}

KernelSpec parse_kernel_spec(const std::string& name, int d, double parameter) {
  if (name == "gaussian_like" || name == "gauss") return KernelSpec::gaussian_like(d, parameter > 0 ? parameter : 1.0);
  if (name == "compact_bump" || name == "bump") return KernelSpec::compact_bump(d, parameter > 0 ? parameter : 1.0);
  if (name == "heavy_tail") return KernelSpec::heavy_tail(parameter > 0 ? parameter : 2.0);
  if (name == "pure_fractional" || name == "fractional")
    return KernelSpec::pure_fractional(d, parameter > 0 ? parameter : 2.0);
  throw DomainError("unknown kernel kind '" + name + "'");
}

double dispersal_kernel(const KernelSpec& spec, double r) {
  r = std::abs(r);
  const double l = spec.scale;
  switch (spec.kind) {
    case KernelKind::gaussian_like: {
      const double var4 = 4.0 * l * l;
      return std::pow(kPi * var4, -0.5 * spec.d) * std::exp(-r * r / var4);
    }
    case KernelKind::compact_bump: {
      const double x = r / l;
      if (x >= 2.0) return 0.0;
      if (spec.d == 1) return (2.0 - x) / (4.0 * l);
      // Lens area of two unit disks at distance x, over π².
      const double lens = 2.0 * std::acos(x / 2.0) - 0.5 * x * std::sqrt(4.0 - x * x);
      return lens / (kPi * kPi * l * l);
    }
    case KernelKind::heavy_tail: {
      const double n = spec.tail_order;
      return 0.5 * (n - 1.0) * std::pow(1.0 + r, -n);
    }
    case KernelKind::pure_fractional: break;
  }
  throw DomainError("dispersal_kernel: pure_fractional has no dispersal kernel");
}

namespace {

double heavy_tail_symbol(double n, double xi) {
  if (xi == 0.0) return 1.0;
  // ∫_0^∞ (1+x)^{-n} e^{iξx} dx along x = i s/ξ: (i/ξ) ∫_0^∞ e^{-s} (1 + i s/ξ)^{-n} ds.
  auto integrand = [&](double s) {
    const std::complex<double> z(1.0, s / xi);
    const std::complex<double> v = std::complex<double>(0.0, 1.0) * std::pow(z, -n);
    return v.real() * std::exp(-s);
  };
  const double integral = num::integrate_to_infinity(integrand, 0.0, 1e-13).value;
  return (n - 1.0) * integral / xi;
}

}  // namespace

std::optional<double> fourier_symbol(const KernelSpec& spec, double xi) {
  xi = std::abs(xi);
  const double l = spec.scale;
  switch (spec.kind) {
    case KernelKind::gaussian_like: return std::exp(-l * l * xi * xi);
    case KernelKind::compact_bump: {
      const double r = l * xi;
      double phi = 1.0;
      if (r > 1e-8) phi = spec.d == 1 ? std::sin(r) / r : 2.0 * std::cyl_bessel_j(1.0, r) / r;
      else phi = 1.0 - r * r / (spec.d == 1 ? 6.0 : 8.0);
      return phi * phi;
    }
    case KernelKind::heavy_tail: return heavy_tail_symbol(spec.tail_order, xi);
    case KernelKind::pure_fractional: return std::nullopt;
  }
  return std::nullopt;
}

double generator_symbol(const KernelSpec& spec, double xi) {
  if (spec.kind == KernelKind::pure_fractional) return -std::pow(std::abs(xi), spec.alpha);
  return *fourier_symbol(spec, xi) - 1.0;
}

SymbolFit fit_symbol(const KernelSpec& spec, std::span<const double> xi_samples) {
  std::vector<double> lx, ly;
  for (double xi : xi_samples) {
    const double deficit = -generator_symbol(spec, xi);
    if (deficit <= 0.0) throw DomainError("fit_symbol: 1 - Ĵ must be positive on the samples");
    lx.push_back(std::log(xi));
    ly.push_back(std::log(deficit));
  }
  const auto [slope, intercept] = num::linear_fit(lx, ly);
  return {slope, std::exp(intercept)};
}

std::vector<double> sampled_dispersal_kernel(const KernelSpec& spec, const Mesh& mesh) {
  mesh.validate();
  if (!spec.has_dispersal_kernel()) throw DomainError("sampled_dispersal_kernel: no J for pure_fractional");
  if (spec.d != mesh.d) throw DomainError("sampled_dispersal_kernel: kernel and mesh dimension differ");
  const double period = 2.0 * mesh.half_width;
  std::vector<double> out(mesh.size());
  if (spec.kind == KernelKind::heavy_tail) {
    // Image sum Σ_m J(x + 2Lm): explicit for |m| <= M, midpoint-rule integral beyond.
    const int M = 64;
    const double n = spec.tail_order;
    const double c = 0.5 * (n - 1.0);
    for (int j = 0; j < mesh.n; ++j) {
      const double x = mesh.coordinate(j);
      double acc = 0.0;
      for (int m = -M; m <= M; ++m) acc += dispersal_kernel(spec, x + period * m);
      const double edge = period * (M + 0.5);
      acc += c / ((n - 1.0) * period) * (std::pow(1.0 + edge + x, 1.0 - n) + std::pow(1.0 + edge - x, 1.0 - n));
      out[j] = acc;
    }
  } else {
    // Gaussian and compact kernels: J is negligible beyond one period when the
    // box is admissible, but fold the nearest images anyway.
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto p = mesh.point(i);
      double acc = 0.0;
      for (int my = (mesh.d == 2 ? -1 : 0); my <= (mesh.d == 2 ? 1 : 0); ++my)
        for (int mx = -1; mx <= 1; ++mx)
          acc += dispersal_kernel(spec, std::hypot(p[0] + period * mx, p[1] + period * my));
      out[i] = acc;
    }
  }
  const double mass = par::omp::sum(out) * mesh.cell_volume();
  for (double& v : out) v /= mass;
  return out;
}

std::vector<double> grid_generator_symbol(const KernelSpec& spec, const Spectral& spectral) {
  const auto& xi = spectral.wavenumber_norms();
  std::vector<double> sigma(xi.size());
  if (spec.kind == KernelKind::pure_fractional) {
    for (std::size_t i = 0; i < xi.size(); ++i) sigma[i] = -std::pow(xi[i], spec.alpha);
    return sigma;
  }
  const Mesh& mesh = spectral.mesh();
  auto weights = to_dft_order(mesh, sampled_dispersal_kernel(spec, mesh));
  for (double& w : weights) w *= mesh.cell_volume();
  Spectral scratch(mesh);
  const Spectrum jhat = scratch.forward(weights);
  for (std::size_t i = 0; i < xi.size(); ++i) sigma[i] = jhat[i].real() - 1.0;
  sigma[0] = 0.0;
  return sigma;
}

void symmetrize(const Mesh& mesh, std::span<double> v) {
  const int n = mesh.n;
  auto mirror = [n](int j) { return (n - j) % n; };
  if (mesh.d == 1) {
    for (int j = 0; j < n; ++j) {
      const int k = mirror(j);
      if (k <= j) continue;
      const double avg = 0.5 * (v[j] + v[k]);
      v[j] = v[k] = avg;
    }
    return;
  }
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const std::size_t a = mesh.flat(ix, iy);
      const std::size_t b = mesh.flat(mirror(ix), mirror(iy));
      if (b <= a) continue;
      const double avg = 0.5 * (v[a] + v[b]);
      v[a] = v[b] = avg;
    }
}

double SemigroupKernel::mass() const { return atom + par::omp::sum(density) * mesh.cell_volume(); }

double SemigroupKernel::min_density() const {
  return *std::min_element(density.begin(), density.end());
}

double SemigroupKernel::sup_density() const { return par::omp::max(density); }

double SemigroupKernel::boundary_mass() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i)
    if (mesh.max_abs_coordinate(i) > 0.5 * mesh.half_width) acc += std::abs(density[i]);
  return acc * mesh.cell_volume();
}

std::vector<double> SemigroupKernel::weights_dft_order() const {
  std::vector<double> w = to_dft_order(mesh, density);
  for (double& v : w) v *= mesh.cell_volume();
  w[0] += atom;
  return w;
}

SemigroupKernel semigroup_kernel(const KernelSpec& spec, double t, const Mesh& mesh, double boundary_tol) {
  spec.validate();
  mesh.validate();
  if (!(t > 0.0)) throw DomainError("semigroup_kernel: t must be positive");
  if (spec.d != mesh.d) throw DomainError("semigroup_kernel: kernel and mesh dimension differ");

  const double h = mesh.spacing();
  const double scale = spec.has_dispersal_kernel() ? spec.length_scale()
                                                   : std::pow(t, 1.0 / spec.alpha_effective());
  if (h > 0.5 * scale)
    throw ResolutionError(fmt::format(
        "semigroup_kernel: spacing {:.4g} does not resolve scale {:.4g}; refine to n >= {}", h, scale,
        2 * mesh.n));

  Spectral spectral(mesh);
  const auto sigma = grid_generator_symbol(spec, spectral);
  SemigroupKernel k{spec, t, mesh, 0.0, {}};
  Spectrum mult(sigma.size());
  if (spec.has_dispersal_kernel()) {
    // e^{tσ} - e^{-t} = e^{-t} expm1(tĴ): the absolutely continuous part.
    k.atom = std::exp(-t);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const double tj = t * (sigma[i] + 1.0);
      // The product form overflows for large t; the difference form cancels for small tĴ.
      mult[i] = tj < 1.0 ? k.atom * std::expm1(tj) : std::exp(t * sigma[i]) - k.atom;
    }
  } else {
    for (std::size_t i = 0; i < sigma.size(); ++i) mult[i] = std::exp(t * sigma[i]);
  }
  auto weights = spectral.inverse(mult);
  k.density = to_natural_order(mesh, weights);
  const double inv_vol = 1.0 / mesh.cell_volume();
  for (double& v : k.density) v *= inv_vol;
  symmetrize(mesh, k.density);

  const double bm = k.boundary_mass();
  if (bm > boundary_tol)
    throw ResolutionError(fmt::format(
        "semigroup_kernel: boundary mass {:.3g} exceeds {:.3g}; enlarge to L >= {} (n = {})", bm,
        boundary_tol, 2.0 * mesh.half_width, 2 * mesh.n));
  return k;
}

Mesh auto_mesh(const KernelSpec& spec, double t, Mesh mesh, double boundary_tol, int max_points) {
  for (;;) {
    if (mesh.n > max_points)
      throw ResolutionError(fmt::format("auto_mesh: no admissible mesh with n <= {} for {} at t = {}",
                                        max_points, spec.name(), t));
    const double scale = spec.has_dispersal_kernel() ? spec.length_scale()
                                                     : std::pow(t, 1.0 / spec.alpha_effective());
    if (mesh.spacing() > 0.5 * scale) {
      mesh = mesh.refined();
      continue;
    }
    try {
      semigroup_kernel(spec, t, mesh, boundary_tol);
      return mesh;
    } catch (const ResolutionError&) {
      mesh = mesh.enlarged();
    }
  }
}

double gauss_weierstrass(int d, double A, double t, double r) {
  const double s = 4.0 * A * t;
  return std::pow(kPi * s, -0.5 * d) * std::exp(-r * r / s);
}

}  // namespace blowlab
