#include "blowlab/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <limits>

#include "blowlab/errors.hpp"
#include "blowlab/fft.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/specfun.hpp"

namespace blowlab {

Moment moment_at_zero(const GridFunction& u0, const KernelSpec& kernel, double T, double boundary_tol) {
  const Mesh& mesh = u0.mesh;
  const SemigroupKernel k = semigroup_kernel(kernel, T, mesh, boundary_tol);
  Spectral spectral(mesh);
  const Spectrum u_hat = spectral.forward(u0.values);
  const Spectrum k_hat = spectral.forward(k.weights_dft_order());
  Spectrum prod(u_hat.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = u_hat[i] * k_hat[i];
  const auto w = spectral.inverse(prod);
  const auto it = std::max_element(w.begin(), w.end());
  return {std::max(*it, 0.0), static_cast<std::size_t>(it - w.begin())};
}

double moment_at_zero(const RadialProfile& u0, const KernelSpec& kernel, double T) {
  if (kernel.kind != KernelKind::pure_fractional)
    throw DomainError("moment_at_zero: radial data needs a pure_fractional kernel");
  if (kernel.d != u0.d) throw DomainError("moment_at_zero: kernel and profile dimension differ");
  return heat_evolution_at_origin(u0, stable_profile(kernel.alpha, u0.d), T);
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::criterion_met: return "criterion_met";
    case Classification::not_met_on_grid: return "not_met_on_grid";
    case Classification::fujita_supercritical_small_data: return "fujita_supercritical_small_data";
  }
  return "?";
}

std::string BlowupVerdict::summary() const {
  std::string out = fmt::format("classification: {}\n", to_string(classification));
  out += T_star ? fmt::format("T_star: {:.6g}\n", *T_star) : std::string("T_star: none\n");
  if (!curve.empty()) {
    const auto best = std::max_element(curve.begin(), curve.end(),
                                       [](const auto& a, const auto& b) { return a.ratio < b.ratio; });
    out += fmt::format("max_ratio: {:.6g} at T = {:.6g}\n", best->ratio, best->T);
  }
  if (morrey_value) out += fmt::format("morrey_value: {:.6g}\n", *morrey_value);
  out += fmt::format("hypothesis_regime: {}\n", hypothesis_regime);
  if (!extension_note.empty()) out += fmt::format("note: {}\n", extension_note);
  return out;
}

BlowupVerdict evaluate_criterion(const CriterionInput& in) {
  if (in.grid.has_value() == in.radial.has_value())
    throw DomainError("evaluate_criterion: supply exactly one of grid or radial data");
  if (!(in.threshold > 0.0)) throw DomainError("evaluate_criterion: threshold must be positive");
  const OsgoodTransform h(in.nonlinearity);
  if (in.grid) in.grid->validate();
  if (in.radial) in.radial->validate();

  std::vector<double> T_grid = in.T_grid.empty() ? num::logspace(1e-3, 1e3, 40) : in.T_grid;
  for (std::size_t i = 0; i < T_grid.size(); ++i)
    if (!(T_grid[i] > 0.0) || (i > 0 && !(T_grid[i] > T_grid[i - 1])))
      throw DomainError("evaluate_criterion: T grid must be positive and increasing");

  const bool power = in.nonlinearity.is_power();
  const double p = in.nonlinearity.small_u_exponent();
  auto evaluate = [&](double T) {
    CriterionPoint pt;
    pt.T = T;
    if (in.grid) {
      const Moment m = moment_at_zero(*in.grid, in.kernel, T, in.boundary_tol);
      pt.W = m.value;
      pt.center = m.center;
    } else {
      pt.W = moment_at_zero(*in.radial, in.kernel, T);
    }
    pt.h_inverse = h.h_inverse(T);
    pt.ratio = pt.W / pt.h_inverse;
    pt.power_form = power ? std::pow(T, 1.0 / (p - 1.0)) * pt.W : std::numeric_limits<double>::quiet_NaN();
    return pt;
  };

  BlowupVerdict v;
  v.curve.resize(T_grid.size());
  std::vector<std::exception_ptr> errors(T_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < T_grid.size(); ++i) {
    try {
      v.curve[i] = evaluate(T_grid[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // k_T outgrowing the box ends the usable grid; other failures propagate.
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ResolutionError& e) {
      if (i == 0) throw;
      v.curve.resize(i);
      v.extension_note = fmt::format("T grid truncated before T = {:.4g}: {}", T_grid[i], e.what());
      break;
    }
  }

  if (in.extend && v.extension_note.empty() && T_grid.size() >= 2) {
    const double step = T_grid.back() / T_grid[T_grid.size() - 2];
    while (v.curve.back().ratio > v.curve[v.curve.size() - 2].ratio && v.curve.back().T * step <= in.T_extend_max) {
      try {
        v.curve.push_back(evaluate(v.curve.back().T * step));
      } catch (const ResolutionError& e) {
        v.extension_note = fmt::format("T grid extension stopped at T = {:.4g}: {}", v.curve.back().T, e.what());
        break;
      }
    }
  }

  const auto best = std::max_element(v.curve.begin(), v.curve.end(),
                                     [](const auto& a, const auto& b) { return a.ratio < b.ratio; });
  v.center = best->center;
  for (const auto& pt : v.curve)
    if (pt.ratio > in.threshold) {
      v.T_star = pt.T;
      v.center = pt.center;
      break;
    }

  const int d = in.grid ? in.grid->mesh.d : in.radial->d;
  const double alpha = in.kernel.alpha_effective();
  if (v.T_star) v.classification = Classification::criterion_met;
  else if (p > fujita_exponent(alpha, d)) v.classification = Classification::fujita_supercritical_small_data;
  else v.classification = Classification::not_met_on_grid;

  if (in.radial && power) v.morrey_value = radial_concentration(*in.radial, p, alpha).value;

  if (in.kernel.kind == KernelKind::pure_fractional)
    v.hypothesis_regime = "pure fractional: u0 in L1 and L-infinity (relaxed hypothesis; Fourier integrability of u0 not verified)";
  else
    v.hypothesis_regime = "dispersal kernel: Fourier integrability of u0 assumed, not verifiable on samples";
  return v;
}

namespace {

double kappa_of(double value, double alpha, int d, double p) {
  const double k = alpha == 2.0 ? 1.0 / (2.0 * (p - 1.0)) : alpha / (2.0 * (p - 1.0));
  return value / std::exp(specfun::log_sphere_area(d) + k * std::log(static_cast<double>(d)));
}

}  // namespace

MorreyCondition morrey_sufficient_condition(const RadialProfile& u0, double alpha, int d, double p,
                                            double C_threshold) {
  if (u0.d != d) throw DomainError("morrey_sufficient_condition: profile dimension differs from d");
  if (!(p > fujita_exponent(alpha, d))) throw DomainError("morrey_sufficient_condition: requires p > 1 + alpha/d");
  MorreyCondition out;
  out.value = morrey_norm(u0, d * (p - 1.0) / alpha, 1.0).value;
  out.met = out.value > C_threshold;
  out.kappa = kappa_of(out.value, alpha, d, p);
  return out;
}

MorreyCondition morrey_sufficient_condition(const GridFunction& u0, double alpha, double p, double C_threshold) {
  const int d = u0.mesh.d;
  if (!(p > fujita_exponent(alpha, d))) throw DomainError("morrey_sufficient_condition: requires p > 1 + alpha/d");
  MorreyCondition out;
  out.value = morrey_norm(u0, d * (p - 1.0) / alpha, 1.0).value;
  out.met = out.value > C_threshold;
  out.kappa = kappa_of(out.value, alpha, d, p);
  return out;
}

}  // namespace blowlab
