#include "blowlab/presets.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <limits>
#include <numbers>
#include <span>

#include "blowlab/asymptotics.hpp"
#include "blowlab/blowup.hpp"
#include "blowlab/csv.hpp"
#include "blowlab/kernels.hpp"
#include "blowlab/nonlinearity.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/parallel.hpp"
#include "blowlab/solver.hpp"
#include "blowlab/specfun.hpp"
#include "blowlab/stable.hpp"
#include "blowlab/stationary.hpp"

namespace blowlab::presets {

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction gaussian_data(const Mesh& mesh, double amplitude) {
  return GridFunction::sample(mesh, [amplitude](double r) { return amplitude * std::exp(-r * r); });
}

Mesh mesh_from(const PresetContext& ctx) {
  Mesh m{1, ctx.number("L"), ctx.integer("n")};
  m.validate();
  return m;
}

// ---- 1: closed-form constants --------------------------------------------

void run_constants(const PresetContext& ctx, PresetReport& rep) {
  const double alpha = ctx.number("alpha"), p = ctx.number("p");
  const int d = ctx.integer("d");
  const double sigma3 = specfun::sphere_area(3);
  const double s = singular_constant(alpha, d, p);
  // Gamma recurrence collapses s(2,d,p)^{p-1} to a product of two rationals.
  const double g = 1.0 / (p - 1.0);
  const double s_recurrence = std::pow(2.0 * g * (d - 2.0 - 2.0 * g), g);
  const double c22 = threshold_constant_c(2.0, 2.0).value;
  rep.checks.push_back(ctx.judge("sigma_3", sigma3, 4.0 * kPi));
  rep.checks.push_back(ctx.judge("s_2_5_3", s, std::numbers::sqrt2));
  rep.checks.push_back(ctx.judge("s_recurrence", s, s_recurrence));
  rep.checks.push_back(ctx.judge("c_2_2", c22 == 1.0 ? 1.0 : 0.0, 1.0, fmt::format("c={}", c22)));
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("values", rep));
    w.meta("alpha", alpha).meta("p", p).meta("d", std::to_string(d));
    w.header({"name", "value"});
    w.row(std::vector<std::string>{"sigma_3", format_number(sigma3)});
    w.row(std::vector<std::string>{"s", format_number(s)});
    w.row(std::vector<std::string>{"c_2_2", format_number(c22)});
  }
}

// ---- 2: Osgood round trip ------------------------------------------------

void run_osgood(const PresetContext& ctx, PresetReport& rep) {
  const auto T = num::logspace(ctx.number("T_min"), ctx.number("T_max"), ctx.integer("samples"));
  const auto T_exp = num::logspace(ctx.number("T_min"), ctx.number("T_max_exponential"), ctx.integer("samples"));
  struct Case {
    std::string check;
    Nonlinearity F;
    const std::vector<double>* grid;
  };
  const std::vector<Case> cases = {
      {"power_p2", Nonlinearity::power(1.0, 2.0), &T},
      {"power_p3.5", Nonlinearity::power(0.5, 3.5), &T},
      {"power_sum", Nonlinearity::power_sum(1.0, 2.0, 1.0, 3.0), &T},
      {"exponential", Nonlinearity::exponential(), &T_exp},
  };
  std::vector<std::vector<double>> errors(cases.size());
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const OsgoodTransform h(cases[k].F);
    double worst = 0.0;
    for (double t : *cases[k].grid) {
      const double e = std::abs(h.h(h.h_inverse(t)) - t) / t;
      errors[k].push_back(e);
      worst = std::max(worst, e);
    }
    rep.checks.push_back(ctx.judge(cases[k].check, worst, 0.0,
                                   fmt::format("T in [{:g}, {:g}]", cases[k].grid->front(), cases[k].grid->back())));
  }
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("roundtrip", rep));
    w.header({"kind", "T", "relative_error"});
    for (std::size_t k = 0; k < cases.size(); ++k)
      for (std::size_t i = 0; i < cases[k].grid->size(); ++i)
        w.row(std::vector<std::string>{cases[k].check, format_number((*cases[k].grid)[i]), format_number(errors[k][i])});
  }
}

// ---- 3: kernel laws ------------------------------------------------------

// sup |k_{t1} * k_{t2} - k_{t1+t2}| in density units, by direct convolution.
double semigroup_defect(const KernelSpec& spec, double t1, double t2, const Mesh& mesh) {
  const auto a = semigroup_kernel(spec, t1, mesh);
  const auto b = semigroup_kernel(spec, t2, mesh);
  const auto c = semigroup_kernel(spec, t1 + t2, mesh);
  const double vol = mesh.cell_volume();
  std::vector<double> b_weights(b.density.size());
  for (std::size_t i = 0; i < b_weights.size(); ++i) b_weights[i] = b.density[i] * vol;
  const std::size_t origin = mesh.flat(mesh.origin_index(), mesh.d == 2 ? mesh.origin_index() : 0);
  b_weights[origin] += b.atom;
  std::vector<double> conv(b_weights.size());
  par::omp::periodic_convolution(mesh, a.weights_dft_order(), b_weights, conv);
  conv[origin] -= c.atom;
  double worst = 0.0;
  for (std::size_t i = 0; i < conv.size(); ++i) worst = std::max(worst, std::abs(conv[i] / vol - c.density[i]));
  return worst;
}

// σ_d ∫_0^∞ R(ρ) ρ^{d-1} dρ.
double profile_mass(const StableProfile& R) {
  auto f = [&](double rho) { return R(rho) * std::pow(rho, R.d() - 1); };
  return specfun::sphere_area(R.d()) * (num::integrate(f, 0.0, 1.0, 1e-11).value + num::integrate_to_infinity(f, 1.0, 1e-11).value);
}

void run_kernel_laws(const PresetContext& ctx, PresetReport& rep) {
  const double t = ctx.number("t");
  const std::vector<KernelSpec> specs = {KernelSpec::gaussian_like(1), KernelSpec::gaussian_like(2),
                                         KernelSpec::compact_bump(1), KernelSpec::compact_bump(2)};
  double mass_error = 0.0;
  std::vector<Mesh> meshes(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const int d = specs[k].d;
    meshes[k] = auto_mesh(specs[k], t, Mesh{d, 16.0, d == 1 ? 256 : 64}, 1e-8, d == 1 ? 1 << 16 : 512);
    mass_error = std::max(mass_error, std::abs(semigroup_kernel(specs[k], t, meshes[k]).mass() - 1.0));
  }
  // Fractional kernels have |x|^{-d-α} tails no affordable box contains to 1e-8,
  // so their mass is checked on the continuous profile.
  const std::vector<StableProfile> profiles = {StableProfile(1.0, 1), StableProfile(1.0, 2),
                                               StableProfile(1.5, 1, ProfileMethod::subordination)};
  for (const auto& R : profiles) mass_error = std::max(mass_error, std::abs(profile_mass(R) - 1.0));
  rep.checks.push_back(ctx.judge("unit_mass", mass_error, 0.0,
                                 fmt::format("{} grid kernels at t={:g}, {} fractional profiles", specs.size(), t, profiles.size())));

  const double half = 0.5 * t;
  double defect = 0.0;
  for (std::size_t k : {std::size_t{0}, std::size_t{3}}) defect = std::max(defect, semigroup_defect(specs[k], half, half, meshes[k]));
  rep.checks.push_back(ctx.judge("semigroup", defect, 0.0, "gaussian_like d=1, compact_bump d=2"));

  const int samples = ctx.integer("rho_samples");
  const double rho_max = ctx.number("rho_max");
  std::vector<double> rho(samples);
  for (int i = 0; i < samples; ++i) rho[i] = rho_max * i / (samples - 1);
  double worst = 0.0;
  std::vector<std::array<double, 4>> rows;
  for (int d : {1, 3}) {
    const StableProfile exact(1.0, d, ProfileMethod::closed_form);
    const StableProfile sub(1.0, d, ProfileMethod::subordination);
    std::vector<double> diff(rho.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < rho.size(); ++i) diff[i] = std::abs(sub(rho[i]) - exact(rho[i]));
    for (std::size_t i = 0; i < rho.size(); ++i) {
      worst = std::max(worst, diff[i]);
      rows.push_back({double(d), rho[i], exact(rho[i]), diff[i]});
    }
  }
  rep.checks.push_back(ctx.judge("subordination_vs_poisson", worst, 0.0, "alpha=1, d in {1,3}"));
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("subordination", rep));
    w.meta("alpha", 1.0);
    w.header({"d", "rho", "poisson", "abs_difference"});
    for (const auto& r : rows) w.row(std::vector<double>(r.begin(), r.end()));
  }
}

// ---- 4: approximation by the Gauss-Weierstrass kernel -----------------------

void run_approximation(const PresetContext& ctx, PresetReport& rep) {
  const auto spec = KernelSpec::gaussian_like(1);
  const Mesh mesh = mesh_from(ctx);
  const double A = spec.symbol_coefficient();
  const std::vector<double> times = {1, 2, 4, 8, 16};
  std::vector<double> scaled(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto kt = semigroup_kernel(spec, times[k], mesh);
    double worst = 0.0;
    for (std::size_t i = 0; i < kt.density.size(); ++i)
      worst = std::max(worst, std::abs(kt.density[i] - gauss_weierstrass(1, A, times[k], mesh.radius(i))));
    scaled[k] = std::sqrt(times[k]) * worst;
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < scaled.size(); ++k) decreasing = decreasing && scaled[k] < scaled[k - 1];
  std::string detail;
  for (double v : scaled) detail += fmt::format("{:.4e} ", v);
  rep.checks.push_back(ctx.judge("strictly_decreasing", decreasing ? 1.0 : 0.0, 1.0, detail));
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("sup_error", rep));
    w.meta("kernel", spec.name()).meta("L", mesh.half_width).meta("n", std::to_string(mesh.n));
    w.header({"t", "sqrt_t_sup_error"});
    for (std::size_t k = 0; k < times.size(); ++k) w.row(std::vector<double>{times[k], scaled[k]});
  }
}

// ---- 5: Jensen chain -----------------------------------------------------

void run_jensen(const PresetContext& ctx, PresetReport& rep) {
  const Mesh mesh = mesh_from(ctx);
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1);
  cfg.nonlinearity = Nonlinearity::power(1.0, ctx.number("p"));
  cfg.moment_targets = {ctx.number("T1"), ctx.number("T2"), ctx.number("T3")};
  cfg.t_end = *std::max_element(cfg.moment_targets.begin(), cfg.moment_targets.end());
  cfg.dt_init = ctx.number("dt_init");
  const auto traj = run(gaussian_data(mesh, ctx.number("M")), cfg);
  const OsgoodTransform h(cfg.nonlinearity);

  double worst_fraction = 1.0, worst_osgood = std::numeric_limits<double>::infinity();
  std::string detail;
  for (const auto& series : traj.moments) {
    std::size_t total = 0, good = 0;
    const double h0 = h.h(series.points.front().W);
    for (std::size_t i = 0; i < series.points.size(); ++i) {
      const auto& pt = series.points[i];
      if (std::isfinite(pt.dW_dt_fd)) {
        ++total;
        if (pt.dW_dt_fd >= pt.F_of_W - 1e-6 * (1.0 + pt.F_of_W)) ++good;
      }
      if (pt.t > 0.0) worst_osgood = std::min(worst_osgood, (h0 - h.h(pt.W)) / pt.t);
    }
    const double fraction = total ? double(good) / total : 0.0;
    worst_fraction = std::min(worst_fraction, fraction);
    detail += fmt::format("T={:g}: {}/{} ", series.T, good, total);
  }
  rep.checks.push_back(ctx.judge("derivative_fraction", worst_fraction, 0.99, detail));
  rep.checks.push_back(ctx.judge("osgood_decrement", worst_osgood, 0.9999, "min over t of (h(W(0)) - h(W(t)))/t"));
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("moments", rep));
    w.meta("outcome", to_string(traj.outcome));
    w.header({"T", "t", "W", "F_of_W", "dW_dt_forward"});
    for (const auto& series : traj.moments)
      for (const auto& pt : series.points) w.row(std::vector<double>{series.T, pt.t, pt.W, pt.F_of_W, pt.dW_dt_fd});
  }
}

// ---- 6: criterion soundness ----------------------------------------------

void run_soundness(const PresetContext& ctx, PresetReport& rep) {
  const Mesh mesh = mesh_from(ctx);
  const auto u0 = gaussian_data(mesh, ctx.number("M"));
  CriterionInput in;
  in.grid = u0;
  in.kernel = KernelSpec::gaussian_like(1);
  in.nonlinearity = Nonlinearity::power(1.0, ctx.number("p"));
  const auto verdict = evaluate_criterion(in);
  rep.checks.push_back(ctx.judge("T_star_exists", verdict.T_star ? 1.0 : 0.0, 1.0, to_string(verdict.classification)));
  if (!verdict.T_star) return;
  const double T_star = *verdict.T_star;

  SimConfig cfg;
  cfg.kernel = in.kernel;
  cfg.nonlinearity = in.nonlinearity;
  cfg.t_end = ctx.number("horizon_factor") * T_star;
  const auto traj = run(u0, cfg);
  rep.checks.push_back(ctx.judge("blew_up", traj.outcome == Outcome::blew_up ? 1.0 : 0.0, 1.0, to_string(traj.outcome)));
  rep.checks.push_back(ctx.judge("support_audit", traj.reliable ? 1.0 : 0.0, 1.0, traj.audit_note));
  rep.checks.push_back(ctx.judge("t_obs_vs_T_star", traj.t_obs / T_star, 1.1,
                                 fmt::format("t_obs={:.6g} T_star={:.6g}", traj.t_obs, T_star)));
  if (ctx.writes_files()) {
    CsvWriter c(ctx.artifact("criterion", rep));
    c.meta("T_star", T_star);
    c.header({"T", "W", "h_inverse", "ratio"});
    for (const auto& pt : verdict.curve) c.row(std::vector<double>{pt.T, pt.W, pt.h_inverse, pt.ratio});
    CsvWriter s(ctx.artifact("trajectory", rep));
    s.meta("outcome", to_string(traj.outcome)).meta("t_obs", traj.t_obs);
    s.header({"t", "sup_u", "mass", "dt"});
    for (const auto& pt : traj.series) s.row(std::vector<double>{pt.t, pt.sup_u, pt.mass, pt.dt});
  }
}

// ---- 7: Fujita regime ----------------------------------------------------

void run_fujita(const PresetContext& ctx, PresetReport& rep) {
  const Mesh mesh = mesh_from(ctx);
  const double p = ctx.number("p");
  CriterionInput in;
  in.grid = gaussian_data(mesh, 1.0);
  in.kernel = KernelSpec::gaussian_like(1);
  in.nonlinearity = Nonlinearity::power(1.0, p);
  in.T_grid = num::logspace(ctx.number("T_min"), ctx.number("T_max"), ctx.integer("samples"));
  in.extend = false;
  const auto verdict = evaluate_criterion(in);
  std::vector<double> lx, ly;
  for (const auto& pt : verdict.curve) {
    lx.push_back(std::log(pt.T));
    ly.push_back(std::log(pt.power_form));
  }
  const bool complete = verdict.curve.size() == in.T_grid.size();
  rep.checks.push_back(ctx.judge("curve_complete", complete ? 1.0 : 0.0, 1.0, verdict.extension_note));
  if (lx.size() < 2) return;
  const double slope = num::linear_fit(lx, ly).first;
  const double alpha = in.kernel.alpha_effective();
  rep.checks.push_back(ctx.judge("growth_exponent", slope, 1.0 / (p - 1.0) - mesh.d / alpha,
                                 fmt::format("p_F={:g}", fujita_exponent(alpha, mesh.d))));
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("power_form", rep));
    w.meta("p", p).meta("slope", slope);
    w.header({"T", "W", "power_form"});
    for (const auto& pt : verdict.curve) w.row(std::vector<double>{pt.T, pt.W, pt.power_form});
  }
}

// ---- 8: dichotomy, decay branch ------------------------------------------

void run_decay(const PresetContext& ctx, PresetReport& rep) {
  const Mesh mesh = mesh_from(ctx);
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1);
  cfg.nonlinearity = Nonlinearity::power(1.0, ctx.number("p"));
  cfg.t_end = ctx.number("t_end");
  cfg.dt_init = ctx.number("dt_init");
  const auto summary = dichotomy_experiment({1.0}, gaussian_data(mesh, ctx.number("M")), cfg);
  const auto& r = summary.runs.front();
  rep.checks.push_back(ctx.judge("global", r.outcome == Outcome::reached_horizon ? 1.0 : 0.0, 1.0, to_string(r.outcome)));
  rep.checks.push_back(ctx.judge("support_audit", r.reliable ? 1.0 : 0.0, 1.0));
  rep.checks.push_back(ctx.judge("decay_slope", r.decay_slope, 0.02,
                                 fmt::format("sup t^(1/(p-1))|u|_inf = {:.6g}", r.decay_sup)));
  if (ctx.writes_files()) write_dichotomy_csv(ctx.artifact("runs", rep), summary);
}

// ---- 9: Morrey closed form -----------------------------------------------

void run_morrey(const PresetContext& ctx, PresetReport& rep) {
  const auto sol = SingularSolution::make(ctx.number("alpha"), ctx.integer("d"), ctx.number("p"));
  const auto u = sol.profile(ctx.number("r_min"), ctx.number("r_max"), ctx.integer("samples"));
  const auto res = radial_concentration(u, sol.p, sol.alpha);
  const double expected = specfun::sphere_area(sol.d) * sol.s_value / (sol.d - sol.decay_exponent());
  rep.checks.push_back(ctx.judge("concentration", res.value, expected));
  const auto radii = num::logspace(ctx.number("probe_min"), ctx.number("probe_max"), 9);
  std::vector<double> values;
  for (double r : radii) values.push_back(scaled_ball_mass(u, sol.p, sol.alpha, r));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  rep.checks.push_back(ctx.judge("r_independence", (*hi - *lo) / *lo, 0.0,
                                 fmt::format("r in [{:g}, {:g}]", radii.front(), radii.back())));
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("scaled_mass", rep));
    w.meta("closed_form", expected);
    w.header({"r", "scaled_mass"});
    for (std::size_t i = 0; i < radii.size(); ++i) w.row(std::vector<double>{radii[i], values[i]});
  }
}

// ---- 10: stationary residual ---------------------------------------------

void run_stationary(const PresetContext& ctx, PresetReport& rep) {
  const std::vector<double> probes = {0.5, 1.0, 3.0};
  auto worst = [&](const SingularSolution& sol) {
    double w = 0.0;
    for (double r : probes) w = std::max(w, stationary_residual(sol, r));
    return w;
  };
  const auto frac = SingularSolution::make(ctx.number("alpha"), ctx.integer("d"), ctx.number("p"));
  const auto lap = SingularSolution::make(2.0, ctx.integer("d_laplacian"), ctx.number("p_laplacian"));
  rep.checks.push_back(ctx.judge("fractional_residual", worst(frac), 0.0,
                                 fmt::format("multiplier at r=1: {:.10g}, s^(p-1)={:.10g}", stationary_multiplier(frac, 1.0),
                                             std::pow(frac.s_value, frac.p - 1.0))));
  rep.checks.push_back(ctx.judge("laplacian_residual", worst(lap), 0.0));
}

// ---- 11: asymptotic orders -----------------------------------------------

double fit_log_log(std::span<const int> d, std::span<const double> log_y) {
  std::vector<double> lx(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) lx[i] = std::log(double(d[i]));
  return num::linear_fit(lx, log_y).first;
}

void run_asymptotics(const PresetContext& ctx, PresetReport& rep) {
  const double p = ctx.number("p");
  const double k_ratio = std::exp(log_K_gaussian(800, p) - log_K_gaussian(400, p));
  rep.checks.push_back(ctx.judge("K_2_3_ratio", k_ratio, 1.0));

  std::vector<int> tall;
  for (int d = 100; d <= 1000; d += 50) tall.push_back(d);
  double worst_ratio = 0.0, worst_slope = 0.0;
  std::string detail;
  for (double q : {2.0, 3.0, 5.0}) {
    const std::vector<int> pair = {400, 800};
    const auto rep_pair = sweep(AsymptoticQuantity::L, 2.0, q, pair);
    worst_ratio = std::max(worst_ratio, std::abs(rep_pair.last_ratio - 1.0));
    const auto rep_tall = sweep(AsymptoticQuantity::L, 2.0, q, tall);
    const double target = 0.5 - 1.0 / (q - 1.0);
    worst_slope = std::max(worst_slope, std::abs(rep_tall.slope - target));
    detail += fmt::format("p={:g}: slope {:.4f} vs {:.4f}; ", q, rep_tall.slope, target);
  }
  rep.checks.push_back(ctx.judge("L_gaussian_ratio", worst_ratio, 0.0, "p in {2,3,5}, d=400/800"));
  rep.checks.push_back(ctx.judge("L_gaussian_slope", worst_slope, 0.0, detail));

  std::vector<int> ds;
  for (int d = ctx.integer("d_min"); d <= ctx.integer("d_max"); ++d) ds.push_back(d);
  const auto frac = sweep(AsymptoticQuantity::L, 1.0, p, ds);
  rep.checks.push_back(ctx.judge("L_fractional_band", frac.band_ratio, 5.0));
  std::vector<int> d_fit;
  std::vector<double> y_fit;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds[i] < ctx.integer("slope_d_min")) continue;
    d_fit.push_back(ds[i]);
    y_fit.push_back(frac.log_values[i] + specfun::log_sphere_area(ds[i]));
  }
  rep.checks.push_back(ctx.judge("L_fractional_slope", fit_log_log(d_fit, y_fit), -1.0 / (2.0 * (p - 1.0))));
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("L_fractional", rep));
    w.meta("alpha", 1.0).meta("p", p).meta("band_ratio", frac.band_ratio);
    w.header({"d", "log_L", "normalized", "rho_star"});
    for (std::size_t i = 0; i < ds.size(); ++i)
      w.row(std::vector<double>{double(ds[i]), frac.log_values[i], frac.normalized[i], frac.t0_or_rho0[i]});
  }
}

// ---- 12: window bound ----------------------------------------------------

void run_window(const PresetContext& ctx, PresetReport& rep) {
  const double alpha = ctx.number("alpha"), p = ctx.number("p");
  const int lo = ctx.integer("d_min"), hi = ctx.integer("d_max");
  std::vector<double> eta(hi - lo + 1);
#pragma omp parallel for
  for (int d = lo; d <= hi; ++d) eta[d - lo] = window_lower_bound(alpha, d, p);
  const auto it = std::min_element(eta.begin(), eta.end());
  rep.checks.push_back(ctx.judge("eta_min", *it, 0.05, fmt::format("attained at d={}", lo + (it - eta.begin()))));
  if (ctx.writes_files()) {
    CsvWriter w(ctx.artifact("eta", rep));
    w.meta("alpha", alpha).meta("p", p);
    w.header({"d", "eta"});
    for (int d = lo; d <= hi; ++d) w.row(std::vector<double>{double(d), eta[d - lo]});
  }
}

std::vector<ExperimentPreset> build_registry() {
  using C = Comparison;
  std::vector<ExperimentPreset> r;
  r.push_back({"constants", 1, "closed-form constants", {"specfun", "stationary", "nonlinearity"},
               {{"alpha", "2"}, {"p", "3"}, {"d", "5"}},
               {{"sigma_3", C::rel_le, 1e-12}, {"s_2_5_3", C::rel_le, 1e-12}, {"s_recurrence", C::rel_le, 1e-12},
                {"c_2_2", C::holds, 0.0}},
               1.0, run_constants});
  r.push_back({"osgood", 2, "Osgood transform round trip", {"nonlinearity"},
               {{"T_min", "1e-3"}, {"T_max", "1e3"}, {"T_max_exponential", "700"}, {"samples", "61"}},
               {{"power_p2", C::abs_le, 1e-9}, {"power_p3.5", C::abs_le, 1e-9}, {"power_sum", C::abs_le, 1e-9},
                {"exponential", C::abs_le, 1e-9}},
               1.0, run_osgood});
  r.push_back({"kernel_laws", 3, "kernel mass, semigroup and subordination", {"kernels"},
               {{"t", "1"}, {"rho_max", "10"}, {"rho_samples", "101"}},
               {{"unit_mass", C::abs_le, 1e-8}, {"semigroup", C::abs_le, 1e-7}, {"subordination_vs_poisson", C::abs_le, 1e-7}},
               10.0, run_kernel_laws});
  r.push_back({"approximation", 4, "nonlocal kernel approaches Gauss-Weierstrass", {"kernels"},
               {{"L", "128"}, {"n", "1024"}},
               {{"strictly_decreasing", C::holds, 0.0}},
               30.0, run_approximation});
  r.push_back({"jensen", 5, "moment functional Jensen chain", {"solver", "blowup", "nonlinearity"},
               {{"L", "64"}, {"n", "1024"}, {"M", "1"}, {"p", "2"}, {"T1", "0.5"}, {"T2", "1"}, {"T3", "2"}, {"dt_init", "0.01"}},
               {{"derivative_fraction", C::at_least, 0.0}, {"osgood_decrement", C::at_least, 0.0}},
               60.0, run_jensen});
  r.push_back({"criterion_soundness", 6, "criterion predicts simulated blowup", {"blowup", "solver"},
               {{"L", "64"}, {"n", "1024"}, {"M", "5"}, {"p", "2"}, {"horizon_factor", "2"}},
               {{"T_star_exists", C::holds, 0.0}, {"blew_up", C::holds, 0.0}, {"support_audit", C::holds, 0.0},
                {"t_obs_vs_T_star", C::at_most, 0.0}},
               120.0, run_soundness});
  r.push_back({"fujita", 7, "growth of the moment below the Fujita exponent", {"blowup", "kernels"},
               {{"L", "2048"}, {"n", "16384"}, {"p", "2.5"}, {"T_min", "10"}, {"T_max", "1e4"}, {"samples", "16"}},
               {{"curve_complete", C::holds, 0.0}, {"growth_exponent", C::rel_le, 0.05}},
               60.0, run_fujita});
  r.push_back({"dichotomy_decay", 8, "small data decay above the Fujita exponent", {"solver"},
               {{"L", "64"}, {"n", "1024"}, {"M", "0.1"}, {"p", "4"}, {"t_end", "1000"}, {"dt_init", "0.5"}},
               {{"global", C::holds, 0.0}, {"support_audit", C::holds, 0.0}, {"decay_slope", C::at_most, 0.0}},
               120.0, run_decay});
  r.push_back({"morrey_closed_form", 9, "radial concentration of the singular solution", {"norms", "stationary"},
               {{"alpha", "2"}, {"d", "5"}, {"p", "3"}, {"r_min", "1e-3"}, {"r_max", "1e3"}, {"samples", "241"},
                {"probe_min", "0.1"}, {"probe_max", "10"}},
               {{"concentration", C::rel_le, 1e-5}, {"r_independence", C::abs_le, 1e-6}},
               5.0, run_morrey});
  r.push_back({"stationary_residual", 10, "singular solution solves the stationary equation", {"stationary"},
               {{"alpha", "1"}, {"d", "3"}, {"p", "3"}, {"d_laplacian", "5"}, {"p_laplacian", "3"}},
               {{"fractional_residual", C::abs_le, 1e-3}, {"laplacian_residual", C::abs_le, 1e-10}},
               60.0, run_stationary});
  r.push_back({"asymptotic_orders", 11, "dimensional orders of K and L", {"asymptotics"},
               {{"p", "3"}, {"d_min", "3"}, {"d_max", "50"}, {"slope_d_min", "10"}},
               {{"K_2_3_ratio", C::abs_le, 0.02}, {"L_gaussian_ratio", C::abs_le, 0.02}, {"L_gaussian_slope", C::abs_le, 0.02},
                {"L_fractional_band", C::at_most, 0.0}, {"L_fractional_slope", C::abs_le, 0.05}},
               60.0, run_asymptotics});
  r.push_back({"window_bound", 12, "window lower bound eta(d)", {"asymptotics"},
               {{"alpha", "1"}, {"p", "3"}, {"d_min", "10"}, {"d_max", "1000"}},
               {{"eta_min", C::at_least, 0.0}},
               5.0, run_window});
  return r;
}

}  // namespace

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::rel_le: return "relative<=";
    case Comparison::abs_le: return "absolute<=";
    case Comparison::at_least: return ">=";
    case Comparison::at_most: return "<=";
    case Comparison::holds: return "holds";
  }
  return "?";
}

bool PresetReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult& PresetReport::check(const std::string& check_name) const {
  for (const auto& c : checks)
    if (c.descriptor.name == check_name) return c;
  throw std::out_of_range("preset " + name + " has no check result " + check_name);
}

const CheckDescriptor& ExperimentPreset::descriptor(const std::string& check) const {
  for (const auto& c : checks)
    if (c.name == check) return c;
  throw std::logic_error("preset " + name + " has no check " + check);
}

PresetContext::PresetContext(const ExperimentPreset& preset, Bindings bindings, std::filesystem::path out_dir)
    : preset_(preset), bindings_(std::move(bindings)), out_dir_(std::move(out_dir)) {}

const std::string& PresetContext::text(const std::string& key) const {
  const auto it = bindings_.find(key);
  if (it == bindings_.end()) throw std::logic_error("preset " + preset_.name + " has no binding " + key);
  return it->second;
}

double PresetContext::number(const std::string& key) const {
  const std::string& v = text(key);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw UsageError(fmt::format("{}: '{}' is not a number", key, v));
  return x;
}

int PresetContext::integer(const std::string& key) const {
  const double x = number(key);
  if (x != std::round(x) || std::abs(x) > 1e9) throw UsageError(fmt::format("{}: '{}' is not an integer", key, text(key)));
  return static_cast<int>(x);
}

std::filesystem::path PresetContext::artifact(const std::string& stem, PresetReport& report) const {
  auto path = out_dir_ / fmt::format("{}_{}.csv", preset_.name, stem);
  report.artifacts.push_back(path);
  return path;
}

CheckResult PresetContext::judge(const std::string& check, double measured, double expected, std::string detail) const {
  CheckResult res{preset_.descriptor(check), measured, expected, false, std::move(detail)};
  const double tol = res.descriptor.tolerance;
  switch (res.descriptor.comparison) {
    case Comparison::rel_le: res.passed = std::abs(measured - expected) <= tol * std::abs(expected); break;
    case Comparison::abs_le: res.passed = std::abs(measured - expected) <= tol; break;
    case Comparison::at_least: res.passed = measured >= expected; break;
    case Comparison::at_most: res.passed = measured <= expected; break;
    case Comparison::holds: res.passed = measured == 1.0; break;
  }
  return res;
}

const std::vector<std::string>& registered_modules() {
  static const std::vector<std::string> modules = {"specfun", "nonlinearity", "kernels", "norms", "stationary",
                                                   "asymptotics", "blowup", "solver", "cli"};
  return modules;
}

const std::vector<ExperimentPreset>& registry() {
  static const std::vector<ExperimentPreset> presets = build_registry();
  return presets;
}

const ExperimentPreset& find_preset(const std::string& name) {
  for (const auto& p : registry())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : registry()) known += " " + p.name;
  throw UsageError(fmt::format("unknown preset '{}'; known:{}", name, known));
}

PresetReport run_preset(const std::string& name, const Bindings& overrides, const std::filesystem::path& out_dir) {
  const ExperimentPreset& preset = find_preset(name);
  Bindings merged = preset.bindings;
  for (const auto& [k, v] : overrides) {
    if (!merged.count(k)) throw UsageError(fmt::format("preset {} has no parameter '{}'", name, k));
    merged[k] = v;
  }
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  PresetContext ctx(preset, merged, out_dir);
  PresetReport report;
  report.name = name;
  const auto start = std::chrono::steady_clock::now();
  try {
    preset.body(ctx, report);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    // A failed experiment is a failed check, not a crash of the runner.
    report.checks.push_back({{"completed", Comparison::holds, 0.0}, 0.0, 1.0, false, e.what()});
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!out_dir.empty()) {
    const auto manifest = out_dir / fmt::format("{}_manifest.txt", name);
    std::ofstream m(manifest);
    m << "preset: " << name << "\ncriterion: " << preset.criterion << "\n";
    for (const auto& [k, v] : merged) m << "param " << k << " = " << v << "\n";
    for (const auto& c : report.checks)
      m << "check " << c.descriptor.name << " " << to_string(c.descriptor.comparison) << " tol="
        << format_number(c.descriptor.tolerance) << " measured=" << format_number(c.measured)
        << " expected=" << format_number(c.expected) << " " << (c.passed ? "PASS" : "FAIL") << "\n";
    m << "result: " << (report.passed() ? "PASS" : "FAIL") << "\n";
    report.artifacts.push_back(manifest);
  }
  return report;
}

std::string format_report(const PresetReport& report) {
  std::string out;
  for (const auto& c : report.checks) {
    out += fmt::format("  {} {}.{}: measured={:.10g} expected {} {:.10g} (tol {:g})", c.passed ? "PASS" : "FAIL", report.name,
                       c.descriptor.name, c.measured, to_string(c.descriptor.comparison), c.expected, c.descriptor.tolerance);
    if (!c.detail.empty()) out += "  [" + c.detail + "]";
    out += "\n";
  }
  return out;
}

}  // namespace blowlab::presets
