#include "blowlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <limits>

#include "blowlab/blowup.hpp"
#include "blowlab/errors.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/parallel.hpp"

namespace blowlab {

void SimConfig::validate(double initial_sup) const {
  kernel.validate();
  if (!(dt_min > 0.0) || !(dt_init > dt_min)) throw DomainError("SimConfig: need 0 < dt_min < dt_init");
  if (!(u_max > initial_sup)) throw DomainError("SimConfig: u_max must exceed the initial sup");
  if (!(t_end > 0.0)) throw DomainError("SimConfig: t_end must be positive");
  if (!(dt_safety > 0.0)) throw DomainError("SimConfig: dt_safety must be positive");
  for (double T : moment_targets)
    if (!(T > 0.0) || T > t_end) throw DomainError("SimConfig: moment targets must lie in (0, t_end]");
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::blew_up: return "blew_up";
    case Outcome::reached_horizon: return "reached_horizon";
    case Outcome::dt_underflow: return "dt_underflow";
  }
  return "?";
}

Propagator::Propagator(const KernelSpec& kernel, const Mesh& mesh)
    : kernel_(kernel), spectral_(mesh), sigma_(grid_generator_symbol(kernel, spectral_)) {
  const std::size_t ns = spectral_.spectral_size();
  e_full_.resize(ns);
  e_half_.resize(ns);
  a_.resize(ns);
  b_.resize(ns);
  stage_.resize(mesh.size());
  source_.resize(mesh.size());
}

void Propagator::refresh(double dt) {
  if (dt == cached_dt_) return;
  par::omp::exp_multiplier(sigma_, dt, e_full_);
  par::omp::exp_multiplier(sigma_, 0.5 * dt, e_half_);
  cached_dt_ = dt;
}

double Propagator::step(std::vector<double>& u, const Nonlinearity& F, double dt) {
  refresh(dt);
  par::omp::source_stage(u, F, 0.5 * dt, stage_);
  spectral_.forward(stage_, a_);
  par::omp::scale_spectrum(a_, e_half_, a_);
  spectral_.inverse(a_, stage_);
  par::omp::clip_negative(stage_, std::numeric_limits<double>::infinity());
  par::omp::apply_source(stage_, F, source_);
  spectral_.forward(u, a_);
  spectral_.forward(source_, b_);
  par::omp::combine_spectra(a_, e_full_, b_, e_half_, dt, a_);
  spectral_.inverse(a_, u);
  return dt * par::omp::sum(source_) * mesh().cell_volume();
}

double Propagator::evolve_at(const Spectrum& u_hat, double t, std::size_t j) {
  std::vector<double> mult(sigma_.size());
  par::omp::exp_multiplier(sigma_, t, mult);
  return spectral_.evaluate_at(u_hat, mult, j);
}

std::size_t Propagator::argmax_evolved(std::span<const double> u, double t) {
  std::vector<double> mult(sigma_.size());
  par::omp::exp_multiplier(sigma_, t, mult);
  Spectrum s = spectral_.forward(u);
  par::omp::scale_spectrum(s, mult, s);
  const auto v = spectral_.inverse(s);
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

GridFunction step(const GridFunction& u, const SimConfig& cfg, double dt) {
  if (!(dt >= cfg.dt_min && dt <= cfg.dt_init)) throw DomainError("step: dt must lie in [dt_min, dt_init]");
  Propagator prop(cfg.kernel, u.mesh);
  GridFunction out = u;
  prop.step(out.values, cfg.nonlinearity, dt);
  par::omp::clip_negative(out.values, 1e-12);
  return out;
}

namespace {

std::size_t remap_index(std::size_t j, const Mesh& from, const Mesh& to) {
  const int offset = to.origin_index() - from.origin_index();
  const int ix = static_cast<int>(j % from.n) + offset;
  if (from.d == 1) return static_cast<std::size_t>(ix);
  const int iy = static_cast<int>(j / from.n) + offset;
  return to.flat(ix, iy);
}

double outer_sup(const GridFunction& u) {
  const Mesh& m = u.mesh;
  double out = 0.0;
  for (std::size_t i = 0; i < u.values.size(); ++i)
    if (m.max_abs_coordinate(i) > 0.75 * m.half_width) out = std::max(out, u.values[i]);
  return out;
}

}  // namespace

Trajectory run(const GridFunction& u0, const SimConfig& cfg) {
  u0.mesh.validate();
  u0.validate();
  cfg.validate(u0.sup());
  const Nonlinearity& F = cfg.nonlinearity;

  Trajectory tr;
  GridFunction u = u0;
  auto prop = std::make_unique<Propagator>(cfg.kernel, u.mesh);

  std::vector<double> targets = cfg.moment_targets;
  std::sort(targets.begin(), targets.end());
  std::vector<std::size_t> centers;  // on the current mesh
  for (double T : targets) {
    const std::size_t c = cfg.center ? *cfg.center : prop->argmax_evolved(u.values, T);
    centers.push_back(c);
    tr.moments.push_back({T, c, {}});
  }
  auto record_moments = [&](double t) {
    if (targets.empty() || t > targets.back() * (1.0 + 1e-12)) return;
    const Spectrum u_hat = prop->spectral().forward(u.values);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      if (t > targets[k] * (1.0 + 1e-12)) continue;
      const double W = prop->evolve_at(u_hat, std::max(targets[k] - t, 0.0), centers[k]);
      tr.moments[k].points.push_back({t, W, F(std::max(W, 0.0)), std::numeric_limits<double>::quiet_NaN()});
    }
  };

  const double vol0 = u.mesh.cell_volume();
  double mass = par::omp::sum(u.values) * vol0;
  double expected_mass = mass;
  double t = 0.0;
  tr.series.push_back({0.0, u.sup(), mass, 0.0});
  record_moments(0.0);
  tr.outcome = Outcome::reached_horizon;

  while (true) {
    const double sup = par::omp::max(u.values);
    if (!std::isfinite(sup) || sup >= cfg.u_max) {
      tr.outcome = Outcome::blew_up;
      break;
    }
    const double remaining = cfg.t_end - t;
    if (remaining <= 1e-12 * cfg.t_end) break;
    double dt = std::min(cfg.dt_init, remaining);
    const double slope = F.derivative(sup);
    if (slope > 0.0) dt = std::min(dt, cfg.dt_safety / slope);
    for (double T : targets)
      if (T > t * (1.0 + 1e-12) && T - t < dt) dt = T - t;
    if (dt < cfg.dt_min && dt < remaining) {
      tr.outcome = Outcome::dt_underflow;
      break;
    }

    expected_mass += prop->step(u.values, F, dt);
    tr.significant_negatives += par::omp::clip_negative(u.values, 1e-12);
    t += dt;
    mass = par::omp::sum(u.values) * u.mesh.cell_volume();
    if (std::isfinite(mass) && expected_mass - mass > cfg.mass_loss_tol * expected_mass)
      throw ResolutionError(fmt::format("run: mass loss {:.3g} (relative) at t = {:.6g}; refine the mesh",
                                        (expected_mass - mass) / expected_mass, t));
    tr.series.push_back({t, par::omp::max(u.values), mass, dt});
    record_moments(t);

    // Relative to max(1, sup u): FFT round-off alone puts ~1e-16 sup u everywhere.
    if (outer_sup(u) > cfg.support_tol * std::max(1.0, tr.series.back().sup_u)) {
      if (cfg.auto_enlarge && 2 * u.mesh.n <= cfg.max_n) {
        const Mesh bigger = u.mesh.enlarged();
        for (auto& c : centers) c = remap_index(c, u.mesh, bigger);
        u = u.embedded(bigger);
        prop = std::make_unique<Propagator>(cfg.kernel, bigger);
        ++tr.enlargements;
      } else if (tr.reliable) {
        tr.reliable = false;
        tr.audit_note = fmt::format("support audit failed at t = {:.6g} with n = {} (max_n = {})", t, u.mesh.n,
                                    cfg.max_n);
      }
    }
  }
  tr.t_obs = t;
  for (auto& series : tr.moments) {
    auto& pts = series.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      pts[i].dW_dt_fd = (pts[i + 1].W - pts[i].W) / (pts[i + 1].t - pts[i].t);
  }
  tr.final_state = std::move(u);
  return tr;
}

std::string DichotomySummary::summary() const {
  std::string out = "scale,outcome,t_obs,censored,reliable,decay_sup,decay_slope,T_star,prediction_ok\n";
  for (const auto& r : runs)
    out += fmt::format("{:.6g},{},{:.6g},{},{},{:.6g},{:.4f},{},{}\n", r.scale, to_string(r.outcome), r.t_obs,
                       r.censored, r.reliable, r.decay_sup, r.decay_slope,
                       r.T_star ? fmt::format("{:.6g}", *r.T_star) : std::string("none"), r.prediction_ok);
  out += fmt::format("monotone: {}\n", monotone);
  if (lambda_lower) out += fmt::format("lambda_lower: {:.6g}\n", *lambda_lower);
  if (lambda_upper) out += fmt::format("lambda_upper: {:.6g}\n", *lambda_upper);
  return out;
}

namespace {

DichotomyRun dichotomy_run(double scale, const GridFunction& base, const SimConfig& cfg) {
  DichotomyRun r;
  r.scale = scale;
  GridFunction u0 = base;
  for (double& v : u0.values) v *= scale;
  SimConfig c = cfg;
  c.moment_targets.clear();
  const Trajectory tr = run(u0, c);
  r.outcome = tr.outcome;
  r.t_obs = tr.t_obs;
  r.reliable = tr.reliable;
  const double p = cfg.nonlinearity.small_u_exponent();
  if (tr.outcome == Outcome::reached_horizon) {
    std::vector<double> lx, ly;
    for (const auto& pt : tr.series) {
      if (pt.t <= 0.0) continue;
      const double v = std::pow(pt.t, 1.0 / (p - 1.0)) * pt.sup_u;
      r.decay_sup = std::max(r.decay_sup, v);
      if (pt.t >= 0.1 * tr.t_obs) {
        lx.push_back(std::log(pt.t));
        ly.push_back(std::log(v));
      }
    }
    if (lx.size() >= 2) r.decay_slope = num::linear_fit(lx, ly).first;
    // Survival is only conclusive once the sup has started to decay.
    const std::size_t n = tr.series.size();
    r.censored = n >= 2 && tr.series[n - 1].sup_u > tr.series[n * 3 / 4].sup_u;
  } else if (cfg.nonlinearity.is_power()) {
    CriterionInput in;
    in.grid = u0;
    in.kernel = cfg.kernel;
    in.nonlinearity = cfg.nonlinearity;
    try {
      const BlowupVerdict v = evaluate_criterion(in);
      r.T_star = v.T_star;
      if (v.T_star) r.prediction_ok = tr.t_obs <= 1.1 * *v.T_star;
    } catch (const ResolutionError&) {
    }
  }
  return r;
}

bool survived(const DichotomyRun& r) { return r.outcome == Outcome::reached_horizon && !r.censored; }
bool blew(const DichotomyRun& r) { return r.outcome != Outcome::reached_horizon; }

}  // namespace

DichotomySummary dichotomy_experiment(const std::vector<double>& scales, const GridFunction& base,
                                      const SimConfig& cfg, int bisections) {
  DichotomySummary s;
  std::vector<double> sorted = scales;
  std::sort(sorted.begin(), sorted.end());
  s.runs.resize(sorted.size());
  std::vector<std::exception_ptr> errors(sorted.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    try {
      s.runs[i] = dichotomy_run(sorted[i], base, cfg);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  bool seen_blowup = false;
  for (const auto& r : s.runs) {
    if (blew(r)) {
      seen_blowup = true;
      if (!s.lambda_upper) s.lambda_upper = r.scale;
    }
    if (survived(r)) {
      if (seen_blowup) s.monotone = false;
      s.lambda_lower = r.scale;
    }
  }
  for (int k = 0; k < bisections && s.lambda_lower && s.lambda_upper && *s.lambda_lower < *s.lambda_upper; ++k) {
    const double mid = std::sqrt(*s.lambda_lower * *s.lambda_upper);
    const DichotomyRun r = dichotomy_run(mid, base, cfg);
    s.runs.push_back(r);
    if (blew(r)) s.lambda_upper = mid;
    else if (survived(r)) s.lambda_lower = mid;
    else break;
  }
  return s;
}

}  // namespace blowlab
