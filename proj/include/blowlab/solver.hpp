#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "blowlab/fft.hpp"
#include "blowlab/grid.hpp"
#include "blowlab/kernels.hpp"
#include "blowlab/nonlinearity.hpp"

namespace blowlab {

struct SimConfig {
  KernelSpec kernel;
  Nonlinearity nonlinearity = Nonlinearity::power(1.0, 2.0);
  double dt_init = 1e-2;
  double dt_min = 1e-12;
  double u_max = 1e8;
  double t_end = 1.0;
  /// dt <= dt_safety / F'(sup u).
  double dt_safety = 0.5;
  std::vector<double> moment_targets;
  /// Flat index of x* on the initial mesh; default is the argmax of k_T * u0 per target.
  std::optional<std::size_t> center;
  /// Values above support_tol·max(1, sup u) in |x|_∞ > 3L/4 fail the support audit.
  double support_tol = 1e-12;
  bool auto_enlarge = true;
  int max_n = 1 << 16;
  double mass_loss_tol = 1e-4;

  void validate(double initial_sup) const;
};

enum class Outcome { blew_up, reached_horizon, dt_underflow };
std::string to_string(Outcome o);

struct TrajectoryPoint {
  double t = 0.0;
  double sup_u = 0.0;
  double mass = 0.0;
  double dt = 0.0;
};

struct MomentPoint {
  double t = 0.0;
  double W = 0.0;
  double F_of_W = 0.0;
  /// (W(t_{n+1}) - W(t_n)) / (t_{n+1} - t_n); NaN at the last point.
  double dW_dt_fd = 0.0;
};

struct MomentSeries {
  double T = 0.0;
  std::size_t center = 0;  // flat index on the initial mesh
  std::vector<MomentPoint> points;
};

struct Trajectory {
  std::vector<TrajectoryPoint> series;
  std::vector<MomentSeries> moments;
  Outcome outcome = Outcome::reached_horizon;
  double t_obs = 0.0;
  /// False when the support audit failed and enlargement was exhausted.
  bool reliable = true;
  std::string audit_note;
  int enlargements = 0;
  std::size_t significant_negatives = 0;
  GridFunction final_state;
};

/// Exact linear propagator e^{tσ} on a fixed mesh plus the two-stage source update.
class Propagator {
 public:
  Propagator(const KernelSpec& kernel, const Mesh& mesh);

  const Mesh& mesh() const { return spectral_.mesh(); }
  const std::vector<double>& symbol() const { return sigma_; }
  Spectral& spectral() { return spectral_; }

  /// One integrating-factor midpoint step:
  ///   u_half = E(dt/2)(u + dt/2 F(u)),  u_new = E(dt)u + dt E(dt/2) F(u_half).
  /// Returns the mass added by the source, dt ∫F(u_half).
  double step(std::vector<double>& u, const Nonlinearity& F, double dt);

  /// (E(t) u)(x_j) for natural-order u, O(N) after one forward transform.
  double evolve_at(const Spectrum& u_hat, double t, std::size_t j);
  /// Flat index of the maximum of E(t) u.
  std::size_t argmax_evolved(std::span<const double> u, double t);

 private:
  void refresh(double dt);

  KernelSpec kernel_;
  Spectral spectral_;
  std::vector<double> sigma_;
  double cached_dt_ = -1.0;
  std::vector<double> e_full_, e_half_;
  Spectrum a_, b_;
  std::vector<double> stage_, source_;
};

/// Single step from scratch (builds a Propagator).
GridFunction step(const GridFunction& u, const SimConfig& cfg, double dt);

/// Adaptive run to t_end, u_max crossing or dt underflow. Throws
/// ResolutionError on mass loss beyond cfg.mass_loss_tol.
Trajectory run(const GridFunction& u0, const SimConfig& cfg);

struct DichotomyRun {
  double scale = 0.0;
  Outcome outcome = Outcome::reached_horizon;
  double t_obs = 0.0;
  bool censored = false;
  bool reliable = true;
  /// sup over recorded t > 0 of t^{1/(p-1)} ‖u(t)‖_∞ (survived runs).
  double decay_sup = 0.0;
  /// Log-log slope of t^{1/(p-1)}‖u‖_∞ over the last decade of recorded times.
  double decay_slope = 0.0;
  std::optional<double> T_star;
  bool prediction_ok = true;  // t_obs <= 1.1 T_star when both exist
};

struct DichotomySummary {
  std::vector<DichotomyRun> runs;
  bool monotone = true;
  std::optional<double> lambda_lower;  // largest surviving scale
  std::optional<double> lambda_upper;  // smallest blowing-up scale
  std::string summary() const;
};

/// Runs λ·u0 for each λ (concurrently), checks outcome monotonicity, compares
/// blowup times with the criterion's T_star, then bisects the threshold λ*
/// `bisections` times.
DichotomySummary dichotomy_experiment(const std::vector<double>& scales, const GridFunction& base,
                                      const SimConfig& cfg, int bisections = 0);

}  // namespace blowlab
