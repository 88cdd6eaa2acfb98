#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "blowlab/errors.hpp"
#include "blowlab/solver.hpp"
#include "oracles.hpp"

using namespace blowlab;

namespace {

GridFunction gaussian(const Mesh& mesh, double amp) {
  return GridFunction::sample(mesh, [amp](double r) { return amp * std::exp(-r * r); });
}

}  // namespace

TEST_CASE("linear evolution equals the kernel series") {
  const Mesh mesh{1, 64.0, 1024};
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1);
  cfg.nonlinearity = Nonlinearity::zero();
  cfg.t_end = 3.0;
  cfg.dt_init = 0.25;
  const auto traj = run(gaussian(mesh, 1.0), cfg);
  CHECK(traj.outcome == Outcome::reached_horizon);
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i)
    worst = std::max(worst, std::abs(traj.final_state.values[i] - oracle::poisson_gaussian(3.0, mesh.coordinate(int(i)))));
  CHECK(worst < 1e-12);
  for (const auto& pt : traj.series) CHECK(pt.mass == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("spatially constant data follow the ODE with second-order accuracy") {
  // u' = u², u(0) = 1: u(t) = 1/(1-t).
  const Mesh mesh{1, 4.0, 16};
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1, 1.0);
  cfg.nonlinearity = Nonlinearity::power(1.0, 2.0);
  auto error_at_half = [&](double dt) {
    GridFunction u(mesh, std::vector<double>(mesh.size(), 1.0));
    for (int k = 0; k < int(std::lround(0.5 / dt)); ++k) u = step(u, cfg, dt);
    return std::abs(u.values[3] - 2.0);
  };
  const double e1 = error_at_half(0.01), e2 = error_at_half(0.005);
  CHECK(e1 < 1e-3);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

// Constant data stay constant, so the scheme reduces to the scalar midpoint
// recurrence under the same step rule.
double scalar_blowup_time(double dt_init, double dt_safety, double t_end, double u_max) {
  double u = 1.0, t = 0.0;
  while (u < u_max && t_end - t > 1e-12 * t_end) {
    const double dt = std::min({dt_init, t_end - t, dt_safety / (2.0 * u)});
    const double half = u + 0.5 * dt * u * u;
    u += dt * half * half;
    t += dt;
  }
  return t;
}

TEST_CASE("blowup of constant data near the ODE time") {
  const Mesh mesh{1, 4.0, 16};
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1, 1.0);
  cfg.nonlinearity = Nonlinearity::power(1.0, 2.0);
  cfg.t_end = 2.0;
  cfg.auto_enlarge = false;
  double previous_gap = 1.0;
  for (double safety : {0.5, 0.1, 0.02}) {
    cfg.dt_safety = safety;
    const auto traj = run(GridFunction(mesh, std::vector<double>(mesh.size(), 1.0)), cfg);
    CHECK(traj.outcome == Outcome::blew_up);
    CHECK(traj.t_obs == doctest::Approx(scalar_blowup_time(cfg.dt_init, safety, cfg.t_end, cfg.u_max)).epsilon(1e-9));
    // The exact blowup time is 1; the lag shrinks with the step.
    const double gap = std::abs(traj.t_obs - 1.0);
    CHECK(gap < 0.01);
    CHECK(gap < previous_gap);
    previous_gap = gap;
    // Constant data fill the box, which the support audit must report.
    CHECK_FALSE(traj.reliable);
  }
}

TEST_CASE("moment series satisfy the discrete Jensen inequality") {
  const Mesh mesh{1, 64.0, 1024};
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1);
  cfg.nonlinearity = Nonlinearity::power(1.0, 2.0);
  cfg.moment_targets = {0.3, 0.8};
  cfg.t_end = 0.8;
  const auto traj = run(gaussian(mesh, 1.5), cfg);
  REQUIRE(traj.moments.size() == 2);
  for (const auto& series : traj.moments) {
    CHECK(series.points.back().t == doctest::Approx(series.T).epsilon(1e-14));
    // W_T(0) from the initial data.
    CHECK(series.points.front().W == doctest::Approx(1.5 * oracle::poisson_gaussian(series.T, 0.0)).epsilon(1e-10));
    for (const auto& pt : series.points)
      if (std::isfinite(pt.dW_dt_fd)) CHECK(pt.dW_dt_fd >= pt.F_of_W * (1.0 - 1e-10));
  }
  for (std::size_t i = 1; i < traj.series.size(); ++i) CHECK(traj.series[i].mass >= traj.series[i - 1].mass);
}

TEST_CASE("support audit enlarges the box") {
  const Mesh mesh{1, 8.0, 128};
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1);
  cfg.nonlinearity = Nonlinearity::power(1.0, 3.0);
  cfg.t_end = 20.0;
  cfg.dt_init = 0.1;
  const auto traj = run(gaussian(mesh, 0.1), cfg);
  CHECK(traj.outcome == Outcome::reached_horizon);
  CHECK(traj.enlargements > 0);
  CHECK(traj.reliable);
  CHECK(traj.final_state.mesh.half_width > 8.0);
  CHECK(traj.final_state.mesh.spacing() == doctest::Approx(mesh.spacing()));
}

TEST_CASE("configuration errors") {
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1);
  cfg.t_end = -1.0;
  CHECK_THROWS_AS(cfg.validate(1.0), DomainError);
  cfg.t_end = 1.0;
  cfg.u_max = 0.5;
  CHECK_THROWS_AS(cfg.validate(1.0), DomainError);
  cfg.u_max = 1e8;
  cfg.moment_targets = {2.0};
  CHECK_THROWS_AS(cfg.validate(1.0), DomainError);
}

TEST_CASE("dichotomy over scales") {
  const Mesh mesh{1, 64.0, 1024};
  SimConfig cfg;
  cfg.kernel = KernelSpec::gaussian_like(1);
  cfg.nonlinearity = Nonlinearity::power(1.0, 4.0);
  cfg.t_end = 20.0;
  cfg.dt_init = 0.05;
  const auto summary = dichotomy_experiment({0.1, 3.0}, gaussian(mesh, 1.0), cfg, 2);
  CHECK(summary.monotone);
  REQUIRE(summary.lambda_lower.has_value());
  REQUIRE(summary.lambda_upper.has_value());
  CHECK(*summary.lambda_lower < *summary.lambda_upper);
  CHECK(*summary.lambda_lower >= 0.1);
  CHECK(*summary.lambda_upper <= 3.0);
  for (const auto& r : summary.runs)
    if (r.outcome == Outcome::blew_up && r.T_star) CHECK(r.prediction_ok);
  CHECK_FALSE(summary.summary().empty());
}
