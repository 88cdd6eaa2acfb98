// Runs every experiment preset and judges it against the acceptance table
// below. The table is written independently of the preset registry: a preset
// whose tolerance, comparison or expected value drifts from it fails here.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "blowlab/presets.hpp"

namespace {

using blowlab::presets::Comparison;
constexpr double kPi = std::numbers::pi;
constexpr double kFree = std::numeric_limits<double>::quiet_NaN();  // expected value computed in the body

struct Required {
  std::string check;
  Comparison comparison;
  double tolerance;
  double expected;
};

struct Criterion {
  int number;
  std::string preset;
  double budget_seconds;
  std::vector<Required> checks;
};

std::vector<Criterion> table() {
  using C = Comparison;
  const double sigma_5 = 8.0 * kPi * kPi / 3.0;
  const double p_fujita = 2.5;
  return {
      {1, "constants", 1.0,
       {{"sigma_3", C::rel_le, 1e-12, 4.0 * kPi},
        {"s_2_5_3", C::rel_le, 1e-12, std::numbers::sqrt2},
        {"s_recurrence", C::rel_le, 1e-12, kFree},
        {"c_2_2", C::holds, 0.0, 1.0}}},
      {2, "osgood", 1.0,
       {{"power_p2", C::abs_le, 1e-9, 0.0},
        {"power_p3.5", C::abs_le, 1e-9, 0.0},
        {"power_sum", C::abs_le, 1e-9, 0.0},
        {"exponential", C::abs_le, 1e-9, 0.0}}},
      {3, "kernel_laws", 10.0,
       {{"unit_mass", C::abs_le, 1e-8, 0.0},
        {"semigroup", C::abs_le, 1e-7, 0.0},
        {"subordination_vs_poisson", C::abs_le, 1e-7, 0.0}}},
      {4, "approximation", 30.0, {{"strictly_decreasing", C::holds, 0.0, 1.0}}},
      {5, "jensen", 60.0,
       {{"derivative_fraction", C::at_least, 0.0, 0.99}, {"osgood_decrement", C::at_least, 0.0, 0.9999}}},
      {6, "criterion_soundness", 120.0,
       {{"T_star_exists", C::holds, 0.0, 1.0},
        {"blew_up", C::holds, 0.0, 1.0},
        {"support_audit", C::holds, 0.0, 1.0},
        {"t_obs_vs_T_star", C::at_most, 0.0, 1.1}}},
      {7, "fujita", 60.0,
       {{"curve_complete", C::holds, 0.0, 1.0},
        {"growth_exponent", C::rel_le, 0.05, 1.0 / (p_fujita - 1.0) - 1.0 / 2.0}}},
      {8, "dichotomy_decay", 120.0,
       {{"global", C::holds, 0.0, 1.0}, {"support_audit", C::holds, 0.0, 1.0}, {"decay_slope", C::at_most, 0.0, 0.02}}},
      {9, "morrey_closed_form", 5.0,
       {{"concentration", C::rel_le, 1e-5, sigma_5 * std::numbers::sqrt2 / 4.0},
        {"r_independence", C::abs_le, 1e-6, 0.0}}},
      {10, "stationary_residual", 60.0,
       {{"fractional_residual", C::abs_le, 1e-3, 0.0}, {"laplacian_residual", C::abs_le, 1e-10, 0.0}}},
      {11, "asymptotic_orders", 60.0,
       {{"K_2_3_ratio", C::abs_le, 0.02, 1.0},
        {"L_gaussian_ratio", C::abs_le, 0.02, 0.0},
        {"L_gaussian_slope", C::abs_le, 0.02, 0.0},
        {"L_fractional_band", C::at_most, 0.0, 5.0},
        {"L_fractional_slope", C::abs_le, 0.05, -0.25}}},
      {12, "window_bound", 5.0, {{"eta_min", C::at_least, 0.0, 0.05}}},
  };
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

}  // namespace

int main() {
  namespace bp = blowlab::presets;
  const char* env = std::getenv("BLOWLAB_OUT");
  const std::filesystem::path out_dir = env ? env : "";
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

  int failures = 0;
  for (const Criterion& c : table()) {
    std::vector<std::string> problems;
    bp::PresetReport report;
    try {
      const bp::ExperimentPreset& preset = bp::find_preset(c.preset);
      if (preset.criterion != c.number) problems.push_back(fmt::format("registered as criterion {}", preset.criterion));
      if (preset.budget_seconds > c.budget_seconds) problems.push_back("budget above the required runtime");
      report = bp::run_preset(c.preset, {}, out_dir);
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }

    for (const Required& r : c.checks) {
      const bp::CheckResult* res = nullptr;
      for (const auto& x : report.checks)
        if (x.descriptor.name == r.check) res = &x;
      if (!res) {
        problems.push_back(fmt::format("{}: not reported", r.check));
        continue;
      }
      if (res->descriptor.comparison != r.comparison || !same(res->descriptor.tolerance, r.tolerance))
        problems.push_back(fmt::format("{}: judged {} {:g}, required {} {:g}", r.check,
                                       bp::to_string(res->descriptor.comparison), res->descriptor.tolerance,
                                       bp::to_string(r.comparison), r.tolerance));
      if (!std::isnan(r.expected) && !same(res->expected, r.expected))
        problems.push_back(fmt::format("{}: expected {:.12g}, oracle {:.12g}", r.check, res->expected, r.expected));
      if (!res->passed)
        problems.push_back(fmt::format("{}: measured {:.10g} vs {:.10g}", r.check, res->measured, res->expected));
    }
    for (const auto& x : report.checks)
      if (!x.passed) {
        bool listed = false;
        for (const Required& r : c.checks) listed = listed || r.check == x.descriptor.name;
        if (!listed) problems.push_back(fmt::format("{}: {}", x.descriptor.name, x.detail));
      }
    if (report.seconds > c.budget_seconds)
      problems.push_back(fmt::format("runtime {:.2f} s over {:g} s", report.seconds, c.budget_seconds));

    const bool ok = problems.empty();
    failures += !ok;
    fmt::print("{} criterion {:2} {} ({:.2f} s, budget {:g} s)\n", ok ? "PASS" : "FAIL", c.number, c.preset,
               report.seconds, c.budget_seconds);
    for (const auto& pr : problems) fmt::print("       {}\n", pr);
  }
  const int total = static_cast<int>(table().size());
  fmt::print("{} of {} criteria passed\n", total - failures, total);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
