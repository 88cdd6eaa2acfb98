// blowlab: experiment runner for the blowup toolkit.
#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "blowlab/asymptotics.hpp"
#include "blowlab/blowup.hpp"
#include "blowlab/csv.hpp"
#include "blowlab/errors.hpp"
#include "blowlab/kernels.hpp"
#include "blowlab/nonlinearity.hpp"
#include "blowlab/numerics.hpp"
#include "blowlab/presets.hpp"
#include "blowlab/solver.hpp"
#include "blowlab/specfun.hpp"
#include "blowlab/stationary.hpp"

namespace fs = std::filesystem;
using namespace blowlab;

namespace {

fs::path output_dir() {
  const char* env = std::getenv("BLOWLAB_OUT");
  fs::path dir = (env && *env) ? fs::path(env) : fs::path("blowlab_out");
  fs::create_directories(dir);
  return dir;
}

// "a:b" or "a:b:step" or a comma list.
std::vector<int> parse_dimensions(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(std::stoi(item));
    if (parts.size() < 2 || parts.size() > 3) throw CLI::ValidationError("--d", "expected a:b or a:b:step");
    const int step = parts.size() == 3 ? parts[2] : 1;
    if (step <= 0 || parts[1] < parts[0]) throw CLI::ValidationError("--d", "empty dimension range");
    for (int d = parts[0]; d <= parts[1]; d += step) out.push_back(d);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  }
  return out;
}

struct DataOptions {
  std::string profile = "gauss";
  std::string profile_file;
  double mass = 1.0;
  double p = 2.0;
  std::string source = "power";
  double coefficient = 1.0;
  std::string kernel = "gaussian_like";
  double kernel_param = 0.0;
  int d = 1;
  double L = 64.0;
  int n = 1024;

  void attach(CLI::App* app) {
    app->add_option("--profile", profile, "initial data: gauss or csv")->check(CLI::IsMember({"gauss", "csv"}));
    app->add_option("--profile-file", profile_file, "radial profile CSV (r,value) for --profile csv");
    app->add_option("--mass", mass, "total mass of the Gaussian profile");
    app->add_option("--p", p, "exponent of F(u) = c u^p");
    app->add_option("--nonlinearity", source, "power (c u^p) or exponential (e^u - 1)")
        ->check(CLI::IsMember({"power", "exponential"}));
    app->add_option("--c", coefficient, "coefficient c of the power nonlinearity");
    app->add_option("--kernel", kernel, "gaussian_like, compact_bump, heavy_tail or pure_fractional");
    app->add_option("--kernel-param", kernel_param, "scale, tail order or alpha (kind dependent)");
    app->add_option("--d", d, "dimension (1 or 2)");
    app->add_option("--L", L, "box half-width");
    app->add_option("--n", n, "points per axis (power of two)");
  }

  // File-name tag: p<exponent> or exp.
  std::string source_tag() const { return source == "exponential" ? "exp" : fmt::format("p{:g}", p); }

  Nonlinearity nonlinearity() const {
    return source == "exponential" ? Nonlinearity::exponential() : Nonlinearity::power(coefficient, p);
  }

  KernelSpec kernel_spec() const { return parse_kernel_spec(kernel, d, kernel_param); }

  GridFunction initial_data() const {
    const Mesh mesh{d, L, n};
    mesh.validate();
    if (profile == "gauss") {
      const double amp = mass * std::pow(std::numbers::pi, -0.5 * d);
      return GridFunction::sample(mesh, [amp](double r) { return amp * std::exp(-r * r); });
    }
    if (profile_file.empty()) throw CLI::ValidationError("--profile-file", "required for --profile csv");
    const auto u = read_profile_csv(profile_file, d);
    return GridFunction::sample(mesh, [&u](double r) { return r > 0.0 ? u(r) : u.values.front(); });
  }
};

int cmd_kernel(const std::string& kind, int d, double param, double t, double L, int n) {
  const auto spec = parse_kernel_spec(kind, d, param);
  fmt::print("kernel {}: alpha_eff={:.6g} A={:.6g}\n", spec.name(), spec.alpha_effective(), spec.symbol_coefficient());
  const Mesh mesh = auto_mesh(spec, t, Mesh{d, L, n});
  const auto k = semigroup_kernel(spec, t, mesh);
  fmt::print("k_t at t={:g}: L={:g} n={} atom={:.6g} mass={:.12g} min={:.3g} boundary_mass={:.3g}\n", t,
             mesh.half_width, mesh.n, k.atom, k.mass(), k.min_density(), k.boundary_mass());
  const auto path = output_dir() / fmt::format("kernel_{}_d{}_t{:g}.csv", spec.name(), d, t);
  write_grid_csv(path, GridFunction(mesh, k.density),
                 {{"kernel", spec.name()}, {"t", format_number(t)}, {"atom", format_number(k.atom)}});
  fmt::print("wrote {}\n", path.string());
  return 0;
}

int cmd_constants(double alpha, double p, int d) {
  const double s = singular_constant(alpha, d, p);
  const double K = alpha == 2.0 ? K_gaussian(d, p) : K_fractional(alpha, d, p);
  fmt::print("s={:.8g} K={:.6g} sigma_{}={:.6g}\n", s, K, d, specfun::sphere_area(d));
  const auto c = threshold_constant_c(alpha, p);
  fmt::print("c={:.8g}{} p_F={:.6g}\n", c.value, c.specified ? "" : " (unspecified for alpha<2; alpha=2 value)",
             fujita_exponent(alpha, d));
  return 0;
}

int cmd_criterion(const DataOptions& data) {
  CriterionInput in;
  in.grid = data.initial_data();
  in.kernel = data.kernel_spec();
  in.nonlinearity = data.nonlinearity();
  const auto v = evaluate_criterion(in);
  const auto path = output_dir() / fmt::format("criterion_{}_mass{:g}_{}.csv", in.kernel.name(), data.mass, data.source_tag());
  CsvWriter w(path);
  w.meta("kernel", in.kernel.name()).meta("mass", data.mass).meta("p", data.p);
  w.meta("classification", to_string(v.classification));
  w.header({"T", "W", "hinv", "ratio", "power_form"});
  for (const auto& pt : v.curve) w.row(std::vector<double>{pt.T, pt.W, pt.h_inverse, pt.ratio, pt.power_form});
  fmt::print("{}wrote {}\n", v.summary(), path.string());
  return 0;
}

int cmd_simulate(const DataOptions& data, double t_end, const std::vector<double>& targets, double dt_init,
                 double u_max) {
  SimConfig cfg;
  cfg.kernel = data.kernel_spec();
  cfg.nonlinearity = data.nonlinearity();
  cfg.t_end = t_end;
  cfg.dt_init = dt_init;
  cfg.u_max = u_max;
  cfg.moment_targets = targets;
  const auto traj = run(data.initial_data(), cfg);
  const auto dir = output_dir();
  const auto stem = fmt::format("{}_mass{:g}_{}", cfg.kernel.name(), data.mass, data.source_tag());
  const auto path = dir / fmt::format("trajectory_{}.csv", stem);
  CsvWriter w(path);
  w.meta("nonlinearity", cfg.nonlinearity.description());
  w.meta("outcome", to_string(traj.outcome)).meta("t_obs", traj.t_obs).meta("reliable", traj.reliable ? "true" : "false");
  w.header({"t", "sup_u", "mass", "dt"});
  for (const auto& pt : traj.series) w.row(std::vector<double>{pt.t, pt.sup_u, pt.mass, pt.dt});
  for (const auto& m : traj.moments) {
    CsvWriter mw(dir / fmt::format("moment_{}_T{:g}.csv", stem, m.T));
    mw.meta("T", m.T);
    mw.header({"t", "W", "F_of_W", "dW_dt_fd"});
    for (const auto& pt : m.points) mw.row(std::vector<double>{pt.t, pt.W, pt.F_of_W, pt.dW_dt_fd});
  }
  write_grid_csv(dir / fmt::format("final_{}.csv", stem), traj.final_state,
                 {{"t", format_number(traj.t_obs)}, {"outcome", to_string(traj.outcome)}});
  fmt::print("outcome={} t_obs={:.6g} reliable={} enlargements={}\n", to_string(traj.outcome), traj.t_obs, traj.reliable,
             traj.enlargements);
  if (!traj.audit_note.empty()) fmt::print("audit: {}\n", traj.audit_note);
  fmt::print("wrote {}\n", path.string());
  return 0;
}

int cmd_sweep(AsymptoticQuantity q, double alpha, double p, const std::string& dims) {
  const auto ds = parse_dimensions(dims);
  const auto rep = sweep(q, alpha, p, ds);
  const char* tag = q == AsymptoticQuantity::K ? "K" : "L";
  const auto path = output_dir() / fmt::format("sweep_{}_alpha{:g}_p{:g}.csv", tag, alpha, p);
  CsvWriter w(path);
  w.meta("slope", rep.slope).meta("band_ratio", rep.band_ratio);
  w.header({"quantity", "alpha", "p", "d", "value", "normalized", "t0_or_rho0"});
  for (std::size_t i = 0; i < ds.size(); ++i) {
    // t0_or_rho0 is empty for K, which has no maximizer.
    w.row(std::vector<std::string>{tag, format_number(alpha), format_number(p), std::to_string(ds[i]),
                                   format_number(std::exp(rep.log_values[i])), format_number(rep.normalized[i]),
                                   q == AsymptoticQuantity::K ? std::string() : format_number(rep.t0_or_rho0[i])});
    fmt::print("d={:5d} {}={:.6e} normalized={:.6g}\n", ds[i], tag, std::exp(rep.log_values[i]), rep.normalized[i]);
  }
  fmt::print("{}\nwrote {}\n", rep.verdict(), path.string());
  return 0;
}

int cmd_dichotomy(const DataOptions& data, const std::vector<double>& scales, double t_end, int bisections) {
  SimConfig cfg;
  cfg.kernel = data.kernel_spec();
  cfg.nonlinearity = data.nonlinearity();
  cfg.t_end = t_end;
  const auto summary = dichotomy_experiment(scales, data.initial_data(), cfg, bisections);
  const auto path = output_dir() / fmt::format("dichotomy_p{:g}.csv", data.p);
  write_dichotomy_csv(path, summary);
  fmt::print("{}wrote {}\n", summary.summary(), path.string());
  return summary.monotone ? 0 : 1;
}

int cmd_selftest(const std::vector<std::string>& names, const std::vector<std::string>& sets) {
  presets::Bindings overrides;
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw presets::UsageError("--set expects key=value, got " + s);
    overrides[s.substr(0, eq)] = s.substr(eq + 1);
  }
  std::vector<std::string> selected = names;
  if (selected.empty())
    for (const auto& p : presets::registry()) selected.push_back(p.name);
  if (!overrides.empty() && selected.size() != 1) throw presets::UsageError("--set requires exactly one --preset");
  const auto dir = output_dir();
  int failed = 0;
  for (const auto& name : selected) {
    const auto& preset = presets::find_preset(name);
    const auto rep = presets::run_preset(name, overrides, dir);
    const bool in_budget = rep.seconds <= preset.budget_seconds;
    const bool ok = rep.passed() && in_budget;
    failed += !ok;
    fmt::print("{} criterion {:2d} {} ({:.2f} s, budget {:g} s{})\n", ok ? "PASS" : "FAIL", preset.criterion, name,
               rep.seconds, preset.budget_seconds, in_budget ? "" : ", over budget");
    fmt::print("{}", presets::format_report(rep));
  }
  fmt::print("{} of {} presets passed\n", selected.size() - failed, selected.size());
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blowup criteria for nonlocal and fractional semilinear heat equations"};
  app.set_config("--config", "", "INI file with option overrides");
  app.require_subcommand(1);

  std::string kind = "gaussian_like";
  int kd = 1, kn = 1024;
  double kparam = 0.0, kt = 1.0, kL = 32.0;
  auto* kernel = app.add_subcommand("kernel", "build k_t on an automatically sized grid and write it as CSV");
  kernel->add_option("--kind", kind, "kernel kind");
  kernel->add_option("--d", kd, "dimension");
  kernel->add_option("--param", kparam, "scale, tail order or alpha");
  kernel->add_option("--t", kt, "time");
  kernel->add_option("--L", kL, "initial box half-width");
  kernel->add_option("--n", kn, "initial points per axis");

  double alpha = 2.0, p = 3.0;
  int d = 5;
  auto* constants = app.add_subcommand("constants", "print s(alpha,d,p), K(d), sigma_d");
  constants->add_option("--alpha", alpha)->check(CLI::Range(0.0, 2.0));
  constants->add_option("--p", p);
  constants->add_option("--d", d)->check(CLI::PositiveNumber);

  DataOptions crit_data;
  auto* criterion = app.add_subcommand("criterion", "evaluate W_T(0)/h^{-1}(T) and write the curve");
  crit_data.attach(criterion);

  DataOptions sim_data;
  double t_end = 1.0;
  std::vector<double> targets;
  auto* simulate = app.add_subcommand("simulate", "run the spectral solver");
  sim_data.attach(simulate);
  simulate->add_option("--t-end", t_end);
  simulate->add_option("--targets", targets, "T values whose moment W_T(t) is recorded")->delimiter(',');
  double dt_init = 1e-2, u_max = 1e8;
  simulate->add_option("--dt-init", dt_init, "initial and largest time step");
  simulate->add_option("--u-max", u_max, "blowup threshold on sup u");

  double sweep_alpha = 2.0, sweep_p = 3.0;
  std::string sweep_d = "3:50";
  auto* sweep_k = app.add_subcommand("sweep-K", "K(d) over a dimension range");
  auto* sweep_l = app.add_subcommand("sweep-L", "L(d) over a dimension range");
  for (auto* sc : {sweep_k, sweep_l}) {
    sc->add_option("--alpha", sweep_alpha)->check(CLI::Range(0.0, 2.0));
    sc->add_option("--p", sweep_p);
    sc->add_option("--d", sweep_d, "a:b, a:b:step or comma list");
  }

  DataOptions dich_data;
  std::vector<double> scales = {0.5, 1.0, 2.0, 4.0};
  double dich_t_end = 10.0;
  int bisections = 0;
  auto* dichotomy = app.add_subcommand("dichotomy", "scale the initial data and classify outcomes");
  dich_data.attach(dichotomy);
  dichotomy->add_option("--scales", scales)->delimiter(',');
  dichotomy->add_option("--t-end", dich_t_end);
  dichotomy->add_option("--bisections", bisections);

  std::vector<std::string> preset_names, sets;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance presets");
  selftest->add_option("--preset", preset_names, "preset name (repeatable); default all");
  selftest->add_option("--set", sets, "key=value override for a single preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; every other parse failure is a usage error.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*kernel) return cmd_kernel(kind, kd, kparam, kt, kL, kn);
    if (*constants) return cmd_constants(alpha, p, d);
    if (*criterion) return cmd_criterion(crit_data);
    if (*simulate) return cmd_simulate(sim_data, t_end, targets, dt_init, u_max);
    if (*sweep_k) return cmd_sweep(AsymptoticQuantity::K, sweep_alpha, sweep_p, sweep_d);
    if (*sweep_l) return cmd_sweep(AsymptoticQuantity::L, sweep_alpha, sweep_p, sweep_d);
    if (*dichotomy) return cmd_dichotomy(dich_data, scales, dich_t_end, bisections);
    if (*selftest) return cmd_selftest(preset_names, sets);
  } catch (const presets::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
