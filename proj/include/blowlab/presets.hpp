#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace blowlab::presets {

/// How a measured value is judged against its expected value.
///   rel_le    |m - e| <= tol |e|
///   abs_le    |m - e| <= tol
///   at_least  m >= e
///   at_most   m <= e
///   holds     m is 1 (a boolean property)
enum class Comparison { rel_le, abs_le, at_least, at_most, holds };

std::string to_string(Comparison c);

struct CheckDescriptor {
  std::string name;
  Comparison comparison = Comparison::rel_le;
  double tolerance = 0.0;
};

struct CheckResult {
  CheckDescriptor descriptor;
  double measured = 0.0;
  double expected = 0.0;
  bool passed = false;
  std::string detail;
};

struct PresetReport {
  std::string name;
  std::vector<CheckResult> checks;
  std::vector<std::filesystem::path> artifacts;
  double seconds = 0.0;

  bool passed() const;
  const CheckResult& check(const std::string& name) const;
};

/// Unknown preset, unknown override key or malformed override value.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Bindings = std::map<std::string, std::string>;

struct ExperimentPreset;

/// Everything a preset body sees: its merged bindings and the output directory
/// (empty: no files).
class PresetContext {
 public:
  PresetContext(const ExperimentPreset& preset, Bindings bindings, std::filesystem::path out_dir);

  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  const Bindings& bindings() const { return bindings_; }
  bool writes_files() const { return !out_dir_.empty(); }
  /// out_dir/<preset>_<stem>.csv; recorded in the report.
  std::filesystem::path artifact(const std::string& stem, PresetReport& report) const;

  /// Judges `measured` against the descriptor named `check`.
  CheckResult judge(const std::string& check, double measured, double expected, std::string detail = {}) const;

 private:
  const ExperimentPreset& preset_;
  Bindings bindings_;
  std::filesystem::path out_dir_;
};

struct ExperimentPreset {
  std::string name;
  int criterion = 0;
  std::string title;
  std::vector<std::string> modules;
  Bindings bindings;
  std::vector<CheckDescriptor> checks;
  double budget_seconds = 0.0;
  std::function<void(const PresetContext&, PresetReport&)> body;

  const CheckDescriptor& descriptor(const std::string& check) const;
};

/// Modules a preset may target.
const std::vector<std::string>& registered_modules();

/// All presets, ordered by criterion number.
const std::vector<ExperimentPreset>& registry();
const ExperimentPreset& find_preset(const std::string& name);

/// Runs the preset with `overrides` merged over its bindings. When out_dir is
/// non-empty, CSV artifacts and a manifest are written there. The runtime is
/// measured but not judged here.
PresetReport run_preset(const std::string& name, const Bindings& overrides = {},
                        const std::filesystem::path& out_dir = {});

/// One PASS/FAIL line per check.
std::string format_report(const PresetReport& report);

}  // namespace blowlab::presets
