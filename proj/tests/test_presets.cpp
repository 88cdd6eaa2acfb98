#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "blowlab/presets.hpp"

using namespace blowlab::presets;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("one preset per criterion, registered modules only") {
  const auto& reg = registry();
  REQUIRE(reg.size() == 12);
  std::set<int> criteria;
  std::set<std::string> names;
  const auto& modules = registered_modules();
  for (const auto& p : reg) {
    criteria.insert(p.criterion);
    names.insert(p.name);
    CHECK(p.budget_seconds > 0.0);
    CHECK_FALSE(p.checks.empty());
    for (const auto& m : p.modules) CHECK(std::find(modules.begin(), modules.end(), m) != modules.end());
    std::set<std::string> checks;
    for (const auto& c : p.checks) checks.insert(c.name);
    CHECK(checks.size() == p.checks.size());
  }
  CHECK(criteria.size() == 12);
  CHECK(*criteria.begin() == 1);
  CHECK(*criteria.rbegin() == 12);
  CHECK(names.size() == 12);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(find_preset("nope"), UsageError);
  CHECK_THROWS_AS(run_preset("constants", {{"bogus", "1"}}), UsageError);
  CHECK_THROWS_AS(run_preset("constants", {{"p", "three"}}), UsageError);
}

TEST_CASE("constants preset passes and overrides apply") {
  const auto rep = run_preset("constants");
  CHECK(rep.passed());
  CHECK(rep.check("s_2_5_3").measured == doctest::Approx(std::sqrt(2.0)));
  // Another (d, p) moves s away from √2: the descriptor check fails, the recurrence holds.
  const auto other = run_preset("constants", {{"d", "7"}});
  CHECK_FALSE(other.check("s_2_5_3").passed);
  CHECK(other.check("s_recurrence").passed);
  CHECK_FALSE(other.passed());
}

TEST_CASE("artifacts are deterministic") {
  const auto base = fs::temp_directory_path() / "blowlab_test_presets";
  fs::remove_all(base);
  const auto a = run_preset("osgood", {}, base / "a");
  const auto b = run_preset("osgood", {}, base / "b");
  REQUIRE(a.artifacts.size() == b.artifacts.size());
  REQUIRE(a.artifacts.size() >= 2);
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
    CHECK(a.artifacts[i].filename() == b.artifacts[i].filename());
    CHECK(slurp(a.artifacts[i]) == slurp(b.artifacts[i]));
  }
  const auto manifest = slurp(base / "a" / "osgood_manifest.txt");
  CHECK(manifest.find("result: PASS") != std::string::npos);
  CHECK(manifest.find("param T_max = 1e3") != std::string::npos);
  CHECK_FALSE(format_report(a).empty());
}
