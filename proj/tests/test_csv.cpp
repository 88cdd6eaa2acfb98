#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blowlab/csv.hpp"
#include "blowlab/errors.hpp"

using namespace blowlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "blowlab_test_csv";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("numbers round-trip exactly") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) CHECK(std::stod(format_number(x)) == x);
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("writer layout") {
  const auto path = scratch("layout.csv");
  {
    CsvWriter w(path);
    w.meta("kernel", "gaussian_like").meta("t", 0.25);
    w.header({"a", "b"});
    w.row(std::vector<double>{1.0, 2.5});
    CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), std::logic_error);
    CHECK_THROWS_AS(w.meta("late", "x"), std::logic_error);
  }
  CHECK(slurp(path) == "# kernel: gaussian_like\n# t: 0.25\na,b\n1,2.5\n");
}

TEST_CASE("profile round trip") {
  const auto u = RadialProfile::sample(3, [](double r) { return std::exp(-r) / r; }, 1e-2, 10.0, 17);
  const auto path = scratch("profile.csv");
  write_profile_csv(path, u, {{"source", "test"}});
  const auto v = read_profile_csv(path, 3);
  CHECK(v.r == u.r);
  CHECK(v.values == u.values);
}

TEST_CASE("reader errors") {
  const auto path = scratch("bad.csv");
  std::ofstream(path) << "# x\nr,value\n1,abc\n";
  CHECK_THROWS_AS(read_profile_csv(path, 1), DomainError);
  std::ofstream(path) << "r,value\n2,1\n1,1\n";
  CHECK_THROWS_AS(read_profile_csv(path, 1), DomainError);
  CHECK_THROWS(read_profile_csv(scratch("missing.csv"), 1));
}

TEST_CASE("grid output") {
  const Mesh mesh{2, 1.0, 4};
  const auto u = GridFunction::sample(mesh, [](double r) { return r; });
  const auto path = scratch("grid.csv");
  write_grid_csv(path, u);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line[0] == '#') continue;
    if (!header) {
      CHECK(line == "x,y,value");
      header = true;
      continue;
    }
    ++rows;
  }
  CHECK(rows == 16);
}
