#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "blowlab/grid.hpp"
#include "blowlab/norms.hpp"
#include "blowlab/solver.hpp"

namespace blowlab {

/// Shortest round-trip decimal form of x (deterministic across runs).
std::string format_number(double x);

/// CSV with `#`-prefixed metadata lines followed by one header line.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  CsvWriter& meta(const std::string& key, const std::string& value);
  CsvWriter& meta(const std::string& key, double value) { return meta(key, format_number(value)); }
  CsvWriter& header(const std::vector<std::string>& columns);
  CsvWriter& row(const std::vector<double>& values);
  CsvWriter& row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t columns_ = 0;
  bool header_written_ = false;
};

/// Reads (r, value) rows, skipping `#` lines and the header.
RadialProfile read_profile_csv(const std::filesystem::path& path, int d);
void write_profile_csv(const std::filesystem::path& path, const RadialProfile& u,
                       const std::vector<std::pair<std::string, std::string>>& meta = {});
/// Columns x[, y], value in natural order.
void write_grid_csv(const std::filesystem::path& path, const GridFunction& u,
                    const std::vector<std::pair<std::string, std::string>>& meta = {});

/// One row per scaled run; monotonicity and the λ* bracket as metadata.
void write_dichotomy_csv(const std::filesystem::path& path, const DichotomySummary& summary);

}  // namespace blowlab
