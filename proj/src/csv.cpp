#include "blowlab/csv.hpp"

#include <charconv>
#include <fmt/format.h>
#include <sstream>

#include "blowlab/errors.hpp"

namespace blowlab {

std::string format_number(double x) { return fmt::format("{}", x); }

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
}

CsvWriter& CsvWriter::meta(const std::string& key, const std::string& value) {
  if (header_written_) throw std::logic_error("CsvWriter: metadata must precede the header");
  out_ << "# " << key << ": " << value << '\n';
  return *this;
}

CsvWriter& CsvWriter::header(const std::vector<std::string>& columns) {
  if (header_written_) throw std::logic_error("CsvWriter: header already written");
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
  columns_ = columns.size();
  header_written_ = true;
  return *this;
}

CsvWriter& CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  return row(cells);
}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
  if (!header_written_ || cells.size() != columns_) throw std::logic_error("CsvWriter: row does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
  return *this;
}

RadialProfile read_profile_csv(const std::filesystem::path& path, int d) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  RadialProfile u;
  u.d = d;
  std::string line;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      throw DomainError(fmt::format("{}:{}: expected two columns", path.string(), lineno));
    double r = 0.0, v = 0.0;
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), r);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), v);
    if (ra.ec != std::errc() || rb.ec != std::errc())
      throw DomainError(fmt::format("{}:{}: not a number", path.string(), lineno));
    u.r.push_back(r);
    u.values.push_back(v);
  }
  u.validate();
  return u;
}

void write_profile_csv(const std::filesystem::path& path, const RadialProfile& u,
                       const std::vector<std::pair<std::string, std::string>>& meta) {
  CsvWriter w(path);
  w.meta("d", std::to_string(u.d));
  for (const auto& [k, v] : meta) w.meta(k, v);
  w.header({"r", "value"});
  for (std::size_t i = 0; i < u.r.size(); ++i) w.row(std::vector<double>{u.r[i], u.values[i]});
}

void write_grid_csv(const std::filesystem::path& path, const GridFunction& u,
                    const std::vector<std::pair<std::string, std::string>>& meta) {
  CsvWriter w(path);
  w.meta("d", std::to_string(u.mesh.d)).meta("L", u.mesh.half_width).meta("n", std::to_string(u.mesh.n));
  for (const auto& [k, v] : meta) w.meta(k, v);
  if (u.mesh.d == 1) {
    w.header({"x", "value"});
    for (std::size_t i = 0; i < u.values.size(); ++i) w.row(std::vector<double>{u.mesh.point(i)[0], u.values[i]});
  } else {
    w.header({"x", "y", "value"});
    for (std::size_t i = 0; i < u.values.size(); ++i) {
      const auto p = u.mesh.point(i);
      w.row(std::vector<double>{p[0], p[1], u.values[i]});
    }
  }
}

void write_dichotomy_csv(const std::filesystem::path& path, const DichotomySummary& summary) {
  CsvWriter w(path);
  w.meta("monotone", summary.monotone ? "true" : "false");
  if (summary.lambda_lower) w.meta("lambda_lower", *summary.lambda_lower);
  if (summary.lambda_upper) w.meta("lambda_upper", *summary.lambda_upper);
  w.header({"scale", "outcome", "t_obs", "censored", "reliable", "decay_sup", "decay_slope", "T_star", "prediction_ok"});
  for (const auto& r : summary.runs)
    w.row(std::vector<std::string>{format_number(r.scale), to_string(r.outcome), format_number(r.t_obs),
                                   r.censored ? "true" : "false", r.reliable ? "true" : "false", format_number(r.decay_sup),
                                   format_number(r.decay_slope), r.T_star ? format_number(*r.T_star) : "none",
                                   r.prediction_ok ? "true" : "false"});
}

}  // namespace blowlab
