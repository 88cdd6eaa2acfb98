#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace blowlab {

/// Periodic lattice [-L, L)^d with n points per axis, x_j = -L + j h.
/// The origin sits at index n/2 on every axis.
struct Mesh {
  int d = 1;
  double half_width = 1.0;
  int n = 2;

  double spacing() const { return 2.0 * half_width / n; }
  double cell_volume() const;
  std::size_t size() const;
  double coordinate(int j) const { return -half_width + j * spacing(); }
  int origin_index() const { return n / 2; }
  std::size_t flat(int ix, int iy = 0) const {
    return static_cast<std::size_t>(iy) * n + ix;
  }
  /// |x| of flat index i.
  double radius(std::size_t i) const;
  std::array<double, 2> point(std::size_t i) const;
  /// Largest |x|_∞ distance of flat index i from the origin.
  double max_abs_coordinate(std::size_t i) const;
  /// Throws DomainError if d ∉ {1,2}, n not a power of two, or L <= 0.
  void validate() const;
  Mesh refined() const { return {d, half_width, 2 * n}; }
  Mesh enlarged() const { return {d, 2.0 * half_width, 2 * n}; }
};

/// Nonnegative samples of a field on a Mesh.
struct GridFunction {
  Mesh mesh;
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(const Mesh& m) : mesh(m), values(m.size(), 0.0) {}
  GridFunction(const Mesh& m, std::vector<double> v);

  static GridFunction sample(const Mesh& m, const std::function<double(double)>& radial);

  double mass() const;
  double sup() const;
  std::size_t argmax() const;
  /// Periodic shift by an integer lattice vector.
  GridFunction shifted(int sx, int sy = 0) const;
  /// Zero-padded copy on the enlarged mesh (same spacing, doubled box).
  GridFunction embedded(const Mesh& larger) const;
  /// Throws DomainError if any value is negative beyond `floor` or non-finite.
  void validate(double floor = 1e-12) const;
};

}  // namespace blowlab
