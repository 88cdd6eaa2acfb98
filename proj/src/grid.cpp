#include "blowlab/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "blowlab/errors.hpp"

namespace blowlab {

double Mesh::cell_volume() const { return d == 1 ? spacing() : spacing() * spacing(); }

std::size_t Mesh::size() const {
  return d == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
}

std::array<double, 2> Mesh::point(std::size_t i) const {
  const int ix = static_cast<int>(i % n);
  const int iy = static_cast<int>(i / n);
  return {coordinate(ix), d == 2 ? coordinate(iy) : 0.0};
}

double Mesh::radius(std::size_t i) const {
  const auto p = point(i);
  return std::hypot(p[0], p[1]);
}

double Mesh::max_abs_coordinate(std::size_t i) const {
  const auto p = point(i);
  return std::max(std::abs(p[0]), std::abs(p[1]));
}

void Mesh::validate() const {
  if (d != 1 && d != 2) throw DomainError("Mesh: only d = 1 or d = 2 grids are supported");
  if (n < 2 || !std::has_single_bit(static_cast<unsigned>(n)))
    throw DomainError("Mesh: points per axis must be a power of two");
  if (!(half_width > 0.0)) throw DomainError("Mesh: half width must be positive");
}

GridFunction::GridFunction(const Mesh& m, std::vector<double> v) : mesh(m), values(std::move(v)) {
  if (values.size() != mesh.size()) throw DomainError("GridFunction: value count does not match mesh");
}

GridFunction GridFunction::sample(const Mesh& m, const std::function<double(double)>& radial) {
  m.validate();
  GridFunction g(m);
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = radial(m.radius(i));
  return g;
}

double GridFunction::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * mesh.cell_volume();
}

double GridFunction::sup() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::size_t GridFunction::argmax() const {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

GridFunction GridFunction::shifted(int sx, int sy) const {
  GridFunction out(mesh);
  const int n = mesh.n;
  auto wrap = [n](int j) { return ((j % n) + n) % n; };
  if (mesh.d == 1) {
    for (int j = 0; j < n; ++j) out.values[wrap(j + sx)] = values[j];
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        out.values[mesh.flat(wrap(ix + sx), wrap(iy + sy))] = values[mesh.flat(ix, iy)];
  }
  return out;
}

GridFunction GridFunction::embedded(const Mesh& larger) const {
  if (larger.d != mesh.d || std::abs(larger.spacing() - mesh.spacing()) > 1e-12 * mesh.spacing() ||
      larger.n < mesh.n)
    throw DomainError("GridFunction::embedded: target mesh must share spacing and contain the box");
  GridFunction out(larger);
  const int offset = larger.origin_index() - mesh.origin_index();
  if (mesh.d == 1) {
    for (int j = 0; j < mesh.n; ++j) out.values[j + offset] = values[j];
  } else {
    for (int iy = 0; iy < mesh.n; ++iy)
      for (int ix = 0; ix < mesh.n; ++ix)
        out.values[larger.flat(ix + offset, iy + offset)] = values[mesh.flat(ix, iy)];
  }
  return out;
}

void GridFunction::validate(double floor) const {
  for (double v : values)
    if (!std::isfinite(v) || v < -floor) throw DomainError("GridFunction: values must be finite and nonnegative");
}

}  // namespace blowlab
