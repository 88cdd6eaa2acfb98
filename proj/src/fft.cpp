#include "blowlab/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "blowlab/errors.hpp"

namespace blowlab {

namespace {
// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Spectral::Plans {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::size_t nreal = 0;
  std::size_t ncplx = 0;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(cplx);
  }
};

Spectral::Spectral(const Mesh& mesh) : mesh_(mesh), plans_(std::make_unique<Plans>()) {
  mesh_.validate();
  const int n = mesh_.n;
  plans_->nreal = mesh_.size();
  plans_->ncplx = spectral_size();
  {
    std::lock_guard lock(planner_mutex());
    plans_->real = fftw_alloc_real(plans_->nreal);
    plans_->cplx = fftw_alloc_complex(plans_->ncplx);
    if (mesh_.d == 1) {
      plans_->fwd = fftw_plan_dft_r2c_1d(n, plans_->real, plans_->cplx, FFTW_ESTIMATE);
      plans_->bwd = fftw_plan_dft_c2r_1d(n, plans_->cplx, plans_->real, FFTW_ESTIMATE);
    } else {
      plans_->fwd = fftw_plan_dft_r2c_2d(n, n, plans_->real, plans_->cplx, FFTW_ESTIMATE);
      plans_->bwd = fftw_plan_dft_c2r_2d(n, n, plans_->cplx, plans_->real, FFTW_ESTIMATE);
    }
  }
  if (!plans_->fwd || !plans_->bwd) throw ResolutionError("Spectral: FFTW planning failed");

  const double k0 = std::numbers::pi / mesh_.half_width;
  xi_norm_.resize(plans_->ncplx);
  weight_.resize(plans_->ncplx);
  const int half = n / 2;
  for (std::size_t i = 0; i < plans_->ncplx; ++i) {
    const auto [kx, ky] = wavenumbers(i);
    xi_norm_[i] = k0 * std::hypot(static_cast<double>(kx), static_cast<double>(ky));
    // The halved axis is x: kx = 0 and kx = n/2 appear once, the rest twice.
    weight_[i] = (kx == 0 || kx == half) ? 1.0 : 2.0;
  }
}

Spectral::~Spectral() = default;
Spectral::Spectral(Spectral&&) noexcept = default;
Spectral& Spectral::operator=(Spectral&&) noexcept = default;

std::size_t Spectral::spectral_size() const {
  const std::size_t h = static_cast<std::size_t>(mesh_.n / 2 + 1);
  return mesh_.d == 1 ? h : static_cast<std::size_t>(mesh_.n) * h;
}

std::pair<int, int> Spectral::wavenumbers(std::size_t i) const {
  const int n = mesh_.n;
  auto signed_k = [n](int k) { return k <= n / 2 ? k : k - n; };
  if (mesh_.d == 1) return {static_cast<int>(i), 0};
  const int h = n / 2 + 1;
  const int row = static_cast<int>(i) / h;  // full axis: y
  const int col = static_cast<int>(i) % h;  // halved axis: x
  return {col, signed_k(row)};
}

void Spectral::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  std::copy(in.begin(), in.end(), plans_->real);
  fftw_execute(plans_->fwd);
  const auto* c = reinterpret_cast<const std::complex<double>*>(plans_->cplx);
  std::copy(c, c + plans_->ncplx, out.begin());
}

void Spectral::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  auto* c = reinterpret_cast<std::complex<double>*>(plans_->cplx);
  std::copy(in.begin(), in.end(), c);
  fftw_execute(plans_->bwd);
  const double scale = 1.0 / static_cast<double>(plans_->nreal);
  for (std::size_t i = 0; i < plans_->nreal; ++i) out[i] = plans_->real[i] * scale;
}

Spectrum Spectral::forward(std::span<const double> in) {
  Spectrum out(spectral_size());
  forward(in, out);
  return out;
}

std::vector<double> Spectral::inverse(std::span<const std::complex<double>> in) {
  std::vector<double> out(real_size());
  inverse(in, out);
  return out;
}

double Spectral::evaluate_at(std::span<const std::complex<double>> spec, std::span<const double> mult,
                             std::size_t j) const {
  const int n = mesh_.n;
  const int jx = static_cast<int>(j % n);
  const int jy = static_cast<int>(j / n);
  const double w0 = 2.0 * std::numbers::pi / n;
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (mult[i] == 0.0) continue;
    const auto [kx, ky] = wavenumbers(i);
    const double phase = w0 * (static_cast<double>(kx) * jx + static_cast<double>(ky) * jy);
    acc += weight_[i] * mult[i] * (spec[i].real() * std::cos(phase) - spec[i].imag() * std::sin(phase));
  }
  return acc / static_cast<double>(mesh_.size());
}

std::vector<double> to_dft_order(const Mesh& mesh, std::span<const double> natural) {
  const int n = mesh.n;
  const int o = mesh.origin_index();
  std::vector<double> out(natural.size());
  if (mesh.d == 1) {
    for (int j = 0; j < n; ++j) out[(j - o + n) % n] = natural[j];
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        out[mesh.flat((ix - o + n) % n, (iy - o + n) % n)] = natural[mesh.flat(ix, iy)];
  }
  return out;
}

std::vector<double> to_natural_order(const Mesh& mesh, std::span<const double> dft_order) {
  const int n = mesh.n;
  const int o = mesh.origin_index();
  std::vector<double> out(dft_order.size());
  if (mesh.d == 1) {
    for (int j = 0; j < n; ++j) out[(j + o) % n] = dft_order[j];
  } else {
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        out[mesh.flat((ix + o) % n, (iy + o) % n)] = dft_order[mesh.flat(ix, iy)];
  }
  return out;
}

}  // namespace blowlab
