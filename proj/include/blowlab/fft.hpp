#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "blowlab/grid.hpp"

namespace blowlab {

using Spectrum = std::vector<std::complex<double>>;

/// Real-to-complex transforms on a Mesh (FFTW underneath). Each instance owns
/// its plans and buffers; distinct instances may be used concurrently.
///
/// Spectral layout is FFTW's r2c layout: the last axis is halved to n/2+1.
/// forward() is the plain DFT; inverse() includes the 1/N normalization.
class Spectral {
 public:
  explicit Spectral(const Mesh& mesh);
  ~Spectral();
  Spectral(Spectral&&) noexcept;
  Spectral& operator=(Spectral&&) noexcept;
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const Mesh& mesh() const { return mesh_; }
  std::size_t real_size() const { return mesh_.size(); }
  std::size_t spectral_size() const;

  void forward(std::span<const double> in, std::span<std::complex<double>> out);
  void inverse(std::span<const std::complex<double>> in, std::span<double> out);
  Spectrum forward(std::span<const double> in);
  std::vector<double> inverse(std::span<const std::complex<double>> in);

  /// |ξ| at every spectral index, ξ = π k / L.
  const std::vector<double>& wavenumber_norms() const { return xi_norm_; }
  /// Multiplicity of each spectral index in the full (Hermitian) spectrum.
  const std::vector<double>& hermitian_weights() const { return weight_; }
  /// Integer wavenumbers (kx, ky) of spectral index i.
  std::pair<int, int> wavenumbers(std::size_t i) const;

  /// (IDFT(spec ⊙ mult))[j] for a single flat real index j, O(N).
  double evaluate_at(std::span<const std::complex<double>> spec, std::span<const double> mult,
                     std::size_t j) const;

 private:
  struct Plans;
  Mesh mesh_;
  std::unique_ptr<Plans> plans_;
  std::vector<double> xi_norm_;
  std::vector<double> weight_;
};

/// Reorders samples from natural order (origin at n/2) to DFT order (origin
/// at 0) and back.
std::vector<double> to_dft_order(const Mesh& mesh, std::span<const double> natural);
std::vector<double> to_natural_order(const Mesh& mesh, std::span<const double> dft_order);

}  // namespace blowlab
