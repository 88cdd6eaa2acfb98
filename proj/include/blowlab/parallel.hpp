#pragma once

#include <complex>
#include <span>

#include "blowlab/grid.hpp"
#include "blowlab/nonlinearity.hpp"

/// Data-parallel inner loops of the solver and the kernel builders.
///
/// `par::omp` is what the library calls; `par::serial` is the plain-loop
/// reference kept for tests and the benchmark. Both namespaces expose the same
/// functions and must agree bitwise on elementwise operations (reductions may
/// differ by summation order).
namespace blowlab::par {

using cplx = std::complex<double>;

#define BLOWLAB_PAR_API                                                                          \
  /* out[i] = in[i] * mult[i] */                                                                 \
  void scale_spectrum(std::span<const cplx> in, std::span<const double> mult, std::span<cplx> out); \
  /* out[i] = a[i] * ma[i] + c * b[i] * mb[i] */                                                 \
  void combine_spectra(std::span<const cplx> a, std::span<const double> ma, std::span<const cplx> b, \
                       std::span<const double> mb, double c, std::span<cplx> out);               \
  /* out[i] = u[i] + c * F(u[i]) */                                                              \
  void source_stage(std::span<const double> u, const Nonlinearity& F, double c, std::span<double> out); \
  /* out[i] = F(u[i]) */                                                                         \
  void apply_source(std::span<const double> u, const Nonlinearity& F, std::span<double> out);   \
  /* out[i] = exp(t * sigma[i]) */                                                               \
  void exp_multiplier(std::span<const double> sigma, double t, std::span<double> out);          \
  double sum(std::span<const double> v);                                                         \
  double max(std::span<const double> v);                                                         \
  /* Sets negatives to zero; returns how many were below -floor. */                              \
  std::size_t clip_negative(std::span<double> v, double floor);                                  \
  /* Direct periodic convolution: out_j = Σ_l w_{j-l} u_l, w in DFT order. O(N²). */             \
  void periodic_convolution(const Mesh& mesh, std::span<const double> w, std::span<const double> u, \
                            std::span<double> out);

namespace omp {
BLOWLAB_PAR_API
}
namespace serial {
BLOWLAB_PAR_API
}

#undef BLOWLAB_PAR_API

}  // namespace blowlab::par
