#include "blowlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

// The two namespaces are generated from one body so they cannot drift apart;
// BLOWLAB_FOR is the only difference.

#define BLOWLAB_PAR_BODY                                                                      \
  void scale_spectrum(std::span<const cplx> in, std::span<const double> mult, std::span<cplx> out) { \
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(in.size());                          \
    BLOWLAB_FOR                                                                               \
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = in[i] * mult[i];                          \
  }                                                                                           \
                                                                                              \
  void combine_spectra(std::span<const cplx> a, std::span<const double> ma, std::span<const cplx> b, \
                       std::span<const double> mb, double c, std::span<cplx> out) {           \
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());                           \
    BLOWLAB_FOR                                                                               \
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * ma[i] + (c * mb[i]) * b[i];        \
  }                                                                                           \
                                                                                              \
  void source_stage(std::span<const double> u, const Nonlinearity& F, double c, std::span<double> out) { \
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());                           \
    BLOWLAB_FOR                                                                               \
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = u[i] + c * F(u[i]);                       \
  }                                                                                           \
                                                                                              \
  void apply_source(std::span<const double> u, const Nonlinearity& F, std::span<double> out) { \
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());                           \
    BLOWLAB_FOR                                                                               \
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = F(u[i]);                                  \
  }                                                                                           \
                                                                                              \
  void exp_multiplier(std::span<const double> sigma, double t, std::span<double> out) {       \
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(sigma.size());                       \
    BLOWLAB_FOR                                                                               \
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = std::exp(t * sigma[i]);                   \
  }                                                                                           \
                                                                                              \
  double sum(std::span<const double> v) {                                                     \
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());                           \
    double s = 0.0;                                                                           \
    BLOWLAB_REDUCE(+ : s)                                                                     \
    for (std::ptrdiff_t i = 0; i < n; ++i) s += v[i];                                         \
    return s;                                                                                 \
  }                                                                                           \
                                                                                              \
  double max(std::span<const double> v) {                                                     \
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());                           \
    double m = -std::numeric_limits<double>::infinity();                                      \
    BLOWLAB_REDUCE(max : m)                                                                   \
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, v[i]);                             \
    return m;                                                                                 \
  }                                                                                           \
                                                                                              \
  std::size_t clip_negative(std::span<double> v, double floor) {                              \
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(v.size());                           \
    std::size_t bad = 0;                                                                      \
    BLOWLAB_REDUCE(+ : bad)                                                                   \
    for (std::ptrdiff_t i = 0; i < n; ++i) {                                                  \
      if (v[i] < 0.0) {                                                                       \
        if (v[i] < -floor) ++bad;                                                             \
        v[i] = 0.0;                                                                           \
      }                                                                                       \
    }                                                                                         \
    return bad;                                                                               \
  }                                                                                           \
                                                                                              \
  void periodic_convolution(const Mesh& mesh, std::span<const double> w, std::span<const double> u, \
                            std::span<double> out) {                                          \
    const int n = mesh.n;                                                                     \
    if (mesh.d == 1) {                                                                        \
      BLOWLAB_FOR                                                                             \
      for (int j = 0; j < n; ++j) {                                                           \
        double acc = 0.0;                                                                     \
        for (int l = 0; l < n; ++l) acc += w[(j - l + n) % n] * u[l];                         \
        out[j] = acc;                                                                         \
      }                                                                                       \
      return;                                                                                 \
    }                                                                                         \
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(n) * n;                          \
    BLOWLAB_FOR                                                                               \
    for (std::ptrdiff_t j = 0; j < total; ++j) {                                              \
      const int jx = static_cast<int>(j % n), jy = static_cast<int>(j / n);                   \
      double acc = 0.0;                                                                       \
      for (int ly = 0; ly < n; ++ly) {                                                        \
        const int oy = (jy - ly + n) % n;                                                     \
        for (int lx = 0; lx < n; ++lx)                                                        \
          acc += w[static_cast<std::size_t>(oy) * n + (jx - lx + n) % n] *                    \
                 u[static_cast<std::size_t>(ly) * n + lx];                                    \
      }                                                                                       \
      out[j] = acc;                                                                           \
    }                                                                                         \
  }

namespace blowlab::par {

namespace omp {
#define BLOWLAB_FOR _Pragma("omp parallel for schedule(static)")
#define BLOWLAB_REDUCE(op) _Pragma(BLOWLAB_STR(omp parallel for reduction(op)))
#define BLOWLAB_STR(x) #x
BLOWLAB_PAR_BODY
#undef BLOWLAB_FOR
#undef BLOWLAB_REDUCE
}  // namespace omp

namespace serial {
#define BLOWLAB_FOR
#define BLOWLAB_REDUCE(op)
BLOWLAB_PAR_BODY
#undef BLOWLAB_FOR
#undef BLOWLAB_REDUCE
}  // namespace serial

}  // namespace blowlab::par
