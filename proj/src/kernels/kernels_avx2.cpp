// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>

#include "papr_shaper/kernels.hpp"

namespace papr::kernels {
namespace {

// std::complex<double> is layout-compatible with double[2], so a __m256d
// holds two interleaved samples: [re0, im0, re1, im1].
inline const double* as_doubles(const cplx* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* as_doubles(cplx* p) { return reinterpret_cast<double*>(p); }

void axpy(cplx a, std::span<const cplx> row, std::span<cplx> out) {
  const std::size_t n = out.size();
  const double* src = as_doubles(row.data());
  double* dst = as_doubles(out.data());

  const __m256d ar = _mm256_set1_pd(a.real());
  // [-ai, +ai, -ai, +ai] pairs with the swapped row [im, re, im, re].
  const __m256d ai = _mm256_setr_pd(-a.imag(), a.imag(), -a.imag(), a.imag());

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x0 = _mm256_loadu_pd(src + 2 * i);
    __m256d x1 = _mm256_loadu_pd(src + 2 * i + 4);
    __m256d o0 = _mm256_loadu_pd(dst + 2 * i);
    __m256d o1 = _mm256_loadu_pd(dst + 2 * i + 4);
    o0 = _mm256_fmadd_pd(ar, x0, o0);
    o1 = _mm256_fmadd_pd(ar, x1, o1);
    o0 = _mm256_fmadd_pd(ai, _mm256_permute_pd(x0, 0b0101), o0);
    o1 = _mm256_fmadd_pd(ai, _mm256_permute_pd(x1, 0b0101), o1);
    _mm256_storeu_pd(dst + 2 * i, o0);
    _mm256_storeu_pd(dst + 2 * i + 4, o1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d x = _mm256_loadu_pd(src + 2 * i);
    __m256d o = _mm256_loadu_pd(dst + 2 * i);
    o = _mm256_fmadd_pd(ar, x, o);
    o = _mm256_fmadd_pd(ai, _mm256_permute_pd(x, 0b0101), o);
    _mm256_storeu_pd(dst + 2 * i, o);
  }
  for (; i < n; ++i) {
    const double xr = row[i].real();
    const double xi = row[i].imag();
    out[i] = cplx(out[i].real() + a.real() * xr - a.imag() * xi,
                  out[i].imag() + a.real() * xi + a.imag() * xr);
  }
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

cplx dot_conj(std::span<const cplx> x, std::span<const cplx> y) {
  const std::size_t n = x.size();
  const double* px = as_doubles(x.data());
  const double* py = as_doubles(y.data());

  // re accumulates [xr*yr, xi*yi]; im accumulates [xr*yi, xi*yr].
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a0 = _mm256_loadu_pd(px + 2 * i);
    __m256d a1 = _mm256_loadu_pd(px + 2 * i + 4);
    __m256d b0 = _mm256_loadu_pd(py + 2 * i);
    __m256d b1 = _mm256_loadu_pd(py + 2 * i + 4);
    re0 = _mm256_fmadd_pd(a0, b0, re0);
    re1 = _mm256_fmadd_pd(a1, b1, re1);
    im0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), im0);
    im1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), im1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d a = _mm256_loadu_pd(px + 2 * i);
    __m256d b = _mm256_loadu_pd(py + 2 * i);
    re0 = _mm256_fmadd_pd(a, b, re0);
    im0 = _mm256_fmadd_pd(a, _mm256_permute_pd(b, 0b0101), im0);
  }
  const __m256d re = _mm256_add_pd(re0, re1);
  // imag = sum(xi*yr) - sum(xr*yi): odd lanes minus even lanes.
  const __m256d im = _mm256_mul_pd(_mm256_add_pd(im0, im1),
                                   _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0));
  double sr = hsum(re);
  double si = hsum(im);
  for (; i < n; ++i) {
    sr += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    si += x[i].imag() * y[i].real() - x[i].real() * y[i].imag();
  }
  return {sr, si};
}

PowerStats power(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const double* p = as_doubles(x.data());
  __m256d vmax = _mm256_setzero_pd();
  __m256d vsum = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(p + 2 * i);
    __m256d b = _mm256_loadu_pd(p + 2 * i + 4);
    // hadd gives [|x0|^2, |x2|^2, |x1|^2, |x3|^2].
    __m256d pw = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    vmax = _mm256_max_pd(vmax, pw);
    vsum = _mm256_add_pd(vsum, pw);
  }
  alignas(32) double m[4];
  _mm256_store_pd(m, vmax);
  PowerStats s;
  s.peak = std::max(std::max(m[0], m[1]), std::max(m[2], m[3]));
  s.sum = hsum(vsum);
  for (; i < n; ++i) {
    const double v = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    s.peak = std::max(s.peak, v);
    s.sum += v;
  }
  return s;
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Isa::Avx2, &axpy, &dot_conj, &power};
}

}  // namespace papr::kernels
