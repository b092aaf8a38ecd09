#include <immintrin.h>

#include "boundariness/kernels.hpp"

// Two complex<double> per __m256d, laid out (re0, im0, re1, im1).
namespace boundariness::kernels {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

// z * w for a broadcast complex scalar w = (wr, wi).
inline __m256d cmul(__m256d z, __m256d wr, __m256d wi) {
  const __m256d swapped = _mm256_permute_pd(z, 0x5);
  return _mm256_fmaddsub_pd(z, wr, _mm256_mul_pd(swapped, wi));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void axpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(load2(x + i), ar, ai)));
  for (; i < n; ++i) y[i] += a * x[i];
}

cplx dotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  // conj(x) y = (xr yr + xi yi) + i (xr yi - xi yr)
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), cross);
  }
  alignas(32) double c[4];
  _mm256_store_pd(c, cross);
  cplx acc{hsum(same), c[0] - c[1] + c[2] - c[3]};
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::norm(x[i]);
  return s;
}

void rotate_avx2(cplx* x, cplx* y, std::size_t n, cplx a, cplx b, cplx c, cplx d) {
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
  const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
  const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    store2(x + i, _mm256_add_pd(cmul(xv, ar, ai), cmul(yv, br, bi)));
    store2(y + i, _mm256_add_pd(cmul(xv, cr, ci), cmul(yv, dr, di)));
  }
  for (; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = a * xi + b * yi;
    y[i] = c * xi + d * yi;
  }
}

}  // namespace

const KernelTable& avx2_table_impl() {
  static const KernelTable table{"avx2", axpy_avx2, dotc_avx2, norm_sq_avx2, rotate_avx2};
  return table;
}

}  // namespace boundariness::kernels
