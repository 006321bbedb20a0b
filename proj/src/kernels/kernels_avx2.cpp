// AVX2 variants of the vector kernels. This translation unit is compiled
// with -mavx2 and only dispatched to after a runtime CPU check.

#include "toca/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <limits>

namespace toca::kernels {

namespace {

void add_inplace_avx2(double* a, const double* b, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(a + i, _mm256_add_pd(va, vb));
  }
  for (; i < n; ++i) a[i] += b[i];
}

void mul_inplace_avx2(double* a, const double* b, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(a + i, _mm256_mul_pd(va, vb));
  }
  for (; i < n; ++i) a[i] *= b[i];
}

void scale_avx2(double* a, double s, size_t n) {
  __m256d vs = _mm256_set1_pd(s);
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
  for (; i < n; ++i) a[i] *= s;
}

double horizontal_sum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_avx2(const double* a, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double out = horizontal_sum(acc);
  for (; i < n; ++i) out += a[i];
  return out;
}

double dot_avx2(const double* a, const double* b, size_t n) {
  __m256d acc = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double out = horizontal_sum(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double max_avx2(const double* a, size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  size_t i = 0;
  if (n >= 4) {
    __m256d vbest = _mm256_set1_pd(best);
    for (; i + 4 <= n; i += 4)
      vbest = _mm256_max_pd(vbest, _mm256_loadu_pd(a + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vbest);
    for (double v : lanes)
      if (v > best) best = v;
  }
  for (; i < n; ++i)
    if (a[i] > best) best = a[i];
  return best;
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{"avx2",     add_inplace_avx2,
                                 mul_inplace_avx2, scale_avx2,
                                 sum_avx2,   dot_avx2,
                                 max_avx2};
  return &table;
}

}  // namespace toca::kernels

#endif  // __AVX2__
