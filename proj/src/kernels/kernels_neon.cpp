// NEON variants of the vector kernels (aarch64).

#include "toca/kernels.hpp"

#if defined(__aarch64__) || defined(__ARM_NEON)

#include <arm_neon.h>

#include <limits>

namespace toca::kernels {

namespace {

void add_inplace_neon(double* a, const double* b, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(a + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) a[i] += b[i];
}

void mul_inplace_neon(double* a, const double* b, size_t n) {
  size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(a + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) a[i] *= b[i];
}

void scale_neon(double* a, double s, size_t n) {
  float64x2_t vs = vdupq_n_f64(s);
  size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(a + i, vmulq_f64(vld1q_f64(a + i), vs));
  for (; i < n; ++i) a[i] *= s;
}

double sum_neon(const double* a, size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += a[i];
  return out;
}

double dot_neon(const double* a, const double* b, size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += a[i] * b[i];
  return out;
}

double max_neon(const double* a, size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  size_t i = 0;
  if (n >= 2) {
    float64x2_t vbest = vdupq_n_f64(best);
    for (; i + 2 <= n; i += 2) vbest = vmaxq_f64(vbest, vld1q_f64(a + i));
    best = vmaxvq_f64(vbest);
  }
  for (; i < n; ++i)
    if (a[i] > best) best = a[i];
  return best;
}

}  // namespace

const KernelTable* neon_table_impl() {
  static const KernelTable table{"neon",     add_inplace_neon,
                                 mul_inplace_neon, scale_neon,
                                 sum_neon,   dot_neon,
                                 max_neon};
  return &table;
}

}  // namespace toca::kernels

#endif  // __aarch64__ || __ARM_NEON
