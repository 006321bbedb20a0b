#pragma once

#include <cstddef>

namespace toca::kernels {

/// Vector kernels behind the sampler's weight evaluation (factor products,
/// log-space accumulation, normalization) and the metrics' cosine (dot,
/// norms). Each entry has a scalar reference implementation plus SIMD
/// variants; the active table is picked once at runtime.
struct KernelTable {
  const char* name;
  void (*add_inplace)(double* a, const double* b, size_t n);  // a[i] += b[i]
  void (*mul_inplace)(double* a, const double* b, size_t n);  // a[i] *= b[i]
  void (*scale)(double* a, double s, size_t n);               // a[i] *= s
  double (*sum)(const double* a, size_t n);
  double (*dot)(const double* a, const double* b, size_t n);
  double (*max_value)(const double* a, size_t n);  // -inf when n == 0
};

/// Reference implementation; always available.
const KernelTable& scalar_table();

/// SIMD variants. Null when the build or the CPU lacks the instruction set.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Best supported table, resolved once. The TOCA_KERNELS environment
/// variable (scalar|avx2|neon) forces a specific one; an unavailable choice
/// falls back to scalar.
const KernelTable& active();

inline void add_inplace(double* a, const double* b, size_t n) {
  active().add_inplace(a, b, n);
}
inline void mul_inplace(double* a, const double* b, size_t n) {
  active().mul_inplace(a, b, n);
}
inline void scale(double* a, double s, size_t n) { active().scale(a, s, n); }
inline double sum(const double* a, size_t n) { return active().sum(a, n); }
inline double dot(const double* a, const double* b, size_t n) {
  return active().dot(a, b, n);
}
inline double max_value(const double* a, size_t n) {
  return active().max_value(a, n);
}

}  // namespace toca::kernels
