#include <limits>

#include "toca/kernels.hpp"

namespace toca::kernels {

namespace {

void add_inplace_scalar(double* a, const double* b, size_t n) {
  for (size_t i = 0; i < n; ++i) a[i] += b[i];
}

void mul_inplace_scalar(double* a, const double* b, size_t n) {
  for (size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void scale_scalar(double* a, double s, size_t n) {
  for (size_t i = 0; i < n; ++i) a[i] *= s;
}

double sum_scalar(const double* a, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

double dot_scalar(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double max_scalar(const double* a, size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i)
    if (a[i] > best) best = a[i];
  return best;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar",     add_inplace_scalar,
                                 mul_inplace_scalar, scale_scalar,
                                 sum_scalar,   dot_scalar,
                                 max_scalar};
  return table;
}

}  // namespace toca::kernels
