#include <cstdlib>
#include <string_view>

#include "toca/kernels.hpp"

namespace toca::kernels {

#if defined(TOCA_HAVE_AVX2)
const KernelTable* avx2_table_impl();
#endif
#if defined(TOCA_HAVE_NEON)
const KernelTable* neon_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(TOCA_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_table_impl();
#endif
  return nullptr;
}

const KernelTable* neon_table() {
#if defined(TOCA_HAVE_NEON)
  // NEON is mandatory on aarch64; no runtime probe needed.
  return neon_table_impl();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  if (const char* forced = std::getenv("TOCA_KERNELS")) {
    std::string_view want(forced);
    if (want == "scalar") return scalar_table();
    if (want == "avx2" && avx2_table()) return *avx2_table();
    if (want == "neon" && neon_table()) return *neon_table();
    return scalar_table();  // unknown or unavailable choice
  }
  if (const KernelTable* t = avx2_table()) return *t;
  if (const KernelTable* t = neon_table()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace toca::kernels
