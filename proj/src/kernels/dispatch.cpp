#include <cstdlib>
#include <string_view>

#include "qpipe/kernels.hpp"
#include "tables.hpp"

namespace qpipe::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
#else
  return false;
#endif
}

const KernelTable* avx2_kernels() {
#if defined(QPIPE_HAVE_AVX2)
  if (cpu_has_avx2()) return &detail::avx2_table();
#endif
  return nullptr;
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("QPIPE_SIMD");
  const std::string_view choice = env ? env : "auto";
  if (choice == "scalar") return scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace qpipe::kernels
