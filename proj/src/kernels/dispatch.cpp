#include <cstdlib>
#include <string_view>

#include "ginv/kernels.hpp"

namespace ginv::kernels {

#if defined(GINV_HAVE_AVX2)
const kernel_table& avx2_table_unchecked();
#endif

const kernel_table* avx2_table() {
#if defined(GINV_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const kernel_table& select() {
  if (const char* forced = std::getenv("GINV_KERNELS"); forced != nullptr && std::string_view(forced) == "scalar")
    return scalar_table();
  if (const kernel_table* t = avx2_table()) return *t;
  return scalar_table();
}

}  // namespace

const kernel_table& active() {
  static const kernel_table& table = select();
  return table;
}

}  // namespace ginv::kernels
