#include "kernels_impl.hpp"

#include <cstdlib>
#include <string_view>

namespace chemlat::kernels {

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",
      &scalar::flip_below,
      &scalar::assign_below,
      &scalar::count_nonzero,
      &scalar::multiply,
      &scalar::accumulate_power,
      &scalar::union_rows,
      &scalar::rows_within,
  };
  return table;
}

const KernelTable* avx2_kernels() {
#if defined(CHEMLAT_HAVE_AVX2)
  static const KernelTable table{
      "avx2",
      &avx2::flip_below,
      &avx2::assign_below,
      &avx2::count_nonzero,
      &avx2::multiply,
      &avx2::accumulate_power,
      &avx2::union_rows,
      &avx2::rows_within,
  };
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* env = std::getenv("CHEMLAT_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") {
      return scalar_kernels();
    }
    if (const KernelTable* t = avx2_kernels()) return *t;
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace chemlat::kernels
