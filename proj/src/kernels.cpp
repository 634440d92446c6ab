#include "grs/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace grs::kernels {

#ifdef GRS_HAVE_AVX2
const Ops* avx2_ops_table();  // defined in kernels_avx2.cpp
#endif

const Ops* avx2_ops() {
#ifdef GRS_HAVE_AVX2
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return avx2_ops_table();
  }
#endif
  return nullptr;
}

namespace {

const Ops* resolve() {
  if (const char* pick = std::getenv("GRS_KERNELS")) {
    if (std::strcmp(pick, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(pick, "avx2") == 0 && avx2_ops() != nullptr) {
      return avx2_ops();
    }
    // unknown or unsupported request: fall through to auto selection
  }
  if (const Ops* v = avx2_ops()) return v;
  return &scalar_ops();
}

}  // namespace

const Ops& ops() {
  static const Ops* selected = resolve();
  return *selected;
}

}  // namespace grs::kernels
