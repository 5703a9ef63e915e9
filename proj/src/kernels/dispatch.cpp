#include "modecatch/kernels/dispatch.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#endif

namespace modecatch::kernels {

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  unsigned int eax, ebx, ecx, edx;
  if (__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) {
    return (ebx & (1u << 5)) != 0;
  }
  return false;
#else
  return false;
#endif
}

namespace {

Backend initial_backend() {
  if (const char* env = std::getenv("MODECATCH_SIMD")) {
    std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && avx2_supported()) return Backend::avx2;
    return Backend::scalar;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

Backend& backend_slot() {
  static Backend b = initial_backend();
  return b;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

void force_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) {
    throw std::invalid_argument("force_backend: AVX2 not supported on this CPU");
  }
  backend_slot() = b;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

}  // namespace modecatch::kernels
