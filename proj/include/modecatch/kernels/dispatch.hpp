#pragma once

namespace modecatch::kernels {

enum class Backend { scalar, avx2 };

/// Backend selected at startup: AVX2 when the CPU supports it, otherwise the
/// scalar reference. MODECATCH_SIMD=scalar|avx2 overrides the choice.
Backend active_backend();

/// Force a backend (tests). Throws std::invalid_argument if unsupported.
void force_backend(Backend b);

bool avx2_supported();

const char* backend_name(Backend b);

}  // namespace modecatch::kernels
