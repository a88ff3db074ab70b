#pragma once

#include "nsspec/kernels.hpp"

// Internal glue between the dispatch table and the per-ISA translation units.

namespace nsspec::kernels::detail {

extern const Backend kScalarBackend;

#if defined(NSSPEC_HAVE_AVX2_TU)
extern const Backend kAvx2Backend;
bool avx2_supported();
#endif

#if defined(NSSPEC_HAVE_NEON_TU)
extern const Backend kNeonBackend;
#endif

}  // namespace nsspec::kernels::detail
