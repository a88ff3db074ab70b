#include <atomic>
#include <string>

#include "kernels_impl.hpp"
#include "nsspec/errors.hpp"

namespace nsspec::kernels {

namespace {

const Backend* pick_default() {
#if defined(NSSPEC_HAVE_AVX2_TU)
  if (detail::avx2_supported()) return &detail::kAvx2Backend;
#endif
#if defined(NSSPEC_HAVE_NEON_TU)
  return &detail::kNeonBackend;
#endif
  return &detail::kScalarBackend;
}

std::atomic<const Backend*>& current() {
  static std::atomic<const Backend*> backend{pick_default()};
  return backend;
}

}  // namespace

const Backend& scalar_backend() { return detail::kScalarBackend; }

const Backend& active_backend() { return *current().load(std::memory_order_relaxed); }

void select_backend(const char* name) {
  const std::string want = name;
  if (want == "auto") {
    current().store(pick_default(), std::memory_order_relaxed);
    return;
  }
  if (want == "scalar") {
    current().store(&detail::kScalarBackend, std::memory_order_relaxed);
    return;
  }
#if defined(NSSPEC_HAVE_AVX2_TU)
  if (want == "avx2") {
    if (!detail::avx2_supported()) throw InputError("avx2 not supported on this CPU");
    current().store(&detail::kAvx2Backend, std::memory_order_relaxed);
    return;
  }
#endif
#if defined(NSSPEC_HAVE_NEON_TU)
  if (want == "neon") {
    current().store(&detail::kNeonBackend, std::memory_order_relaxed);
    return;
  }
#endif
  throw InputError("unknown kernel backend: " + want);
}

}  // namespace nsspec::kernels
