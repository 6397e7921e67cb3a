#include "latforge/bitops.hpp"

#include <cstdlib>
#include <string>

namespace latforge::kernels {

namespace {

const Kernels* pick_default() {
  if (const char* env = std::getenv("LATFORGE_KERNELS")) {
    const std::string_view want(env);
#if defined(__x86_64__) || defined(_M_X64)
    if (want == "avx2" && avx2_supported()) return &avx2();
#endif
#if defined(__aarch64__)
    if (want == "neon") return &neon();
#endif
    if (want == "scalar") return &scalar();
    // Unknown or unavailable name: fall through to auto-detection.
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) return &avx2();
#endif
#if defined(__aarch64__)
  return &neon();
#endif
  return &scalar();
}

const Kernels*& active_slot() {
  static const Kernels* slot = pick_default();
  return slot;
}

}  // namespace

const Kernels& active() { return *active_slot(); }

bool select(std::string_view name) {
  if (name == "scalar") {
    active_slot() = &scalar();
    return true;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (name == "avx2" && avx2_supported()) {
    active_slot() = &avx2();
    return true;
  }
#endif
#if defined(__aarch64__)
  if (name == "neon") {
    active_slot() = &neon();
    return true;
  }
#endif
  return false;
}

const char* available() {
#if defined(__x86_64__) || defined(_M_X64)
  return avx2_supported() ? "scalar,avx2" : "scalar";
#elif defined(__aarch64__)
  return "scalar,neon";
#else
  return "scalar";
#endif
}

}  // namespace latforge::kernels
