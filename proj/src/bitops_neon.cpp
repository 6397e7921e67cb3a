// NEON variants of the word kernels (aarch64 only). NEON is baseline on
// aarch64, so no runtime feature probe is needed.

#include "latforge/bitops.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace latforge::kernels {

namespace {

void and_neon(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < nwords; ++i) dst[i] = a[i] & b[i];
}

void or_neon(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
             std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    vst1q_u64(dst + i, vorrq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  }
  for (; i < nwords; ++i) dst[i] = a[i] | b[i];
}

bool equal_neon(const std::uint64_t* a, const std::uint64_t* b,
                std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    const uint64x2_t d = veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vgetq_lane_u64(d, 0) | vgetq_lane_u64(d, 1)) return false;
  }
  for (; i < nwords; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool subset_neon(const std::uint64_t* a, const std::uint64_t* b,
                 std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 2 <= nwords; i += 2) {
    const uint64x2_t d = vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vgetq_lane_u64(d, 0) | vgetq_lane_u64(d, 1)) return false;
  }
  for (; i < nwords; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

void closure1_neon(std::uint64_t* rows, int n) {
  const uint64x2_t ones = vdupq_n_u64(1);
  for (int k = 0; k < n; ++k) {
    const uint64x2_t rowk = vdupq_n_u64(rows[k]);
    const int64x2_t sh = vdupq_n_s64(-static_cast<std::int64_t>(k));
    int i = 0;
    for (; i + 2 <= n; i += 2) {
      uint64x2_t v = vld1q_u64(rows + i);
      const uint64x2_t hasbit = vandq_u64(vshlq_u64(v, sh), ones);
      const uint64x2_t mask = vceqq_u64(hasbit, ones);
      v = vorrq_u64(v, vandq_u64(mask, rowk));
      vst1q_u64(rows + i, v);
    }
    const std::uint64_t rk = rows[k];
    const std::uint64_t bit = 1ull << k;
    for (; i < n; ++i)
      if (rows[i] & bit) rows[i] |= rk;
  }
}

// One row (two words) per vector; the bit test is scalar, the OR is vector.
void closure2_neon(std::uint64_t* rows, int n) {
  for (int k = 0; k < n; ++k) {
    const uint64x2_t rowk = vld1q_u64(rows + 2 * k);
    const int w = k >> 6;
    const std::uint64_t bit = 1ull << (k & 63);
    for (int i = 0; i < n; ++i) {
      if (rows[2 * i + w] & bit) {
        vst1q_u64(rows + 2 * i, vorrq_u64(vld1q_u64(rows + 2 * i), rowk));
      }
    }
  }
}

}  // namespace

const Kernels& neon() {
  static const Kernels k{"neon",      and_neon,      or_neon,      equal_neon,
                         subset_neon, closure1_neon, closure2_neon};
  return k;
}

}  // namespace latforge::kernels

#endif  // aarch64
