// AVX2 variants of the word kernels. This translation unit is compiled with
// -mavx2; callers must check avx2_supported() before using the table.

#include "latforge/bitops.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace latforge::kernels {

namespace {

void and_avx2(std::uint64_t* dst, const std::uint64_t* a,
              const std::uint64_t* b, std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_and_si256(va, vb));
  }
  for (; i < nwords; ++i) dst[i] = a[i] & b[i];
}

void or_avx2(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
             std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_or_si256(va, vb));
  }
  for (; i < nwords; ++i) dst[i] = a[i] | b[i];
}

bool equal_avx2(const std::uint64_t* a, const std::uint64_t* b,
                std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i d = _mm256_xor_si256(va, vb);
    if (!_mm256_testz_si256(d, d)) return false;
  }
  for (; i < nwords; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool subset_avx2(const std::uint64_t* a, const std::uint64_t* b,
                 std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // va & ~vb; testc(b, a) == (a & ~b) == 0 also works but andnot keeps the
    // tail and vector paths symmetric.
    const __m256i d = _mm256_andnot_si256(vb, va);
    if (!_mm256_testz_si256(d, d)) return false;
  }
  for (; i < nwords; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// Warshall sweep, four rows per vector. For fixed k, each row with bit k set
// gets rows[k] OR-ed in. rows[k] itself is only ever OR-ed with itself, so
// the broadcast stays valid through the sweep.
void closure1_avx2(std::uint64_t* rows, int n) {
  const __m256i ones = _mm256_set1_epi64x(1);
  for (int k = 0; k < n; ++k) {
    const __m256i rowk = _mm256_set1_epi64x(static_cast<long long>(rows[k]));
    int i = 0;
    for (; i + 4 <= n; i += 4) {
      __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows + i));
      const __m256i hasbit =
          _mm256_and_si256(_mm256_srli_epi64(v, k), ones);
      const __m256i mask = _mm256_cmpeq_epi64(hasbit, ones);
      v = _mm256_or_si256(v, _mm256_and_si256(mask, rowk));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(rows + i), v);
    }
    const std::uint64_t rk = rows[k];
    const std::uint64_t bit = 1ull << k;
    for (; i < n; ++i)
      if (rows[i] & bit) rows[i] |= rk;
  }
}

// Two-word rows, two rows per vector: lanes are [r_i.w0, r_i.w1, r_{i+1}.w0,
// r_{i+1}.w1]. The bit-k test lives in word k>>6 of each row; the test lane
// is duplicated across the row's pair of lanes before blending.
void closure2_avx2(std::uint64_t* rows, int n) {
  const __m256i ones = _mm256_set1_epi64x(1);
  for (int k = 0; k < n; ++k) {
    const std::uint64_t rk0 = rows[2 * k];
    const std::uint64_t rk1 = rows[2 * k + 1];
    const __m256i rowk = _mm256_setr_epi64x(
        static_cast<long long>(rk0), static_cast<long long>(rk1),
        static_cast<long long>(rk0), static_cast<long long>(rk1));
    const int w = k >> 6;
    const int sh = k & 63;
    int i = 0;
    for (; i + 2 <= n; i += 2) {
      __m256i v =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(rows + 2 * i));
      __m256i t = _mm256_and_si256(_mm256_srli_epi64(v, sh), ones);
      // Duplicate the tested word across each row's two lanes.
      t = (w == 0) ? _mm256_permute4x64_epi64(t, 0xa0)   // lanes 0,0,2,2
                   : _mm256_permute4x64_epi64(t, 0xf5);  // lanes 1,1,3,3
      const __m256i mask = _mm256_cmpeq_epi64(t, ones);
      v = _mm256_or_si256(v, _mm256_and_si256(mask, rowk));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(rows + 2 * i), v);
    }
    const std::uint64_t bit = 1ull << sh;
    for (; i < n; ++i) {
      if (rows[2 * i + w] & bit) {
        rows[2 * i] |= rk0;
        rows[2 * i + 1] |= rk1;
      }
    }
  }
}

}  // namespace

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

const Kernels& avx2() {
  static const Kernels k{"avx2",      and_avx2,    or_avx2,      equal_avx2,
                         subset_avx2, closure1_avx2, closure2_avx2};
  return k;
}

}  // namespace latforge::kernels

#endif  // x86-64
