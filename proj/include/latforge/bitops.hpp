#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Word-level kernels behind every relation operation.
//
// A relation on n points is stored as n rows, each row packed LSB-first into
// `wpr` 64-bit words (wpr = 1 for n <= 64, wpr = 2 for n <= 128). A whole
// relation is the concatenation of its rows: n * wpr contiguous words.
//
// Scalar reference implementations always exist; AVX2 (x86-64) and NEON
// (aarch64) variants are selected once at startup when the CPU supports
// them. The variants are equivalence-tested against the scalar kernels on
// randomized inputs. `LATFORGE_KERNELS=scalar|avx2|neon` overrides the
// selection.

namespace latforge::kernels {

struct Kernels {
  const char* name;

  // dst = a & b / dst = a | b over nwords words. dst may alias a or b.
  void (*bit_and)(std::uint64_t* dst, const std::uint64_t* a,
                  const std::uint64_t* b, std::size_t nwords);
  void (*bit_or)(std::uint64_t* dst, const std::uint64_t* a,
                 const std::uint64_t* b, std::size_t nwords);

  bool (*equal)(const std::uint64_t* a, const std::uint64_t* b,
                std::size_t nwords);
  // a subseteq b, i.e. (a & ~b) == 0.
  bool (*subset)(const std::uint64_t* a, const std::uint64_t* b,
                 std::size_t nwords);

  // In-place transitive closure (Warshall row sweep) of an n x n bit
  // matrix. closure1: one word per row (n <= 64). closure2: two words per
  // row (64 < n <= 128).
  void (*closure1)(std::uint64_t* rows, int n);
  void (*closure2)(std::uint64_t* rows, int n);
};

const Kernels& scalar();
const Kernels& active();

// Forces a specific variant ("scalar", "avx2", "neon"). Returns false if the
// variant is not compiled in or the CPU lacks it. Not thread-safe; intended
// for startup and tests.
bool select(std::string_view name);

// Names of variants usable on this machine, comma-separated.
const char* available();

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_supported();
const Kernels& avx2();
#endif
#if defined(__aarch64__)
const Kernels& neon();
#endif

// -- shared helpers (single implementation, not dispatched) -----------------

std::uint64_t hash_words(const std::uint64_t* a, std::size_t nwords);

// Whole relations with n <= 8 fit one 64-bit word at a fixed row stride of
// 8 bits: pair (i,j) lives at bit 8*i + j. Unused bits are zero.
constexpr std::uint64_t kCol8 = 0x0101010101010101ull;

// Transitive closure of a packed n x n matrix, n <= 8.
inline std::uint64_t closure8(std::uint64_t m, int n) {
  for (int k = 0; k < n; ++k) {
    const std::uint64_t rowk = (m >> (8 * k)) & 0xffu;
    // 0xff in byte i iff row i contains column k.
    const std::uint64_t mask = ((m >> k) & kCol8) * 0xffu;
    m |= (kCol8 * rowk) & mask;
  }
  return m;
}

// 8x8 bit-matrix transpose (three delta-swap rounds).
inline std::uint64_t transpose8(std::uint64_t m) {
  std::uint64_t t;
  t = (m ^ (m >> 7)) & 0x00aa00aa00aa00aaull;
  m = m ^ t ^ (t << 7);
  t = (m ^ (m >> 14)) & 0x0000cccc0000ccccull;
  m = m ^ t ^ (t << 14);
  t = (m ^ (m >> 28)) & 0x00000000f0f0f0f0ull;
  m = m ^ t ^ (t << 28);
  return m;
}

inline std::uint64_t diagonal8(int n) {
  std::uint64_t m = 0;
  for (int i = 0; i < n; ++i) m |= 1ull << (9 * i);
  return m;
}

inline std::uint64_t full8(int n) {
  const std::uint64_t row = (n == 64) ? ~0ull : ((1ull << n) - 1);
  std::uint64_t m = 0;
  for (int i = 0; i < n; ++i) m |= row << (8 * i);
  return m;
}

}  // namespace latforge::kernels
