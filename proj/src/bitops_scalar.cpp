#include "latforge/bitops.hpp"

namespace latforge::kernels {

namespace {

void and_scalar(std::uint64_t* dst, const std::uint64_t* a,
                const std::uint64_t* b, std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i) dst[i] = a[i] & b[i];
}

void or_scalar(std::uint64_t* dst, const std::uint64_t* a,
               const std::uint64_t* b, std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i) dst[i] = a[i] | b[i];
}

bool equal_scalar(const std::uint64_t* a, const std::uint64_t* b,
                  std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool subset_scalar(const std::uint64_t* a, const std::uint64_t* b,
                   std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

void closure1_scalar(std::uint64_t* rows, int n) {
  for (int k = 0; k < n; ++k) {
    const std::uint64_t rowk = rows[k];
    const std::uint64_t bit = 1ull << k;
    for (int i = 0; i < n; ++i)
      if (rows[i] & bit) rows[i] |= rowk;
  }
}

void closure2_scalar(std::uint64_t* rows, int n) {
  for (int k = 0; k < n; ++k) {
    const std::uint64_t rk0 = rows[2 * k];
    const std::uint64_t rk1 = rows[2 * k + 1];
    const int w = k >> 6;
    const std::uint64_t bit = 1ull << (k & 63);
    for (int i = 0; i < n; ++i) {
      if (rows[2 * i + w] & bit) {
        rows[2 * i] |= rk0;
        rows[2 * i + 1] |= rk1;
      }
    }
  }
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k{"scalar",       and_scalar,      or_scalar,
                         equal_scalar,   subset_scalar,   closure1_scalar,
                         closure2_scalar};
  return k;
}

std::uint64_t hash_words(const std::uint64_t* a, std::size_t nwords) {
  // FNV-1a over words with a final avalanche.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < nwords; ++i) {
    h ^= a[i];
    h *= 0x100000001b3ull;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

}  // namespace latforge::kernels
