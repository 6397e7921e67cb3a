#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "latforge/bitops.hpp"

using namespace latforge;

namespace {

// Naive n x n boolean-matrix transitive closure, the oracle for every
// closure kernel.
std::vector<std::vector<bool>> naive_closure(std::vector<std::vector<bool>> m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  return m;
}

std::uint64_t pack_matrix8(const std::vector<std::vector<bool>>& m) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j]) out |= 1ull << (8 * i + j);
  return out;
}

std::vector<std::vector<bool>> random_matrix(std::mt19937_64& rng, int n, int density) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = static_cast<int>(rng() % 100) < density;
  return m;
}

std::vector<std::uint64_t> rows_of(const std::vector<std::vector<bool>>& m, int wpr) {
  std::vector<std::uint64_t> rows(m.size() * wpr, 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[i][j]) rows[i * wpr + (j >> 6)] |= 1ull << (j & 63);
  return rows;
}

}  // namespace

TEST_SUITE("bitops") {
  TEST_CASE("closure8 matches the naive closure") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 2000; ++t) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const auto m = random_matrix(rng, n, 25);
      CHECK(kernels::closure8(pack_matrix8(m), n) == pack_matrix8(naive_closure(m)));
    }
  }

  TEST_CASE("transpose8 matches the naive transpose") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 500; ++t) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const auto m = random_matrix(rng, n, 40);
      std::vector<std::vector<bool>> mt(n, std::vector<bool>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mt[j][i] = m[i][j];
      CHECK(kernels::transpose8(pack_matrix8(m)) == pack_matrix8(mt));
      CHECK(kernels::transpose8(kernels::transpose8(pack_matrix8(m))) == pack_matrix8(m));
    }
  }

  TEST_CASE("scalar word kernels match plain loops") {
    std::mt19937_64 rng(9);
    const auto& k = kernels::scalar();
    for (int t = 0; t < 200; ++t) {
      const std::size_t nw = 1 + rng() % 70;
      std::vector<std::uint64_t> a(nw), b(nw), dst(nw);
      for (auto& w : a) w = rng();
      for (auto& w : b) w = rng();
      k.bit_and(dst.data(), a.data(), b.data(), nw);
      for (std::size_t i = 0; i < nw; ++i) CHECK(dst[i] == (a[i] & b[i]));
      CHECK(k.subset(dst.data(), a.data(), nw));  // a&b subseteq a
      k.bit_or(dst.data(), a.data(), b.data(), nw);
      for (std::size_t i = 0; i < nw; ++i) CHECK(dst[i] == (a[i] | b[i]));
      CHECK(k.equal(a.data(), a.data(), nw));
      CHECK(k.subset(a.data(), dst.data(), nw));  // a subseteq a|b
    }
  }

  TEST_CASE("every available variant agrees with scalar") {
    std::mt19937_64 rng(10);
    std::vector<const kernels::Kernels*> variants;
#if defined(__x86_64__) || defined(_M_X64)
    if (kernels::avx2_supported()) variants.push_back(&kernels::avx2());
#endif
#if defined(__aarch64__)
    variants.push_back(&kernels::neon());
#endif
    if (variants.empty()) {
      MESSAGE("no SIMD variant available on this machine; scalar only");
      return;
    }
    const auto& s = kernels::scalar();
    for (const auto* v : variants) {
      CAPTURE(v->name);
      for (int t = 0; t < 400; ++t) {
        const std::size_t nw = 1 + rng() % 69;
        std::vector<std::uint64_t> a(nw), b(nw), want(nw), got(nw);
        for (auto& w : a) w = rng();
        for (auto& w : b) w = rng();
        if (t % 3 == 0) b = a;  // exercise the equal fast path
        if (t % 5 == 0)
          for (std::size_t i = 0; i < nw; ++i) a[i] &= b[i];  // force a subset
        s.bit_and(want.data(), a.data(), b.data(), nw);
        v->bit_and(got.data(), a.data(), b.data(), nw);
        CHECK(want == got);
        s.bit_or(want.data(), a.data(), b.data(), nw);
        v->bit_or(got.data(), a.data(), b.data(), nw);
        CHECK(want == got);
        CHECK(s.equal(a.data(), b.data(), nw) == v->equal(a.data(), b.data(), nw));
        CHECK(s.subset(a.data(), b.data(), nw) == v->subset(a.data(), b.data(), nw));
        CHECK(s.subset(b.data(), a.data(), nw) == v->subset(b.data(), a.data(), nw));
      }
      // closure1 over the full size range, against the naive oracle.
      for (int t = 0; t < 300; ++t) {
        const int n = 1 + static_cast<int>(rng() % 64);
        const auto m = random_matrix(rng, n, 8);
        auto rows_s = rows_of(m, 1);
        auto rows_v = rows_s;
        s.closure1(rows_s.data(), n);
        v->closure1(rows_v.data(), n);
        CHECK(rows_s == rows_v);
        CHECK(rows_s == rows_of(naive_closure(m), 1));
      }
      // closure2 (two words per row).
      for (int t = 0; t < 60; ++t) {
        const int n = 65 + static_cast<int>(rng() % 64);
        const auto m = random_matrix(rng, n, 3);
        auto rows_s = rows_of(m, 2);
        auto rows_v = rows_s;
        s.closure2(rows_s.data(), n);
        v->closure2(rows_v.data(), n);
        CHECK(rows_s == rows_v);
        CHECK(rows_s == rows_of(naive_closure(m), 2));
      }
    }
  }

  TEST_CASE("kernel selection") {
    const std::string before = kernels::active().name;
    CHECK(kernels::select("scalar"));
    CHECK(std::string(kernels::active().name) == "scalar");
    CHECK_FALSE(kernels::select("no-such-variant"));
    CHECK(kernels::select(before));  // restore
  }

  TEST_CASE("hash_words is content-determined") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
      const std::size_t nw = 1 + rng() % 20;
      std::vector<std::uint64_t> a(nw);
      for (auto& w : a) w = rng();
      std::vector<std::uint64_t> b = a;
      CHECK(kernels::hash_words(a.data(), nw) == kernels::hash_words(b.data(), nw));
      b[rng() % nw] ^= 1ull << (rng() % 64);
      CHECK(kernels::hash_words(a.data(), nw) != kernels::hash_words(b.data(), nw));
    }
  }
}
