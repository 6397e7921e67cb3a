#include <doctest.h>

#include <random>
#include <sstream>

#include "latforge/relation_io.hpp"

using namespace latforge;

TEST_SUITE("io") {
  TEST_CASE("rel round trip is bit-exact") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + static_cast<int>(rng() % 12);
      Relation r(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (rng() % 4 == 0) r.set(i, j);
      const GroundSet g(n);
      const std::string text = to_rel_string(g, r);
      std::istringstream in(text);
      const NamedRelation back = read_rel(in);
      CHECK(back.relation == r);
      CHECK(back.ground.size() == n);
      CHECK(to_rel_string(back.ground, back.relation) == text);
    }
  }

  TEST_CASE("labels survive the round trip") {
    const GroundSet g(3, {"a0", "a1", "b0"});
    Relation r(3);
    r.set(0, 2);
    const std::string text = to_rel_string(g, r);
    std::istringstream in(text);
    const NamedRelation back = read_rel(in);
    CHECK(back.ground.label(2) == "b0");
    CHECK(back.relation.test(0, 2));
    CHECK(to_rel_string(back.ground, back.relation) == text);
  }

  TEST_CASE("comments, duplicates, unordered pairs") {
    std::istringstream in(
        "# a comment\n"
        "pair 1 0   # trailing comment\n"
        "ground 2\n"
        "pair 1 0\n"
        "\n"
        "pair 0 1\n");
    const NamedRelation got = read_rel(in);
    CHECK(got.relation.popcount() == 2);
    CHECK(got.relation.test(1, 0));
    CHECK(got.relation.test(0, 1));
  }

  TEST_CASE("parse errors carry the source position") {
    auto expect_throw = [](const std::string& text, const std::string& needle) {
      std::istringstream in(text);
      try {
        (void)read_rel(in, "test.rel");
        FAIL("expected a parse error for: " << text);
      } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        CHECK(what.find("test.rel:") != std::string::npos);
        CHECK(what.find(needle) != std::string::npos);
      }
    };
    expect_throw("ground 2\nfrob 1\n", "unknown directive");
    expect_throw("ground 2\npair 0 2\n", "out of range");
    expect_throw("pair 0 1\n", "missing 'ground");
    expect_throw("ground 2\nground 3\n", "duplicate ground");
    expect_throw("ground 2\npair 0\n", "expected");
  }
}
