#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "latforge/enumerate.hpp"
#include "latforge/relation.hpp"

using namespace latforge;

namespace {

Relation random_relation(std::mt19937_64& rng, int n, int density = 20) {
  Relation r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (static_cast<int>(rng() % 100) < density) r.set(i, j);
  return r;
}

Relation random_member(std::mt19937_64& rng, Family f, int n) {
  Relation r = random_relation(rng, n, 12);
  if (f == Family::Equ) r = r.union_with(r.transpose());
  if (f == Family::Equ || f == Family::Quo) r = r.with_diagonal();
  return r.transitive_closure();
}

// Triple-loop closure oracle on a Relation, independent of the kernels.
Relation naive_tc(const Relation& r) {
  const int n = r.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (const auto& [i, j] : r.pairs()) m[i][j] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  Relation out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j]) out.set(i, j);
  return out;
}

const std::vector<Family> kTyped = {Family::Equ, Family::Quo, Family::Tran};

}  // namespace

TEST_SUITE("relation") {
  TEST_CASE("diagonal") {
    CHECK(Relation::diagonal(3).pairs() ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 2}});
    CHECK(Relation::diagonal(1).pairs() == std::vector<std::pair<int, int>>{{0, 0}});
    // On two points the diagonal is the meet of the two one-way atoms.
    const Relation q01 = Relation::atom(Family::Quo, 2, 0, 1);
    const Relation q10 = Relation::atom(Family::Quo, 2, 1, 0);
    CHECK(q01.meet(q10) == Relation::diagonal(2));
  }

  TEST_CASE("transpose") {
    Relation r(2);
    r.set(0, 1);
    CHECK(r.transpose().pairs() == std::vector<std::pair<int, int>>{{1, 0}});
    CHECK(Relation::diagonal(5).transpose() == Relation::diagonal(5));
    std::mt19937_64 rng(21);
    for (int t = 0; t < 1000; ++t) {
      const Relation x = random_relation(rng, 1 + static_cast<int>(rng() % 8));
      CHECK(x.transpose().transpose() == x);
    }
  }

  TEST_CASE("meet") {
    const Relation e01 = Relation::atom(Family::Equ, 3, 0, 1);
    const Relation e12 = Relation::atom(Family::Equ, 3, 1, 2);
    CHECK(e01.meet(e12) == Relation::diagonal(3));
    CHECK(e01.meet(e01) == e01);
    const Relation q01 = Relation::atom(Family::Quo, 3, 0, 1);
    CHECK(q01.meet(q01.transpose()) == Relation::diagonal(3));
    CHECK_THROWS_AS((void)e01.meet(Relation::diagonal(4)), std::invalid_argument);
  }

  TEST_CASE("transitive closure") {
    Relation r(3);
    r.set(0, 1);
    r.set(1, 2);
    Relation want = r;
    want.set(0, 2);
    CHECK(r.transitive_closure() == want);
    CHECK(want.transitive_closure() == want);  // fixpoint on transitive input

    std::mt19937_64 rng(22);
    for (int t = 0; t < 1000; ++t) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const Relation x = random_relation(rng, n);
      const Relation y = random_relation(rng, n);
      const Relation cx = x.transitive_closure();
      CHECK(cx == naive_tc(x));
      CHECK(x.subset_of(cx));                                  // extensive
      CHECK(cx.transitive_closure() == cx);                    // idempotent
      const Relation both = x.union_with(y);
      CHECK(cx.subset_of(both.transitive_closure()));          // monotone
    }
  }

  TEST_CASE("join") {
    const Relation q01 = Relation::atom(Family::Quo, 2, 0, 1);
    const Relation q10 = Relation::atom(Family::Quo, 2, 1, 0);
    CHECK(Relation::join(Family::Quo, {q01, q10}) == Relation::atom(Family::Equ, 2, 0, 1));

    const Relation t01 = Relation::atom(Family::Tran, 2, 0, 1);
    const Relation t10 = Relation::atom(Family::Tran, 2, 1, 0);
    CHECK(Relation::join(Family::Tran, {t01, t10}) == Relation::full(2));

    // (trn(c,x) + trn(x,c)) . (trn(c,y) + trn(y,c)) = trn(c,c), distinct c,x,y.
    for (int n = 3; n <= 6; ++n)
      for (int c = 0; c < n; ++c)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            if (c == x || c == y || x == y) continue;
            const Relation lhs =
                Relation::join(Family::Tran, {Relation::atom(Family::Tran, n, c, x),
                                              Relation::atom(Family::Tran, n, x, c)})
                    .meet(Relation::join(Family::Tran,
                                         {Relation::atom(Family::Tran, n, c, y),
                                          Relation::atom(Family::Tran, n, y, c)}));
            CHECK(lhs == Relation::atom(Family::Tran, n, c, c));
          }

    // Typed joins reject non-members; empty joins are rejected outright.
    Relation loose(3);
    loose.set(0, 1);
    loose.set(1, 2);  // not transitive
    CHECK_THROWS_AS((void)Relation::join(Family::Quo, {loose}), std::invalid_argument);
    const std::vector<Relation> none;
    CHECK_THROWS_AS((void)Relation::join(Family::Rel, none), std::invalid_argument);
  }

  TEST_CASE("atoms") {
    const Relation q = Relation::atom(Family::Quo, 3, 0, 1);
    CHECK(q.pairs() == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}, {2, 2}});
    CHECK(Relation::atom(Family::Tran, 3, 2, 2).pairs() ==
          std::vector<std::pair<int, int>>{{2, 2}});
    CHECK_THROWS_AS((void)Relation::atom(Family::Equ, 3, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS((void)Relation::atom(Family::Quo, 3, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)Relation::atom(Family::Quo, 3, 0, 3), std::invalid_argument);
    CHECK(family_atom_count(Family::Equ, 4) == 6);
    CHECK(family_atom_count(Family::Quo, 4) == 12);
    CHECK(family_atom_count(Family::Tran, 4) == 16);
  }

  TEST_CASE("atomistic reconstruction at n <= 4") {
    for (const Family f : kTyped) {
      for (int n = 2; n <= 4; ++n) {
        const auto atoms = family_atoms(f, n);
        const Relation bottom = family_bottom(f, n);
        for (const Relation& member : enumerate_family_relations(f, n)) {
          std::vector<Relation> below;
          for (const Relation& a : atoms)
            if (a.subset_of(member)) below.push_back(a);
          if (below.empty()) {
            // Only the bottom has no atoms below it.
            CHECK(member == bottom);
            continue;
          }
          CHECK(Relation::join(f, below) == member);
        }
      }
    }
  }

  TEST_CASE("is_member") {
    const Relation d = Relation::diagonal(4);
    for (const Family f : {Family::Equ, Family::Quo, Family::Tran, Family::Rel})
      CHECK(Relation::is_member(f, d));
    const Relation q01 = Relation::atom(Family::Quo, 3, 0, 1);
    CHECK(Relation::is_member(Family::Quo, q01));
    CHECK_FALSE(Relation::is_member(Family::Equ, q01));
  }

  TEST_CASE("is_antisymmetric") {
    CHECK(Relation::atom(Family::Quo, 3, 0, 1).is_antisymmetric());
    CHECK_FALSE(Relation::atom(Family::Equ, 3, 0, 1).is_antisymmetric());
    // Count of orderings among the 29 quasiorders on three points.
    int orderings = 0;
    for (const Relation& q : enumerate_family_relations(Family::Quo, 3))
      if (q.is_antisymmetric()) ++orderings;
    CHECK(orderings == 19);
  }

  TEST_CASE("strip_diagonal") {
    CHECK(Relation::atom(Family::Quo, 3, 0, 1).strip_diagonal() ==
          Relation::atom(Family::Tran, 3, 0, 1));
    CHECK(Relation::diagonal(4).strip_diagonal() == Relation(4));
    // Stripping the diagonal off an *ordering* stays transitive. (Not true
    // of transitive relations in general: {(0,1),(1,0)} plus loops strips to
    // a non-transitive relation, which is why the stripping argument needs
    // antisymmetry.)
    CHECK_FALSE(Relation::atom(Family::Equ, 2, 0, 1).strip_diagonal().is_transitive());
    std::mt19937_64 rng(23);
    for (int t = 0; t < 1000; ++t) {
      const int n = 2 + static_cast<int>(rng() % 7);
      // Random ordering: close an upper-triangular seed, then relabel.
      Relation seed(n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng() % 4 == 0) seed.set(i, j);
      Relation order = seed.with_diagonal().transitive_closure();
      REQUIRE(order.is_antisymmetric());
      CHECK(order.strip_diagonal().is_transitive());
      const Relation y = random_relation(rng, n);
      CHECK(y.strip_diagonal().transpose() == y.transpose().strip_diagonal());
    }
  }

  TEST_CASE("block_of") {
    CHECK(Relation::atom(Family::Equ, 3, 0, 1).block_of(0) == std::vector<int>{0, 1});
    CHECK(Relation::diagonal(5).block_of(3) == std::vector<int>{3});
    Relation not_reflexive(3);
    not_reflexive.set(0, 1);
    CHECK_THROWS_AS((void)not_reflexive.block_of(0), std::invalid_argument);
    // Block of the generated equivalence, not of the quasiorder itself.
    const Relation q = Relation::atom(Family::Quo, 4, 0, 1);
    CHECK(q.block_of(1) == std::vector<int>{0, 1});
  }

  TEST_CASE("lattice laws hold in each family") {
    std::mt19937_64 rng(24);
    for (const Family f : kTyped) {
      for (int t = 0; t < 300; ++t) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Relation a = random_member(rng, f, n);
        const Relation b = random_member(rng, f, n);
        const Relation c = random_member(rng, f, n);
        CHECK(Relation::is_member(f, a));
        const Relation ab_join = Relation::join(f, {a, b});
        const Relation ab_meet = a.meet(b);
        CHECK(Relation::is_member(f, ab_join));
        CHECK(Relation::is_member(f, ab_meet));
        CHECK(ab_join == Relation::join(f, {b, a}));
        CHECK(ab_meet == b.meet(a));
        CHECK(Relation::join(f, {a, a}) == a);
        CHECK(a.meet(a) == a);
        CHECK(Relation::join(f, {Relation::join(f, {a, b}), c}) ==
              Relation::join(f, {a, Relation::join(f, {b, c})}));
        CHECK(a.meet(b).meet(c) == a.meet(b.meet(c)));
        CHECK(a.meet(Relation::join(f, {a, b})) == a);           // absorption
        CHECK(Relation::join(f, {a, a.meet(b)}) == a);           // absorption
      }
    }
  }

  TEST_CASE("involution is an automorphism") {
    std::mt19937_64 rng(25);
    for (const Family f : kTyped) {
      for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Relation a = random_member(rng, f, n);
        const Relation b = random_member(rng, f, n);
        CHECK(Relation::join(f, {a, b}).transpose() ==
              Relation::join(f, {a.transpose(), b.transpose()}));
        CHECK(a.meet(b).transpose() == a.transpose().meet(b.transpose()));
        if (f == Family::Equ) CHECK(a.transpose() == a);  // identity on Equ
      }
    }
  }

  TEST_CASE("pack8 round trip agrees with generic operations") {
    std::mt19937_64 rng(26);
    for (int t = 0; t < 500; ++t) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const Relation a = random_relation(rng, n, 30);
      const Relation b = random_relation(rng, n, 30);
      CHECK(Relation::unpack8(n, a.pack8()) == a);
      CHECK((a.pack8() & b.pack8()) == a.meet(b).pack8());
      CHECK(kernels::closure8(a.pack8() | b.pack8(), n) ==
            a.union_with(b).transitive_closure().pack8());
      CHECK(kernels::transpose8(a.pack8()) == a.transpose().pack8());
    }
  }

  TEST_CASE("lex comparison orders row-major, absent first") {
    Relation a(3), b(3);
    b.set(0, 0);
    CHECK(a.compare_lex(b) < 0);  // empty before anything
    Relation c(3), d(3);
    c.set(0, 1);
    d.set(0, 2);
    CHECK(c.compare_lex(d) > 0);  // (0,1) set beats (0,2) set at position (0,1)
    CHECK(c.compare_lex(c) == 0);
  }

  TEST_CASE("family bottoms and tops") {
    CHECK(family_bottom(Family::Equ, 3) == Relation::diagonal(3));
    CHECK(family_bottom(Family::Tran, 3) == Relation(3));
    CHECK(family_top(Family::Quo, 3) == Relation::full(3));
    CHECK(Relation::full(3).popcount() == 9);
  }

  TEST_CASE("ground set labels") {
    GroundSet g(3, {"a0", "a1", "b0"});
    CHECK(g.label(2) == "b0");
    CHECK(g.index_of("a1") == 1);
    CHECK(g.index_of("2") == 2);
    CHECK_THROWS_AS((void)g.index_of("zz"), std::invalid_argument);
    CHECK_THROWS_AS(GroundSet(2, {"x", "x"}), std::invalid_argument);
    CHECK_THROWS_AS(GroundSet(0), std::invalid_argument);
    CHECK_THROWS_AS(GroundSet(kMaxGround + 1), std::invalid_argument);
  }

  TEST_CASE("relations above 64 points use two-word rows") {
    const int n = 70;
    Relation r(n);
    r.set(0, 69);
    r.set(69, 3);
    const Relation c = r.transitive_closure();
    CHECK(c.test(0, 3));
    CHECK(c.popcount() == 3);
    CHECK(r.transpose().test(69, 0));
    CHECK(Relation::full(n).popcount() == n * n);
    CHECK(Relation::diagonal(n).block_of(65) == std::vector<int>{65});
  }
}
