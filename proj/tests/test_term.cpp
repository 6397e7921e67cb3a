#include <doctest.h>

#include <random>
#include <vector>

#include "latforge/term.hpp"

using namespace latforge;

namespace {

Relation random_relation(std::mt19937_64& rng, int n, int density = 20) {
  Relation r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (static_cast<int>(rng() % 100) < density) r.set(i, j);
  return r;
}

Relation random_quasiorder(std::mt19937_64& rng, int n) {
  return random_relation(rng, n, 12).with_diagonal().transitive_closure();
}

}  // namespace

TEST_SUITE("term") {
  TEST_CASE("parse examples") {
    const Term t = parse_term("meet(v0, join(v1, v2))");
    CHECK(t == Term::meet({Term::var_(0), Term::join({Term::var_(1), Term::var_(2)})}));
    CHECK(parse_term("inv(quo(0,1))") == Term::inv(Term::atom(Family::Quo, 0, 1)));
    CHECK(parse_term(" diag ") == Term::diag());
    CHECK(parse_term("v12") == Term::var_(12));
    CHECK(term_arity(parse_term("join(v0, inv(v3))")) == 4);
  }

  TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS((void)parse_term("join()"), ParseError);
    CHECK_THROWS_AS((void)parse_term("meet(v0,)"), ParseError);
    CHECK_THROWS_AS((void)parse_term("inv(v0, v1)"), ParseError);
    CHECK_THROWS_AS((void)parse_term("frob(v0)"), ParseError);
    CHECK_THROWS_AS((void)parse_term("v0 v1"), ParseError);
    CHECK_THROWS_AS((void)parse_term("equ(0 1)"), ParseError);
    try {
      (void)parse_term("join(v0, frob)");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.position == 9);
    }
  }

  TEST_CASE("render and parse are inverse") {
    std::mt19937_64 rng(41);
    RandomTermOptions opt;
    opt.arity = 4;
    opt.max_depth = 6;
    opt.ground_n = 6;
    for (int t = 0; t < 500; ++t) {
      const Term term = random_term(rng, opt);
      const std::string text = render_term(term);
      CHECK(parse_term(text) == term);
      CHECK(render_term(parse_term(text)) == text);
    }
  }

  TEST_CASE("eval basics") {
    std::mt19937_64 rng(42);
    const Relation rho = random_relation(rng, 5);
    const std::vector<Relation> binding = {rho};
    CHECK(eval(Term::var_(0), binding, Family::Rel) == rho);
    CHECK(eval(Term::inv(Term::inv(Term::var_(0))), binding, Family::Rel) == rho);
    CHECK(eval(parse_term("diag"), {}, Family::Rel, 4) == Relation::diagonal(4));
    CHECK_THROWS_AS((void)eval(Term::var_(1), binding, Family::Rel),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)eval(parse_term("diag"), {}, Family::Rel),
                    std::invalid_argument);
    // Non-member binding rejected for a typed family.
    Relation loose(3);
    loose.set(0, 1);
    loose.set(1, 2);
    const std::vector<Relation> loose_binding = {loose};
    CHECK_THROWS_AS((void)eval(Term::var_(0), loose_binding, Family::Quo),
                    std::invalid_argument);
    // Non-member constant rejected too.
    CHECK_THROWS_AS(
        (void)eval(Term::atom(Family::Quo, 0, 1), {}, Family::Equ, 3),
        std::invalid_argument);
  }

  TEST_CASE("two disjoint chains meet to the atom") {
    // quo(u,v) and equ(u,v) both decompose over any pair of internally
    // disjoint chains; checked by evaluating the corresponding terms.
    std::mt19937_64 rng(43);
    for (int t = 0; t < 200; ++t) {
      const int n = 5 + static_cast<int>(rng() % 4);  // 5..8
      std::vector<int> verts(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) verts[static_cast<std::size_t>(i)] = i;
      std::shuffle(verts.begin(), verts.end(), rng);
      // Inner-vertex counts kept within the pool: 2 + j + k <= n.
      const int j = static_cast<int>(rng() % std::min(3, n - 2 + 1));
      const int k = static_cast<int>(rng() % std::min(3, n - 2 - j + 1));
      std::size_t at = 0;
      const int u = verts[at++];
      const int v = verts[at++];
      std::vector<int> left = {u};
      for (int s = 0; s < j; ++s) left.push_back(verts[at++]);
      left.push_back(v);
      std::vector<int> right = {u};
      for (int s = 0; s < k; ++s) right.push_back(verts[at++]);
      right.push_back(v);

      for (const Family f : {Family::Quo, Family::Equ}) {
        auto chain_term = [&](const std::vector<int>& path) {
          std::vector<Term> atoms;
          for (std::size_t s = 1; s < path.size(); ++s)
            atoms.push_back(Term::atom(f, path[s - 1], path[s]));
          return Term::join(std::move(atoms));
        };
        const Term term = Term::meet({chain_term(left), chain_term(right)});
        CHECK(eval(term, {}, f, n) == Relation::atom(f, n, u, v));
      }
    }
  }

  TEST_CASE("strip-diagonal commutes with evaluation over REL") {
    // t(b) \ diag == t(b with diagonals stripped) \ diag, for all terms.
    std::mt19937_64 rng(44);
    const Term t1 = parse_term("join(v0, v1)");
    std::vector<Relation> quos = {random_quasiorder(rng, 5), random_quasiorder(rng, 5)};
    CHECK(strip_eval_commutes(t1, quos));
    const std::vector<Relation> one = {random_relation(rng, 4)};
    CHECK(strip_eval_commutes(parse_term("v0"), one));

    RandomTermOptions opt;
    opt.arity = 4;
    opt.max_depth = 6;
    int checked = 0;
    for (int t = 0; t < 500; ++t) {
      const int n = 2 + static_cast<int>(rng() % 5);
      opt.ground_n = n;
      const Term term = random_term(rng, opt);
      std::vector<Relation> bindings;
      for (int i = 0; i < opt.arity; ++i) bindings.push_back(random_relation(rng, n));
      CHECK(strip_eval_commutes(term, bindings));
      ++checked;
    }
    CHECK(checked == 500);
  }

  TEST_CASE("evaluation is monotone in the bindings") {
    std::mt19937_64 rng(45);
    RandomTermOptions opt;
    opt.arity = 3;
    opt.max_depth = 5;
    for (int t = 0; t < 300; ++t) {
      const int n = 2 + static_cast<int>(rng() % 5);
      opt.ground_n = n;
      const Term term = random_term(rng, opt);
      std::vector<Relation> small, big;
      for (int i = 0; i < opt.arity; ++i) {
        const Relation lo = random_relation(rng, n, 15);
        small.push_back(lo);
        big.push_back(lo.union_with(random_relation(rng, n, 15)));
      }
      CHECK(eval(term, small, Family::Rel).subset_of(eval(term, big, Family::Rel)));
    }
  }

  TEST_CASE("families are closed under evaluation") {
    std::mt19937_64 rng(46);
    RandomTermOptions opt;
    opt.arity = 3;
    opt.max_depth = 5;
    opt.with_constants = false;  // constants may leave the family by design
    for (int t = 0; t < 200; ++t) {
      const int n = 2 + static_cast<int>(rng() % 5);
      opt.ground_n = n;
      const Term term = random_term(rng, opt);
      std::vector<Relation> quos;
      for (int i = 0; i < opt.arity; ++i) quos.push_back(random_quasiorder(rng, n));
      CHECK(Relation::is_member(Family::Quo, eval(term, quos, Family::Quo)));
    }
  }

  TEST_CASE("transpose pushes through involution-free terms") {
    std::mt19937_64 rng(47);
    RandomTermOptions opt;
    opt.arity = 3;
    opt.max_depth = 5;
    opt.with_involution = false;
    opt.with_constants = false;  // constants are not transposed with bindings
    for (int t = 0; t < 300; ++t) {
      const int n = 2 + static_cast<int>(rng() % 5);
      opt.ground_n = n;
      const Term term = random_term(rng, opt);
      std::vector<Relation> bindings, transposed;
      for (int i = 0; i < opt.arity; ++i) {
        bindings.push_back(random_relation(rng, n));
        transposed.push_back(bindings.back().transpose());
      }
      CHECK(eval(term, bindings, Family::Rel).transpose() ==
            eval(term, transposed, Family::Rel));
    }
  }
}
