#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "latforge/relation.hpp"

namespace latforge {

// Finitary lattice terms with involution: variables, atom/diagonal/empty/all
// constants, joins and meets of one or more children, and transpose. On a
// finite ground set arbitrary-arity joins and meets reduce to finite ones,
// so finitary terms express everything the complete operations can.
//
// Text grammar (prefix only, no precedence):
//   join(t1,...,tk) | meet(t1,...,tk) | inv(t)
//   v<k> | equ(i,j) | quo(i,j) | trn(i,j) | diag | empty | all

struct Term {
  enum class Kind : std::uint8_t { Var, Const, Join, Meet, Inv };
  enum class ConstKind : std::uint8_t { Diag, Empty, All, Atom };

  Kind kind = Kind::Var;
  int var = 0;                        // Var
  ConstKind cst = ConstKind::Diag;    // Const
  Family atom_family = Family::Equ;   // Const/Atom
  int atom_a = 0, atom_b = 0;         // Const/Atom
  std::vector<Term> children;         // Join/Meet (>= 1), Inv (exactly 1)

  static Term var_(int k);
  static Term diag();
  static Term empty();
  static Term all();
  static Term atom(Family f, int a, int b);
  static Term join(std::vector<Term> children);
  static Term meet(std::vector<Term> children);
  static Term inv(Term child);

  bool operator==(const Term& other) const;
};

// Number of variables the term needs (max index + 1).
int term_arity(const Term& t);

// Bottom-up evaluation in the given family. Bindings must all live on one
// ground set and, for family != REL, be members of the family (constants are
// checked the same way). ground_n is only consulted for closed terms.
Relation eval(const Term& t, std::span<const Relation> bindings, Family family,
              int ground_n = -1);

// Whether stripping the diagonal commutes with evaluation over REL:
//   strip(t(b)) == strip(t(strip each b)).
bool strip_eval_commutes(const Term& t, std::span<const Relation> bindings);

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position(position) {}
  std::size_t position;
};

Term parse_term(const std::string& text);
std::string render_term(const Term& t);

// Seeded random terms for property campaigns: geometric depth, children
// counts in [1,3], constants drawn over the given ground size.
struct RandomTermOptions {
  int arity = 4;
  int max_depth = 6;
  int ground_n = 6;
  bool with_involution = true;
  bool with_constants = true;
};

Term random_term(std::mt19937_64& rng, const RandomTermOptions& opt);

}  // namespace latforge
