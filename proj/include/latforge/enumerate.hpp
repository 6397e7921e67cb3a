#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "latforge/relation.hpp"

namespace latforge {

// Exhaustive enumeration of a family over an n-point ground set, each member
// exactly once, in row-major lexicographic bit order (absent < present,
// pair (0,0) most significant).
//
// Members are produced as single-word packs (bit 8*i+j = pair (i,j)), which
// bounds the supported ground size at 8. The enumerator backtracks over
// undecided pairs and propagates transitivity constraints; it never filters
// the full 2^(n*n) space. A brute-force filter over all 2^(n*n) relations is
// provided separately as the independent cross-check for tiny n.
//
// Default feasibility guards (override with allow_large):
//   EQU, QUO: n <= 5     TRAN: n <= 4     REL: n <= 3

int enumeration_guard(Family f);
bool enumeration_feasible(Family f, int n);

void enumerate_family(Family f, int n, const std::function<void(std::uint64_t)>& emit,
                      bool allow_large = false);

std::vector<std::uint64_t> enumerate_family_packed(Family f, int n,
                                                   bool allow_large = false);
std::vector<Relation> enumerate_family_relations(Family f, int n,
                                                 bool allow_large = false);

std::uint64_t count_family(Family f, int n, bool allow_large = false);

// Independent oracle: filters all 2^(n*n) bit patterns by the membership
// predicate, in the same lexicographic order. Guarded at n <= 4.
std::vector<std::uint64_t> brute_filter_packed(Family f, int n);

// Membership test on a packed relation.
bool packed_is_member(Family f, int n, std::uint64_t m);

}  // namespace latforge
