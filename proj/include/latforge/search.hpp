#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latforge/closure.hpp"
#include "latforge/relation.hpp"
#include "latforge/zadori.hpp"

namespace latforge {

// Exhaustive scans over k-subsets of a family for generating sets, with
// optional structural patterns, involution, first-coordinate symmetry
// reduction, and resumable checkpointing.

enum class Pattern : std::uint8_t {
  Any,
  OneOneTwo,         // {x1 < x2; x3; x4} with both triples antichains
  AllAntisymmetric,  // every candidate is an ordering
};

enum class SearchMode : std::uint8_t { FindOne, ProveNone, FindAll };

const char* pattern_name(Pattern p);
Pattern pattern_from_name(const std::string& s);
const char* search_mode_name(SearchMode m);
SearchMode search_mode_from_name(const std::string& s);

struct SearchSpec {
  Family family = Family::Quo;
  int n = 3;
  int k = 4;
  Pattern pattern = Pattern::Any;
  bool with_involution = false;
  SearchMode mode = SearchMode::FindOne;
  Budget budget;  // per candidate closure
  bool symmetry_reduction = false;
  bool allow_large = false;  // override the enumeration guard
};

std::string spec_to_string(const SearchSpec& spec);
std::uint64_t spec_hash(const SearchSpec& spec);

struct FoundSet {
  std::vector<std::uint32_t> member_indices;  // into the family enumeration
  std::vector<Relation> relations;
};

struct SearchOutcome {
  std::uint64_t examined = 0;
  std::uint64_t yes = 0;
  std::uint64_t no = 0;
  std::uint64_t unknown = 0;
  std::vector<FoundSet> found;
  bool exhausted_space = false;               // the whole scan ran
  std::vector<std::uint32_t> resume_at;       // next combination when stopped
};

struct SearchLimits {
  std::uint64_t max_candidates = std::numeric_limits<std::uint64_t>::max();
  std::string checkpoint_path;                   // writes progress when set
  std::uint64_t checkpoint_interval = 1'000'000; // candidates between writes
  std::vector<std::uint32_t> resume_from;        // start combination
  unsigned threads = 0;  // parallel candidate blocks; forced to 1 when
                         // checkpointing (checkpoint files are single-writer)
};

// True iff some labeling x1,x2,x3,x4 of the four distinct relations has
// x1 proper-subset x2 while {x1,x3,x4} and {x2,x3,x4} are antichains.
bool is_one_one_two(std::span<const Relation> four);

// `carry` seeds counts and found sets from an earlier partial scan (resume);
// the combination to restart from travels in limits.resume_from.
SearchOutcome search_generating_sets(const SearchSpec& spec,
                                     const SearchLimits& limits = {},
                                     const SearchOutcome* carry = nullptr);

// Checkpoint files: JSON {spec, spec_hash, combo, examined, counts, found}.
void write_checkpoint(const std::string& path, const SearchSpec& spec,
                      const SearchOutcome& progress);
SearchOutcome read_checkpoint(const std::string& path, const SearchSpec& spec);

// Strips the diagonal off orderings (reflexive, transitive, antisymmetric
// quasiorders). When the inputs generate Quo(A) as an involution lattice,
// the images generate Tran(A); the caller verifies generation separately.
std::vector<Relation> orders_to_tran_generators(std::span<const Relation> orderings);

// -- symmetry ----------------------------------------------------------------

// Image of r under a ground-set permutation: (i,j) -> (perm[i], perm[j]).
Relation apply_permutation(const Relation& r, std::span<const int> perm);

// Lexicographic minimum of the orbit of r under S_n x {id, transpose}. All
// of these maps are automorphisms of the three lattices, so generation
// questions are orbit-invariant.
Relation canonical_form(const Relation& r);
bool is_canonical(const Relation& r);

// -- delta reconstruction ----------------------------------------------------

// Searches quasiorder specs delta such that {alpha, beta, gamma, delta}
// generates Quo over the configuration's ground set. The shaped space keeps
// the two chain-end equivalence legs fixed and varies one quo leg over the
// a-chain; the full space scans all joins of at most max_atoms atoms.
struct DeltaSearchOptions {
  bool shaped = true;
  int max_atoms = 3;
  Budget budget;  // per candidate
  std::uint64_t max_candidates = std::numeric_limits<std::uint64_t>::max();
  bool find_all = true;
};

struct DeltaSearchResult {
  std::vector<DeltaSpec> validated;
  std::uint64_t examined = 0;
  std::uint64_t unknown = 0;
  bool exhausted_space = false;
};

DeltaSearchResult search_delta(const Config& config, const DeltaSearchOptions& options);

}  // namespace latforge
