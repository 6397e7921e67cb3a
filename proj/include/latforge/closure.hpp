#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "latforge/relation.hpp"

namespace latforge {

// Budgets for closure computation, in admitted elements and (approximate)
// primitive word operations. Exhaustion is a status flag, not a failure.
struct Budget {
  std::uint64_t max_elements = 2'000'000;
  std::uint64_t max_word_ops = 10'000'000'000ull;
};

enum class ClosureStatus : std::uint8_t {
  Complete,          // closed under the operation set
  BudgetExhausted,   // stopped early; element set is a sound partial closure
  EarlyExitAtoms,    // stopped as soon as every target atom was present
};

const char* closure_status_name(ClosureStatus s);

enum class WitnessOp : std::uint8_t { Generator, Meet, Join, Inv };

const char* witness_op_name(WitnessOp op);

// How an element was first produced: parent indices into the element pool.
// Generators have no parents. Witnesses replay bit-exactly.
struct Witness {
  WitnessOp op;
  std::uint32_t lhs = 0;
  std::uint32_t rhs = 0;
};

struct ClosureStats {
  std::uint64_t elements = 0;
  std::uint64_t combinations = 0;   // (meet, join) pair steps performed
  std::uint64_t word_ops = 0;       // approximate word-operation count
  std::uint64_t max_depth = 0;      // longest derivation chain
  double elapsed_ms = 0.0;
};

// Deduplicated storage for closure elements. Relations on n <= 8 points are
// held as single-word packs; larger ones as fixed-stride row blocks.
class ElementPool {
 public:
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  explicit ElementPool(int n);

  int ground_size() const { return n_; }
  bool packed() const { return packed_; }
  std::size_t size() const { return count_; }

  Relation get(std::uint32_t i) const;
  std::uint32_t find(const Relation& r) const;
  bool contains(const Relation& r) const { return find(r) != npos; }

  // Engine-facing raw access.
  std::uint64_t packed_at(std::uint32_t i) const { return packs_[i]; }
  const std::uint64_t* rows_at(std::uint32_t i) const {
    return rows_.data() + std::size_t(i) * stride_;
  }
  std::size_t row_stride() const { return stride_; }

  // Inserts unless present. Returns (index, inserted).
  std::pair<std::uint32_t, bool> admit_packed(std::uint64_t m);
  std::pair<std::uint32_t, bool> admit_rows(const std::uint64_t* words);

 private:
  struct Slot {
    std::uint64_t hash = 0;
    std::uint32_t index = npos;
  };

  std::uint64_t hash_of(std::uint64_t m) const;
  std::uint64_t hash_rows(const std::uint64_t* words) const;
  std::pair<std::uint32_t, bool> insert(std::uint64_t hash, const std::uint64_t* words,
                                        std::uint64_t pack);
  void grow();

  int n_;
  int wpr_;
  std::size_t stride_;
  bool packed_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> packs_;
  std::vector<std::uint64_t> rows_;
  std::vector<Slot> table_;
  std::size_t table_mask_ = 0;
};

struct CloseOptions {
  Family family = Family::Quo;
  bool with_involution = false;
  Budget budget;
  // Stop as soon as all of these are present (sound for generation checks:
  // in an atomistic lattice, atom coverage decides whole-lattice generation).
  std::vector<Relation> early_exit_targets;
  // 0 keeps the deterministic FIFO schedule; otherwise elements are processed
  // in a seeded random order. The completed element set does not depend on
  // the schedule; witnesses may.
  std::uint64_t schedule_seed = 0;
  // Process low-popcount elements first (helps early-exit atom searches).
  bool smallest_first = false;
};

// The sublattice (optionally involution-closed) generated by `generators`:
// the least superset closed under binary meet, binary join in the family,
// and transpose when requested. Bottom and top are never injected; they must
// arise from the operations.
struct ClosureResult {
  Family family = Family::Quo;
  bool with_involution = false;
  ClosureStatus status = ClosureStatus::Complete;
  ElementPool elements;
  std::vector<Witness> witnesses;             // parallel to elements
  std::vector<std::uint32_t> generator_ids;   // per input generator
  std::size_t targets_found = 0;              // of early_exit_targets
  std::size_t targets_total = 0;
  ClosureStats stats;

  bool all_targets_found() const { return targets_found == targets_total; }
};

ClosureResult close(std::span<const Relation> generators, const CloseOptions& options);

// Re-derives every non-generator element from its witness using the
// relation-core operations and compares bit-exactly.
bool replay_witnesses(const ClosureResult& result);

// Whole-lattice generation via the atom criterion. EQU/QUO/TRAN are
// atomistic and, for n >= 3, bottom is a meet of two atoms, so the closure
// equals the whole lattice iff it contains every atom. For n < 3 the
// criterion is unsound (bottom of the two-element chain Equ(2) is not a meet
// of atoms) and the verdict falls back to full-enumeration comparison.
struct GenerationVerdict {
  enum class Kind : std::uint8_t { Yes, No, Unknown } kind;
  ClosureResult closure;  // YES: early-exit run; NO: the complete closure

  bool yes() const { return kind == Kind::Yes; }
};

const char* verdict_name(GenerationVerdict::Kind k);

GenerationVerdict generates_whole(std::span<const Relation> generators, Family family,
                                  bool with_involution, const Budget& budget = {});

// generators together with their transposes, duplicates removed. Turns an
// involution-lattice generating set into a plain one of at most twice the
// size.
std::vector<Relation> expand_involution_genset(std::span<const Relation> generators);

}  // namespace latforge
