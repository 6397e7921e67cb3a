#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "latforge/bitops.hpp"
#include "latforge/ground_set.hpp"

namespace latforge {

// The four relation families the workbench computes in. EQU, QUO and TRAN
// are lattices under inclusion (join = transitive closure of the union,
// meet = intersection); REL is the ambient algebra of all binary relations
// carrying the same three operations, used for term evaluation.
enum class Family : std::uint8_t { Equ, Quo, Tran, Rel };

const char* family_name(Family f);
Family family_from_name(const std::string& s);

// A binary relation on a fixed ground set of n points, stored as n bit rows
// (row i = the set of j with (i,j) present), each row packed into one or two
// 64-bit words. Values are immutable in spirit: every operation returns a
// fresh Relation, so sharing across threads is safe.
//
// Relations carry only the ground-set *size*; two relations are comparable
// exactly when their sizes agree, and equality is bitwise equality of rows.
class Relation {
 public:
  explicit Relation(int n);  // empty relation

  static Relation diagonal(int n);
  static Relation full(int n);
  static Relation from_pairs(int n, std::span<const std::pair<int, int>> pairs);

  // The least member of the family containing (a,b): for EQU the symmetric
  // pair plus the full diagonal, for QUO the pair plus the full diagonal,
  // for TRAN the bare pair (a == b is allowed for TRAN only).
  static Relation atom(Family f, int n, int a, int b);

  int size() const { return n_; }
  int words_per_row() const { return wpr_; }
  std::size_t word_count() const { return words_.size(); }
  const std::uint64_t* words() const { return words_.data(); }
  const std::uint64_t* row(int i) const { return words_.data() + std::size_t(i) * wpr_; }

  bool test(int i, int j) const;
  void set(int i, int j);    // build-time mutation
  void clear(int i, int j);

  int popcount() const;  // number of pairs
  std::vector<std::pair<int, int>> pairs() const;

  Relation transpose() const;
  Relation meet(const Relation& other) const;
  Relation union_with(const Relation& other) const;
  Relation transitive_closure() const;
  Relation strip_diagonal() const;
  // Adds the full diagonal (reflexive closure).
  Relation with_diagonal() const;

  // Join of a nonempty list in the given family: the transitive closure of
  // the union. For family != REL every input must be a member.
  static Relation join(Family f, std::span<const Relation> rs);
  static Relation join(Family f, std::initializer_list<Relation> rs);

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;
  bool is_antisymmetric() const;  // r n r^T subseteq diagonal
  static bool is_member(Family f, const Relation& r);

  // Block of x in the smallest equivalence containing this relation, which
  // must be reflexive. For an equivalence this is its ordinary block.
  std::vector<int> block_of(int x) const;

  bool subset_of(const Relation& other) const;
  bool proper_subset_of(const Relation& other) const;
  bool operator==(const Relation& other) const;
  bool operator!=(const Relation& other) const { return !(*this == other); }

  std::uint64_t hash() const;

  // Row-major lexicographic order on the bit string (0,0),(0,1),...: absent
  // before present, earlier pair more significant. Returns <0, 0, >0.
  int compare_lex(const Relation& other) const;

  // Whole-relation single-word packing for n <= 8 (bit 8*i+j = pair (i,j)).
  std::uint64_t pack8() const;
  static Relation unpack8(int n, std::uint64_t m);

  // Rendering like {(0,1),(2,2)} with optional labels.
  std::string to_string(const GroundSet* ground = nullptr) const;

 private:
  using Words = boost::container::small_vector<std::uint64_t, 16>;

  void check_index(int i, int j) const;
  void check_same_ground(const Relation& other) const;

  int n_;
  int wpr_;
  Words words_;
};

// Family structure: bottom, top and the atom list.
Relation family_bottom(Family f, int n);
Relation family_top(Family f, int n);
std::vector<Relation> family_atoms(Family f, int n);
std::size_t family_atom_count(Family f, int n);

}  // namespace latforge

template <>
struct std::hash<latforge::Relation> {
  std::size_t operator()(const latforge::Relation& r) const noexcept {
    return static_cast<std::size_t>(r.hash());
  }
};
