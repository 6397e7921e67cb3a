#include "latforge/relation.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace latforge {

namespace {

int words_per_row_for(int n) { return n <= 64 ? 1 : 2; }

std::uint64_t row_mask_low(int bits) {
  return bits >= 64 ? ~0ull : ((1ull << bits) - 1);
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Equ: return "equ";
    case Family::Quo: return "quo";
    case Family::Tran: return "tran";
    case Family::Rel: return "rel";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "equ" || s == "EQU") return Family::Equ;
  if (s == "quo" || s == "QUO") return Family::Quo;
  if (s == "tran" || s == "TRAN" || s == "trn") return Family::Tran;
  if (s == "rel" || s == "REL") return Family::Rel;
  throw std::invalid_argument("unknown family '" + s + "'");
}

Relation::Relation(int n) : n_(n), wpr_(words_per_row_for(n)) {
  if (n < 1 || n > kMaxGround)
    throw std::invalid_argument("relation: ground size must be in [1, " +
                                std::to_string(kMaxGround) + "]");
  words_.resize(std::size_t(n_) * wpr_, 0);
}

Relation Relation::diagonal(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

Relation Relation::full(int n) {
  Relation r(n);
  const std::uint64_t lo = row_mask_low(std::min(n, 64));
  const std::uint64_t hi = n > 64 ? row_mask_low(n - 64) : 0;
  for (int i = 0; i < n; ++i) {
    r.words_[std::size_t(i) * r.wpr_] = lo;
    if (r.wpr_ == 2) r.words_[std::size_t(i) * r.wpr_ + 1] = hi;
  }
  return r;
}

Relation Relation::from_pairs(int n, std::span<const std::pair<int, int>> pairs) {
  Relation r(n);
  for (const auto& [i, j] : pairs) r.set(i, j);
  return r;
}

Relation Relation::atom(Family f, int n, int a, int b) {
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw std::invalid_argument("atom: index out of range");
  switch (f) {
    case Family::Equ: {
      if (a == b) throw std::invalid_argument("atom: equ(a,a) is not an atom");
      Relation r = diagonal(n);
      r.set(a, b);
      r.set(b, a);
      return r;
    }
    case Family::Quo: {
      if (a == b) throw std::invalid_argument("atom: quo(a,a) is not an atom");
      Relation r = diagonal(n);
      r.set(a, b);
      return r;
    }
    case Family::Tran: {
      Relation r(n);
      r.set(a, b);
      return r;
    }
    case Family::Rel:
      throw std::invalid_argument("atom: REL has no atom constructor");
  }
  throw std::invalid_argument("atom: bad family");
}

void Relation::check_index(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw std::out_of_range("relation: pair index out of range");
}

void Relation::check_same_ground(const Relation& other) const {
  if (n_ != other.n_)
    throw std::invalid_argument("relation: ground-set mismatch (" +
                                std::to_string(n_) + " vs " +
                                std::to_string(other.n_) + ")");
}

bool Relation::test(int i, int j) const {
  check_index(i, j);
  return (words_[std::size_t(i) * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
}

void Relation::set(int i, int j) {
  check_index(i, j);
  words_[std::size_t(i) * wpr_ + (j >> 6)] |= 1ull << (j & 63);
}

void Relation::clear(int i, int j) {
  check_index(i, j);
  words_[std::size_t(i) * wpr_ + (j >> 6)] &= ~(1ull << (j & 63));
}

int Relation::popcount() const {
  int c = 0;
  for (const std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(popcount()));
  for (int i = 0; i < n_; ++i) {
    for (int w = 0; w < wpr_; ++w) {
      std::uint64_t word = words_[std::size_t(i) * wpr_ + w];
      while (word) {
        const int j = 64 * w + std::countr_zero(word);
        out.emplace_back(i, j);
        word &= word - 1;
      }
    }
  }
  return out;
}

Relation Relation::transpose() const {
  Relation out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int w = 0; w < wpr_; ++w) {
      std::uint64_t word = words_[std::size_t(i) * wpr_ + w];
      while (word) {
        const int j = 64 * w + std::countr_zero(word);
        out.words_[std::size_t(j) * wpr_ + (i >> 6)] |= 1ull << (i & 63);
        word &= word - 1;
      }
    }
  }
  return out;
}

Relation Relation::meet(const Relation& other) const {
  check_same_ground(other);
  Relation out(n_);
  kernels::active().bit_and(out.words_.data(), words_.data(),
                            other.words_.data(), words_.size());
  return out;
}

Relation Relation::union_with(const Relation& other) const {
  check_same_ground(other);
  Relation out(n_);
  kernels::active().bit_or(out.words_.data(), words_.data(),
                           other.words_.data(), words_.size());
  return out;
}

Relation Relation::transitive_closure() const {
  Relation out = *this;
  if (wpr_ == 1)
    kernels::active().closure1(out.words_.data(), n_);
  else
    kernels::active().closure2(out.words_.data(), n_);
  return out;
}

Relation Relation::strip_diagonal() const {
  Relation out = *this;
  for (int i = 0; i < n_; ++i)
    out.words_[std::size_t(i) * wpr_ + (i >> 6)] &= ~(1ull << (i & 63));
  return out;
}

Relation Relation::with_diagonal() const {
  Relation out = *this;
  for (int i = 0; i < n_; ++i)
    out.words_[std::size_t(i) * wpr_ + (i >> 6)] |= 1ull << (i & 63);
  return out;
}

Relation Relation::join(Family f, std::span<const Relation> rs) {
  if (rs.empty()) throw std::invalid_argument("join: needs at least one relation");
  if (f != Family::Rel) {
    for (const Relation& r : rs)
      if (!is_member(f, r))
        throw std::invalid_argument(std::string("join: input is not a member of ") +
                                    family_name(f));
  }
  Relation acc = rs[0];
  for (std::size_t i = 1; i < rs.size(); ++i) {
    rs[0].check_same_ground(rs[i]);
    kernels::active().bit_or(acc.words_.data(), acc.words_.data(),
                             rs[i].words_.data(), acc.words_.size());
  }
  return acc.transitive_closure();
}

Relation Relation::join(Family f, std::initializer_list<Relation> rs) {
  return join(f, std::span<const Relation>(rs.begin(), rs.size()));
}

bool Relation::is_reflexive() const {
  for (int i = 0; i < n_; ++i)
    if (!((words_[std::size_t(i) * wpr_ + (i >> 6)] >> (i & 63)) & 1u)) return false;
  return true;
}

bool Relation::is_symmetric() const { return *this == transpose(); }

bool Relation::is_transitive() const { return *this == transitive_closure(); }

bool Relation::is_antisymmetric() const {
  const Relation both = meet(transpose());
  return both.subset_of(diagonal(n_));
}

bool Relation::is_member(Family f, const Relation& r) {
  switch (f) {
    case Family::Equ:
      return r.is_reflexive() && r.is_symmetric() && r.is_transitive();
    case Family::Quo:
      return r.is_reflexive() && r.is_transitive();
    case Family::Tran:
      return r.is_transitive();
    case Family::Rel:
      return true;
  }
  return false;
}

std::vector<int> Relation::block_of(int x) const {
  if (x < 0 || x >= n_) throw std::out_of_range("block_of: index out of range");
  if (!is_reflexive())
    throw std::invalid_argument("block_of: relation must be reflexive");
  const Relation sym = union_with(transpose()).transitive_closure();
  std::vector<int> out;
  for (int j = 0; j < n_; ++j)
    if (sym.test(x, j)) out.push_back(j);
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  check_same_ground(other);
  return kernels::active().subset(words_.data(), other.words_.data(), words_.size());
}

bool Relation::proper_subset_of(const Relation& other) const {
  return subset_of(other) && !(*this == other);
}

bool Relation::operator==(const Relation& other) const {
  if (n_ != other.n_) return false;
  return kernels::active().equal(words_.data(), other.words_.data(), words_.size());
}

std::uint64_t Relation::hash() const {
  return kernels::hash_words(words_.data(), words_.size()) ^
         (static_cast<std::uint64_t>(n_) << 1);
}

int Relation::compare_lex(const Relation& other) const {
  check_same_ground(other);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const bool a = (words_[std::size_t(i) * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
      const bool b =
          (other.words_[std::size_t(i) * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
      if (a != b) return a ? 1 : -1;
    }
  }
  return 0;
}

std::uint64_t Relation::pack8() const {
  if (n_ > 8) throw std::invalid_argument("pack8: ground size exceeds 8");
  std::uint64_t m = 0;
  for (int i = 0; i < n_; ++i) m |= (words_[std::size_t(i)] & 0xffu) << (8 * i);
  return m;
}

Relation Relation::unpack8(int n, std::uint64_t m) {
  if (n < 1 || n > 8) throw std::invalid_argument("unpack8: ground size must be in [1,8]");
  Relation r(n);
  for (int i = 0; i < n; ++i)
    r.words_[std::size_t(i)] = (m >> (8 * i)) & row_mask_low(n);
  return r;
}

std::string Relation::to_string(const GroundSet* ground) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [i, j] : pairs()) {
    if (!first) os << ',';
    first = false;
    if (ground)
      os << '(' << ground->label(i) << ',' << ground->label(j) << ')';
    else
      os << '(' << i << ',' << j << ')';
  }
  os << '}';
  return os.str();
}

Relation family_bottom(Family f, int n) {
  switch (f) {
    case Family::Equ:
    case Family::Quo:
      return Relation::diagonal(n);
    case Family::Tran:
    case Family::Rel:
      return Relation(n);
  }
  return Relation(n);
}

Relation family_top(Family, int n) { return Relation::full(n); }

std::vector<Relation> family_atoms(Family f, int n) {
  std::vector<Relation> out;
  out.reserve(family_atom_count(f, n));
  switch (f) {
    case Family::Equ:
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) out.push_back(Relation::atom(f, n, a, b));
      break;
    case Family::Quo:
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (a != b) out.push_back(Relation::atom(f, n, a, b));
      break;
    case Family::Tran:
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.push_back(Relation::atom(f, n, a, b));
      break;
    case Family::Rel:
      throw std::invalid_argument("family_atoms: REL is not atomistic here");
  }
  return out;
}

std::size_t family_atom_count(Family f, int n) {
  const std::size_t un = static_cast<std::size_t>(n);
  switch (f) {
    case Family::Equ: return un * (un - 1) / 2;
    case Family::Quo: return un * (un - 1);
    case Family::Tran: return un * un;
    case Family::Rel: throw std::invalid_argument("family_atom_count: REL");
  }
  return 0;
}

}  // namespace latforge
