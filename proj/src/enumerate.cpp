#include "latforge/enumerate.hpp"

#include <array>
#include <stdexcept>

#include "latforge/bitops.hpp"

namespace latforge {

namespace {

constexpr std::int8_t kUndecided = -1;

// Backtracking enumerator: decides the free pairs of the matrix in row-major
// order (0 before 1) and propagates the transitivity implications
//   (i,j)=1 & (j,k)=1  =>  (i,k)=1
//   (i,j)=1 & (i,k)=0  =>  (j,k)=0      (and the mirrored variants)
// to a fixpoint after every decision, undoing through a trail. Because every
// cell is either free, a diagonal constant, or the mirror of an earlier cell,
// the leaves come out in lexicographic order of the full bit string.
class Enumerator {
 public:
  Enumerator(Family f, int n, const std::function<void(std::uint64_t)>& emit)
      : family_(f), n_(n), emit_(emit) {
    cells_.fill(kUndecided);
    const bool reflexive = f == Family::Equ || f == Family::Quo;
    if (reflexive)
      for (int i = 0; i < n_; ++i) {
        cells_[idx(i, i)] = 1;
        pack_ |= 1ull << (8 * i + i);
      }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (reflexive && i == j) continue;
        if (f == Family::Equ && i > j) continue;  // mirror of (j,i)
        free_.push_back(static_cast<std::uint8_t>(idx(i, j)));
      }
  }

  void run() { descend(0); }

 private:
  int idx(int i, int j) const { return 8 * i + j; }

  bool assign(int cell, std::int8_t v) {
    if (cells_[cell] != kUndecided) return cells_[cell] == v;
    cells_[cell] = v;
    if (v == 1) pack_ |= 1ull << cell;
    trail_.push_back(static_cast<std::uint8_t>(cell));
    queue_.push_back(static_cast<std::uint8_t>(cell));
    if (family_ == Family::Equ) {
      const int mirror = idx(cell & 7, cell >> 3);
      if (mirror != cell && !assign(mirror, v)) return false;
    }
    return true;
  }

  bool propagate() {
    const bool transitive = family_ != Family::Rel;
    while (!queue_.empty()) {
      const int cell = queue_.back();
      queue_.pop_back();
      if (!transitive) continue;
      const int i = cell >> 3, j = cell & 7;
      if (cells_[cell] == 1) {
        for (int k = 0; k < n_; ++k) {
          if (cells_[idx(j, k)] == 1 && !assign(idx(i, k), 1)) return false;
          if (cells_[idx(i, k)] == 0 && !assign(idx(j, k), 0)) return false;
          if (cells_[idx(k, i)] == 1 && !assign(idx(k, j), 1)) return false;
          if (cells_[idx(k, j)] == 0 && !assign(idx(k, i), 0)) return false;
        }
      } else {
        for (int k = 0; k < n_; ++k) {
          if (cells_[idx(i, k)] == 1 && !assign(idx(k, j), 0)) return false;
          if (cells_[idx(k, j)] == 1 && !assign(idx(i, k), 0)) return false;
        }
      }
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const int cell = trail_.back();
      trail_.pop_back();
      if (cells_[cell] == 1) pack_ &= ~(1ull << cell);
      cells_[cell] = kUndecided;
    }
    queue_.clear();
  }

  void descend(std::size_t pos) {
    while (pos < free_.size() && cells_[free_[pos]] != kUndecided) ++pos;
    if (pos == free_.size()) {
      emit_(pack_);
      return;
    }
    const int cell = free_[pos];
    for (std::int8_t v = 0; v <= 1; ++v) {
      const std::size_t mark = trail_.size();
      if (assign(cell, v) && propagate()) descend(pos + 1);
      undo_to(mark);
    }
  }

  Family family_;
  int n_;
  const std::function<void(std::uint64_t)>& emit_;
  std::array<std::int8_t, 64> cells_;
  std::uint64_t pack_ = 0;
  std::vector<std::uint8_t> free_;
  std::vector<std::uint8_t> trail_;
  std::vector<std::uint8_t> queue_;
};

}  // namespace

int enumeration_guard(Family f) {
  switch (f) {
    case Family::Equ:
    case Family::Quo: return 5;
    case Family::Tran: return 4;
    case Family::Rel: return 3;
  }
  return 0;
}

bool enumeration_feasible(Family f, int n) { return n >= 1 && n <= enumeration_guard(f); }

void enumerate_family(Family f, int n, const std::function<void(std::uint64_t)>& emit,
                      bool allow_large) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("enumerate_family: ground size must be in [1,8]");
  if (!allow_large && !enumeration_feasible(f, n))
    throw std::invalid_argument(
        std::string("enumerate_family: n exceeds the feasibility guard for ") +
        family_name(f) + " (n <= " + std::to_string(enumeration_guard(f)) +
        "); pass allow_large to override");
  Enumerator e(f, n, emit);
  e.run();
}

std::vector<std::uint64_t> enumerate_family_packed(Family f, int n, bool allow_large) {
  std::vector<std::uint64_t> out;
  enumerate_family(f, n, [&](std::uint64_t m) { out.push_back(m); }, allow_large);
  return out;
}

std::vector<Relation> enumerate_family_relations(Family f, int n, bool allow_large) {
  std::vector<Relation> out;
  enumerate_family(
      f, n, [&](std::uint64_t m) { out.push_back(Relation::unpack8(n, m)); },
      allow_large);
  return out;
}

std::uint64_t count_family(Family f, int n, bool allow_large) {
  std::uint64_t c = 0;
  enumerate_family(f, n, [&](std::uint64_t) { ++c; }, allow_large);
  return c;
}

bool packed_is_member(Family f, int n, std::uint64_t m) {
  switch (f) {
    case Family::Rel:
      return true;
    case Family::Tran:
      return kernels::closure8(m, n) == m;
    case Family::Quo:
      return (m & kernels::diagonal8(n)) == kernels::diagonal8(n) &&
             kernels::closure8(m, n) == m;
    case Family::Equ:
      return (m & kernels::diagonal8(n)) == kernels::diagonal8(n) &&
             kernels::transpose8(m) == m && kernels::closure8(m, n) == m;
  }
  return false;
}

std::vector<std::uint64_t> brute_filter_packed(Family f, int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("brute_filter_packed: guarded at n <= 4");
  std::vector<std::uint64_t> out;
  const int bits = n * n;
  // Ascending m visits relations in lexicographic order when bit b of m holds
  // the pair at row-major position bits-1-b.
  for (std::uint64_t m = 0; m < (1ull << bits); ++m) {
    std::uint64_t pack = 0;
    for (int b = 0; b < bits; ++b) {
      if ((m >> b) & 1u) {
        const int pos = bits - 1 - b;
        pack |= 1ull << (8 * (pos / n) + (pos % n));
      }
    }
    if (packed_is_member(f, n, pack)) out.push_back(pack);
  }
  return out;
}

}  // namespace latforge
