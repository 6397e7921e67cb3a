#include "latforge/closure.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <queue>
#include <random>
#include <stdexcept>

#include "latforge/bitops.hpp"
#include "latforge/enumerate.hpp"

namespace latforge {

const char* closure_status_name(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::Complete: return "COMPLETE";
    case ClosureStatus::BudgetExhausted: return "BUDGET_EXHAUSTED";
    case ClosureStatus::EarlyExitAtoms: return "EARLY_EXIT_ATOMS_FOUND";
  }
  return "?";
}

const char* witness_op_name(WitnessOp op) {
  switch (op) {
    case WitnessOp::Generator: return "gen";
    case WitnessOp::Meet: return "meet";
    case WitnessOp::Join: return "join";
    case WitnessOp::Inv: return "inv";
  }
  return "?";
}

const char* verdict_name(GenerationVerdict::Kind k) {
  switch (k) {
    case GenerationVerdict::Kind::Yes: return "YES";
    case GenerationVerdict::Kind::No: return "NO";
    case GenerationVerdict::Kind::Unknown: return "UNKNOWN";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ElementPool

ElementPool::ElementPool(int n)
    : n_(n),
      wpr_(n <= 64 ? 1 : 2),
      stride_(std::size_t(n) * wpr_),
      packed_(n <= 8) {
  table_.resize(1024);
  table_mask_ = table_.size() - 1;
}

std::uint64_t ElementPool::hash_of(std::uint64_t m) const {
  return kernels::hash_words(&m, 1);
}

std::uint64_t ElementPool::hash_rows(const std::uint64_t* words) const {
  return kernels::hash_words(words, stride_);
}

void ElementPool::grow() {
  std::vector<Slot> bigger(table_.size() * 2);
  const std::size_t mask = bigger.size() - 1;
  for (const Slot& s : table_) {
    if (s.index == npos) continue;
    std::size_t at = s.hash & mask;
    while (bigger[at].index != npos) at = (at + 1) & mask;
    bigger[at] = s;
  }
  table_ = std::move(bigger);
  table_mask_ = mask;
}

std::pair<std::uint32_t, bool> ElementPool::insert(std::uint64_t hash,
                                                   const std::uint64_t* words,
                                                   std::uint64_t pack) {
  if (count_ * 10 >= table_.size() * 7) grow();
  std::size_t at = hash & table_mask_;
  while (true) {
    Slot& slot = table_[at];
    if (slot.index == npos) {
      const auto index = static_cast<std::uint32_t>(count_);
      if (packed_) {
        packs_.push_back(pack);
      } else {
        rows_.insert(rows_.end(), words, words + stride_);
      }
      slot.hash = hash;
      slot.index = index;
      ++count_;
      return {index, true};
    }
    if (slot.hash == hash) {
      if (packed_) {
        if (packs_[slot.index] == pack) return {slot.index, false};
      } else if (kernels::active().equal(rows_at(slot.index), words, stride_)) {
        return {slot.index, false};
      }
    }
    at = (at + 1) & table_mask_;
  }
}

std::pair<std::uint32_t, bool> ElementPool::admit_packed(std::uint64_t m) {
  return insert(hash_of(m), nullptr, m);
}

std::pair<std::uint32_t, bool> ElementPool::admit_rows(const std::uint64_t* words) {
  return insert(hash_rows(words), words, 0);
}

Relation ElementPool::get(std::uint32_t i) const {
  if (i >= count_) throw std::out_of_range("ElementPool::get");
  if (packed_) return Relation::unpack8(n_, packs_[i]);
  Relation r(n_);
  const std::uint64_t* src = rows_at(i);
  for (int row = 0; row < n_; ++row)
    for (int w = 0; w < wpr_; ++w) {
      std::uint64_t word = src[std::size_t(row) * wpr_ + w];
      while (word) {
        const int j = 64 * w + std::countr_zero(word);
        r.set(row, j);
        word &= word - 1;
      }
    }
  return r;
}

std::uint32_t ElementPool::find(const Relation& r) const {
  if (r.size() != n_) return npos;
  std::uint64_t pack = 0;
  std::uint64_t hash;
  if (packed_) {
    pack = r.pack8();
    hash = hash_of(pack);
  } else {
    hash = hash_rows(r.words());
  }
  std::size_t at = hash & table_mask_;
  while (true) {
    const Slot& slot = table_[at];
    if (slot.index == npos) return npos;
    if (slot.hash == hash) {
      if (packed_) {
        if (packs_[slot.index] == pack) return slot.index;
      } else if (kernels::active().equal(rows_at(slot.index), r.words(), stride_)) {
        return slot.index;
      }
    }
    at = (at + 1) & table_mask_;
  }
}

// ---------------------------------------------------------------------------
// Engine
//
// Worklist discipline: every admitted element is eventually processed, and
// processing element i combines it with all elements of smaller admission
// index. Each unordered pair is therefore combined exactly once (when its
// later element is processed), regardless of the processing order, so the
// completed element set is schedule-independent. Which element a witness
// credits is not.

namespace {

class Scheduler {
 public:
  Scheduler(bool smallest_first, std::uint64_t seed)
      : smallest_first_(smallest_first), random_(seed != 0), rng_(seed) {}

  void push(std::uint32_t id, std::uint32_t pop) {
    if (smallest_first_)
      by_size_.emplace(pop, id);
    else
      fifo_.push_back(id);
  }

  bool empty() const { return smallest_first_ ? by_size_.empty() : head_ >= fifo_.size(); }

  std::uint32_t pop() {
    if (smallest_first_) {
      const std::uint32_t id = by_size_.top().second;
      by_size_.pop();
      return id;
    }
    if (random_) {
      const std::size_t left = fifo_.size() - head_;
      const std::size_t pick =
          head_ + std::uniform_int_distribution<std::size_t>(0, left - 1)(rng_);
      std::swap(fifo_[head_], fifo_[pick]);
    }
    return fifo_[head_++];
  }

 private:
  bool smallest_first_;
  bool random_;
  std::mt19937_64 rng_;
  std::vector<std::uint32_t> fifo_;
  std::size_t head_ = 0;
  std::priority_queue<std::pair<std::uint32_t, std::uint32_t>,
                      std::vector<std::pair<std::uint32_t, std::uint32_t>>,
                      std::greater<>>
      by_size_;
};

// Shared engine skeleton; Rep supplies the element representation.
template <class Rep>
ClosureResult run_close(std::span<const Relation> generators, const CloseOptions& opt,
                        int n) {
  const auto t0 = std::chrono::steady_clock::now();

  ClosureResult result{.family = opt.family,
                       .with_involution = opt.with_involution,
                       .status = ClosureStatus::Complete,
                       .elements = ElementPool(n)};
  result.targets_total = opt.early_exit_targets.size();

  Rep rep(result.elements, n);
  rep.set_targets(opt.early_exit_targets);

  Scheduler schedule(opt.smallest_first, opt.schedule_seed);
  std::vector<std::uint32_t> depth;
  std::vector<bool> target_seen(opt.early_exit_targets.size(), false);
  std::uint64_t word_ops = 0;
  bool stop = false;
  bool atoms_done = false;

  // Admits rep.tmp(); returns its index.
  auto admit = [&](WitnessOp op, std::uint32_t lhs, std::uint32_t rhs) {
    const auto [id, fresh] = rep.admit_tmp();
    word_ops += rep.stride();
    if (!fresh) return id;
    result.witnesses.push_back(Witness{op, lhs, rhs});
    const std::uint32_t d =
        op == WitnessOp::Generator
            ? 0
            : 1 + (op == WitnessOp::Inv ? depth[lhs] : std::max(depth[lhs], depth[rhs]));
    depth.push_back(d);
    result.stats.max_depth = std::max<std::uint64_t>(result.stats.max_depth, d);
    schedule.push(id, rep.pop_of(id));
    if (result.targets_total && !atoms_done) {
      const std::uint32_t slot = rep.match_target(id);
      if (slot != ElementPool::npos && !target_seen[slot]) {
        target_seen[slot] = true;
        if (++result.targets_found == result.targets_total) {
          atoms_done = true;
          stop = true;
        }
      }
    }
    if (result.elements.size() >= opt.budget.max_elements && !atoms_done) {
      result.status = ClosureStatus::BudgetExhausted;
      stop = true;
    }
    return id;
  };

  auto admit_with_inv = [&](WitnessOp op, std::uint32_t lhs, std::uint32_t rhs) {
    const std::uint32_t id = admit(op, lhs, rhs);
    if (opt.with_involution) {
      rep.transpose_to_tmp(id);
      admit(WitnessOp::Inv, id, id);
    }
  };

  for (const Relation& g : generators) {
    rep.load_tmp(g);
    admit_with_inv(WitnessOp::Generator, 0, 0);
    result.generator_ids.push_back(result.elements.find(g));
    if (result.status == ClosureStatus::BudgetExhausted) break;
  }

  const bool combine_self = opt.family == Family::Rel;
  std::uint32_t tick = 0;
  while (!stop && !schedule.empty()) {
    const std::uint32_t i = schedule.pop();
    for (std::uint32_t j = 0; j <= i && !stop; ++j) {
      if (j == i && !combine_self) continue;
      ++result.stats.combinations;
      rep.meet_to_tmp(i, j);
      admit_with_inv(WitnessOp::Meet, i, j);
      if (stop) break;
      rep.join_to_tmp(i, j);
      word_ops += rep.stride() * static_cast<std::uint64_t>(n);
      admit_with_inv(WitnessOp::Join, i, j);
      if ((++tick & 0xff) == 0 && word_ops >= opt.budget.max_word_ops) {
        result.status = ClosureStatus::BudgetExhausted;
        stop = true;
      }
    }
  }

  if (atoms_done) result.status = ClosureStatus::EarlyExitAtoms;
  result.stats.elements = result.elements.size();
  result.stats.word_ops = word_ops;
  result.stats.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

// Whole relations in single 64-bit words (n <= 8).
class PackRep {
 public:
  PackRep(ElementPool& pool, int n) : pool_(pool), n_(n) {}

  std::size_t stride() const { return 1; }

  void set_targets(const std::vector<Relation>& targets) {
    for (std::size_t t = 0; t < targets.size(); ++t)
      targets_.emplace_back(targets[t].pack8(), static_cast<std::uint32_t>(t));
    std::sort(targets_.begin(), targets_.end());
  }

  void load_tmp(const Relation& r) { tmp_ = r.pack8(); }
  void meet_to_tmp(std::uint32_t i, std::uint32_t j) {
    tmp_ = pool_.packed_at(i) & pool_.packed_at(j);
  }
  void join_to_tmp(std::uint32_t i, std::uint32_t j) {
    tmp_ = kernels::closure8(pool_.packed_at(i) | pool_.packed_at(j), n_);
  }
  void transpose_to_tmp(std::uint32_t i) {
    tmp_ = kernels::transpose8(pool_.packed_at(i));
  }

  std::pair<std::uint32_t, bool> admit_tmp() { return pool_.admit_packed(tmp_); }

  std::uint32_t pop_of(std::uint32_t id) const {
    return static_cast<std::uint32_t>(std::popcount(pool_.packed_at(id)));
  }

  std::uint32_t match_target(std::uint32_t id) const {
    const std::uint64_t m = pool_.packed_at(id);
    const auto it = std::lower_bound(targets_.begin(), targets_.end(),
                                     std::make_pair(m, std::uint32_t{0}));
    if (it != targets_.end() && it->first == m) return it->second;
    return ElementPool::npos;
  }

 private:
  ElementPool& pool_;
  int n_;
  std::uint64_t tmp_ = 0;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> targets_;
};

// Fixed-stride row blocks through the dispatched kernels (n > 8).
class RowRep {
 public:
  RowRep(ElementPool& pool, int n)
      : pool_(pool), n_(n), wpr_(n <= 64 ? 1 : 2),
        stride_(std::size_t(n) * wpr_), tmp_(stride_) {}

  std::size_t stride() const { return stride_; }

  void set_targets(const std::vector<Relation>& targets) {
    for (const Relation& t : targets) {
      target_words_.insert(target_words_.end(), t.words(), t.words() + stride_);
      target_hashes_.push_back(kernels::hash_words(t.words(), stride_));
    }
  }

  void load_tmp(const Relation& r) {
    std::copy(r.words(), r.words() + stride_, tmp_.begin());
  }

  void meet_to_tmp(std::uint32_t i, std::uint32_t j) {
    kernels::active().bit_and(tmp_.data(), pool_.rows_at(i), pool_.rows_at(j), stride_);
  }

  void join_to_tmp(std::uint32_t i, std::uint32_t j) {
    const auto& k = kernels::active();
    k.bit_or(tmp_.data(), pool_.rows_at(i), pool_.rows_at(j), stride_);
    if (wpr_ == 1)
      k.closure1(tmp_.data(), n_);
    else
      k.closure2(tmp_.data(), n_);
  }

  void transpose_to_tmp(std::uint32_t id) {
    const std::uint64_t* src = pool_.rows_at(id);
    std::fill(tmp_.begin(), tmp_.end(), 0);
    for (int i = 0; i < n_; ++i)
      for (int w = 0; w < wpr_; ++w) {
        std::uint64_t word = src[std::size_t(i) * wpr_ + w];
        while (word) {
          const int j = 64 * w + std::countr_zero(word);
          tmp_[std::size_t(j) * wpr_ + (i >> 6)] |= 1ull << (i & 63);
          word &= word - 1;
        }
      }
  }

  std::pair<std::uint32_t, bool> admit_tmp() { return pool_.admit_rows(tmp_.data()); }

  std::uint32_t pop_of(std::uint32_t id) const {
    const std::uint64_t* w = pool_.rows_at(id);
    std::uint32_t pop = 0;
    for (std::size_t k = 0; k < stride_; ++k)
      pop += static_cast<std::uint32_t>(std::popcount(w[k]));
    return pop;
  }

  std::uint32_t match_target(std::uint32_t id) const {
    const std::uint64_t* words = pool_.rows_at(id);
    const std::uint64_t h = kernels::hash_words(words, stride_);
    for (std::size_t t = 0; t < target_hashes_.size(); ++t) {
      if (target_hashes_[t] == h &&
          kernels::active().equal(target_words_.data() + t * stride_, words, stride_))
        return static_cast<std::uint32_t>(t);
    }
    return ElementPool::npos;
  }

 private:
  ElementPool& pool_;
  int n_;
  int wpr_;
  std::size_t stride_;
  std::vector<std::uint64_t> tmp_;
  std::vector<std::uint64_t> target_words_;
  std::vector<std::uint64_t> target_hashes_;
};

}  // namespace

ClosureResult close(std::span<const Relation> generators, const CloseOptions& opt) {
  if (generators.empty()) throw std::invalid_argument("close: no generators");
  const int n = generators[0].size();
  for (const Relation& g : generators) {
    if (g.size() != n)
      throw std::invalid_argument("close: generators on mixed ground sets");
    if (!Relation::is_member(opt.family, g))
      throw std::invalid_argument(std::string("close: generator is not a member of ") +
                                  family_name(opt.family));
  }
  for (const Relation& t : opt.early_exit_targets)
    if (t.size() != n)
      throw std::invalid_argument("close: early-exit target on a different ground set");
  if (opt.budget.max_elements == 0)
    throw std::invalid_argument("close: element budget must be positive");

  if (n <= 8) return run_close<PackRep>(generators, opt, n);
  return run_close<RowRep>(generators, opt, n);
}

bool replay_witnesses(const ClosureResult& result) {
  const std::size_t count = result.elements.size();
  if (result.witnesses.size() != count) return false;
  for (std::uint32_t i = 0; i < count; ++i) {
    const Witness& w = result.witnesses[i];
    if (w.op == WitnessOp::Generator) continue;
    // Parents are always admitted before their derived element.
    if (w.lhs >= i || w.rhs >= i) return false;
    const Relation value = result.elements.get(i);
    switch (w.op) {
      case WitnessOp::Meet:
        if (result.elements.get(w.lhs).meet(result.elements.get(w.rhs)) != value)
          return false;
        break;
      case WitnessOp::Join: {
        const Relation joined = Relation::join(
            result.family, {result.elements.get(w.lhs), result.elements.get(w.rhs)});
        if (joined != value) return false;
        break;
      }
      case WitnessOp::Inv:
        if (result.elements.get(w.lhs).transpose() != value) return false;
        break;
      case WitnessOp::Generator:
        break;
    }
  }
  return true;
}

GenerationVerdict generates_whole(std::span<const Relation> generators, Family family,
                                  bool with_involution, const Budget& budget) {
  if (family == Family::Rel)
    throw std::invalid_argument(
        "generates_whole: REL is not atomistic under these operations; "
        "use close() directly");
  if (generators.empty()) throw std::invalid_argument("generates_whole: no generators");
  const int n = generators[0].size();

  if (n < 3) {
    // Atom criterion is unsound here (Equ(2) is a two-element chain whose
    // bottom is not a meet of atoms); compare against full enumeration.
    CloseOptions opt{.family = family, .with_involution = with_involution,
                     .budget = budget};
    ClosureResult result = close(generators, opt);
    if (result.status == ClosureStatus::BudgetExhausted)
      return {GenerationVerdict::Kind::Unknown, std::move(result)};
    const auto all = enumerate_family_packed(family, n);
    bool whole = all.size() == result.elements.size();
    if (whole)
      for (const std::uint64_t m : all)
        if (!result.elements.contains(Relation::unpack8(n, m))) {
          whole = false;
          break;
        }
    return {whole ? GenerationVerdict::Kind::Yes : GenerationVerdict::Kind::No,
            std::move(result)};
  }

  CloseOptions opt{.family = family,
                   .with_involution = with_involution,
                   .budget = budget,
                   .early_exit_targets = family_atoms(family, n),
                   .smallest_first = true};
  ClosureResult result = close(generators, opt);
  switch (result.status) {
    case ClosureStatus::EarlyExitAtoms:
      return {GenerationVerdict::Kind::Yes, std::move(result)};
    case ClosureStatus::Complete:
      return {result.all_targets_found() ? GenerationVerdict::Kind::Yes
                                         : GenerationVerdict::Kind::No,
              std::move(result)};
    case ClosureStatus::BudgetExhausted:
      return {GenerationVerdict::Kind::Unknown, std::move(result)};
  }
  return {GenerationVerdict::Kind::Unknown, std::move(result)};
}

std::vector<Relation> expand_involution_genset(std::span<const Relation> generators) {
  std::vector<Relation> out;
  auto push_unique = [&](const Relation& r) {
    for (const Relation& have : out)
      if (have == r) return;
    out.push_back(r);
  };
  for (const Relation& g : generators) push_unique(g);
  for (const Relation& g : generators) push_unique(g.transpose());
  return out;
}

}  // namespace latforge
