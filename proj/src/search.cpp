#include "latforge/search.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "latforge/bitops.hpp"
#include "latforge/enumerate.hpp"
#include "latforge/parallel.hpp"

namespace latforge {

const char* pattern_name(Pattern p) {
  switch (p) {
    case Pattern::Any: return "any";
    case Pattern::OneOneTwo: return "one-one-two";
    case Pattern::AllAntisymmetric: return "all-antisymmetric";
  }
  return "?";
}

Pattern pattern_from_name(const std::string& s) {
  if (s == "any") return Pattern::Any;
  if (s == "one-one-two" || s == "1+1+2") return Pattern::OneOneTwo;
  if (s == "all-antisymmetric" || s == "orderings") return Pattern::AllAntisymmetric;
  throw std::invalid_argument("unknown pattern '" + s + "'");
}

const char* search_mode_name(SearchMode m) {
  switch (m) {
    case SearchMode::FindOne: return "find-one";
    case SearchMode::ProveNone: return "prove-none";
    case SearchMode::FindAll: return "find-all";
  }
  return "?";
}

SearchMode search_mode_from_name(const std::string& s) {
  if (s == "find-one") return SearchMode::FindOne;
  if (s == "prove-none") return SearchMode::ProveNone;
  if (s == "find-all") return SearchMode::FindAll;
  throw std::invalid_argument("unknown search mode '" + s + "'");
}

std::string spec_to_string(const SearchSpec& spec) {
  std::ostringstream os;
  os << family_name(spec.family) << " n=" << spec.n << " k=" << spec.k
     << " pattern=" << pattern_name(spec.pattern)
     << " involution=" << (spec.with_involution ? 1 : 0)
     << " mode=" << search_mode_name(spec.mode)
     << " symmetry=" << (spec.symmetry_reduction ? 1 : 0);
  return os.str();
}

std::uint64_t spec_hash(const SearchSpec& spec) {
  const std::string s = spec_to_string(spec);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// Patterns

namespace {

bool incomparable(const Relation& a, const Relation& b) {
  return !a.subset_of(b) && !b.subset_of(a);
}

}  // namespace

bool is_one_one_two(std::span<const Relation> four) {
  if (four.size() != 4) throw std::invalid_argument("is_one_one_two: needs 4 relations");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (four[i] == four[j])
        throw std::invalid_argument("is_one_one_two: relations must be distinct");
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t q = 0; q < 4; ++q) {
      if (p == q || !four[p].proper_subset_of(four[q])) continue;
      std::size_t rest[2];
      std::size_t at = 0;
      for (std::size_t t = 0; t < 4; ++t)
        if (t != p && t != q) rest[at++] = t;
      if (incomparable(four[rest[0]], four[rest[1]]) &&
          incomparable(four[p], four[rest[0]]) &&
          incomparable(four[p], four[rest[1]]) &&
          incomparable(four[q], four[rest[0]]) &&
          incomparable(four[q], four[rest[1]]))
        return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Symmetry

Relation apply_permutation(const Relation& r, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != r.size())
    throw std::invalid_argument("apply_permutation: size mismatch");
  Relation out(r.size());
  for (const auto& [i, j] : r.pairs()) out.set(perm[i], perm[j]);
  return out;
}

namespace {

void for_each_permutation(int n, const std::function<void(std::span<const int>)>& fn) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

Relation canonical_form(const Relation& r) {
  Relation best = r;
  const Relation rt = r.transpose();
  for_each_permutation(r.size(), [&](std::span<const int> perm) {
    for (const Relation* base : {&r, &rt}) {
      Relation image = apply_permutation(*base, perm);
      if (image.compare_lex(best) < 0) best = std::move(image);
    }
  });
  return best;
}

bool is_canonical(const Relation& r) { return canonical_form(r) == r; }

// ---------------------------------------------------------------------------
// Candidate scan

namespace {

// Advances indices to the next k-combination of [0, total) in lexicographic
// order; returns false when exhausted.
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t total) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] ==
                       total - static_cast<std::uint32_t>(k - i)) {
    --i;
  }
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j)
    c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

struct CandidateContext {
  const SearchSpec& spec;
  const std::vector<Relation>& members;
  const std::vector<bool>& canonical;
};

bool pattern_admits(const CandidateContext& ctx, const std::vector<std::uint32_t>& c,
                    std::vector<Relation>& scratch) {
  scratch.clear();
  for (const std::uint32_t i : c) scratch.push_back(ctx.members[i]);
  switch (ctx.spec.pattern) {
    case Pattern::Any:
      return true;
    case Pattern::OneOneTwo:
      return scratch.size() == 4 && is_one_one_two(scratch);
    case Pattern::AllAntisymmetric:
      return std::all_of(scratch.begin(), scratch.end(),
                         [](const Relation& r) { return r.is_antisymmetric(); });
  }
  return false;
}

}  // namespace

namespace {

// Examines one candidate set, growing `out`. Returns true when the scan
// should stop (FIND_ONE succeeded).
bool examine_candidate(const CandidateContext& ctx, const std::vector<std::uint32_t>& combo,
                       std::vector<Relation>& scratch, SearchOutcome& out) {
  if (ctx.spec.symmetry_reduction && !ctx.canonical[combo[0]]) return false;
  if (!pattern_admits(ctx, combo, scratch)) return false;
  ++out.examined;
  const GenerationVerdict verdict =
      generates_whole(scratch, ctx.spec.family, ctx.spec.with_involution, ctx.spec.budget);
  switch (verdict.kind) {
    case GenerationVerdict::Kind::Yes: {
      ++out.yes;
      FoundSet fs;
      fs.member_indices = combo;
      fs.relations = scratch;
      out.found.push_back(std::move(fs));
      return ctx.spec.mode == SearchMode::FindOne;
    }
    case GenerationVerdict::Kind::No:
      ++out.no;
      return false;
    case GenerationVerdict::Kind::Unknown:
      ++out.unknown;
      return false;
  }
  return false;
}

void merge_outcome(SearchOutcome& into, SearchOutcome&& part) {
  into.examined += part.examined;
  into.yes += part.yes;
  into.no += part.no;
  into.unknown += part.unknown;
  for (FoundSet& fs : part.found) into.found.push_back(std::move(fs));
}

}  // namespace

SearchOutcome search_generating_sets(const SearchSpec& spec, const SearchLimits& limits,
                                     const SearchOutcome* carry) {
  if (spec.k < 1) throw std::invalid_argument("search: k must be >= 1");
  if (spec.pattern == Pattern::OneOneTwo && spec.k != 4)
    throw std::invalid_argument("search: the 1+1+2 pattern needs k = 4");
  if (spec.family == Family::Rel)
    throw std::invalid_argument("search: generation scans cover EQU/QUO/TRAN only");

  const std::vector<Relation> members =
      enumerate_family_relations(spec.family, spec.n, spec.allow_large);
  const auto total = static_cast<std::uint32_t>(members.size());
  if (spec.k > static_cast<int>(total))
    throw std::invalid_argument("search: k exceeds the family size");

  // First-coordinate symmetry reduction: every orbit of candidate sets has a
  // representative whose minimal element is orbit-canonical, so sets led by
  // non-canonical elements can be skipped without losing completeness.
  std::vector<bool> canonical(members.size(), true);
  if (spec.symmetry_reduction)
    for (std::size_t i = 0; i < members.size(); ++i)
      canonical[i] = is_canonical(members[i]);

  const CandidateContext ctx{spec, members, canonical};
  const bool checkpointing = !limits.checkpoint_path.empty();
  const bool bounded = limits.max_candidates != std::numeric_limits<std::uint64_t>::max();

  // Parallel scan over first-coordinate blocks when nothing forces a single
  // deterministic cursor (FIND_ONE order, checkpoint writes, candidate caps).
  if (spec.mode != SearchMode::FindOne && !checkpointing && !bounded &&
      limits.resume_from.empty() && carry == nullptr && limits.threads != 1) {
    const std::uint32_t firsts = total - static_cast<std::uint32_t>(spec.k) + 1;
    std::vector<SearchOutcome> parts(firsts);
    parallel_for_blocks(
        firsts,
        [&](std::size_t c0) {
          std::vector<std::uint32_t> combo(static_cast<std::size_t>(spec.k));
          for (int i = 0; i < spec.k; ++i)
            combo[static_cast<std::size_t>(i)] =
                static_cast<std::uint32_t>(c0) + static_cast<std::uint32_t>(i);
          if (spec.symmetry_reduction && !canonical[c0]) return;
          std::vector<Relation> scratch;
          scratch.reserve(static_cast<std::size_t>(spec.k));
          while (true) {
            examine_candidate(ctx, combo, scratch, parts[c0]);
            if (!next_combination(combo, total) || combo[0] != c0) break;
          }
        },
        limits.threads);
    SearchOutcome out;
    for (SearchOutcome& part : parts) merge_outcome(out, std::move(part));
    out.exhausted_space = true;
    return out;
  }

  SearchOutcome out;
  if (carry) {
    out = *carry;
    out.resume_at.clear();
    out.exhausted_space = false;
  }
  std::vector<std::uint32_t> combo(static_cast<std::size_t>(spec.k));
  std::iota(combo.begin(), combo.end(), 0);
  if (!limits.resume_from.empty()) {
    if (limits.resume_from.size() != combo.size())
      throw std::invalid_argument("search: resume combination has the wrong size");
    combo = limits.resume_from;
  }

  std::vector<Relation> scratch;
  scratch.reserve(static_cast<std::size_t>(spec.k));
  std::uint64_t since_checkpoint = 0;

  while (true) {
    const bool stop_now = examine_candidate(ctx, combo, scratch, out) ||
                          out.examined >= limits.max_candidates;
    const bool more = next_combination(combo, total);
    if (stop_now || !more) {
      out.exhausted_space = !more;
      if (more) out.resume_at = combo;
      break;
    }
    if (checkpointing && ++since_checkpoint >= limits.checkpoint_interval) {
      since_checkpoint = 0;
      SearchOutcome snapshot = out;
      snapshot.resume_at = combo;
      write_checkpoint(limits.checkpoint_path, spec, snapshot);
    }
  }
  if (checkpointing) write_checkpoint(limits.checkpoint_path, spec, out);
  return out;
}

void write_checkpoint(const std::string& path, const SearchSpec& spec,
                      const SearchOutcome& progress) {
  nlohmann::json j;
  j["spec"] = spec_to_string(spec);
  j["spec_hash"] = spec_hash(spec);
  j["examined"] = progress.examined;
  j["yes"] = progress.yes;
  j["no"] = progress.no;
  j["unknown"] = progress.unknown;
  j["exhausted_space"] = progress.exhausted_space;
  j["resume_at"] = progress.resume_at;
  nlohmann::json found = nlohmann::json::array();
  for (const FoundSet& fs : progress.found) found.push_back(fs.member_indices);
  j["found"] = std::move(found);
  std::ofstream outf(path);
  if (!outf) throw std::runtime_error("cannot write checkpoint " + path);
  outf << j.dump(2) << "\n";
}

SearchOutcome read_checkpoint(const std::string& path, const SearchSpec& spec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path);
  nlohmann::json j;
  in >> j;
  if (j.at("spec_hash").get<std::uint64_t>() != spec_hash(spec))
    throw std::runtime_error("checkpoint " + path + " was written for a different spec");
  SearchOutcome out;
  out.examined = j.at("examined").get<std::uint64_t>();
  out.yes = j.at("yes").get<std::uint64_t>();
  out.no = j.at("no").get<std::uint64_t>();
  out.unknown = j.at("unknown").get<std::uint64_t>();
  out.exhausted_space = j.at("exhausted_space").get<bool>();
  out.resume_at = j.at("resume_at").get<std::vector<std::uint32_t>>();
  const std::vector<Relation> members =
      enumerate_family_relations(spec.family, spec.n, spec.allow_large);
  for (const auto& indices : j.at("found")) {
    FoundSet fs;
    fs.member_indices = indices.get<std::vector<std::uint32_t>>();
    for (const std::uint32_t i : fs.member_indices) fs.relations.push_back(members.at(i));
    out.found.push_back(std::move(fs));
  }
  return out;
}

std::vector<Relation> orders_to_tran_generators(std::span<const Relation> orderings) {
  std::vector<Relation> out;
  out.reserve(orderings.size());
  for (const Relation& r : orderings) {
    if (!Relation::is_member(Family::Quo, r))
      throw std::invalid_argument("orders_to_tran_generators: input is not a quasiorder");
    if (!r.is_antisymmetric())
      throw std::invalid_argument("orders_to_tran_generators: input is not antisymmetric");
    out.push_back(r.strip_diagonal());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Delta reconstruction

DeltaSearchResult search_delta(const Config& config, const DeltaSearchOptions& options) {
  const int n = config.ground.size();
  std::vector<DeltaSpec> candidates;

  if (options.shaped) {
    if (config.rank < 1)
      throw std::invalid_argument("search_delta: shaped space needs a plain or "
                                  "extended F_n configuration");
    const int rank = config.rank;
    const std::string a_last = "a" + std::to_string(rank);
    const std::string b_last = "b" + std::to_string(rank - 1);
    for (int u = 0; u <= rank; ++u) {
      for (int v = 0; v <= rank; ++v) {
        if (u == v) continue;
        candidates.push_back(DeltaSpec{{
            {Family::Equ, "a0", a_last},
            {Family::Equ, "b0", b_last},
            {Family::Quo, "a" + std::to_string(u), "a" + std::to_string(v)},
        }});
      }
    }
  } else {
    // All joins of at most max_atoms atoms over the whole ground set.
    std::vector<AtomSpec> pool;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        pool.push_back({Family::Equ, config.ground.label(u), config.ground.label(v)});
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v)
          pool.push_back({Family::Quo, config.ground.label(u), config.ground.label(v)});
    std::vector<std::uint32_t> pick;
    const auto pool_size = static_cast<std::uint32_t>(pool.size());
    for (int size = 1; size <= options.max_atoms; ++size) {
      pick.assign(static_cast<std::size_t>(size), 0);
      std::iota(pick.begin(), pick.end(), 0);
      bool more = static_cast<std::uint32_t>(size) <= pool_size;
      while (more) {
        DeltaSpec spec;
        for (const std::uint32_t i : pick) spec.atoms.push_back(pool[i]);
        candidates.push_back(std::move(spec));
        more = next_combination(pick, pool_size);
      }
    }
  }

  DeltaSearchResult result;
  const std::vector<Relation> base = {config.alpha, config.beta, config.gamma};
  for (const DeltaSpec& spec : candidates) {
    if (result.examined >= options.max_candidates) return result;
    ++result.examined;
    const Relation delta = build_delta(config, spec);
    std::vector<Relation> gens = base;
    gens.push_back(delta);
    const GenerationVerdict verdict =
        generates_whole(gens, Family::Quo, false, options.budget);
    if (verdict.kind == GenerationVerdict::Kind::Yes) {
      result.validated.push_back(spec);
      if (!options.find_all) {
        result.exhausted_space = false;
        return result;
      }
    } else if (verdict.kind == GenerationVerdict::Kind::Unknown) {
      ++result.unknown;
    }
  }
  result.exhausted_space = true;
  return result;
}

}  // namespace latforge
