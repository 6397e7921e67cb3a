// Acceptance suite: one line per criterion, every tolerance and time cap
// pinned in code. Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latforge/bitops.hpp"
#include "latforge/closure.hpp"
#include "latforge/commands.hpp"
#include "latforge/enumerate.hpp"
#include "latforge/parallel.hpp"
#include "latforge/search.hpp"
#include "latforge/term.hpp"
#include "latforge/zadori.hpp"

using namespace latforge;

namespace {

struct Criterion {
  std::string id;
  std::string name;
  double limit_seconds;
  std::function<std::string()> run;  // empty string = pass, else reason
};

Relation random_member(std::mt19937_64& rng, Family f, int n) {
  Relation r(n);
  const int extra = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < extra; ++t)
    r.set(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
  if (f == Family::Equ) r = r.union_with(r.transpose());
  if (f == Family::Equ || f == Family::Quo) r = r.with_diagonal();
  return r.transitive_closure();
}

std::vector<Relation> random_generators(std::mt19937_64& rng, Family f, int n, int k) {
  std::vector<Relation> out;
  for (int i = 0; i < k; ++i) out.push_back(random_member(rng, f, n));
  return out;
}

std::set<std::uint64_t> element_packs(const ClosureResult& c) {
  std::set<std::uint64_t> out;
  for (std::uint32_t i = 0; i < c.elements.size(); ++i)
    out.insert(c.elements.get(i).pack8());
  return out;
}

std::string check(bool ok, const std::string& reason) { return ok ? "" : reason; }

// -- C1 ----------------------------------------------------------------------

std::string c1_counting_oracle() {
  const std::vector<std::uint64_t> quo = {1, 4, 29, 355, 6942};
  const std::vector<std::uint64_t> equ = {1, 2, 5, 15, 52};
  const std::vector<std::uint64_t> tran = {2, 13, 171, 3994};
  for (int n = 1; n <= 5; ++n) {
    if (count_family(Family::Quo, n) != quo[n - 1]) return "QUO count mismatch";
    if (count_family(Family::Equ, n) != equ[n - 1]) return "EQU count mismatch";
  }
  for (int n = 1; n <= 4; ++n)
    if (count_family(Family::Tran, n) != tran[n - 1]) return "TRAN count mismatch";
  for (const Family f : {Family::Equ, Family::Quo, Family::Tran, Family::Rel})
    for (int n = 1; n <= 3; ++n)
      if (enumerate_family_packed(f, n) != brute_filter_packed(f, n))
        return "enumerator and brute filter disagree";
  return "";
}

// -- C2 ----------------------------------------------------------------------

std::string c2_ladder_generates_equ() {
  for (const int n : {2, 3}) {
    const Config cfg = build_zadori(n);
    const int g = cfg.ground.size();
    const std::vector<Relation> gens = {
        cfg.alpha, cfg.beta, cfg.gamma,
        Relation::atom(Family::Equ, g, cfg.a(0), cfg.b(0)),
        Relation::atom(Family::Equ, g, cfg.a(n), cfg.b(n - 1))};
    const GenerationVerdict verdict = generates_whole(gens, Family::Equ, false);
    if (!verdict.yes()) return "rank " + std::to_string(n) + " did not generate Equ";
    if (!replay_witnesses(verdict.closure)) return "witnesses failed to replay";
  }
  return "";
}

// -- C3 ----------------------------------------------------------------------

std::string c3_equ_plus_strict_quasiorder() {
  const std::vector<Relation> equ_all = enumerate_family_relations(Family::Equ, 3);
  const std::uint64_t quo_size = count_family(Family::Quo, 3);
  int probes = 0;
  for (const Relation& q : enumerate_family_relations(Family::Quo, 3)) {
    if (Relation::is_member(Family::Equ, q)) continue;
    ++probes;
    std::vector<Relation> gens = equ_all;
    gens.push_back(q);
    const ClosureResult c = close(gens, {.family = Family::Quo});
    if (c.status != ClosureStatus::Complete || c.elements.size() != quo_size)
      return "a strict quasiorder failed to close to the whole lattice";
  }
  return check(probes == 24, "expected exactly 24 strict quasiorders");
}

// -- C4 ----------------------------------------------------------------------

std::string c4_quo3_minimality() {
  SearchSpec spec;
  spec.family = Family::Quo;
  spec.n = 3;
  spec.k = 3;
  spec.mode = SearchMode::ProveNone;
  const SearchOutcome none = search_generating_sets(spec);
  if (!none.exhausted_space) return "triple scan did not finish";
  if (none.examined != 3654) return "expected 3654 candidate triples";
  if (none.yes != 0) return "a 3-subset generated Quo(3)";

  spec.k = 4;
  spec.mode = SearchMode::FindOne;
  const SearchOutcome one = search_generating_sets(spec);
  if (one.found.empty()) return "no 4-generating set found";
  if (!generates_whole(one.found[0].relations, Family::Quo, false).yes())
    return "found set failed to replay";
  return "";
}

// -- C5 ----------------------------------------------------------------------

std::string c5_delta_identities() {
  for (int n = 6; n <= 10; ++n) {
    const Config cfg = build_zadori(n);
    const int g = cfg.ground.size();
    const Relation delta = build_delta(cfg, default_delta(n));
    if (!Relation::is_member(Family::Quo, delta) ||
        Relation::is_member(Family::Equ, delta))
      return "delta is not a strict quasiorder at n=" + std::to_string(n);
    if (cfg.beta.meet(Relation::join(Family::Quo, {cfg.gamma, delta})) !=
        Relation::atom(Family::Equ, g, cfg.a(0), cfg.b(0)))
      return "beta identity failed at n=" + std::to_string(n);
    if (cfg.gamma.meet(Relation::join(Family::Quo, {cfg.beta, delta})) !=
        Relation::atom(Family::Equ, g, cfg.a(n), cfg.b(n - 1)))
      return "gamma identity failed at n=" + std::to_string(n);
    const Relation sym =
        Relation::join(Family::Quo, {delta, delta.transpose(), cfg.gamma});
    std::vector<int> expect = {cfg.a(2), cfg.a(4), cfg.b(1), cfg.b(3)};
    std::sort(expect.begin(), expect.end());
    if (sym.block_of(cfg.a(2)) != expect)
      return "block shape failed at n=" + std::to_string(n);
  }
  return "";
}

// -- C6 ----------------------------------------------------------------------

std::string c6_strip_commutation_campaign() {
  std::mt19937_64 rng(kDefaultSeed);
  RandomTermOptions opt;
  opt.arity = 4;
  opt.max_depth = 6;
  for (int t = 0; t < 10000; ++t) {
    const int n = 2 + static_cast<int>(rng() % 5);  // 2..6
    opt.ground_n = n;
    const Term term = random_term(rng, opt);
    std::vector<Relation> bindings;
    for (int i = 0; i < opt.arity; ++i) {
      Relation r(n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (rng() % 5 == 0) r.set(a, b);
      bindings.push_back(std::move(r));
    }
    if (!strip_eval_commutes(term, bindings))
      return "instance " + std::to_string(t) + " failed";
  }
  return "";
}

// -- C7 ----------------------------------------------------------------------

std::string c7_circle_instances() {
  std::mt19937_64 rng(kDefaultSeed ^ 0x77);
  for (int t = 0; t < 1000; ++t) {
    const int n = 4 + static_cast<int>(rng() % 5);  // 4..8
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    const int inner_budget = n - 2;
    const int j = 1 + static_cast<int>(rng() % std::min(3, inner_budget + 1));
    const int k =
        1 + static_cast<int>(rng() % std::min(3, inner_budget - (j - 1) + 1));
    std::size_t at = 0;
    const int u = pool[at++];
    const int v = pool[at++];
    std::vector<int> left = {u};
    for (int s = 0; s < j - 1; ++s) left.push_back(pool[at++]);
    left.push_back(v);
    std::vector<int> right = {u};
    for (int s = 0; s < k - 1; ++s) right.push_back(pool[at++]);
    right.push_back(v);

    for (const Family f : {Family::Quo, Family::Equ}) {
      auto chain = [&](const std::vector<int>& path) {
        std::vector<Relation> atoms;
        for (std::size_t s = 1; s < path.size(); ++s)
          atoms.push_back(Relation::atom(f, n, path[s - 1], path[s]));
        return Relation::join(f, atoms);
      };
      if (chain(left).meet(chain(right)) != Relation::atom(f, n, u, v))
        return "instance " + std::to_string(t) + " failed";
    }
  }
  return "";
}

// -- C8 ----------------------------------------------------------------------

std::string c8_tran_six_generated() {
  for (const int n : {3, 4}) {
    SearchSpec spec;
    spec.family = Family::Equ;
    spec.n = n;
    spec.k = 4;
    spec.mode = SearchMode::FindOne;
    const SearchOutcome found = search_generating_sets(spec);
    if (found.found.empty()) return "no Equ generators at n=" + std::to_string(n);
    std::vector<Relation> gens = found.found.front().relations;
    Relation strict(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) strict.set(i, j);
    gens.push_back(strict);
    gens.push_back(strict.transpose());
    const GenerationVerdict verdict = generates_whole(gens, Family::Tran, false);
    if (!verdict.yes()) return "Tran not generated at n=" + std::to_string(n);
    if (!replay_witnesses(verdict.closure)) return "witnesses failed to replay";
  }
  return "";
}

// -- C9 ----------------------------------------------------------------------

std::string c9_tran_involution_three_generated() {
  SearchSpec spec;
  spec.family = Family::Quo;
  spec.n = 3;
  spec.k = 3;
  spec.pattern = Pattern::AllAntisymmetric;
  spec.with_involution = true;
  spec.mode = SearchMode::FindOne;
  const SearchOutcome found = search_generating_sets(spec);
  if (found.found.empty()) return "no antisymmetric involution triple for Quo(3)";
  const std::vector<Relation>& triple = found.found.front().relations;
  for (const Relation& r : triple)
    if (!r.is_antisymmetric()) return "found triple is not antisymmetric";

  const std::vector<Relation> stripped = orders_to_tran_generators(triple);
  if (!generates_whole(stripped, Family::Tran, true).yes())
    return "stripped triple did not generate Tran(3) with involution";

  const std::vector<Relation> expanded = expand_involution_genset(stripped);
  if (!generates_whole(expanded, Family::Tran, false).yes())
    return "expanded set did not generate Tran(3) plainly";
  return "";
}

// -- C10 ---------------------------------------------------------------------

std::string c10_engine_properties() {
  const std::vector<Family> families = {Family::Equ, Family::Quo, Family::Tran};

  // Schedule independence: 10 shuffles, set-equal, witnesses replay.
  std::mt19937_64 rng(kDefaultSeed ^ 0x10);
  for (const Family f : families) {
    for (int t = 0; t < 2; ++t) {
      const auto gens = random_generators(rng, f, 4, 3);
      const ClosureResult base = close(gens, {.family = f, .with_involution = true});
      if (base.status != ClosureStatus::Complete) return "base closure incomplete";
      if (!replay_witnesses(base)) return "base witnesses failed";
      const auto want = element_packs(base);
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ClosureResult shuffled =
            close(gens, {.family = f, .with_involution = true, .schedule_seed = seed});
        if (element_packs(shuffled) != want) return "shuffled closure set differs";
        if (!replay_witnesses(shuffled)) return "shuffled witnesses failed";
      }
    }
  }

  // Closure-operator laws.
  for (const Family f : families) {
    for (int t = 0; t < 10; ++t) {
      const int n = 3 + (t % 2);
      auto small = random_generators(rng, f, n, 2);
      auto big = small;
      big.push_back(random_member(rng, f, n));
      const ClosureResult c_small = close(small, {.family = f});
      const ClosureResult c_big = close(big, {.family = f});
      for (const Relation& g : small)
        if (!c_small.elements.contains(g)) return "closure is not extensive";
      for (std::uint32_t i = 0; i < c_small.elements.size(); ++i)
        if (!c_big.elements.contains(c_small.elements.get(i)))
          return "closure is not monotone";
      std::vector<Relation> everything;
      for (std::uint32_t i = 0; i < c_small.elements.size(); ++i)
        everything.push_back(c_small.elements.get(i));
      if (close(everything, {.family = f}).elements.size() != c_small.elements.size())
        return "closure is not idempotent";
    }
  }

  // Atom criterion agrees with full enumeration: 200 sets per family.
  for (const Family f : families) {
    const auto family3 = enumerate_family_packed(f, 3);
    const auto family4 = enumerate_family_packed(f, 4);
    std::vector<std::vector<Relation>> sets;
    std::mt19937_64 gen_rng(kDefaultSeed ^ (0x20 + static_cast<int>(f)));
    for (int t = 0; t < 200; ++t) {
      const int n = t < 100 ? 3 : 4;
      sets.push_back(
          random_generators(gen_rng, f, n, 2 + static_cast<int>(gen_rng() % 3)));
    }
    std::vector<std::string> errors(sets.size());
    parallel_for_blocks(sets.size(), [&](std::size_t i) {
      const auto& gens = sets[i];
      const std::size_t family_size =
          gens[0].size() == 3 ? family3.size() : family4.size();
      const GenerationVerdict verdict = generates_whole(gens, f, false);
      const ClosureResult full = close(gens, {.family = f});
      if (full.status != ClosureStatus::Complete) {
        errors[i] = "full closure incomplete";
        return;
      }
      if (!replay_witnesses(full)) {
        errors[i] = "witness replay failed";
        return;
      }
      const bool whole = full.elements.size() == family_size;
      if (verdict.yes() != whole) errors[i] = "atom criterion disagrees";
    });
    for (const std::string& e : errors)
      if (!e.empty()) return e;
  }
  return "";
}

// -- C11 ---------------------------------------------------------------------

std::string c11_conjectural_gate() {
  namespace fs = std::filesystem;
  CommonOptions common;
  common.budget.max_elements = 200000;
  common.budget.max_word_ops = 1'000'000'000;
  common.witness_dir = (fs::temp_directory_path() / "latforge-acceptance").string();
  ExtensionArgs args;
  args.n = 2;
  args.quoprime_samples = 25;
  const Report report = cmd_verify_extension(args, common);
  fs::remove_all(common.witness_dir);
  if (report.exit_code() == 3) return "conjectural defaults reported a contradiction";
  bool reconstruction_seen = false;
  for (const Verdict& v : report.verdicts)
    if (v.name == "delta-reconstruction") {
      reconstruction_seen = true;
      if (v.value != "YES" && v.value != "UNKNOWN")
        return "reconstruction verdict must be YES or UNKNOWN, got " + v.value;
    }
  return check(reconstruction_seen, "no reconstruction verdict in the report");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"C01", "counting-oracle", 60.0, c1_counting_oracle},
      {"C02", "ladder-generates-equ", 10.0, c2_ladder_generates_equ},
      {"C03", "equ-plus-strict-quasiorder", 10.0, c3_equ_plus_strict_quasiorder},
      {"C04", "quo3-minimality-3654-triples", 300.0, c4_quo3_minimality},
      {"C05", "delta-identities-n6-10", 10.0, c5_delta_identities},
      {"C06", "strip-commutation-10000", 120.0, c6_strip_commutation_campaign},
      {"C07", "circle-instances-1000", 30.0, c7_circle_instances},
      {"C08", "tran-six-generated-n3-n4", 300.0, c8_tran_six_generated},
      {"C09", "tran-involution-three-generated", 300.0, c9_tran_involution_three_generated},
      {"C10", "engine-properties", 600.0, c10_engine_properties},
      {"C11", "conjectural-gate-extension", 600.0, c11_conjectural_gate},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = c.run();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (reason.empty() && seconds > c.limit_seconds)
      reason = "time limit exceeded (" + std::to_string(seconds) + "s > " +
               std::to_string(c.limit_seconds) + "s)";
    std::printf("[%s] %s %s (%.2fs)%s%s\n", reason.empty() ? "PASS" : "FAIL",
                c.id.c_str(), c.name.c_str(), seconds,
                reason.empty() ? "" : ": ", reason.c_str());
    std::fflush(stdout);
    if (!reason.empty()) ++failures;
  }
  if (failures) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
