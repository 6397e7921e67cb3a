#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "latforge/closure.hpp"
#include "latforge/ground_set.hpp"

namespace latforge {

// Experiment reports. Every number carries a provenance tag:
//   oracle          - computed by an exhaustive/independent oracle here
//   paper-identity  - a claim that must hold; failure is a contradiction
//   search-witness  - produced by search; shipped with a replayable witness
//   conjectural     - depends on a conjectural default spec; failure means
//                     "unvalidated", never "contradiction"
//
// Exit codes: 0 all verdicts as expected, 2 UNKNOWN/unvalidated present,
// 3 contradiction with a checked claim.

struct Verdict {
  std::string name;
  std::string value;       // PASS | FAIL | YES | NO | UNKNOWN | ...
  std::string provenance;  // see above
  bool contradiction = false;
  bool unknown = false;
  nlohmann::json detail;   // free-form extras

  nlohmann::json to_json() const;
};

struct Report {
  std::string experiment;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::vector<Verdict> verdicts;
  std::vector<nlohmann::json> steps;
  nlohmann::json budget;
  std::vector<std::string> witness_files;
  std::vector<nlohmann::json> inputs;  // {path, fnv64}
  std::string kernels;

  Verdict& add(const std::string& name, const std::string& value,
               const std::string& provenance);
  Verdict& add_check(const std::string& name, bool pass, const std::string& provenance);

  bool any_unknown() const;
  bool any_contradiction() const;
  int exit_code() const;

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
  static Report load(const std::string& path);

  void note_input(const std::string& path);
  void print_summary(std::ostream& os) const;
};

std::uint64_t fnv64_file(const std::string& path);
std::string hex64(std::uint64_t v);

// -- closure dumps -----------------------------------------------------------
//
// A closure dump is a ".rels" element stream
//   family <name> / involution <0|1> / status <...> / ground <n> / count <k>
//   rel <id> followed by its pair lines, ids dense and ascending
// plus a "<base>.witness.json" sidecar holding per-element witnesses
// (op, lhs, rhs), generator ids, and the stats block.

void write_closure_dump(const std::string& base_path, const ClosureResult& result);

// Pruned certificate for a generation YES verdict: only the targets'
// derivation ancestors (plus the generators) are kept, re-indexed densely.
// The sidecar carries claim "atoms-covered"; validation then additionally
// checks that every family atom appears among the elements.
void write_generation_certificate(const std::string& base_path,
                                  const ClosureResult& result,
                                  const std::vector<Relation>& targets);

struct ClosureDump {
  Family family = Family::Quo;
  bool with_involution = false;
  std::string status;
  std::string claim;  // "" or "atoms-covered"
  int ground = 0;
  std::vector<Relation> elements;
  std::vector<Witness> witnesses;
  std::vector<std::uint32_t> generator_ids;
};

ClosureDump read_closure_dump(const std::string& base_path);

// Replays every witness in the dump through the relation operations.
// Returns an empty string on success, else a description of the mismatch.
std::string validate_closure_dump(const std::string& base_path);

}  // namespace latforge
