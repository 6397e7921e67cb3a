#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latforge/report.hpp"
#include "latforge/search.hpp"

namespace latforge {

// The experiment drivers behind the CLI subcommands. Every command is
// deterministic given (parameters, seed); reports carry both, and `replay`
// re-runs a saved report and compares verdicts bit-exactly.

inline constexpr std::uint64_t kDefaultSeed = 0x1a7f09c3d5e2b841ull;

struct CommonOptions {
  std::uint64_t seed = kDefaultSeed;
  Budget budget;
  std::string json_path;     // write the report here when nonempty
  std::string witness_dir;   // where closure dumps go (default ".")
  bool emit_witnesses = true;
  unsigned threads = 0;
};

Report cmd_verify_zadori(int n, const CommonOptions& common);
Report cmd_verify_delta(int n, const CommonOptions& common);

struct GluedArgs {
  std::optional<std::string> cfg_path;  // else default gluing of [13, t]
  int t = 16;
};
Report cmd_verify_glued(const GluedArgs& args, const CommonOptions& common);

struct ExtensionArgs {
  std::optional<std::string> cfg_path;  // else default F_n extension
  int n = 2;
  bool shaped = true;   // delta search space
  int max_atoms = 3;
  std::uint64_t max_candidates = 100000;
  int quoprime_samples = 50;
};
Report cmd_verify_extension(const ExtensionArgs& args, const CommonOptions& common);

Report cmd_verify_tran(int n, const CommonOptions& common);
Report cmd_verify_tran_involution(int n, const CommonOptions& common);

struct KulinArgs {
  int n = 3;
  int samples = 50;  // used when the scan is not exhaustive (n = 4)
};
Report cmd_kulin_check(const KulinArgs& args, const CommonOptions& common);

struct CountsArgs {
  int nmax = 5;
  std::string csv_path;
};
Report cmd_counts(const CountsArgs& args, const CommonOptions& common);

struct SearchArgs {
  SearchSpec spec;
  SearchLimits limits;
  std::string resume_path;  // read progress from this checkpoint
};
Report cmd_search(const SearchArgs& args, const CommonOptions& common);

struct ClosureArgs {
  Family family = Family::Quo;
  std::vector<std::string> generator_files;
  bool with_involution = false;
  std::string dump_base;  // defaults to "<witness_dir>/closure"
};
Report cmd_closure(const ClosureArgs& args, const CommonOptions& common);

struct EvalArgs {
  std::string term;
  std::vector<std::string> binding_files;
  Family family = Family::Rel;
  int ground_n = -1;
  std::string out_rel;  // write the value here when nonempty
};
Report cmd_eval(const EvalArgs& args, const CommonOptions& common);

Report cmd_replay(const std::string& report_path, const CommonOptions& common);

struct BuildArgs {
  std::string cfg_path;
  std::string out_dir = ".";
};
Report cmd_build(const BuildArgs& args, const CommonOptions& common);

}  // namespace latforge
