// latforge: a workbench for finite relation lattices. Builds ladder-style
// colored-graph configurations, computes generated sublattices of Equ/Quo/
// Tran with replayable witnesses, and runs exhaustive generating-set
// searches at small ground sizes. Every subcommand emits a deterministic
// JSON report; `replay` re-runs a report and checks it bit-exactly.

#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "latforge/bitops.hpp"
#include "latforge/commands.hpp"
#include "latforge/version.hpp"

using namespace latforge;

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " " + kToolVersion +
               " - finite relation lattice workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions common;
  std::string kernel_choice;
  app.add_option("--json", common.json_path, "write the JSON report to this path");
  app.add_option("--seed", common.seed, "RNG seed recorded in the report");
  app.add_option("--budget-elems", common.budget.max_elements,
                 "closure element budget (default 2000000)");
  app.add_option("--budget-ops", common.budget.max_word_ops,
                 "closure word-operation budget (default 1e10)");
  app.add_option("--witness-dir", common.witness_dir,
                 "directory for witness dumps (default .)");
  app.add_flag_callback("--no-witnesses", [&] { common.emit_witnesses = false; },
                        "do not write witness dump files");
  app.add_option("--threads", common.threads, "worker threads (0 = hardware)");
  app.add_option("--kernels", kernel_choice,
                 std::string("force kernel variant (available: ") +
                     kernels::available() + ")");

  std::function<Report()> run;

  {
    auto* cmd = app.add_subcommand("verify-zadori",
                                   "ladder generators of Equ: closure at small rank, "
                                   "path identities above");
    auto n = std::make_shared<int>(2);
    cmd->add_option("--n", *n, "ladder rank (>= 2)")->required();
    cmd->callback([&run, n, &common] {
      run = [n, &common] { return cmd_verify_zadori(*n, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("verify-delta",
                                   "delta augmentation of F_n: membership, meet "
                                   "identities, block shape, atom search");
    auto n = std::make_shared<int>(6);
    cmd->add_option("--n", *n, "ladder rank (>= 6)")->required();
    cmd->callback([&run, n, &common] {
      run = [n, &common] { return cmd_verify_delta(*n, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("verify-glued", "glued ladders: structural checks");
    auto args = std::make_shared<GluedArgs>();
    auto spec = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec, "configuration file (.cfg)");
    cmd->add_option("--t", args->t, "second block rank for the default gluing (default 16)");
    cmd->callback([&run, args, spec, &common] {
      if (!spec->empty()) args->cfg_path = *spec;
      run = [args, &common] { return cmd_verify_glued(*args, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("verify-extension",
                                   "one-point extension: identities plus delta "
                                   "reconstruction at desk scale");
    auto args = std::make_shared<ExtensionArgs>();
    auto spec = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec, "configuration file (.cfg)");
    cmd->add_option("--n", args->n, "base ladder rank (default 2)");
    cmd->add_flag("!--full-space", args->shaped,
                  "scan all small atom joins instead of the shaped space");
    cmd->add_option("--max-atoms", args->max_atoms, "atom join size cap (full space)");
    cmd->add_option("--max-candidates", args->max_candidates, "candidate cap");
    cmd->add_option("--quoprime-samples", args->quoprime_samples,
                    "samples for the restriction check");
    cmd->callback([&run, args, spec, &common] {
      if (!spec->empty()) args->cfg_path = *spec;
      run = [args, &common] { return cmd_verify_extension(*args, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("verify-tran",
                                   "Tran generation from Equ generators plus a strict "
                                   "linear order and its transpose");
    auto n = std::make_shared<int>(3);
    cmd->add_option("--n", *n, "ground size (3 or 4)")->required();
    cmd->callback([&run, n, &common] {
      run = [n, &common] { return cmd_verify_tran(*n, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("verify-tran-inv",
                                   "involution generation of Tran from stripped "
                                   "orderings");
    auto n = std::make_shared<int>(3);
    cmd->add_option("--n", *n, "ground size (3)")->required();
    cmd->callback([&run, n, &common] {
      run = [n, &common] { return cmd_verify_tran_involution(*n, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("kulin",
                                   "closures of Equ plus one strict quasiorder "
                                   "(exhaustive at n=3, sampled at n=4)");
    auto args = std::make_shared<KulinArgs>();
    cmd->add_option("--n", args->n, "ground size (3 or 4)")->required();
    cmd->add_option("--samples", args->samples, "sample count for n=4 (default 50)");
    cmd->callback([&run, args, &common] {
      run = [args, &common] { return cmd_kulin_check(*args, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("counts", "family counting tables with cross-checks");
    auto args = std::make_shared<CountsArgs>();
    cmd->add_option("--nmax", args->nmax, "largest ground size (default 5)");
    cmd->add_option("--csv", args->csv_path, "CSV export path");
    cmd->callback([&run, args, &common] {
      run = [args, &common] { return cmd_counts(*args, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("search", "exhaustive generating-set scans");
    auto args = std::make_shared<SearchArgs>();
    auto family = std::make_shared<std::string>("quo");
    auto pattern = std::make_shared<std::string>("any");
    auto mode = std::make_shared<std::string>("find-one");
    cmd->add_option("--family", *family, "equ | quo | tran");
    cmd->add_option("--n", args->spec.n, "ground size")->required();
    cmd->add_option("--k", args->spec.k, "generating set size")->required();
    cmd->add_option("--pattern", *pattern, "any | one-one-two | all-antisymmetric");
    cmd->add_flag("--involution", args->spec.with_involution, "close under transpose");
    cmd->add_option("--mode", *mode, "find-one | prove-none | find-all");
    cmd->add_flag("--symmetry", args->spec.symmetry_reduction,
                  "first-coordinate symmetry reduction");
    cmd->add_flag("--allow-large", args->spec.allow_large,
                  "override the enumeration feasibility guard");
    cmd->add_option("--max-candidates", args->limits.max_candidates,
                    "stop after examining this many candidates");
    cmd->add_option("--checkpoint", args->limits.checkpoint_path,
                    "write resumable progress to this JSON file");
    cmd->add_option("--checkpoint-interval", args->limits.checkpoint_interval,
                    "candidates between checkpoint writes (default 1e6)");
    cmd->add_option("--resume", args->resume_path, "resume from this checkpoint file");
    cmd->callback([&run, args, family, pattern, mode, &common] {
      args->spec.family = family_from_name(*family);
      args->spec.pattern = pattern_from_name(*pattern);
      args->spec.mode = search_mode_from_name(*mode);
      args->limits.threads = common.threads;
      run = [args, &common] { return cmd_search(*args, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("closure", "close generator files under a family");
    auto args = std::make_shared<ClosureArgs>();
    auto family = std::make_shared<std::string>("quo");
    cmd->add_option("--family", *family, "equ | quo | tran | rel");
    cmd->add_option("--gens", args->generator_files, "generator .rel files")
        ->required()
        ->expected(-1);
    cmd->add_flag("--involution", args->with_involution, "close under transpose");
    cmd->add_option("--dump", args->dump_base, "closure dump base path");
    cmd->callback([&run, args, family, &common] {
      args->family = family_from_name(*family);
      run = [args, &common] { return cmd_closure(*args, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("eval", "evaluate a term over bound relations");
    auto args = std::make_shared<EvalArgs>();
    auto family = std::make_shared<std::string>("rel");
    cmd->add_option("--term", args->term, "term text, e.g. 'meet(v0,join(v1,quo(0,1)))'")
        ->required();
    cmd->add_option("--bind", args->binding_files, "binding .rel files (v0, v1, ...)")
        ->expected(-1);
    cmd->add_option("--family", *family, "evaluation family (default rel)");
    cmd->add_option("--n", args->ground_n, "ground size for closed terms");
    cmd->add_option("--out", args->out_rel, "write the value to this .rel file");
    cmd->callback([&run, args, family, &common] {
      args->family = family_from_name(*family);
      run = [args, &common] { return cmd_eval(*args, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("replay", "re-run a report and compare verdicts");
    auto path = std::make_shared<std::string>();
    cmd->add_option("--report", *path, "report JSON file")->required();
    cmd->callback([&run, path, &common] {
      run = [path, &common] { return cmd_replay(*path, common); };
    });
  }
  {
    auto* cmd = app.add_subcommand("build", "build a configuration and emit .rel files");
    auto args = std::make_shared<BuildArgs>();
    cmd->add_option("--cfg", args->cfg_path, "configuration file (.cfg)")->required();
    cmd->add_option("--out", args->out_dir, "output directory (default .)");
    cmd->callback([&run, args, &common] {
      run = [args, &common] { return cmd_build(*args, common); };
    });
  }

  CLI11_PARSE(app, argc, argv);

  if (!kernel_choice.empty() && !kernels::select(kernel_choice)) {
    std::cerr << "error: kernel variant '" << kernel_choice
              << "' is not available (have: " << kernels::available() << ")\n";
    return 1;
  }

  try {
    const Report report = run();
    report.print_summary(std::cout);
    if (!common.json_path.empty())
      std::cout << "report: " << common.json_path << "\n";
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
