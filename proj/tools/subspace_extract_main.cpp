// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrr/errors.hpp"
#include "rrr/experiments.hpp"

namespace {

// Exit codes: 0 success, 1 numerical failure, 2 usage/parse error.
constexpr int kExitNumerical = 1;

bool parse_shift(const std::string& text, rrr::ExperimentConfig& config) {
  double re = 0, im = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) < 1) return false;
  config.shift = rrr::Complex(re, im);
  config.shift_set = true;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenpair extraction from trial subspaces by randomized "
               "Rayleigh-Ritz, with experiment and verification harnesses"};
  app.require_subcommand(1);

  rrr::ExperimentConfig config;
  std::string shift_text;
  std::string experiment = "ham";
  std::string problem = "eg23";
  std::string manifest_path, basis_path;
  long count = 1;
  std::string g21 = "zero";

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", config.n, "problem dimension");
    cmd->add_option("--m", config.m, "trial subspace dimension");
    cmd->add_option("--s", config.s, "oversampling width");
    cmd->add_option("--steps", config.steps, "subspace/iteration steps");
    cmd->add_option("--trials", config.trials, "Monte Carlo trials");
    cmd->add_option("--shift", shift_text, "target shift as RE or RE,IM");
    cmd->add_option("--seed", config.seed, "master seed");
    cmd->add_option("--g21", g21, "ham coupling block: zero|gaussian")
        ->check(CLI::IsMember({"zero", "gaussian"}));
    cmd->add_option("--eps", config.eps, "basis angle for gallery problems");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_flag("--deterministic", config.deterministic,
                  "suppress timestamps for byte-identical reruns");
  };

  CLI::App* gen = app.add_subcommand("gen", "emit a gallery problem as "
                                            "manifest + Matrix Market files");
  gen->add_option("--problem", problem,
                  "eg21|eg22|eg23|ham|butterfly|fp")
      ->check(CLI::IsMember({"eg21", "eg22", "eg23", "ham", "butterfly",
                             "fp"}));
  add_common(gen);

  CLI::App* extract =
      app.add_subcommand("extract", "run the randomized extraction on "
                                    "user-supplied problem and basis files");
  extract->add_option("--manifest", manifest_path, "problem manifest")
      ->required();
  extract->add_option("--basis", basis_path, "basis in Matrix Market format")
      ->required();
  extract->add_option("--count", count, "number of pairs to extract");
  add_common(extract);

  CLI::App* exp = app.add_subcommand("exp", "reproduce an experiment at the "
                                            "configured scale");
  exp->add_option("--experiment", experiment, "ham|butterfly|fp")
      ->check(CLI::IsMember({"ham", "butterfly", "fp"}))
      ->required();
  add_common(exp);

  CLI::App* mc = app.add_subcommand("mc-cond", "Monte Carlo study of the "
                                               "sketched condition numbers");
  add_common(mc);

  CLI::App* verify = app.add_subcommand("verify", "run the oracle-backed "
                                                  "invariant suite");
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  if (!shift_text.empty() && !parse_shift(shift_text, config)) {
    std::fprintf(stderr, "error: --shift expects RE or RE,IM\n");
    return 2;
  }
  config.g21 = (g21 == "zero") ? rrr::G21Mode::zero : rrr::G21Mode::gaussian;

  try {
    std::vector<std::string> files;
    if (gen->parsed()) {
      files = rrr::run_gen(config, problem);
    } else if (extract->parsed()) {
      files = rrr::run_extract(config, manifest_path, basis_path, count);
    } else if (exp->parsed()) {
      // Per-experiment desk defaults when not overridden.
      if (experiment == "ham") {
        files = rrr::run_ham(config);
      } else if (experiment == "butterfly") {
        if (config.n == 200) config.n = 256;
        files = rrr::run_butterfly(config);
      } else {
        files = rrr::run_fp(config);
      }
    } else if (mc->parsed()) {
      if (config.n == 200) config.n = 100;
      files = rrr::run_mc_cond(config);
    } else if (verify->parsed()) {
      const int failures = rrr::run_verify(config, &files);
      for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
      if (failures > 0) {
        std::fprintf(stderr, "verify: %d check(s) failed\n", failures);
        return kExitNumerical;
      }
      return 0;
    }
    for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
    return 0;
  } catch (const rrr::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const rrr::Error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
