//
// Copyright 2026 The phgsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line driver for the attack, composition and verification games.
//
//   phgsim [--config F] [--seed S] [--trials T] [--out F] [--threads W]
//          [--verbose] <subcommand> [--n N] [--eps E] [--k K]
//          [--mechanism M] [--alpha A]
//
// Exit status: 0 success, 1 usage or configuration error, 2 runtime error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "phg/config.h"
#include "phg/errors.h"
#include "phg/trials.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
  bool verbose = false;
  std::optional<std::size_t> n;
  std::optional<double> eps;
  std::optional<std::size_t> k;
  std::optional<std::string> mechanism;
  std::optional<double> alpha;
};

void report(const std::vector<phg::TrialAggregate>& cells) {
  for (const auto& c : cells) {
    const auto& r = c.row;
    std::fprintf(stderr, "%s n=%zu k=%zu %s: trials=%zu success=%.4f phg=%.4f acc=%.4f mean_gap=%.5f\n",
                 r.game.c_str(), r.n, r.k, r.mechanism.c_str(), r.trials, c.success_rate, c.phg_rate,
                 c.accuracy_rate, r.mean_final_gap);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post hoc generalization attack simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--trials", o.trials, "number of trials");
  app.add_option("--out", o.out, "output path (.json for JSON, CSV otherwise)");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_flag("--verbose", o.verbose, "per-trial detail in JSON output and progress on stderr");

  const std::map<std::string, std::optional<phg::GameKind>> commands = {
      {"attack-natural", phg::GameKind::kNaq},
      {"attack-lifted", phg::GameKind::kAq},
      {"attack-prg", phg::GameKind::kAqPrg},
      {"compose-it", phg::GameKind::kComposeIt},
      {"compose-prg", phg::GameKind::kComposePrg},
      {"verify-lemma", phg::GameKind::kVerifyLemma},
      {"verify-sd", phg::GameKind::kVerifySd},
      {"sweep", std::nullopt},
  };
  for (const auto& [name, kind] : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--n", o.n, "sample size");
    sub->add_option("--eps", o.eps, "accuracy parameter");
    sub->add_option("--k", o.k, "number of rounds");
    sub->add_option("--mechanism", o.mechanism, "mechanism tag");
    sub->add_option("--alpha", o.alpha, "composition exponent");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    const auto kind = commands.at(name);
    if (!kind && o.config.empty()) throw phg::ConfigError("sweep needs --config");

    phg::GameConfig cfg;
    if (kind) cfg.game = *kind;
    if (!o.config.empty()) cfg = phg::load_config(o.config, cfg);
    if (kind) cfg.game = *kind;
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.trials) cfg.trials = *o.trials;
    if (o.out) cfg.out = *o.out;
    if (o.threads) cfg.threads = *o.threads;
    if (o.verbose) cfg.verbose = true;
    if (o.n) cfg.n = *o.n;
    if (o.eps) cfg.eps = *o.eps;
    if (o.k) cfg.k = *o.k;
    if (o.mechanism) cfg.mechanism.tag = *o.mechanism;
    if (o.alpha) cfg.alpha = *o.alpha;

    const auto cells = phg::run_and_write(cfg, std::cout);
    if (cfg.verbose) report(cells);
  } catch (const phg::ConfigError& e) {
    std::cerr << "phgsim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "phgsim: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
