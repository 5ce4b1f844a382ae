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

#ifndef PHG_TRIALS_H_
#define PHG_TRIALS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "phg/game.h"

namespace phg {

// One line of the aggregate CSV.
struct AggregateRow {
  std::string game;
  std::size_t n = 0;
  double eps = 0.0;
  std::size_t k = 0;
  std::uint64_t N = 0;
  std::string mechanism;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double mean_final_gap = 0.0;
  double p90_final_gap = 0.0;
  double mean_max_pop_err = 0.0;
  double mean_accused_out = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "game,n,eps,k,N,mechanism,trials,success_rate,mean_final_gap,p90_final_gap,mean_max_pop_err,"
    "mean_accused_out,seed";

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;  // derive_seed(master_seed, index)
  GameResult result;                              // attack games
  std::optional<CompositionReport> composition;  // composition games
};

// One cell of an experiment: the trials of a single (n, k) configuration,
// or one verification cell.
struct TrialAggregate {
  GameConfig config;
  std::vector<TrialRecord> trials;
  std::vector<LemmaCell> lemma;  // verify-lemma
  std::optional<SdSweep> sd;     // verify-sd

  std::size_t flagged = 0;  // accuracy_violated or phg_violated
  std::size_t phg_violations = 0;
  std::size_t accuracy_violations = 0;
  double success_rate = 0.0;  // flagged / trials
  double phg_rate = 0.0;
  double accuracy_rate = 0.0;
  double mean_final_gap = 0.0;
  double p90_final_gap = 0.0;
  double mean_max_pop_err = 0.0;
  double mean_accused_out = 0.0;

  AggregateRow row;
};

// Runs cfg.trials independent trials of an attack or composition game on
// cfg.threads workers. Trial t uses seed derive_seed(master_seed, t); the
// result does not depend on the thread count.
TrialAggregate run_trials(const GameConfig& cfg);

// Every cell of the configured grid (n_list x k_list) in row-major order,
// or the verification cells for verify-lemma / verify-sd.
std::vector<TrialAggregate> run_experiment(const GameConfig& cfg);

void write_csv(std::ostream& out, const std::vector<TrialAggregate>& cells);
// Rows as in the CSV; with `verbose`, per-trial results and their rounds.
void write_json(std::ostream& out, const std::vector<TrialAggregate>& cells, bool verbose);

// Validates cfg, opens cfg.out (stdout when empty; JSON when it ends in
// ".json", CSV otherwise) before any trial runs, then runs and writes.
// Throws ConfigError for invalid configs and unwritable paths.
std::vector<TrialAggregate> run_and_write(const GameConfig& cfg, std::ostream& default_out);

}  // namespace phg

#endif  // PHG_TRIALS_H_
