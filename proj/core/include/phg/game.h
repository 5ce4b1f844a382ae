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

#ifndef PHG_GAME_H_
#define PHG_GAME_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phg/attack.h"
#include "phg/mechanisms.h"
#include "phg/universe.h"

namespace phg {

enum class GameKind { kNaq, kAq, kAqPrg, kComposeIt, kComposePrg, kVerifyLemma, kVerifySd };

std::string_view to_string(GameKind kind);
// Accepts the canonical lower-case names ("naq", "aq-prg", ...) in any case.
GameKind parse_game_kind(std::string_view name);

// Mechanism tag plus the parameters its behaviour needs:
//   empirical  clamped empirical mean
//   rounded    empirical mean rounded to `precision`
//   gaussian   empirical mean + N(0, sigma^2); sigma < 0 means
//              calibrate_sigma(eps, delta, k)
//   split      fresh chunk per query; chunks == 0 means k
//   random     uniform answers, ignores the data
//   oracle     exact population mean (control)
//   probe      general; averages sample and `probes` off-sample points
//              (0 means n / 2)
struct MechanismSpec {
  std::string tag = "empirical";
  double sigma = -1.0;
  double delta = 0.05;
  double precision = 1e-3;
  std::size_t chunks = 0;
  std::size_t probes = 0;

  bool natural() const;
  // Label used in reports, e.g. "gaussian(sigma=0.0284)".
  std::string label(double eps, std::size_t k) const;
  double resolved_sigma(double eps, std::size_t k) const;
};

struct GameConfig {
  GameKind game = GameKind::kNaq;
  std::size_t n = 32;
  double eps = 0.25;
  std::size_t k = 1000;
  MechanismSpec mechanism;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::string out;
  std::size_t threads = 1;
  bool verbose = false;
  bool record_rounds = false;

  double alpha = 0.5;        // composition games
  std::size_t ell = 0;       // aq-prg seed bits; 0 means default_seed_length(k)
  std::vector<std::size_t> n_list;  // sweep grid; empty means {n}
  std::vector<std::size_t> k_list;  // sweep grid; empty means {k}

  std::size_t lemma_samples = 100000;
  std::vector<std::size_t> lemma_m = {1, 10, 100};
  std::uint64_t sd_max_n = 65536;

  // Throws ConfigError.
  void validate() const;
};

struct RoundRecord {
  std::size_t j = 0;
  double bias = 0.0;
  double answer = 0.0;
  double population_error = 0.0;  // |a - q(P)|
  double sample_error = 0.0;      // |a - q(X)|
};

struct GameResult {
  std::vector<RoundRecord> rounds;  // filled when record_rounds is set
  std::size_t N = 0;
  double tau = 0.0;
  double final_gap = 0.0;  // q*(X) - q*(P)
  double final_sample_mean = 0.0;
  double final_population_mean = 0.0;
  std::size_t accused_in_sample = 0;
  std::size_t accused_out_sample = 0;
  double max_population_error = 0.0;
  double max_sample_error = 0.0;
  double max_abs_score = 0.0;
  double score_sum = 0.0;         // sum_i z_i
  double score_sum_outside = 0.0; // sum over i not in X
  std::size_t mechanism_evaluations = 0;
  std::size_t point_bits = 0;  // tag width of universe points (lifted games)
  bool accuracy_violated = false;  // some round had |a - q(P)| > eps
  bool phg_violated = false;       // final_gap > eps
  double wall_time_seconds = 0.0;

  bool flagged() const { return accuracy_violated || phg_violated; }
};

using NaturalFactory = std::function<std::unique_ptr<NaturalMechanism>(
    const Dataset& X, const Population& pop, std::uint64_t trial_seed)>;
using GeneralFactory = std::function<std::unique_ptr<GeneralMechanism>(
    const Dataset& X, const Population& pop, std::uint64_t trial_seed)>;

// Natural game over [N]: the mechanism only ever receives (q(X_1), ...,
// q(X_n)).
GameResult play_naq(const GameConfig& cfg, std::uint64_t seed, const NaturalFactory& make);
// Same loop, but the mechanism is handed the whole query and population.
// For the population-oracle control only.
GameResult play_naq_control(const GameConfig& cfg, std::uint64_t seed, const GeneralFactory& make);
// General game over lifted pairs; cfg.game picks one-time-pad (kAq) or PRG
// (kAqPrg) masks.
GameResult play_aq(const GameConfig& cfg, std::uint64_t seed, const GeneralFactory& make);

NaturalFactory natural_factory(const MechanismSpec& spec, const GameConfig& cfg);
GeneralFactory general_factory(const MechanismSpec& spec, const GameConfig& cfg);

GameResult run_naq_game(const MechanismSpec& spec, const GameConfig& cfg, std::uint64_t seed);
GameResult run_aq_game(const MechanismSpec& spec, const GameConfig& cfg, std::uint64_t seed);

enum class CompositionVariant { kInformationTheoretic, kPrg };

struct CompositionReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t prefix = 0;  // elements published by the first mechanism
  std::size_t stages = 0;  // Encrypermute copies (1 for the PRG variant)
  std::size_t ell = 0;     // PRG seed bits; 0 for the IT variant
  bool distinct = false;
  bool reconstructed = false;  // attack output equals X exactly
  double sample_mean = 0.0;
  double population_mean = 0.0;
  double gap = 0.0;
  std::string failure;
  double wall_time_seconds = 0.0;
};

// Prefix length and seed bits used by the PRG composition demo.
std::size_t prg_demo_prefix(std::size_t n, double alpha);
std::size_t prg_demo_seed_bits(std::size_t k);

CompositionReport run_composition_demo(std::size_t n, double alpha, CompositionVariant variant, std::uint64_t seed);

struct LemmaCell {
  std::string function;
  std::size_t m = 0;
  Estimate estimate;
  bool pass = false;  // estimate >= 1/12 - 3 SE
};

// Named test functions: "mean", "half", "median", "noisy_mean".
BitFunction lemma_function(std::string_view name);
std::vector<LemmaCell> verify_lemma(const std::vector<std::size_t>& m_values, std::size_t samples,
                                    std::uint64_t seed);

struct SdSweep {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  double worst_ratio = 0.0;  // max_N SD * sqrt(N)
};

// SD <= 1/sqrt(N) for every N in [1, max_n], ell = floor(log2(N) / 2), with
// the comparison done in exact rational arithmetic.
SdSweep verify_sd(std::uint64_t max_n);

}  // namespace phg

#endif  // PHG_GAME_H_
