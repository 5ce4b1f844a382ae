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

#include "phg/game.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "phg/composition.h"
#include "phg/errors.h"
#include "phg/lifting.h"
#include "phg/query.h"

namespace phg {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool known_tag(const std::string& tag) {
  return tag == "empirical" || tag == "rounded" || tag == "gaussian" || tag == "split" || tag == "random" ||
         tag == "oracle" || tag == "probe";
}

void record_round(GameResult& r, bool keep, std::size_t j, double bias, double a, double pop_mean,
                  double sample_mean) {
  const double pop_err = std::abs(a - pop_mean);
  const double sample_err = std::abs(a - sample_mean);
  r.max_population_error = std::max(r.max_population_error, pop_err);
  r.max_sample_error = std::max(r.max_sample_error, sample_err);
  if (keep) r.rounds.push_back({j, bias, a, pop_err, sample_err});
}

// Accusation counts, score sums and flags once the rounds are over.
void finish(GameResult& r, const FingerprintingAttack& attack, const Dataset& X, const GapReport& gap,
            double eps) {
  std::vector<std::uint8_t> in_sample(attack.config().N, 0);
  for (const auto& x : X) in_sample[index_of(x)] = 1;
  const auto scores = attack.scores();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    r.score_sum += scores[i];
    if (!in_sample[i]) r.score_sum_outside += scores[i];
    if (attack.accused(i)) ++(in_sample[i] ? r.accused_in_sample : r.accused_out_sample);
  }
  r.max_abs_score = attack.max_abs_score();
  r.final_gap = gap.gap;
  r.final_sample_mean = gap.sample_mean;
  r.final_population_mean = gap.population_mean;
  r.accuracy_violated = r.max_population_error > eps;
  r.phg_violated = r.final_gap > eps;
}

std::size_t resolved_chunks(const MechanismSpec& spec, const GameConfig& cfg) {
  return spec.chunks == 0 ? cfg.k : spec.chunks;
}

std::size_t resolved_probes(const MechanismSpec& spec, const GameConfig& cfg) {
  return spec.probes == 0 ? std::max<std::size_t>(cfg.n / 2, 1) : spec.probes;
}

double median_of_bits(std::span<const std::uint8_t> x) {
  std::size_t ones = 0;
  for (auto b : x) ones += b;
  const std::size_t m = x.size();
  const std::size_t zeros = m - ones;
  // Sorted, positions [0, zeros) hold 0 and the rest 1.
  const auto at = [&](std::size_t pos) { return pos < zeros ? 0.0 : 1.0; };
  return m % 2 == 1 ? at(m / 2) : 0.5 * (at(m / 2 - 1) + at(m / 2));
}

}  // namespace

std::string_view to_string(GameKind kind) {
  switch (kind) {
    case GameKind::kNaq: return "naq";
    case GameKind::kAq: return "aq";
    case GameKind::kAqPrg: return "aq-prg";
    case GameKind::kComposeIt: return "compose-it";
    case GameKind::kComposePrg: return "compose-prg";
    case GameKind::kVerifyLemma: return "verify-lemma";
    case GameKind::kVerifySd: return "verify-sd";
  }
  return "unknown";
}

GameKind parse_game_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (auto kind : {GameKind::kNaq, GameKind::kAq, GameKind::kAqPrg, GameKind::kComposeIt, GameKind::kComposePrg,
                    GameKind::kVerifyLemma, GameKind::kVerifySd}) {
    if (lower == to_string(kind)) return kind;
  }
  throw ConfigError("unknown game kind '" + std::string(name) + "'");
}

bool MechanismSpec::natural() const { return tag != "oracle" && tag != "probe"; }

double MechanismSpec::resolved_sigma(double eps, std::size_t k) const {
  return sigma >= 0.0 ? sigma : calibrate_sigma(eps, delta, k);
}

std::string MechanismSpec::label(double eps, std::size_t k) const {
  char buf[64];
  if (tag == "gaussian") {
    std::snprintf(buf, sizeof buf, "gaussian(sigma=%.6g)", resolved_sigma(eps, k));
    return buf;
  }
  if (tag == "rounded") {
    std::snprintf(buf, sizeof buf, "rounded(precision=%.6g)", precision);
    return buf;
  }
  return tag;
}

void GameConfig::validate() const {
  if (n == 0) throw ConfigError("n must be at least 1");
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (k == 0) throw ConfigError("k must be at least 1");
  if (trials == 0) throw ConfigError("trials must be at least 1");
  if (threads == 0) throw ConfigError("threads must be at least 1");
  for (auto v : n_list) {
    if (v == 0) throw ConfigError("n_list entries must be positive");
  }
  for (auto v : k_list) {
    if (v == 0) throw ConfigError("k_list entries must be positive");
  }

  switch (game) {
    case GameKind::kNaq:
    case GameKind::kAq:
    case GameKind::kAqPrg: {
      const auto& m = mechanism;
      if (!known_tag(m.tag)) throw ConfigError("unknown mechanism '" + m.tag + "'");
      if (game == GameKind::kNaq && m.tag == "probe") {
        throw ConfigError("mechanism 'probe' is not natural and cannot play the natural game");
      }
      if (m.tag == "gaussian" && m.sigma < 0.0 && !(m.delta > 0.0 && m.delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1)");
      }
      if (m.tag == "rounded" && !(m.precision > 0.0)) throw ConfigError("precision must be positive");
      if (m.tag == "split") {
        for (auto nn : n_list.empty() ? std::vector<std::size_t>{n} : n_list) {
          for (auto kk : k_list.empty() ? std::vector<std::size_t>{k} : k_list) {
            const std::size_t chunks = m.chunks == 0 ? kk : m.chunks;
            if (chunks > nn) throw ConfigError("split mechanism needs chunks <= n");
            if (chunks < kk) throw ConfigError("split mechanism needs at least k chunks");
          }
        }
      }
      if (game == GameKind::kAqPrg && ell != 0 && ell < kMinSeedBits) {
        throw ConfigError("ell must be at least 16");
      }
      break;
    }
    case GameKind::kComposeIt:
    case GameKind::kComposePrg:
      if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
      for (auto nn : n_list.empty() ? std::vector<std::size_t>{n} : n_list) {
        if (nn < 8) throw ConfigError("composition games need n >= 8");
        if (default_element_bits(nn) > 64) throw ConfigError("composition games need 5 ceil(log2 n) <= 64");
      }
      break;
    case GameKind::kVerifyLemma:
      if (lemma_samples < 1000) throw ConfigError("lemma_samples must be at least 1000");
      if (lemma_m.empty()) throw ConfigError("lemma_m must not be empty");
      for (auto m : lemma_m) {
        if (m == 0) throw ConfigError("lemma_m entries must be positive");
      }
      break;
    case GameKind::kVerifySd:
      if (sd_max_n == 0 || sd_max_n > (std::uint64_t{1} << 24)) throw ConfigError("sd_max_n must lie in [1, 2^24]");
      break;
  }
}

NaturalFactory natural_factory(const MechanismSpec& spec, const GameConfig& cfg) {
  if (!spec.natural()) throw ConfigError("mechanism '" + spec.tag + "' is not natural");
  return [spec, cfg](const Dataset& X, const Population&, std::uint64_t seed) -> std::unique_ptr<NaturalMechanism> {
    Rng rng(stream_seed(seed, Stream::kMechanism));
    if (spec.tag == "empirical") return std::make_unique<EmpiricalMeanMechanism>();
    if (spec.tag == "rounded") return std::make_unique<RoundedMeanMechanism>(spec.precision);
    if (spec.tag == "gaussian") {
      return std::make_unique<GaussianMechanism>(spec.resolved_sigma(cfg.eps, cfg.k), std::move(rng));
    }
    if (spec.tag == "split") return std::make_unique<SampleSplitMechanism>(X.size(), resolved_chunks(spec, cfg));
    if (spec.tag == "random") return std::make_unique<RandomAnswerMechanism>(std::move(rng));
    throw ConfigError("unknown mechanism '" + spec.tag + "'");
  };
}

GeneralFactory general_factory(const MechanismSpec& spec, const GameConfig& cfg) {
  if (spec.natural()) {
    auto natural = natural_factory(spec, cfg);
    return [natural](const Dataset& X, const Population& pop, std::uint64_t seed) {
      return lift_natural(natural(X, pop, seed), X);
    };
  }
  if (spec.tag == "oracle") {
    return [](const Dataset&, const Population& pop, std::uint64_t) -> std::unique_ptr<GeneralMechanism> {
      return std::make_unique<PopulationOracle>(pop);
    };
  }
  const std::size_t probes = resolved_probes(spec, cfg);
  return [probes](const Dataset& X, const Population& pop, std::uint64_t seed) -> std::unique_ptr<GeneralMechanism> {
    Rng rng(stream_seed(seed, Stream::kMechanism));
    const auto* pairs = std::get_if<UniformPairs>(&pop.kind());
    if (pairs == nullptr) throw ConfigError("probe mechanism needs a lifted (pairs) universe");
    const std::size_t N = pairs->tags->size();
    const std::size_t width = pairs->tags->front().size();
    Dataset probe_points;
    probe_points.reserve(probes);
    for (std::size_t p = 0; p < probes; ++p) {
      const auto i = static_cast<std::size_t>(rng.uniform_below(N));
      probe_points.push_back(PairPoint{i, BitString::random(width, rng)});
    }
    return std::make_unique<ProbingMechanism>(X, std::move(probe_points));
  };
}

GameResult play_naq(const GameConfig& cfg, std::uint64_t seed, const NaturalFactory& make) {
  const auto start = Clock::now();
  FingerprintingAttack attack(cfg.n, cfg.eps, cfg.k);
  const auto& ac = attack.config();
  const Population pop = Population::uniform_index(ac.N);
  Rng data(stream_seed(seed, Stream::kDataset));
  Rng analyst(stream_seed(seed, Stream::kAnalyst));
  const Dataset X = sample_dataset(pop, cfg.n, data);
  auto mech = make(X, pop, seed);

  GameResult r;
  r.N = ac.N;
  r.tau = ac.tau;
  const bool keep = cfg.record_rounds || cfg.verbose;
  if (keep) r.rounds.reserve(cfg.k);
  std::vector<double> qx(cfg.n);
  for (std::size_t j = 0; j < cfg.k; ++j) {
    double a = 0.0;
    {
      const Query q = attack.next_query(analyst);
      for (std::size_t t = 0; t < X.size(); ++t) qx[t] = q.evaluate(X[t]);
      a = mech->answer(qx);
      r.mechanism_evaluations += q.evaluations();
    }
    record_round(r, keep, j + 1, attack.bias(), a, attack.round_population_mean(), empirical_mean(qx));
    attack.process_answer(a);
  }
  finish(r, attack, X, phg_gap(attack.final_query(), X, pop), cfg.eps);
  r.wall_time_seconds = seconds_since(start);
  return r;
}

GameResult play_naq_control(const GameConfig& cfg, std::uint64_t seed, const GeneralFactory& make) {
  const auto start = Clock::now();
  FingerprintingAttack attack(cfg.n, cfg.eps, cfg.k);
  const auto& ac = attack.config();
  const Population pop = Population::uniform_index(ac.N);
  Rng data(stream_seed(seed, Stream::kDataset));
  Rng analyst(stream_seed(seed, Stream::kAnalyst));
  const Dataset X = sample_dataset(pop, cfg.n, data);
  auto mech = make(X, pop, seed);

  GameResult r;
  r.N = ac.N;
  r.tau = ac.tau;
  const bool keep = cfg.record_rounds || cfg.verbose;
  for (std::size_t j = 0; j < cfg.k; ++j) {
    double a = 0.0;
    double sample_mean = 0.0;
    {
      const Query q = attack.next_query(analyst);
      a = clamp_unit(mech->answer(q));
      r.mechanism_evaluations += q.evaluations();
      sample_mean = query_mean_sample(q, X);
    }
    record_round(r, keep, j + 1, attack.bias(), a, attack.round_population_mean(), sample_mean);
    attack.process_answer(a);
  }
  finish(r, attack, X, phg_gap(attack.final_query(), X, pop), cfg.eps);
  r.wall_time_seconds = seconds_since(start);
  return r;
}

GameResult play_aq(const GameConfig& cfg, std::uint64_t seed, const GeneralFactory& make) {
  if (cfg.game != GameKind::kAq && cfg.game != GameKind::kAqPrg) {
    throw ConfigError("play_aq needs game aq or aq-prg");
  }
  const auto start = Clock::now();
  FingerprintingAttack attack(cfg.n, cfg.eps, cfg.k);
  const auto& ac = attack.config();
  Rng data(stream_seed(seed, Stream::kDataset));
  Rng analyst(stream_seed(seed, Stream::kAnalyst));
  Rng masks(stream_seed(seed, Stream::kMasks));

  std::shared_ptr<const PadSource> inst;
  if (cfg.game == GameKind::kAq) {
    inst = build_masked_instance(ac.N, cfg.k, masks);
  } else {
    inst = build_prg_instance(ac.N, cfg.k, cfg.ell == 0 ? default_seed_length(cfg.k) : cfg.ell, masks);
  }
  const Population pop = pair_population(*inst);
  const Dataset X = sample_dataset(pop, cfg.n, data);
  auto mech = make(X, pop, seed);

  GameResult r;
  r.N = ac.N;
  r.tau = ac.tau;
  r.point_bits = inst->tag_width();
  const bool keep = cfg.record_rounds || cfg.verbose;
  for (std::size_t j = 0; j < cfg.k; ++j) {
    double a = 0.0;
    double pop_mean = 0.0;
    double sample_mean = 0.0;
    {
      const Query q = lift_query(attack.next_query(analyst), inst, j);
      a = clamp_unit(mech->answer(q));
      r.mechanism_evaluations += q.evaluations();
      pop_mean = query_mean_population(q, pop);
      sample_mean = query_mean_sample(q, X);
    }
    record_round(r, keep, j + 1, attack.bias(), a, pop_mean, sample_mean);
    attack.process_answer(a);
  }
  finish(r, attack, X, phg_gap(lift_final_query(attack.final_query()), X, pop), cfg.eps);
  r.wall_time_seconds = seconds_since(start);
  return r;
}

GameResult run_naq_game(const MechanismSpec& spec, const GameConfig& cfg, std::uint64_t seed) {
  if (spec.tag == "oracle") return play_naq_control(cfg, seed, general_factory(spec, cfg));
  return play_naq(cfg, seed, natural_factory(spec, cfg));
}

GameResult run_aq_game(const MechanismSpec& spec, const GameConfig& cfg, std::uint64_t seed) {
  return play_aq(cfg, seed, general_factory(spec, cfg));
}

std::size_t prg_demo_prefix(std::size_t n, double alpha) {
  if (n < 2) throw std::invalid_argument("prg_demo_prefix: n must be at least 2");
  const auto root = static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), alpha) - 1e-9));
  std::size_t k_min = 1;
  BigInt f = 1;
  while (f < (BigInt(1) << kMinSeedBits)) f *= ++k_min;
  return std::min(std::max(root, k_min), n - 1);
}

std::size_t prg_demo_seed_bits(std::size_t k) { return std::max(kMinSeedBits, default_prg_seed_bits(k)); }

CompositionReport run_composition_demo(std::size_t n, double alpha, CompositionVariant variant, std::uint64_t seed) {
  if (n < 8) throw std::invalid_argument("run_composition_demo: n must be at least 8");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("run_composition_demo: alpha must lie in (0, 1)");
  const auto start = Clock::now();
  CompositionReport rep;
  rep.n = n;
  rep.d = default_element_bits(n);
  const Population pop = Population::uniform_bits(rep.d);
  Rng data(stream_seed(seed, Stream::kDataset));
  Rng mech(stream_seed(seed, Stream::kMechanism));

  std::vector<BitString> X;
  X.reserve(n);
  for (std::size_t i = 0; i < n; ++i) X.push_back(std::get<BitsPoint>(pop.sample(data)).bits);
  rep.distinct = all_distinct(X);

  std::vector<BitString> recovered;
  if (variant == CompositionVariant::kInformationTheoretic) {
    const auto schedule = CompositionSchedule::make(n, alpha, rep.d);
    rep.prefix = schedule.prefix;
    rep.stages = schedule.stages.size();
    std::vector<BigInt> outputs;
    outputs.reserve(schedule.stages.size());
    for (const auto& stage : schedule.stages) outputs.push_back(encrypermute(X, stage, mech));
    auto attack = composition_attack(std::span<const BitString>(X).first(schedule.prefix), outputs, schedule);
    if (attack.success) {
      recovered = std::move(attack.dataset);
    } else {
      rep.failure = attack.failure;
    }
  } else {
    const std::size_t k = prg_demo_prefix(n, alpha);
    rep.prefix = k;
    rep.stages = 1;
    rep.ell = prg_demo_seed_bits(k);
    const ChaChaExpander g;
    const BitString c = prg_encrypermute(X, k, rep.ell, g, mech);
    const std::span<const BitString> prefix = std::span<const BitString>(X).first(k);
    if (all_distinct(prefix)) {
      recovered.assign(prefix.begin(), prefix.end());
      auto rest = prg_decrypt(c, prefix, rep.ell, g);
      recovered.insert(recovered.end(), rest.begin(), rest.end());
    } else {
      rep.failure = "published prefix repeats an element";
    }
  }

  rep.reconstructed = !recovered.empty() && recovered == X;
  if (!recovered.empty()) {
    Dataset points;
    points.reserve(n);
    for (const auto& x : X) points.push_back(BitsPoint{x});
    const GapReport gap = phg_gap(membership_query(recovered, rep.d), points, pop);
    rep.sample_mean = gap.sample_mean;
    rep.population_mean = gap.population_mean;
    rep.gap = gap.gap;
  }
  rep.wall_time_seconds = seconds_since(start);
  return rep;
}

BitFunction lemma_function(std::string_view name) {
  if (name == "mean") {
    return [](std::span<const std::uint8_t> x, Rng&) {
      double s = 0.0;
      for (auto b : x) s += b;
      return s / static_cast<double>(x.size());
    };
  }
  if (name == "half") return [](std::span<const std::uint8_t>, Rng&) { return 0.5; };
  if (name == "median") return [](std::span<const std::uint8_t> x, Rng&) { return median_of_bits(x); };
  if (name == "noisy_mean") {
    return [](std::span<const std::uint8_t> x, Rng& rng) {
      double s = 0.0;
      for (auto b : x) s += b;
      return clamp_unit(s / static_cast<double>(x.size()) + 0.1 * rng.normal());
    };
  }
  throw std::invalid_argument("unknown lemma function '" + std::string(name) + "'");
}

std::vector<LemmaCell> verify_lemma(const std::vector<std::size_t>& m_values, std::size_t samples,
                                    std::uint64_t seed) {
  std::vector<LemmaCell> cells;
  std::uint64_t index = 0;
  for (const char* name : {"mean", "half", "median", "noisy_mean"}) {
    const auto f = lemma_function(name);
    for (auto m : m_values) {
      Rng rng(derive_seed(seed, index++));
      LemmaCell cell;
      cell.function = name;
      cell.m = m;
      cell.estimate = fp_lemma_estimate(f, m, samples, rng);
      cell.pass = cell.estimate.mean >= kFingerprintingBound - 3.0 * cell.estimate.standard_error;
      cells.push_back(cell);
    }
  }
  return cells;
}

SdSweep verify_sd(std::uint64_t max_n) {
  SdSweep s;
  for (std::uint64_t N = 1; N <= max_n; ++N) {
    const std::size_t ell = static_cast<std::size_t>(std::bit_width(N) - 1) / 2;
    const Rational sd = low_bits_sd(N, ell);
    const Rational scaled = sd * sd * N;  // SD <= 1/sqrt(N)  <=>  SD^2 N <= 1
    ++s.checked;
    if (scaled > 1) ++s.violations;
    s.worst_ratio = std::max(s.worst_ratio, std::sqrt(static_cast<double>(scaled)));
  }
  return s;
}

}  // namespace phg
