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

#include "phg/trials.h"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "phg/errors.h"
#include "phg/random.h"
#include "phg/stats.h"

namespace phg {
namespace {

using Json = nlohmann::ordered_json;

bool is_attack_game(GameKind g) { return g == GameKind::kNaq || g == GameKind::kAq || g == GameKind::kAqPrg; }
bool is_composition_game(GameKind g) { return g == GameKind::kComposeIt || g == GameKind::kComposePrg; }

TrialRecord run_one(const GameConfig& cfg, std::size_t index) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(cfg.master_seed, index);
  switch (cfg.game) {
    case GameKind::kNaq:
      rec.result = run_naq_game(cfg.mechanism, cfg, rec.seed);
      break;
    case GameKind::kAq:
    case GameKind::kAqPrg:
      rec.result = run_aq_game(cfg.mechanism, cfg, rec.seed);
      break;
    case GameKind::kComposeIt:
      rec.composition = run_composition_demo(cfg.n, cfg.alpha, CompositionVariant::kInformationTheoretic, rec.seed);
      break;
    case GameKind::kComposePrg:
      rec.composition = run_composition_demo(cfg.n, cfg.alpha, CompositionVariant::kPrg, rec.seed);
      break;
    default:
      throw ConfigError("game '" + std::string(to_string(cfg.game)) + "' does not run trials");
  }
  return rec;
}

// Work pool over trial indices; records land in index order.
std::vector<TrialRecord> run_pool(const GameConfig& cfg) {
  std::vector<TrialRecord> out(cfg.trials);
  const std::size_t workers = std::min(cfg.threads, cfg.trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) out[t] = run_one(cfg, t);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < cfg.trials; t = next++) {
        try {
          out[t] = run_one(cfg, t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next = cfg.trials;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

void summarize(TrialAggregate& a) {
  const auto& cfg = a.config;
  std::vector<double> gaps, pop_errs, accused_out;
  for (const auto& rec : a.trials) {
    if (rec.composition) {
      const auto& c = *rec.composition;
      a.flagged += c.reconstructed ? 1 : 0;
      a.phg_violations += c.gap > cfg.eps ? 1 : 0;
      gaps.push_back(c.gap);
      pop_errs.push_back(0.0);
      accused_out.push_back(0.0);
    } else {
      const auto& r = rec.result;
      a.flagged += r.flagged() ? 1 : 0;
      a.phg_violations += r.phg_violated ? 1 : 0;
      a.accuracy_violations += r.accuracy_violated ? 1 : 0;
      gaps.push_back(r.final_gap);
      pop_errs.push_back(r.max_population_error);
      accused_out.push_back(static_cast<double>(r.accused_out_sample));
    }
  }
  const double t = static_cast<double>(a.trials.size());
  a.success_rate = static_cast<double>(a.flagged) / t;
  a.phg_rate = static_cast<double>(a.phg_violations) / t;
  a.accuracy_rate = static_cast<double>(a.accuracy_violations) / t;
  a.mean_final_gap = order_free_mean(gaps);
  a.p90_final_gap = percentile(gaps, 0.9);
  a.mean_max_pop_err = order_free_mean(pop_errs);
  a.mean_accused_out = order_free_mean(accused_out);

  auto& row = a.row;
  row.game = std::string(to_string(cfg.game));
  row.n = cfg.n;
  row.trials = a.trials.size();
  row.success_rate = a.success_rate;
  row.mean_final_gap = a.mean_final_gap;
  row.p90_final_gap = a.p90_final_gap;
  row.mean_max_pop_err = a.mean_max_pop_err;
  row.mean_accused_out = a.mean_accused_out;
  row.seed = cfg.master_seed;
  if (is_composition_game(cfg.game)) {
    const auto& first = *a.trials.front().composition;
    row.eps = cfg.eps;
    row.k = first.prefix;
    row.N = first.d;
    row.mechanism = cfg.game == GameKind::kComposeIt ? "encrypermute" : "prg-encrypermute";
  } else {
    row.eps = cfg.eps;
    row.k = cfg.k;
    row.N = universe_size(cfg.n, cfg.eps);
    row.mechanism = cfg.mechanism.label(cfg.eps, cfg.k);
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json row_json(const AggregateRow& r) {
  Json j;
  j["game"] = r.game;
  j["n"] = r.n;
  j["eps"] = r.eps;
  j["k"] = r.k;
  j["N"] = r.N;
  j["mechanism"] = r.mechanism;
  j["trials"] = r.trials;
  j["success_rate"] = r.success_rate;
  j["mean_final_gap"] = r.mean_final_gap;
  j["p90_final_gap"] = r.p90_final_gap;
  j["mean_max_pop_err"] = r.mean_max_pop_err;
  j["mean_accused_out"] = r.mean_accused_out;
  j["seed"] = r.seed;
  return j;
}

Json trial_json(const TrialRecord& rec) {
  Json j;
  j["index"] = rec.index;
  j["seed"] = rec.seed;
  if (rec.composition) {
    const auto& c = *rec.composition;
    j["n"] = c.n;
    j["d"] = c.d;
    j["prefix"] = c.prefix;
    j["stages"] = c.stages;
    j["ell"] = c.ell;
    j["distinct"] = c.distinct;
    j["reconstructed"] = c.reconstructed;
    j["sample_mean"] = c.sample_mean;
    j["population_mean"] = c.population_mean;
    j["gap"] = c.gap;
    j["failure"] = c.failure;
    j["wall_time_seconds"] = c.wall_time_seconds;
    return j;
  }
  const auto& r = rec.result;
  j["N"] = r.N;
  j["tau"] = r.tau;
  j["final_gap"] = r.final_gap;
  j["final_sample_mean"] = r.final_sample_mean;
  j["final_population_mean"] = r.final_population_mean;
  j["accused_in_sample"] = r.accused_in_sample;
  j["accused_out_sample"] = r.accused_out_sample;
  j["max_population_error"] = r.max_population_error;
  j["max_sample_error"] = r.max_sample_error;
  j["max_abs_score"] = r.max_abs_score;
  j["accuracy_violated"] = r.accuracy_violated;
  j["phg_violated"] = r.phg_violated;
  j["point_bits"] = r.point_bits;
  j["wall_time_seconds"] = r.wall_time_seconds;
  Json rounds = Json::array();
  for (const auto& rr : r.rounds) {
    rounds.push_back(
        {{"j", rr.j}, {"bias", rr.bias}, {"answer", rr.answer}, {"population_error", rr.population_error},
         {"sample_error", rr.sample_error}});
  }
  j["rounds"] = std::move(rounds);
  return j;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

TrialAggregate run_trials(const GameConfig& cfg) {
  if (!is_attack_game(cfg.game) && !is_composition_game(cfg.game)) {
    throw ConfigError("run_trials needs an attack or composition game");
  }
  cfg.validate();
  TrialAggregate a;
  a.config = cfg;
  a.config.n_list.clear();
  a.config.k_list.clear();
  a.trials = run_pool(a.config);
  summarize(a);
  return a;
}

std::vector<TrialAggregate> run_experiment(const GameConfig& cfg) {
  cfg.validate();
  std::vector<TrialAggregate> cells;
  if (cfg.game == GameKind::kVerifyLemma) {
    for (auto& cell : verify_lemma(cfg.lemma_m, cfg.lemma_samples, cfg.master_seed)) {
      TrialAggregate a;
      a.config = cfg;
      a.row = {std::string(to_string(cfg.game)), cell.m, kFingerprintingBound, 0, 0, cell.function,
               cfg.lemma_samples, cell.pass ? 1.0 : 0.0, cell.estimate.mean, cell.estimate.standard_error,
               0.0, 0.0, cfg.master_seed};
      a.success_rate = a.row.success_rate;
      a.lemma.push_back(std::move(cell));
      cells.push_back(std::move(a));
    }
    return cells;
  }
  if (cfg.game == GameKind::kVerifySd) {
    TrialAggregate a;
    a.config = cfg;
    a.sd = verify_sd(cfg.sd_max_n);
    const double checked = static_cast<double>(a.sd->checked);
    a.success_rate = 1.0 - static_cast<double>(a.sd->violations) / checked;
    a.row = {std::string(to_string(cfg.game)), static_cast<std::size_t>(cfg.sd_max_n), 0.0, 0, a.sd->checked,
             "low-bits", static_cast<std::size_t>(a.sd->checked), a.success_rate, a.sd->worst_ratio,
             a.sd->worst_ratio, 0.0, 0.0, cfg.master_seed};
    cells.push_back(std::move(a));
    return cells;
  }
  const auto ns = cfg.n_list.empty() ? std::vector<std::size_t>{cfg.n} : cfg.n_list;
  const auto ks = cfg.k_list.empty() || is_composition_game(cfg.game) ? std::vector<std::size_t>{cfg.k} : cfg.k_list;
  for (auto n : ns) {
    for (auto k : ks) {
      GameConfig cell = cfg;
      cell.n = n;
      cell.k = k;
      cell.n_list.clear();
      cell.k_list.clear();
      cells.push_back(run_trials(cell));
    }
  }
  return cells;
}

void write_csv(std::ostream& out, const std::vector<TrialAggregate>& cells) {
  out << kCsvHeader << '\n';
  for (const auto& c : cells) {
    const auto& r = c.row;
    out << r.game << ',' << r.n << ',' << format_double(r.eps) << ',' << r.k << ',' << r.N << ',' << r.mechanism
        << ',' << r.trials << ',' << format_double(r.success_rate) << ',' << format_double(r.mean_final_gap) << ','
        << format_double(r.p90_final_gap) << ',' << format_double(r.mean_max_pop_err) << ','
        << format_double(r.mean_accused_out) << ',' << r.seed << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<TrialAggregate>& cells, bool verbose) {
  Json rows = Json::array();
  for (const auto& c : cells) {
    Json j = row_json(c.row);
    if (verbose) {
      Json trials = Json::array();
      for (const auto& rec : c.trials) trials.push_back(trial_json(rec));
      j["per_trial"] = std::move(trials);
      if (!c.lemma.empty()) {
        j["standard_error"] = c.lemma.front().estimate.standard_error;
        j["pass"] = c.lemma.front().pass;
      }
      if (c.sd) {
        j["checked"] = c.sd->checked;
        j["violations"] = c.sd->violations;
        j["worst_ratio"] = c.sd->worst_ratio;
      }
    }
    rows.push_back(std::move(j));
  }
  Json doc;
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

std::vector<TrialAggregate> run_and_write(const GameConfig& cfg, std::ostream& default_out) {
  cfg.validate();
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::out | std::ios::trunc);
    if (!file) throw ConfigError("cannot open output file '" + cfg.out + "'");
  }
  std::ostream& out = cfg.out.empty() ? default_out : file;
  GameConfig run = cfg;
  run.record_rounds = cfg.record_rounds || cfg.verbose;
  auto cells = run_experiment(run);
  if (ends_with(cfg.out, ".json")) {
    write_json(out, cells, cfg.verbose);
  } else {
    write_csv(out, cells);
  }
  out.flush();
  if (!out) throw std::runtime_error("failed writing output");
  return cells;
}

}  // namespace phg
