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

#include "phg/config.h"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "phg/errors.h"

namespace phg {
namespace {

using Json = nlohmann::json;

std::uint64_t get_u64(const Json& v, const std::string& key) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::size_t get_size(const Json& v, const std::string& key) {
  const std::uint64_t x = get_u64(v, key);
  if (x > std::numeric_limits<std::size_t>::max()) throw ConfigError("'" + key + "' is too large");
  return static_cast<std::size_t>(x);
}

double get_double(const Json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

bool get_bool(const Json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError("'" + key + "' must be true or false");
  return v.get<bool>();
}

std::string get_string(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::size_t> get_size_list(const Json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("'" + key + "' must be a list of integers");
  std::vector<std::size_t> out;
  for (const auto& e : v) out.push_back(get_size(e, key));
  return out;
}

}  // namespace

GameConfig parse_config(std::string_view json_text, GameConfig base) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  GameConfig c = std::move(base);
  for (const auto& [key, v] : doc.items()) {
    if (key == "game") {
      c.game = parse_game_kind(get_string(v, key));
    } else if (key == "n") {
      c.n = get_size(v, key);
    } else if (key == "eps") {
      c.eps = get_double(v, key);
    } else if (key == "k") {
      c.k = get_size(v, key);
    } else if (key == "mechanism") {
      c.mechanism.tag = get_string(v, key);
    } else if (key == "sigma") {
      c.mechanism.sigma = get_double(v, key);
    } else if (key == "delta") {
      c.mechanism.delta = get_double(v, key);
    } else if (key == "precision") {
      c.mechanism.precision = get_double(v, key);
    } else if (key == "chunks") {
      c.mechanism.chunks = get_size(v, key);
    } else if (key == "probes") {
      c.mechanism.probes = get_size(v, key);
    } else if (key == "trials") {
      c.trials = get_size(v, key);
    } else if (key == "master_seed") {
      c.master_seed = get_u64(v, key);
    } else if (key == "out") {
      c.out = get_string(v, key);
    } else if (key == "threads") {
      c.threads = get_size(v, key);
    } else if (key == "verbose") {
      c.verbose = get_bool(v, key);
    } else if (key == "record_rounds") {
      c.record_rounds = get_bool(v, key);
    } else if (key == "alpha") {
      c.alpha = get_double(v, key);
    } else if (key == "ell") {
      c.ell = get_size(v, key);
    } else if (key == "n_list") {
      c.n_list = get_size_list(v, key);
    } else if (key == "k_list") {
      c.k_list = get_size_list(v, key);
    } else if (key == "lemma_samples") {
      c.lemma_samples = get_size(v, key);
    } else if (key == "lemma_m") {
      c.lemma_m = get_size_list(v, key);
    } else if (key == "sd_max_n") {
      c.sd_max_n = get_u64(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

GameConfig load_config(const std::string& path, GameConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

}  // namespace phg
