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

#ifndef PHG_CONFIG_H_
#define PHG_CONFIG_H_

#include <string>
#include <string_view>

#include "phg/game.h"

namespace phg {

// Flat JSON object whose keys are GameConfig field names; the mechanism is
// a tag under "mechanism" with its parameters as sibling keys (sigma, delta,
// precision, chunks, probes). Unknown keys, wrong types and out-of-range
// values throw ConfigError. Keys not present keep their value in `base`.
GameConfig parse_config(std::string_view json_text, GameConfig base = {});
GameConfig load_config(const std::string& path, GameConfig base = {});

}  // namespace phg

#endif  // PHG_CONFIG_H_
