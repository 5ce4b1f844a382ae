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

#ifndef PHG_ERRORS_H_
#define PHG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace phg {

// Argument preconditions throw std::invalid_argument directly. The types
// below cover failures that callers branch on.

// A point was handed to a query or population over a different universe.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No exact route exists for the requested (query, population) pair.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An interactive object was driven out of protocol order.
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Bad configuration or command line; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ciphertext did not decode to a block in range; signals a duplicate-branch
// ciphertext or a corrupted transcript.
class DecryptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phg

#endif  // PHG_ERRORS_H_
