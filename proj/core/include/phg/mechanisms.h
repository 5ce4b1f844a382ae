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

#ifndef PHG_MECHANISMS_H_
#define PHG_MECHANISMS_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "phg/query.h"
#include "phg/random.h"
#include "phg/universe.h"

namespace phg {

// Answers a statistical query from the vector (q(X_1), ..., q(X_n)) alone.
class NaturalMechanism {
 public:
  virtual ~NaturalMechanism() = default;
  virtual double answer(std::span<const double> sample_values) = 0;
};

// Holds its dataset and may evaluate the query anywhere.
class GeneralMechanism {
 public:
  virtual ~GeneralMechanism() = default;
  virtual double answer(const Query& q) = 0;
};

double empirical_mean(std::span<const double> values);

// Empirical mean rounded to the nearest multiple of `precision`; exact
// half-way cases round toward zero.
double rounded_empirical_mean(std::span<const double> values, double precision);

// Empirical mean plus N(0, sigma^2), clamped to [0, 1].
double gaussian_answer(std::span<const double> values, double sigma, Rng& rng);

// sigma = eps / (2 sqrt(2 ln(4k / delta))): k independent perturbations all
// stay below eps/2 with probability at least 1 - delta.
double calibrate_sigma(double eps, double delta, std::size_t k);

// True population mean, clamped to [0, 1].
double oracle_answer(const Query& q, const Population& pop);

inline double clamp_unit(double a) { return a < 0.0 ? 0.0 : (a > 1.0 ? 1.0 : a); }

class EmpiricalMeanMechanism : public NaturalMechanism {
 public:
  double answer(std::span<const double> v) override { return clamp_unit(empirical_mean(v)); }
};

class RoundedMeanMechanism : public NaturalMechanism {
 public:
  explicit RoundedMeanMechanism(double precision);
  double answer(std::span<const double> v) override {
    return clamp_unit(rounded_empirical_mean(v, precision_));
  }

 private:
  double precision_;
};

class GaussianMechanism : public NaturalMechanism {
 public:
  GaussianMechanism(double sigma, Rng rng);
  double answer(std::span<const double> v) override { return gaussian_answer(v, sigma_, rng_); }
  double sigma() const { return sigma_; }

 private:
  double sigma_;
  Rng rng_;
};

// Answers query j from the j-th fresh chunk of the sample. Chunks are
// contiguous and equal; the last absorbs the remainder.
class SampleSplitMechanism : public NaturalMechanism {
 public:
  SampleSplitMechanism(std::size_t n, std::size_t chunks);
  double answer(std::span<const double> v) override;

  std::size_t chunks() const { return chunks_; }
  std::size_t next_chunk() const { return next_; }
  // [begin, end) of chunk c.
  std::pair<std::size_t, std::size_t> chunk_range(std::size_t c) const;

 private:
  std::size_t n_;
  std::size_t chunks_;
  std::size_t next_ = 0;
};

// Ignores the data; answers uniformly at random in [0, 1].
class RandomAnswerMechanism : public NaturalMechanism {
 public:
  explicit RandomAnswerMechanism(Rng rng) : rng_(std::move(rng)) {}
  double answer(std::span<const double>) override { return rng_.uniform01(); }

 private:
  Rng rng_;
};

// Test control: knows the population and answers its exact mean.
class PopulationOracle : public GeneralMechanism {
 public:
  explicit PopulationOracle(Population pop) : pop_(std::move(pop)) {}
  double answer(const Query& q) override { return oracle_answer(q, pop_); }

 private:
  Population pop_;
};

// A natural mechanism run as a general one: evaluates each query exactly on
// the points of its dataset and forwards that vector.
class LiftedNaturalMechanism : public GeneralMechanism {
 public:
  LiftedNaturalMechanism(std::unique_ptr<NaturalMechanism> inner, Dataset X);
  double answer(const Query& q) override;

 private:
  std::unique_ptr<NaturalMechanism> inner_;
  Dataset X_;
  std::vector<double> scratch_;
};

std::unique_ptr<GeneralMechanism> lift_natural(std::unique_ptr<NaturalMechanism> mech, Dataset X);

// General mechanism that also evaluates every query at a fixed set of probe
// points it drew from the universe, remembers those values, and answers the
// average over sample and probes.
class ProbingMechanism : public GeneralMechanism {
 public:
  ProbingMechanism(Dataset X, Dataset probes);
  double answer(const Query& q) override;

  const std::vector<std::vector<double>>& memory() const { return memory_; }

 private:
  Dataset X_;
  Dataset probes_;
  std::vector<std::vector<double>> memory_;
};

}  // namespace phg

#endif  // PHG_MECHANISMS_H_
