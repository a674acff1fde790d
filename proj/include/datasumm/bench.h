// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DATASUMM_BENCH_H_
#define DATASUMM_BENCH_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "datasumm/models.h"
#include "json.hpp"

namespace datasumm {

struct BenchReport {
  std::string function;
  int n = 0;
  double fraction = 0.0;
  int k = 0;
  double memoized_seconds = 0.0;  // median over repeats
  double naive_seconds = 0.0;     // scratch gains, median over repeats
  double speedup = 0.0;           // naive / memoized
  bool selections_equal = false;
  std::string environment;
};

// Seeded synthetic inputs for a model: uniform features, random concept
// sets, random probabilities or random scores as the model requires.
ModelInputs SyntheticInputs(const std::string& model, int n, uint64_t seed);

// Times lazy greedy with memoized gains against lazy greedy with gains
// recomputed from scratch. k = ceil(fraction * n). Throws kBenchInvalid
// when the two runs select different items.
BenchReport BenchFunction(const std::string& model, int n, double fraction,
                          uint64_t seed, int repeats = 3);

const std::vector<std::string>& DefaultBenchModels();
const std::vector<double>& DefaultBenchFractions();

std::vector<BenchReport> BenchMatrix(std::span<const std::string> models, int n,
                                     std::span<const double> fractions,
                                     uint64_t seed, int repeats = 3);

// Header "function,n,fraction,k,memoized_s,naive_s,speedup,selections_equal".
std::string BenchCsv(std::span<const BenchReport> reports);
nlohmann::json BenchJson(std::span<const BenchReport> reports);

// CPU model and thread note for reports.
std::string EnvironmentNote();

}  // namespace datasumm

#endif  // DATASUMM_BENCH_H_
