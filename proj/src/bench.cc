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

#include "datasumm/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <thread>

#include "datasumm/error.h"
#include "datasumm/optimize.h"

namespace datasumm {
namespace {

constexpr int kFeatureDims = 16;
constexpr int kProbabilityConcepts = 32;

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

ModelInputs SyntheticInputs(const std::string& model, int n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ModelInputs in;
  switch (SourceOf(model)) {
    case ModelSource::kFeatures: {
      std::vector<double> values(static_cast<size_t>(n) * kFeatureDims);
      for (double& v : values) v = unit(rng);
      in.features =
          std::make_shared<const FeatureMatrix>(n, kFeatureDims, std::move(values));
      if (NeedsScores(model)) {
        in.scores.resize(n);
        for (double& s : in.scores) s = unit(rng);
      }
      break;
    }
    case ModelSource::kConcepts: {
      auto data = std::make_shared<ConceptData>();
      const int m = std::max(10, n / 5);
      for (int u = 0; u < m; ++u) {
        data->concept_names.push_back("c" + std::to_string(u));
        data->weights.push_back(0.5 + unit(rng));
      }
      std::uniform_int_distribution<int> pick(0, m - 1);
      std::uniform_int_distribution<int> count(1, 4);
      data->item_concepts.resize(n);
      for (auto& list : data->item_concepts) {
        for (int t = count(rng); t > 0; --t) list.push_back(pick(rng));
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
      }
      in.concepts = std::move(data);
      break;
    }
    case ModelSource::kProbabilities: {
      auto data = std::make_shared<ProbabilityData>();
      data->num_items = n;
      for (int u = 0; u < kProbabilityConcepts; ++u) {
        data->concept_names.push_back("c" + std::to_string(u));
        data->weights.push_back(0.5 + unit(rng));
      }
      data->probabilities.resize(static_cast<size_t>(n) * kProbabilityConcepts);
      for (double& p : data->probabilities) p = unit(rng) < 0.2 ? unit(rng) : 0.0;
      in.probabilities = std::move(data);
      break;
    }
    case ModelSource::kScores:
      in.scores.resize(n);
      for (double& s : in.scores) s = unit(rng);
      break;
  }
  return in;
}

BenchReport BenchFunction(const std::string& model, int n, double fraction,
                          uint64_t seed, int repeats) {
  if (n < 100) {
    throw Error(ErrorCode::kInvalidParam, "bench needs n >= 100");
  }
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "bench fraction must lie in (0, 1]");
  }
  if (repeats < 1) {
    throw Error(ErrorCode::kInvalidParam, "bench repeats must be >= 1");
  }
  ModelConfig config;
  config.name = model;
  const BuiltModel built = BuildModel(config, SyntheticInputs(model, n, seed));
  const Objective& f = *built.objective;
  const GroundSet gs = GroundSet::Indexed(n);

  BenchReport r;
  r.function = model;
  r.n = n;
  r.fraction = fraction;
  r.k = std::max(1, static_cast<int>(std::ceil(fraction * n - 1e-9)));
  r.environment = EnvironmentNote();

  auto run = [&](bool memoize, std::vector<int>& picked) {
    SolverConfig sc;
    sc.lazy = true;
    sc.memoize = memoize;
    sc.stop_at_zero = false;
    sc.threads = 1;
    std::vector<double> times;
    for (int t = 0; t < repeats; ++t) {
      const auto start = std::chrono::steady_clock::now();
      Selection sel = LazyGreedy(f, gs, r.k, sc);
      times.push_back(std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count());
      picked = std::move(sel.indices);
    }
    return Median(std::move(times));
  };
  std::vector<int> memo_pick, naive_pick;
  r.memoized_seconds = run(true, memo_pick);
  r.naive_seconds = run(false, naive_pick);
  r.speedup = r.memoized_seconds > 0.0 ? r.naive_seconds / r.memoized_seconds
                                       : 0.0;
  r.selections_equal = memo_pick == naive_pick;
  if (!r.selections_equal) {
    throw Error(ErrorCode::kBenchInvalid,
                model + ": memoized and scratch gains selected different items");
  }
  return r;
}

const std::vector<std::string>& DefaultBenchModels() {
  static const std::vector<std::string> models = {
      "facility_location", "saturated_coverage",      "graph_cut",
      "feature_based",     "set_cover",               "probabilistic_set_cover",
      "disparity_sum",     "modular_importance",
  };
  return models;
}

const std::vector<double>& DefaultBenchFractions() {
  static const std::vector<double> fractions = {0.05, 0.15, 0.30};
  return fractions;
}

std::vector<BenchReport> BenchMatrix(std::span<const std::string> models, int n,
                                     std::span<const double> fractions,
                                     uint64_t seed, int repeats) {
  std::vector<BenchReport> out;
  for (const auto& m : models) {
    for (double fr : fractions) {
      out.push_back(BenchFunction(m, n, fr, seed, repeats));
    }
  }
  return out;
}

std::string BenchCsv(std::span<const BenchReport> reports) {
  std::string out =
      "function,n,fraction,k,memoized_s,naive_s,speedup,selections_equal\n";
  for (const auto& r : reports) {
    out += r.function + "," + std::to_string(r.n) + "," +
           nlohmann::json(r.fraction).dump() + "," + std::to_string(r.k) + "," +
           nlohmann::json(r.memoized_seconds).dump() + "," +
           nlohmann::json(r.naive_seconds).dump() + "," +
           nlohmann::json(r.speedup).dump() + "," +
           (r.selections_equal ? "1" : "0") + "\n";
  }
  return out;
}

nlohmann::json BenchJson(std::span<const BenchReport> reports) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : reports) {
    rows.push_back({{"function", r.function},
                    {"n", r.n},
                    {"fraction", r.fraction},
                    {"k", r.k},
                    {"memoized_s", r.memoized_seconds},
                    {"naive_s", r.naive_seconds},
                    {"speedup", r.speedup},
                    {"selections_equal", r.selections_equal},
                    {"environment", r.environment}});
  }
  return {{"baseline", "lazy greedy with gains recomputed as f(X+j) - f(X)"},
          {"reports", std::move(rows)}};
}

std::string EnvironmentNote() {
  std::string cpu = "unknown cpu";
  std::ifstream info("/proc/cpuinfo");
  std::string line;
  while (std::getline(info, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        cpu = line.substr(line.find_first_not_of(" \t", colon + 1));
      }
      break;
    }
  }
  return cpu + "; single-threaded solver; " +
         std::to_string(std::thread::hardware_concurrency()) +
         " hardware threads";
}

}  // namespace datasumm
