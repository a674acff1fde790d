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

//
// Greedy maximizers.
//
// All solvers compare objective values exactly and break ties toward the
// lowest item index, so a run is fully reproducible. The lazy variants keep a
// max-heap of stale gain upper bounds and only re-evaluate the top; they
// return exactly the sequence the plain scan would, and silently fall back to
// the plain scan for models not flagged submodular.
//

#ifndef DATASUMM_OPTIMIZE_H_
#define DATASUMM_OPTIMIZE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "datasumm/functions.h"
#include "datasumm/ground_set.h"
#include "datasumm/objective.h"

namespace datasumm {

enum class Algorithm { kGreedy, kLazy, kBudgeted, kCover, kStream };

Algorithm ParseAlgorithm(std::string_view name);
std::string_view AlgorithmName(Algorithm algorithm);

// Throws kUnsupported when the model family cannot be paired with the
// algorithm: cover needs a monotone similarity, coverage or modular model;
// stream needs a similarity- or distance-based model.
void CheckCompatibility(const ModelInfo& info, Algorithm algorithm);

struct SolverConfig {
  bool lazy = true;
  // Stop once the best available gain is <= 0. Unset means on for
  // non-monotone models and off for monotone ones.
  std::optional<bool> stop_at_zero;
  // Worker threads for the plain greedy gain scan.
  int threads = 1;
  // When false every gain is recomputed as f(X + j) - f(X) from scratch.
  bool memoize = true;
};

// k rounds of exact argmax over fresh gains.
Selection NaiveGreedy(const Objective& f, const GroundSet& gs, int k,
                      const SolverConfig& config = {});

// Same output as NaiveGreedy via a priority queue of stale bounds.
Selection LazyGreedy(const Objective& f, const GroundSet& gs, int k,
                     const SolverConfig& config = {});

// argmax f(j | X) / c(j) over items that still fit in the remaining budget.
// Lazy when config.lazy and the model is submodular. Falls back to the best
// affordable singleton when that scores strictly higher. Throws kInvalidCost
// if any item has zero cost.
Selection BudgetedGreedy(const Objective& f, const GroundSet& gs,
                         double budget, const SolverConfig& config = {});

// Adds argmax-gain items until f(X) >= fraction * f(V) - 1e-9.
Selection CoverGreedy(const Objective& f, const GroundSet& gs,
                      double fraction, const SolverConfig& config = {});

// One pass in natural order (or a seeded shuffle); keeps sigma[i] iff
// f(sigma[i] | X) >= tau.
Selection StreamGreedy(const Objective& f, const GroundSet& gs, double tau,
                       std::optional<uint64_t> seed = {},
                       const SolverConfig& config = {});

// Max-min dispersion heuristic: seed with the farthest pair, then keep
// adding the item farthest from the current set.
Selection DisparityMinGreedy(const DisparityMin& f, const GroundSet& gs,
                             int k);

// Extends `base` by `count` items from `eligible` (all items when empty) with
// the farthest-point rule. An empty base is seeded with the farthest eligible
// pair. Returns only the new items.
std::vector<int> FarthestPointExtend(const DistanceMatrix& d,
                                     std::span<const int> base, int count,
                                     std::span<const char> eligible = {});

// Greedy continuation from an existing memo state: adds up to `count` items
// drawn from `eligible` (all items when empty). Returns only the new items.
Selection GreedyExtend(const Objective& f, Memo& memo, int count,
                       std::span<const char> eligible = {},
                       const SolverConfig& config = {});

struct BruteForceResult {
  std::vector<int> indices;  // sorted
  double value = 0.0;
};

// Exact maximizer over all k-subsets; ties keep the lexicographically first.
// Throws kTooLarge when C(n, k) > 10^6.
BruteForceResult BruteForceOpt(const Objective& f, const GroundSet& gs, int k);

// Everything a single solver run needs.
struct Constraint {
  Algorithm algorithm = Algorithm::kLazy;
  int k = 0;
  double budget = 0.0;
  double rho = 1.0;
  double tau = 0.0;
  std::optional<uint64_t> seed;
};

// Validates the pairing, then dispatches. Disparity-min under a cardinality
// constraint is routed to DisparityMinGreedy.
Selection Solve(const Objective& f, const GroundSet& gs,
                const Constraint& constraint, const SolverConfig& config = {});

}  // namespace datasumm

#endif  // DATASUMM_OPTIMIZE_H_
