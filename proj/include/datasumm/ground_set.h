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

#ifndef DATASUMM_GROUND_SET_H_
#define DATASUMM_GROUND_SET_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace datasumm {

// The universe of selectable items with external ids and per-item costs.
// Immutable after construction.
class GroundSet {
 public:
  // Throws kDuplicateItem / kInvalidCost / kInvalidParam.
  static GroundSet Create(std::vector<std::string> item_ids,
                          std::optional<std::vector<double>> costs = {});

  // Ids "0".."n-1" with unit costs.
  static GroundSet Indexed(int n);

  int size() const { return static_cast<int>(item_ids_.size()); }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  const std::vector<double>& costs() const { return costs_; }
  double cost(int i) const { return costs_[i]; }
  const std::string& id(int i) const { return item_ids_[i]; }

  // Index of an external id, or nullopt.
  std::optional<int> Find(const std::string& id) const;

 private:
  GroundSet() = default;

  std::vector<std::string> item_ids_;
  std::vector<double> costs_;
  std::unordered_map<std::string, int> index_;
};

// Bookkeeping a solver reports alongside the chosen items.
struct SolverStats {
  // Stale-bound re-evaluations per iteration (lazy solvers only).
  std::vector<int> resorts;
  int64_t gain_evaluations = 0;
  // True when lazy evaluation was requested but the model does not allow it.
  bool lazy_fallback = false;
  bool stopped_at_zero = false;
};

// Items in the order they were chosen, with the objective after each step.
struct Selection {
  std::vector<int> indices;
  std::vector<double> objective_trace;
  SolverStats stats;

  double value() const {
    return objective_trace.empty() ? 0.0 : objective_trace.back();
  }
};

// Throws kInvalidSelection unless every index is in [0, n) and distinct.
void ValidateIndices(std::span<const int> indices, int n);

// Sum of costs of the selected items.
double SelectionTotalCost(const Selection& selection, const GroundSet& gs);

}  // namespace datasumm

#endif  // DATASUMM_GROUND_SET_H_
