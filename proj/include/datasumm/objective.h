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
// Objective interface shared by every set function model.
//
// An Objective is immutable once built and can be shared across threads.
// The running state of a solver lives in a Memo: the selected set X plus the
// per-model statistics that make f(j | X) cheap to compute. Gain() is const
// and may be called concurrently; Commit() needs exclusive access.
//

#ifndef DATASUMM_OBJECTIVE_H_
#define DATASUMM_OBJECTIVE_H_

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace datasumm {

// Drives which solvers a model may be paired with.
enum class Family { kSimilarity, kCoverage, kDistance, kModular };

std::string_view FamilyName(Family family);

struct ModelInfo {
  std::string name;  // snake_case model name, e.g. "facility_location"
  Family family = Family::kSimilarity;
  bool monotone = false;
  bool submodular = false;
};

class Memo;

class Objective {
 public:
  virtual ~Objective() = default;

  virtual int size() const = 0;
  virtual ModelInfo Describe() const = 0;

  // f(X) from the definition, without any cached statistics. The order of x
  // matters only for order-dependent models (max marginal relevance).
  // Throws kInvalidSelection for out-of-range or repeated indices.
  double Evaluate(std::span<const int> x) const;

  // As Evaluate, but x must already be a valid selection.
  virtual double EvaluateUnchecked(std::span<const int> x) const = 0;

  // Statistics for the empty set.
  virtual std::unique_ptr<Memo> NewMemo() const = 0;
};

class Memo {
 public:
  explicit Memo(int n);
  virtual ~Memo() = default;

  Memo(const Memo&) = delete;
  Memo& operator=(const Memo&) = delete;

  int size() const { return static_cast<int>(in_set_.size()); }

  // f(j | X). Throws kInvalidSelection if j is out of range and
  // kAlreadySelected if j is in X.
  double Gain(int j) const;

  // f(j | X) with no argument checks.
  virtual double GainUnchecked(int j) const = 0;

  // X <- X + j. Returns the realized gain. Same errors as Gain().
  double Commit(int j);

  // Back to the empty set.
  void Reset();

  // f(X), accumulated from the committed gains.
  double value() const { return value_; }
  const std::vector<int>& selected() const { return selected_; }
  bool contains(int j) const { return in_set_[j] != 0; }

 protected:
  // Called with selected() still equal to the old X.
  virtual void Update(int j) = 0;
  virtual void Clear() = 0;

 private:
  void Check(int j) const;

  std::vector<char> in_set_;
  std::vector<int> selected_;
  double value_ = 0.0;
};

// Computes every gain as Evaluate(X + j) - Evaluate(X) with no statistics.
// Used as the reference path for memoization checks and benchmarks.
class ScratchMemo final : public Memo {
 public:
  explicit ScratchMemo(const Objective& objective)
      : Memo(objective.size()), objective_(objective) {}

  double GainUnchecked(int j) const override;

 protected:
  void Update(int) override {}
  void Clear() override {}

 private:
  const Objective& objective_;
};

// Evaluate(X + j) - Evaluate(X).
double ScratchGain(const Objective& objective, std::span<const int> x, int j);

}  // namespace datasumm

#endif  // DATASUMM_OBJECTIVE_H_
