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

#include "datasumm/objective.h"

#include "datasumm/error.h"
#include "datasumm/ground_set.h"

namespace datasumm {

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kSimilarity: return "similarity";
    case Family::kCoverage: return "coverage";
    case Family::kDistance: return "distance";
    case Family::kModular: return "modular";
  }
  return "unknown";
}

double Objective::Evaluate(std::span<const int> x) const {
  ValidateIndices(x, size());
  return EvaluateUnchecked(x);
}

Memo::Memo(int n) : in_set_(n, 0) {}

void Memo::Check(int j) const {
  if (j < 0 || j >= size()) {
    throw Error(ErrorCode::kInvalidSelection,
                "item " + std::to_string(j) + " outside ground set of size " +
                    std::to_string(size()));
  }
  if (in_set_[j]) {
    throw Error(ErrorCode::kAlreadySelected,
                "item " + std::to_string(j) + " is already selected");
  }
}

double Memo::Gain(int j) const {
  Check(j);
  return GainUnchecked(j);
}

double Memo::Commit(int j) {
  Check(j);
  double gain = GainUnchecked(j);
  Update(j);
  selected_.push_back(j);
  in_set_[j] = 1;
  value_ += gain;
  return gain;
}

void Memo::Reset() {
  for (int j : selected_) in_set_[j] = 0;
  selected_.clear();
  value_ = 0.0;
  Clear();
}

double ScratchMemo::GainUnchecked(int j) const {
  std::vector<int> with(selected());
  with.push_back(j);
  return objective_.EvaluateUnchecked(with) -
         objective_.EvaluateUnchecked(selected());
}

double ScratchGain(const Objective& objective, std::span<const int> x, int j) {
  std::vector<int> with(x.begin(), x.end());
  with.push_back(j);
  return objective.Evaluate(with) - objective.Evaluate(x);
}

}  // namespace datasumm
