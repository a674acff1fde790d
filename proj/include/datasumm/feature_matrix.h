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

#ifndef DATASUMM_FEATURE_MATRIX_H_
#define DATASUMM_FEATURE_MATRIX_H_

#include <span>
#include <string>
#include <vector>

namespace datasumm {

// n items x d non-negative features, row-major.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  // Throws kInvalidParam on shape mismatch and kInvalidFeature on negative
  // or non-finite values. ids may be empty; otherwise one per row.
  FeatureMatrix(int rows, int cols, std::vector<double> values,
                std::vector<std::string> ids = {});

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double operator()(int i, int j) const { return values_[i * cols_ + j]; }
  std::span<const double> row(int i) const {
    return {values_.data() + static_cast<size_t>(i) * cols_,
            static_cast<size_t>(cols_)};
  }
  const std::vector<double>& values() const { return values_; }

  bool has_ids() const { return !ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }

  // Row ids, or "0".."n-1" when none were given.
  std::vector<std::string> IdsOrIndices() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
  std::vector<std::string> ids_;
};

}  // namespace datasumm

#endif  // DATASUMM_FEATURE_MATRIX_H_
