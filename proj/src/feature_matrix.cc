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

#include "datasumm/feature_matrix.h"

#include <cmath>

#include "datasumm/error.h"

namespace datasumm {

FeatureMatrix::FeatureMatrix(int rows, int cols, std::vector<double> values,
                             std::vector<std::string> ids)
    : rows_(rows), cols_(cols), values_(std::move(values)),
      ids_(std::move(ids)) {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::kInvalidParam, "feature matrix must be non-empty");
  }
  if (values_.size() != static_cast<size_t>(rows) * cols) {
    throw Error(ErrorCode::kInvalidParam,
                "feature matrix has " + std::to_string(values_.size()) +
                    " values, expected " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
  if (!ids_.empty() && ids_.size() != static_cast<size_t>(rows)) {
    throw Error(ErrorCode::kInvalidParam, "feature id count mismatch");
  }
  for (size_t k = 0; k < values_.size(); ++k) {
    const double v = values_[k];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::kInvalidFeature,
                  "feature value " + std::to_string(v) + " at row " +
                      std::to_string(k / cols) +
                      " must be finite and non-negative");
    }
  }
}

std::vector<std::string> FeatureMatrix::IdsOrIndices() const {
  if (has_ids()) return ids_;
  std::vector<std::string> out;
  out.reserve(rows_);
  for (int i = 0; i < rows_; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace datasumm
