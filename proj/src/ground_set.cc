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

#include "datasumm/ground_set.h"

#include <cmath>

#include "datasumm/error.h"

namespace datasumm {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateItem: return "DuplicateItem";
    case ErrorCode::kInvalidCost: return "InvalidCost";
    case ErrorCode::kInvalidSelection: return "InvalidSelection";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kInvalidParam: return "InvalidParam";
    case ErrorCode::kAlreadySelected: return "AlreadySelected";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidFeature: return "InvalidFeature";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kUnknownItem: return "UnknownItem";
    case ErrorCode::kInvalidWeight: return "InvalidWeight";
    case ErrorCode::kInvalidProbability: return "InvalidProbability";
    case ErrorCode::kInvalidSnippet: return "InvalidSnippet";
    case ErrorCode::kInvalidAnnotation: return "InvalidAnnotation";
    case ErrorCode::kEmptyGroundSet: return "EmptyGroundSet";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kBenchInvalid: return "BenchInvalid";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

GroundSet GroundSet::Create(std::vector<std::string> item_ids,
                            std::optional<std::vector<double>> costs) {
  if (item_ids.empty()) {
    throw Error(ErrorCode::kInvalidParam, "ground set must not be empty");
  }
  GroundSet gs;
  gs.index_.reserve(item_ids.size());
  for (size_t i = 0; i < item_ids.size(); ++i) {
    if (!gs.index_.emplace(item_ids[i], static_cast<int>(i)).second) {
      throw Error(ErrorCode::kDuplicateItem,
                  "duplicate item id '" + item_ids[i] + "'");
    }
  }
  if (costs.has_value()) {
    if (costs->size() != item_ids.size()) {
      throw Error(ErrorCode::kInvalidCost,
                  "cost count " + std::to_string(costs->size()) +
                      " does not match item count " +
                      std::to_string(item_ids.size()));
    }
    for (double c : *costs) {
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw Error(ErrorCode::kInvalidCost,
                    "cost must be finite and non-negative, got " +
                        std::to_string(c));
      }
    }
    gs.costs_ = std::move(*costs);
  } else {
    gs.costs_.assign(item_ids.size(), 1.0);
  }
  gs.item_ids_ = std::move(item_ids);
  return gs;
}

GroundSet GroundSet::Indexed(int n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return Create(std::move(ids));
}

std::optional<int> GroundSet::Find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ValidateIndices(std::span<const int> indices, int n) {
  std::vector<char> seen(n > 0 ? n : 0, 0);
  for (int i : indices) {
    if (i < 0 || i >= n) {
      throw Error(ErrorCode::kInvalidSelection,
                  "index " + std::to_string(i) + " outside [0, " +
                      std::to_string(n) + ")");
    }
    if (seen[i]) {
      throw Error(ErrorCode::kInvalidSelection,
                  "index " + std::to_string(i) + " selected twice");
    }
    seen[i] = 1;
  }
}

double SelectionTotalCost(const Selection& selection, const GroundSet& gs) {
  ValidateIndices(selection.indices, gs.size());
  double total = 0.0;
  for (int i : selection.indices) total += gs.cost(i);
  return total;
}

}  // namespace datasumm
