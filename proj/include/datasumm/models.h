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

#ifndef DATASUMM_MODELS_H_
#define DATASUMM_MODELS_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datasumm/feature_matrix.h"
#include "datasumm/functions.h"
#include "datasumm/ground_set.h"
#include "datasumm/objective.h"
#include "datasumm/similarity.h"
#include "json.hpp"

namespace datasumm {

// Model selection plus every tunable a model may read.
struct ModelConfig {
  std::string name = "facility_location";
  double alpha = SaturatedCoverage::kDefaultAlpha;
  double lambda = GraphCut::kDefaultLambda;
  double theta = MaxMarginalRelevance::kDefaultTheta;
  std::string psi = "sqrt";
  int knn = 0;         // 0 keeps the kernel dense
  std::string metric;  // empty: cosine for kernels, euclidean for distances
  double sigma = 1.0;  // gaussian kernel width
};

// All model names in a fixed order.
const std::vector<std::string>& ModelNames();

// Family and flags known from the configuration alone, so pairings can be
// checked before any data is read. Throws kInvalidParam for unknown names
// or metrics that do not fit the model family.
ModelInfo DescribeModel(const ModelConfig& config);

// What each model reads from disk.
enum class ModelSource { kFeatures, kConcepts, kProbabilities, kScores };
ModelSource SourceOf(std::string_view model_name);
// True when the model also needs per-item relevance scores (MMR).
bool NeedsScores(std::string_view model_name);

struct ModelInputs {
  std::shared_ptr<const FeatureMatrix> features;
  std::shared_ptr<const Kernel> kernel;  // precomputed; overrides features
  std::shared_ptr<const ConceptData> concepts;
  std::shared_ptr<const ProbabilityData> probabilities;
  std::vector<double> scores;

  // Number of items the inputs describe, or throws kInvalidParam.
  int ItemCount(std::string_view model_name) const;
  // External ids implied by the inputs ("0".."n-1" when there are none).
  std::vector<std::string> ItemIds(std::string_view model_name) const;
};

struct BuiltModel {
  std::unique_ptr<Objective> objective;
  double kernel_seconds = 0.0;
  double construction_seconds = 0.0;
  nlohmann::json params;  // resolved parameters, recorded in manifests
};

BuiltModel BuildModel(const ModelConfig& config, const ModelInputs& inputs);

}  // namespace datasumm

#endif  // DATASUMM_MODELS_H_
