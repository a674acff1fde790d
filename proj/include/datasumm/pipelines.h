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

#ifndef DATASUMM_PIPELINES_H_
#define DATASUMM_PIPELINES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "datasumm/ingest.h"
#include "datasumm/models.h"
#include "datasumm/optimize.h"
#include "json.hpp"

namespace datasumm {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kManifestSchema = "datasumm.manifest/1";

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);

struct InputDigest {
  std::string role;  // "features", "concepts", ...
  std::string path;
  std::string sha256;
};
// Digest of a file, or of a directory's *.ppm files (names and bytes, in
// sorted order).
InputDigest DigestInput(std::string role, const std::string& path);

struct Timings {
  double kernel_seconds = 0.0;
  double construction_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct SelectionManifest {
  std::string kind;  // extractive | query | entity | subset
  ModelInfo model;
  nlohmann::json model_params = nlohmann::json::object();
  Algorithm algorithm = Algorithm::kLazy;
  nlohmann::json constraint = nlohmann::json::object();
  bool stop_at_zero = false;
  SolverStats stats;
  int ground_set_size = 0;
  std::vector<int> indices;
  std::vector<std::string> ids;
  std::vector<double> objective_trace;
  double objective_value = 0.0;
  double total_cost = 0.0;
  Timings timings;
  std::vector<InputDigest> provenance;
  std::vector<std::string> warnings;
  // Kind-specific sections (query filter sizes, frames, class counts).
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json ToJson(bool include_timings = true) const;
  // Sorted keys, two-space indent, trailing newline.
  std::string ToCanonicalString(bool include_timings = true) const;
};

// What eval needs back from a manifest file.
struct ManifestSelection {
  std::vector<int> indices;
  std::vector<int> frames;  // selected_frames when present, else indices
  int ground_set_size = 0;
  int frame_count = 0;      // frames in the source video, else ground set
};
ManifestSelection ParseManifestSelection(std::string_view text);

struct RunOptions {
  ModelConfig model;
  Constraint constraint;
  SolverConfig solver;
  std::vector<InputDigest> provenance;
};

// Builds the model, checks the model/algorithm pairing and solves. costs
// default to 1 per item.
SelectionManifest ExtractiveSummarize(const ModelInputs& inputs,
                                      const RunOptions& options,
                                      std::span<const double> costs = {});

// Same engine path over detected entities; kind "entity".
SelectionManifest EntitySummarize(const ModelInputs& inputs,
                                  const RunOptions& options,
                                  std::span<const double> costs = {});

struct QueryInputs {
  FeatureMatrix frames;
  SnippetIndex snippets;
  TagTable tags;
  std::string query;
  double min_confidence = 0.5;
  // Optional per-snippet relevance (original snippet order) for models that
  // read scores.
  std::vector<double> snippet_scores;
};

// Filters snippets by tag, aggregates the kept ones and solves over them.
// Costs are snippet durations. Throws kEmptyGroundSet when nothing matches.
SelectionManifest QuerySummarize(const QueryInputs& inputs,
                                 const RunOptions& options);

// k = ceil(fraction * n). labels, when given, add per-class counts.
SelectionManifest SubsetSelect(const ModelInputs& inputs, double fraction,
                               const RunOptions& options,
                               std::span<const std::string> labels = {});

// Row-major grid, last row padded black. Throws kDimensionMismatch.
Image Montage(std::span<const Image> frames, int columns);

enum class DalStrategy { kRandom, kUncertainty, kSubmodular };
DalStrategy ParseDalStrategy(std::string_view name);
std::string_view DalStrategyName(DalStrategy strategy);

struct DalConfig {
  int rounds = 5;
  int batch = 10;
  DalStrategy strategy = DalStrategy::kRandom;
  ModelConfig model;  // submodular strategy only
  double holdout = 0.3;
  uint64_t seed = 0;
};

struct DalRound {
  int round = 0;
  std::vector<int> batch;  // item indices
  int labeled = 0;
  double holdout_accuracy = 0.0;
};

struct DalLog {
  DalStrategy strategy = DalStrategy::kRandom;
  std::vector<int> holdout;
  std::vector<DalRound> rounds;

  // First round whose accuracy reaches target, or rounds + 1 if none does.
  int RoundsToReach(double target) const;
  // Header "round,batch,labeled,holdout_acc"; batch indices joined by ';'.
  std::string ToCsv() const;
  nlohmann::json ToJson() const;
};

// Each round the strategy picks a batch from the unlabeled pool, the batch
// is labeled, and a nearest-class-centroid probe trained on everything
// labeled so far is scored on the holdout split.
DalLog SimulateActiveLearning(const FeatureMatrix& features,
                              std::span<const std::string> labels,
                              const DalConfig& config);

}  // namespace datasumm

#endif  // DATASUMM_PIPELINES_H_
