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

#include "datasumm/models.h"

#include <chrono>

#include "datasumm/error.h"

namespace datasumm {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string JoinedNames() {
  std::string out;
  for (const auto& n : ModelNames()) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

[[noreturn]] void UnknownModel(std::string_view name) {
  throw Error(ErrorCode::kInvalidParam, "unknown model '" + std::string(name) +
                                            "'; available models: " +
                                            JoinedNames());
}

std::string KernelMetricName(const ModelConfig& c) {
  return c.metric.empty() ? "cosine" : c.metric;
}

std::string DistanceMetricName(const ModelConfig& c) {
  return c.metric.empty() ? "euclidean" : c.metric;
}

}  // namespace

const std::vector<std::string>& ModelNames() {
  static const std::vector<std::string> names = {
      "facility_location",  "saturated_coverage",     "graph_cut",
      "feature_based",      "set_cover",              "probabilistic_set_cover",
      "disparity_min",      "disparity_sum",          "disparity_min_sum",
      "modular_importance", "max_marginal_relevance",
  };
  return names;
}

ModelInfo DescribeModel(const ModelConfig& c) {
  ModelInfo info;
  info.name = c.name;
  const std::string& n = c.name;
  if (n == "facility_location" || n == "saturated_coverage") {
    info = {n, Family::kSimilarity, true, true};
  } else if (n == "graph_cut") {
    info = {n, Family::kSimilarity, c.lambda >= 2.0, true};
  } else if (n == "max_marginal_relevance") {
    info = {n, Family::kSimilarity, false, false};
  } else if (n == "feature_based" || n == "set_cover" ||
             n == "probabilistic_set_cover") {
    info = {n, Family::kCoverage, true, true};
  } else if (n == "disparity_min" || n == "disparity_min_sum") {
    info = {n, Family::kDistance, false, false};
  } else if (n == "disparity_sum") {
    info = {n, Family::kDistance, true, false};
  } else if (n == "modular_importance") {
    info = {n, Family::kModular, true, true};
  } else {
    UnknownModel(n);
  }
  if (info.family == Family::kSimilarity) {
    ParseKernelMetric(KernelMetricName(c));
  } else if (info.family == Family::kDistance) {
    ParseDistanceMetric(DistanceMetricName(c));
  }
  if (c.knn < 0) {
    throw Error(ErrorCode::kInvalidParam, "knn must be >= 0");
  }
  if (n == "feature_based") ParseConcaveShape(c.psi);
  return info;
}

ModelSource SourceOf(std::string_view name) {
  if (name == "set_cover") return ModelSource::kConcepts;
  if (name == "probabilistic_set_cover") return ModelSource::kProbabilities;
  if (name == "modular_importance") return ModelSource::kScores;
  for (const auto& known : ModelNames()) {
    if (known == name) return ModelSource::kFeatures;
  }
  UnknownModel(name);
}

bool NeedsScores(std::string_view name) {
  return name == "max_marginal_relevance" || name == "modular_importance";
}

int ModelInputs::ItemCount(std::string_view name) const {
  switch (SourceOf(name)) {
    case ModelSource::kFeatures:
      if (kernel) return kernel->size();
      if (features) return features->rows();
      throw Error(ErrorCode::kInvalidParam,
                  std::string(name) + " needs a feature matrix or a kernel");
    case ModelSource::kConcepts:
      if (!concepts) {
        throw Error(ErrorCode::kInvalidParam, "set_cover needs concept sets");
      }
      return concepts->num_items();
    case ModelSource::kProbabilities:
      if (!probabilities) {
        throw Error(ErrorCode::kInvalidParam,
                    "probabilistic_set_cover needs a probability table");
      }
      return probabilities->num_items;
    case ModelSource::kScores:
      if (scores.empty()) {
        throw Error(ErrorCode::kInvalidParam,
                    "modular_importance needs relevance scores");
      }
      return static_cast<int>(scores.size());
  }
  return 0;
}

std::vector<std::string> ModelInputs::ItemIds(std::string_view name) const {
  const int n = ItemCount(name);
  if (SourceOf(name) == ModelSource::kFeatures && features && !kernel &&
      features->has_ids()) {
    return features->ids();
  }
  if (SourceOf(name) == ModelSource::kConcepts && !concepts->item_ids.empty()) {
    return concepts->item_ids;
  }
  std::vector<std::string> ids;
  ids.reserve(n);
  for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return ids;
}

BuiltModel BuildModel(const ModelConfig& c, const ModelInputs& in) {
  const ModelInfo info = DescribeModel(c);
  BuiltModel built;
  nlohmann::json params = nlohmann::json::object();
  const int n = in.ItemCount(c.name);
  const auto start = Clock::now();

  auto kernel = [&]() -> std::shared_ptr<const Kernel> {
    const auto t = Clock::now();
    std::shared_ptr<const Kernel> k = in.kernel;
    const std::string metric = KernelMetricName(c);
    if (!k) {
      KernelMetric m;
      m.type = ParseKernelMetric(metric);
      m.sigma = c.sigma;
      k = std::make_shared<const Kernel>(ComputeKernel(*in.features, m));
      params["metric"] = metric;
      if (m.type == KernelMetric::Type::kGaussian) params["sigma"] = c.sigma;
    } else {
      params["metric"] = "precomputed";
    }
    if (c.knn > 0) {
      k = std::make_shared<const Kernel>(SparsifyKnn(*k, c.knn));
    }
    params["knn"] = c.knn;
    built.kernel_seconds = std::chrono::duration<double>(Clock::now() - t).count();
    return k;
  };
  auto distances = [&]() -> std::shared_ptr<const DistanceMatrix> {
    if (!in.features) {
      throw Error(ErrorCode::kInvalidParam, c.name + " needs a feature matrix");
    }
    const auto t = Clock::now();
    const std::string metric = DistanceMetricName(c);
    params["metric"] = metric;
    auto d = std::make_shared<const DistanceMatrix>(
        ComputeDistances(*in.features, ParseDistanceMetric(metric)));
    built.kernel_seconds = std::chrono::duration<double>(Clock::now() - t).count();
    return d;
  };
  auto relevance = [&]() {
    if (in.scores.size() != static_cast<size_t>(n)) {
      throw Error(ErrorCode::kInvalidParam,
                  "expected " + std::to_string(n) + " relevance scores, got " +
                      std::to_string(in.scores.size()));
    }
    return in.scores;
  };

  const std::string& name = c.name;
  if (name == "facility_location") {
    built.objective = std::make_unique<FacilityLocation>(kernel());
  } else if (name == "saturated_coverage") {
    params["alpha"] = c.alpha;
    built.objective = std::make_unique<SaturatedCoverage>(kernel(), c.alpha);
  } else if (name == "graph_cut") {
    params["lambda"] = c.lambda;
    built.objective = std::make_unique<GraphCut>(kernel(), c.lambda);
  } else if (name == "max_marginal_relevance") {
    params["theta"] = c.theta;
    auto k = kernel();
    built.objective =
        std::make_unique<MaxMarginalRelevance>(std::move(k), relevance(), c.theta);
  } else if (name == "feature_based") {
    if (!in.features) {
      throw Error(ErrorCode::kInvalidParam, "feature_based needs a feature matrix");
    }
    params["psi"] = std::string(ConcaveShapeName(ParseConcaveShape(c.psi)));
    built.objective =
        std::make_unique<FeatureBased>(in.features, ParseConcaveShape(c.psi));
  } else if (name == "set_cover") {
    built.objective = std::make_unique<SetCover>(in.concepts);
  } else if (name == "probabilistic_set_cover") {
    built.objective = std::make_unique<ProbabilisticSetCover>(in.probabilities);
  } else if (name == "disparity_min") {
    built.objective = std::make_unique<DisparityMin>(distances());
  } else if (name == "disparity_sum") {
    params["pair_convention"] = "unordered pairs counted once";
    built.objective = std::make_unique<DisparitySum>(distances());
  } else if (name == "disparity_min_sum") {
    params["pair_convention"] = "nearest other selected item (l != k)";
    built.objective = std::make_unique<DisparityMinSum>(distances());
  } else if (name == "modular_importance") {
    built.objective = std::make_unique<ModularImportance>(in.scores);
  }
  if (built.objective->size() != n) {
    throw Error(ErrorCode::kInvalidParam, "model inputs disagree on item count");
  }
  (void)info;
  built.construction_seconds = Seconds(start);
  built.params = std::move(params);
  return built;
}

}  // namespace datasumm
