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
// Set function models.
//
// Each model implements Objective twice over: EvaluateUnchecked() is a direct
// transcription of the definition, while its Memo keeps the running
// statistics that make a marginal gain cost O(n) (kernel models), O(|F|)
// (feature based), O(|U|) (coverage) or O(|X|) (dispersion) instead of a full
// re-evaluation.
//

#ifndef DATASUMM_FUNCTIONS_H_
#define DATASUMM_FUNCTIONS_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "datasumm/feature_matrix.h"
#include "datasumm/objective.h"
#include "datasumm/similarity.h"

namespace datasumm {

// f(X) = sum_i max_{k in X} s_ik.
class FacilityLocation final : public Objective {
 public:
  explicit FacilityLocation(std::shared_ptr<const Kernel> kernel);

  int size() const override { return kernel_->size(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

  const Kernel& kernel() const { return *kernel_; }

 private:
  std::shared_ptr<const Kernel> kernel_;
};

// f(X) = sum_i min(sum_{j in X} s_ij, alpha * sum_{j in V} s_ij).
class SaturatedCoverage final : public Objective {
 public:
  static constexpr double kDefaultAlpha = 0.5;

  // alpha in (0, 1].
  SaturatedCoverage(std::shared_ptr<const Kernel> kernel,
                    double alpha = kDefaultAlpha);

  int size() const override { return kernel_->size(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

  double alpha() const { return alpha_; }
  const std::vector<double>& thresholds() const { return thresholds_; }

 private:
  std::shared_ptr<const Kernel> kernel_;
  double alpha_;
  std::vector<double> thresholds_;
};

// f(X) = lambda * sum_{i in V} sum_{j in X} s_ij - sum_{i, j in X} s_ij.
// Monotone whenever lambda >= 2.
class GraphCut final : public Objective {
 public:
  static constexpr double kDefaultLambda = 2.0;

  GraphCut(std::shared_ptr<const Kernel> kernel,
           double lambda = kDefaultLambda);

  int size() const override { return kernel_->size(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

  double lambda() const { return lambda_; }

 private:
  std::shared_ptr<const Kernel> kernel_;
  double lambda_;
};

enum class ConcaveShape { kSqrt, kLog1p, kInverse };

ConcaveShape ParseConcaveShape(std::string_view name);
std::string_view ConcaveShapeName(ConcaveShape shape);
double ApplyConcave(ConcaveShape shape, double x);

// f(X) = sum_{f in F} psi(sum_{j in X} q_jf). Rows of the matrix are items.
class FeatureBased final : public Objective {
 public:
  explicit FeatureBased(std::shared_ptr<const FeatureMatrix> features,
                        ConcaveShape shape = ConcaveShape::kSqrt);

  int size() const override { return features_->rows(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

  ConcaveShape shape() const { return shape_; }
  const FeatureMatrix& features() const { return *features_; }
  // Nonzero (feature, value) pairs per item.
  const std::vector<std::vector<SparseEntry>>& nonzeros() const {
    return nonzeros_;
  }

 private:
  std::shared_ptr<const FeatureMatrix> features_;
  ConcaveShape shape_;
  std::vector<std::vector<SparseEntry>> nonzeros_;
};

// Concepts per item plus concept weights.
struct ConceptData {
  std::vector<std::string> concept_names;
  std::vector<double> weights;                  // per concept
  std::vector<std::vector<int>> item_concepts;  // per item, sorted unique
  std::vector<std::string> item_ids;            // empty = indices

  int num_items() const { return static_cast<int>(item_concepts.size()); }
  int num_concepts() const { return static_cast<int>(weights.size()); }
};

// f(X) = w(union_{i in X} U_i).
class SetCover final : public Objective {
 public:
  explicit SetCover(std::shared_ptr<const ConceptData> concepts);

  int size() const override { return concepts_->num_items(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

  const ConceptData& concepts() const { return *concepts_; }

 private:
  std::shared_ptr<const ConceptData> concepts_;
};

// Item-by-concept probabilities p_iu in [0, 1] plus concept weights.
struct ProbabilityData {
  int num_items = 0;
  std::vector<std::string> concept_names;
  std::vector<double> weights;        // per concept
  std::vector<double> probabilities;  // row-major num_items x num_concepts

  int num_concepts() const { return static_cast<int>(concept_names.size()); }
  double p(int item, int concept_index) const {
    return probabilities[static_cast<size_t>(item) * num_concepts() +
                         concept_index];
  }
};

// f(X) = sum_u w_u (1 - prod_{k in X} (1 - p_ku)).
class ProbabilisticSetCover final : public Objective {
 public:
  explicit ProbabilisticSetCover(std::shared_ptr<const ProbabilityData> data);

  int size() const override { return data_->num_items; }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

 private:
  std::shared_ptr<const ProbabilityData> data_;
  // Nonzero (concept, p) pairs per item.
  std::vector<std::vector<SparseEntry>> nonzeros_;
};

// f(X) = min_{k != l in X} d_kl; 0 when |X| <= 1. Not submodular.
class DisparityMin final : public Objective {
 public:
  explicit DisparityMin(std::shared_ptr<const DistanceMatrix> distances);

  int size() const override { return distances_->size(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

  const DistanceMatrix& distances() const { return *distances_; }

 private:
  std::shared_ptr<const DistanceMatrix> distances_;
};

// f(X) = sum over unordered pairs {k, l} in X of d_kl. Supermodular.
class DisparitySum final : public Objective {
 public:
  explicit DisparitySum(std::shared_ptr<const DistanceMatrix> distances);

  int size() const override { return distances_->size(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

 private:
  std::shared_ptr<const DistanceMatrix> distances_;
};

// f(X) = sum_{k in X} min_{l in X, l != k} d_kl; 0 when |X| <= 1.
class DisparityMinSum final : public Objective {
 public:
  explicit DisparityMinSum(std::shared_ptr<const DistanceMatrix> distances);

  int size() const override { return distances_->size(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

 private:
  std::shared_ptr<const DistanceMatrix> distances_;
};

// f(X) = sum_{j in X} r_j with r_j >= 0.
class ModularImportance final : public Objective {
 public:
  explicit ModularImportance(std::vector<double> scores);

  int size() const override { return static_cast<int>(scores_.size()); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

 private:
  std::vector<double> scores_;
};

// Max marginal relevance: gain(j | X) = theta * rel_j - (1 - theta) *
// max_{k in X} s_kj, and f(X) is the sum of gains in selection order.
// Order dependent, neither monotone nor submodular.
class MaxMarginalRelevance final : public Objective {
 public:
  static constexpr double kDefaultTheta = 0.7;

  MaxMarginalRelevance(std::shared_ptr<const Kernel> kernel,
                       std::vector<double> relevance,
                       double theta = kDefaultTheta);

  int size() const override { return kernel_->size(); }
  ModelInfo Describe() const override;
  double EvaluateUnchecked(std::span<const int> x) const override;
  std::unique_ptr<Memo> NewMemo() const override;

 private:
  std::shared_ptr<const Kernel> kernel_;
  std::vector<double> relevance_;
  double theta_;
};

}  // namespace datasumm

#endif  // DATASUMM_FUNCTIONS_H_
