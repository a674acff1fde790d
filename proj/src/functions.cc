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

#include "datasumm/functions.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "datasumm/error.h"

namespace datasumm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename T>
std::shared_ptr<const T> Require(std::shared_ptr<const T> p, const char* what) {
  if (!p) throw Error(ErrorCode::kInvalidParam, std::string(what) + " is null");
  return p;
}

void RequireUnit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::kInvalidParam,
                std::string(what) + " must lie in [0, 1], got " +
                    std::to_string(v));
  }
}

// ---------------------------------------------------------------------------
// Facility location

class FacilityLocationMemo final : public Memo {
 public:
  explicit FacilityLocationMemo(const Kernel& kernel)
      : Memo(kernel.size()), kernel_(kernel), best_(kernel.size(), 0.0) {}

  double GainUnchecked(int j) const override {
    double gain = 0.0;
    kernel_.ForEachInColumn(j, [&](int i, double s) {
      if (s > best_[i]) gain += s - best_[i];
    });
    return gain;
  }

 protected:
  void Update(int j) override {
    kernel_.ForEachInColumn(j, [&](int i, double s) {
      if (s > best_[i]) best_[i] = s;
    });
  }
  void Clear() override { std::fill(best_.begin(), best_.end(), 0.0); }

 private:
  const Kernel& kernel_;
  std::vector<double> best_;  // max_{k in X} s_ik
};

// ---------------------------------------------------------------------------
// Saturated coverage

class SaturatedCoverageMemo final : public Memo {
 public:
  SaturatedCoverageMemo(const Kernel& kernel,
                        const std::vector<double>& thresholds)
      : Memo(kernel.size()),
        kernel_(kernel),
        thresholds_(thresholds),
        mass_(kernel.size(), 0.0) {}

  double GainUnchecked(int j) const override {
    double gain = 0.0;
    kernel_.ForEachInColumn(j, [&](int i, double s) {
      const double cap = thresholds_[i];
      if (mass_[i] < cap) gain += std::min(mass_[i] + s, cap) - mass_[i];
    });
    return gain;
  }

 protected:
  void Update(int j) override {
    kernel_.ForEachInColumn(j, [&](int i, double s) { mass_[i] += s; });
  }
  void Clear() override { std::fill(mass_.begin(), mass_.end(), 0.0); }

 private:
  const Kernel& kernel_;
  const std::vector<double>& thresholds_;
  std::vector<double> mass_;  // sum_{j in X} s_ij
};

// ---------------------------------------------------------------------------
// Graph cut

class GraphCutMemo final : public Memo {
 public:
  GraphCutMemo(const Kernel& kernel, double lambda)
      : Memo(kernel.size()),
        kernel_(kernel),
        lambda_(lambda),
        diagonal_(kernel.size()),
        into_(kernel.size(), 0.0),
        out_of_(kernel.size(), 0.0) {
    for (int v = 0; v < kernel.size(); ++v) diagonal_[v] = kernel.at(v, v);
  }

  double GainUnchecked(int v) const override {
    const double inside = kernel_.symmetric() ? 2.0 * into_[v]
                                              : into_[v] + out_of_[v];
    return lambda_ * kernel_.column_sum(v) - inside - diagonal_[v];
  }

 protected:
  void Update(int k) override {
    kernel_.ForEachInRow(k, [&](int j, double s) { into_[j] += s; });
    if (!kernel_.symmetric()) {
      kernel_.ForEachInColumn(k, [&](int i, double s) { out_of_[i] += s; });
    }
  }
  void Clear() override {
    std::fill(into_.begin(), into_.end(), 0.0);
    std::fill(out_of_.begin(), out_of_.end(), 0.0);
  }

 private:
  const Kernel& kernel_;
  double lambda_;
  std::vector<double> diagonal_;
  std::vector<double> into_;    // sum_{k in X} s_kv
  std::vector<double> out_of_;  // sum_{k in X} s_vk
};

// ---------------------------------------------------------------------------
// Feature based

class FeatureBasedMemo final : public Memo {
 public:
  explicit FeatureBasedMemo(const FeatureBased& f)
      : Memo(f.size()), f_(f), totals_(f.features().cols(), 0.0) {}

  double GainUnchecked(int j) const override {
    double gain = 0.0;
    for (const SparseEntry& e : f_.nonzeros()[j]) {
      const double w = totals_[e.index];
      gain += ApplyConcave(f_.shape(), w + e.value) -
              ApplyConcave(f_.shape(), w);
    }
    return gain;
  }

 protected:
  void Update(int j) override {
    for (const SparseEntry& e : f_.nonzeros()[j]) totals_[e.index] += e.value;
  }
  void Clear() override { std::fill(totals_.begin(), totals_.end(), 0.0); }

 private:
  const FeatureBased& f_;
  std::vector<double> totals_;  // w_f(X)
};

// ---------------------------------------------------------------------------
// Set cover

class SetCoverMemo final : public Memo {
 public:
  explicit SetCoverMemo(const ConceptData& c)
      : Memo(c.num_items()), c_(c), covered_(c.num_concepts(), 0) {}

  double GainUnchecked(int j) const override {
    double gain = 0.0;
    for (int u : c_.item_concepts[j]) {
      if (!covered_[u]) gain += c_.weights[u];
    }
    return gain;
  }

 protected:
  void Update(int j) override {
    for (int u : c_.item_concepts[j]) covered_[u] = 1;
  }
  void Clear() override { std::fill(covered_.begin(), covered_.end(), 0); }

 private:
  const ConceptData& c_;
  std::vector<char> covered_;
};

// ---------------------------------------------------------------------------
// Probabilistic set cover

class ProbabilisticSetCoverMemo final : public Memo {
 public:
  ProbabilisticSetCoverMemo(const ProbabilityData& data,
                            const std::vector<std::vector<SparseEntry>>& nz)
      : Memo(data.num_items),
        data_(data),
        nonzeros_(nz),
        miss_(data.num_concepts(), 1.0) {}

  double GainUnchecked(int j) const override {
    double gain = 0.0;
    for (const SparseEntry& e : nonzeros_[j]) {
      gain += data_.weights[e.index] * miss_[e.index] * e.value;
    }
    return gain;
  }

 protected:
  void Update(int j) override {
    for (const SparseEntry& e : nonzeros_[j]) miss_[e.index] *= 1.0 - e.value;
  }
  void Clear() override { std::fill(miss_.begin(), miss_.end(), 1.0); }

 private:
  const ProbabilityData& data_;
  const std::vector<std::vector<SparseEntry>>& nonzeros_;
  std::vector<double> miss_;  // prod_{k in X} (1 - p_ku)
};

// ---------------------------------------------------------------------------
// Dispersion family

double NearestSelected(const DistanceMatrix& d, const std::vector<int>& x,
                       int j) {
  double m = kInf;
  for (int l : x) m = std::min(m, d(j, l));
  return m;
}

class DisparityMinMemo final : public Memo {
 public:
  explicit DisparityMinMemo(const DistanceMatrix& d) : Memo(d.size()), d_(d) {}

  double GainUnchecked(int j) const override {
    const auto& x = selected();
    if (x.empty()) return 0.0;
    const double after = std::min(min_, NearestSelected(d_, x, j));
    const double before = x.size() >= 2 ? min_ : 0.0;
    return after - before;
  }

 protected:
  void Update(int j) override {
    if (!selected().empty()) {
      min_ = std::min(min_, NearestSelected(d_, selected(), j));
    }
  }
  void Clear() override { min_ = kInf; }

 private:
  const DistanceMatrix& d_;
  double min_ = kInf;  // min pairwise distance in X; inf while |X| < 2
};

class DisparitySumMemo final : public Memo {
 public:
  explicit DisparitySumMemo(const DistanceMatrix& d) : Memo(d.size()), d_(d) {}

  double GainUnchecked(int j) const override {
    double gain = 0.0;
    for (int l : selected()) gain += d_(j, l);
    return gain;
  }

 protected:
  void Update(int) override {}
  void Clear() override {}

 private:
  const DistanceMatrix& d_;
};

class DisparityMinSumMemo final : public Memo {
 public:
  explicit DisparityMinSumMemo(const DistanceMatrix& d)
      : Memo(d.size()), d_(d), nearest_(d.size(), kInf) {}

  double GainUnchecked(int j) const override {
    const auto& x = selected();
    if (x.empty()) return 0.0;
    double after = NearestSelected(d_, x, j);
    double before = 0.0;
    for (int k : x) {
      after += std::min(nearest_[k], d_(k, j));
      before += nearest_[k];
    }
    if (x.size() < 2) before = 0.0;
    return after - before;
  }

 protected:
  void Update(int j) override {
    const auto& x = selected();
    nearest_[j] = NearestSelected(d_, x, j);
    for (int k : x) nearest_[k] = std::min(nearest_[k], d_(k, j));
  }
  void Clear() override { std::fill(nearest_.begin(), nearest_.end(), kInf); }

 private:
  const DistanceMatrix& d_;
  std::vector<double> nearest_;  // for k in X: min_{l in X, l != k} d_kl
};

// ---------------------------------------------------------------------------
// Modular and MMR

class ModularMemo final : public Memo {
 public:
  explicit ModularMemo(const std::vector<double>& scores)
      : Memo(static_cast<int>(scores.size())), scores_(scores) {}

  double GainUnchecked(int j) const override { return scores_[j]; }

 protected:
  void Update(int) override {}
  void Clear() override {}

 private:
  const std::vector<double>& scores_;
};

class MaxMarginalRelevanceMemo final : public Memo {
 public:
  MaxMarginalRelevanceMemo(const Kernel& kernel,
                           const std::vector<double>& relevance, double theta)
      : Memo(kernel.size()),
        kernel_(kernel),
        relevance_(relevance),
        theta_(theta),
        redundancy_(kernel.size(), 0.0) {}

  double GainUnchecked(int j) const override {
    return theta_ * relevance_[j] - (1.0 - theta_) * redundancy_[j];
  }

 protected:
  void Update(int k) override {
    kernel_.ForEachInRow(k, [&](int j, double s) {
      if (s > redundancy_[j]) redundancy_[j] = s;
    });
  }
  void Clear() override {
    std::fill(redundancy_.begin(), redundancy_.end(), 0.0);
  }

 private:
  const Kernel& kernel_;
  const std::vector<double>& relevance_;
  double theta_;
  std::vector<double> redundancy_;  // max_{k in X} s_kj
};

}  // namespace

// ---------------------------------------------------------------------------

FacilityLocation::FacilityLocation(std::shared_ptr<const Kernel> kernel)
    : kernel_(Require(std::move(kernel), "kernel")) {}

ModelInfo FacilityLocation::Describe() const {
  return {"facility_location", Family::kSimilarity, true, true};
}

double FacilityLocation::EvaluateUnchecked(std::span<const int> x) const {
  const int n = size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double best = 0.0;
    for (int k : x) best = std::max(best, kernel_->at(i, k));
    total += best;
  }
  return total;
}

std::unique_ptr<Memo> FacilityLocation::NewMemo() const {
  return std::make_unique<FacilityLocationMemo>(*kernel_);
}

SaturatedCoverage::SaturatedCoverage(std::shared_ptr<const Kernel> kernel,
                                     double alpha)
    : kernel_(Require(std::move(kernel), "kernel")), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidParam,
                "saturation alpha must lie in (0, 1], got " +
                    std::to_string(alpha));
  }
  thresholds_.resize(kernel_->size());
  for (int i = 0; i < kernel_->size(); ++i) {
    thresholds_[i] = alpha_ * kernel_->row_sum(i);
  }
}

ModelInfo SaturatedCoverage::Describe() const {
  return {"saturated_coverage", Family::kSimilarity, true, true};
}

double SaturatedCoverage::EvaluateUnchecked(std::span<const int> x) const {
  const int n = size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double mass = 0.0;
    for (int j : x) mass += kernel_->at(i, j);
    total += std::min(mass, thresholds_[i]);
  }
  return total;
}

std::unique_ptr<Memo> SaturatedCoverage::NewMemo() const {
  return std::make_unique<SaturatedCoverageMemo>(*kernel_, thresholds_);
}

GraphCut::GraphCut(std::shared_ptr<const Kernel> kernel, double lambda)
    : kernel_(Require(std::move(kernel), "kernel")), lambda_(lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kInvalidParam,
                "graph cut lambda must be >= 0, got " + std::to_string(lambda));
  }
}

ModelInfo GraphCut::Describe() const {
  return {"graph_cut", Family::kSimilarity, lambda_ >= 2.0, true};
}

double GraphCut::EvaluateUnchecked(std::span<const int> x) const {
  const int n = size();
  double cut = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j : x) cut += kernel_->at(i, j);
  }
  double inside = 0.0;
  for (int i : x) {
    for (int j : x) inside += kernel_->at(i, j);
  }
  return lambda_ * cut - inside;
}

std::unique_ptr<Memo> GraphCut::NewMemo() const {
  return std::make_unique<GraphCutMemo>(*kernel_, lambda_);
}

ConcaveShape ParseConcaveShape(std::string_view name) {
  if (name == "sqrt") return ConcaveShape::kSqrt;
  if (name == "log" || name == "log1p") return ConcaveShape::kLog1p;
  if (name == "inverse") return ConcaveShape::kInverse;
  throw Error(ErrorCode::kInvalidParam,
              "unknown concave function '" + std::string(name) +
                  "' (expected sqrt, log1p or inverse)");
}

std::string_view ConcaveShapeName(ConcaveShape shape) {
  switch (shape) {
    case ConcaveShape::kSqrt: return "sqrt";
    case ConcaveShape::kLog1p: return "log1p";
    case ConcaveShape::kInverse: return "inverse";
  }
  return "sqrt";
}

double ApplyConcave(ConcaveShape shape, double x) {
  switch (shape) {
    case ConcaveShape::kSqrt: return std::sqrt(x);
    case ConcaveShape::kLog1p: return std::log1p(x);
    case ConcaveShape::kInverse: return x / (1.0 + x);
  }
  return x;
}

FeatureBased::FeatureBased(std::shared_ptr<const FeatureMatrix> features,
                           ConcaveShape shape)
    : features_(Require(std::move(features), "features")), shape_(shape) {
  nonzeros_.resize(features_->rows());
  for (int i = 0; i < features_->rows(); ++i) {
    auto row = features_->row(i);
    for (int f = 0; f < features_->cols(); ++f) {
      if (row[f] != 0.0) nonzeros_[i].push_back({f, row[f]});
    }
  }
}

ModelInfo FeatureBased::Describe() const {
  return {"feature_based", Family::kCoverage, true, true};
}

double FeatureBased::EvaluateUnchecked(std::span<const int> x) const {
  const int d = features_->cols();
  double total = 0.0;
  for (int f = 0; f < d; ++f) {
    double w = 0.0;
    for (int j : x) w += (*features_)(j, f);
    total += ApplyConcave(shape_, w);
  }
  return total;
}

std::unique_ptr<Memo> FeatureBased::NewMemo() const {
  return std::make_unique<FeatureBasedMemo>(*this);
}

SetCover::SetCover(std::shared_ptr<const ConceptData> concepts)
    : concepts_(Require(std::move(concepts), "concepts")) {
  const ConceptData& c = *concepts_;
  if (c.concept_names.size() != c.weights.size()) {
    throw Error(ErrorCode::kInvalidParam, "concept name/weight count mismatch");
  }
  for (double w : c.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidWeight,
                  "concept weight must be finite and >= 0, got " +
                      std::to_string(w));
    }
  }
  for (const auto& items : c.item_concepts) {
    for (size_t t = 0; t < items.size(); ++t) {
      if (items[t] < 0 || items[t] >= c.num_concepts() ||
          (t > 0 && items[t] <= items[t - 1])) {
        throw Error(ErrorCode::kInvalidParam,
                    "item concept lists must be sorted, unique and in range");
      }
    }
  }
}

ModelInfo SetCover::Describe() const {
  return {"set_cover", Family::kCoverage, true, true};
}

double SetCover::EvaluateUnchecked(std::span<const int> x) const {
  const ConceptData& c = *concepts_;
  double total = 0.0;
  for (int u = 0; u < c.num_concepts(); ++u) {
    bool hit = false;
    for (int i : x) {
      const auto& items = c.item_concepts[i];
      if (std::binary_search(items.begin(), items.end(), u)) {
        hit = true;
        break;
      }
    }
    if (hit) total += c.weights[u];
  }
  return total;
}

std::unique_ptr<Memo> SetCover::NewMemo() const {
  return std::make_unique<SetCoverMemo>(*concepts_);
}

ProbabilisticSetCover::ProbabilisticSetCover(
    std::shared_ptr<const ProbabilityData> data)
    : data_(Require(std::move(data), "probabilities")) {
  const ProbabilityData& d = *data_;
  if (d.weights.size() != d.concept_names.size() ||
      d.probabilities.size() !=
          static_cast<size_t>(d.num_items) * d.num_concepts()) {
    throw Error(ErrorCode::kInvalidParam, "probability table shape mismatch");
  }
  for (double w : d.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidWeight,
                  "concept weight must be finite and >= 0, got " +
                      std::to_string(w));
    }
  }
  nonzeros_.resize(d.num_items);
  for (int i = 0; i < d.num_items; ++i) {
    for (int u = 0; u < d.num_concepts(); ++u) {
      const double p = d.p(i, u);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kInvalidProbability,
                    "probability " + std::to_string(p) + " outside [0, 1]");
      }
      if (p != 0.0) nonzeros_[i].push_back({u, p});
    }
  }
}

ModelInfo ProbabilisticSetCover::Describe() const {
  return {"probabilistic_set_cover", Family::kCoverage, true, true};
}

double ProbabilisticSetCover::EvaluateUnchecked(std::span<const int> x) const {
  const ProbabilityData& d = *data_;
  double total = 0.0;
  for (int u = 0; u < d.num_concepts(); ++u) {
    double miss = 1.0;
    for (int k : x) miss *= 1.0 - d.p(k, u);
    total += d.weights[u] * (1.0 - miss);
  }
  return total;
}

std::unique_ptr<Memo> ProbabilisticSetCover::NewMemo() const {
  return std::make_unique<ProbabilisticSetCoverMemo>(*data_, nonzeros_);
}

DisparityMin::DisparityMin(std::shared_ptr<const DistanceMatrix> distances)
    : distances_(Require(std::move(distances), "distances")) {}

ModelInfo DisparityMin::Describe() const {
  return {"disparity_min", Family::kDistance, false, false};
}

double DisparityMin::EvaluateUnchecked(std::span<const int> x) const {
  if (x.size() < 2) return 0.0;
  double m = kInf;
  for (size_t a = 0; a < x.size(); ++a) {
    for (size_t b = a + 1; b < x.size(); ++b) {
      m = std::min(m, (*distances_)(x[a], x[b]));
    }
  }
  return m;
}

std::unique_ptr<Memo> DisparityMin::NewMemo() const {
  return std::make_unique<DisparityMinMemo>(*distances_);
}

DisparitySum::DisparitySum(std::shared_ptr<const DistanceMatrix> distances)
    : distances_(Require(std::move(distances), "distances")) {}

ModelInfo DisparitySum::Describe() const {
  return {"disparity_sum", Family::kDistance, true, false};
}

double DisparitySum::EvaluateUnchecked(std::span<const int> x) const {
  double total = 0.0;
  for (size_t a = 0; a < x.size(); ++a) {
    for (size_t b = a + 1; b < x.size(); ++b) {
      total += (*distances_)(x[a], x[b]);
    }
  }
  return total;
}

std::unique_ptr<Memo> DisparitySum::NewMemo() const {
  return std::make_unique<DisparitySumMemo>(*distances_);
}

DisparityMinSum::DisparityMinSum(
    std::shared_ptr<const DistanceMatrix> distances)
    : distances_(Require(std::move(distances), "distances")) {}

ModelInfo DisparityMinSum::Describe() const {
  return {"disparity_min_sum", Family::kDistance, false, false};
}

double DisparityMinSum::EvaluateUnchecked(std::span<const int> x) const {
  if (x.size() < 2) return 0.0;
  double total = 0.0;
  for (int k : x) {
    double m = kInf;
    for (int l : x) {
      if (l != k) m = std::min(m, (*distances_)(k, l));
    }
    total += m;
  }
  return total;
}

std::unique_ptr<Memo> DisparityMinSum::NewMemo() const {
  return std::make_unique<DisparityMinSumMemo>(*distances_);
}

ModularImportance::ModularImportance(std::vector<double> scores)
    : scores_(std::move(scores)) {
  for (double r : scores_) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw Error(ErrorCode::kInvalidParam,
                  "importance scores must be finite and >= 0, got " +
                      std::to_string(r));
    }
  }
}

ModelInfo ModularImportance::Describe() const {
  return {"modular_importance", Family::kModular, true, true};
}

double ModularImportance::EvaluateUnchecked(std::span<const int> x) const {
  double total = 0.0;
  for (int j : x) total += scores_[j];
  return total;
}

std::unique_ptr<Memo> ModularImportance::NewMemo() const {
  return std::make_unique<ModularMemo>(scores_);
}

MaxMarginalRelevance::MaxMarginalRelevance(
    std::shared_ptr<const Kernel> kernel, std::vector<double> relevance,
    double theta)
    : kernel_(Require(std::move(kernel), "kernel")),
      relevance_(std::move(relevance)),
      theta_(theta) {
  RequireUnit(theta, "mmr theta");
  if (relevance_.size() != static_cast<size_t>(kernel_->size())) {
    throw Error(ErrorCode::kInvalidParam,
                "relevance score count does not match the kernel size");
  }
  for (double r : relevance_) RequireUnit(r, "relevance score");
}

ModelInfo MaxMarginalRelevance::Describe() const {
  return {"max_marginal_relevance", Family::kSimilarity, false, false};
}

double MaxMarginalRelevance::EvaluateUnchecked(std::span<const int> x) const {
  double total = 0.0;
  for (size_t t = 0; t < x.size(); ++t) {
    double redundancy = 0.0;
    for (size_t s = 0; s < t; ++s) {
      redundancy = std::max(redundancy, kernel_->at(x[s], x[t]));
    }
    total += theta_ * relevance_[x[t]] - (1.0 - theta_) * redundancy;
  }
  return total;
}

std::unique_ptr<Memo> MaxMarginalRelevance::NewMemo() const {
  return std::make_unique<MaxMarginalRelevanceMemo>(*kernel_, relevance_,
                                                    theta_);
}

}  // namespace datasumm
