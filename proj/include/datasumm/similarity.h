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

#ifndef DATASUMM_SIMILARITY_H_
#define DATASUMM_SIMILARITY_H_

#include <string_view>
#include <vector>

#include "datasumm/feature_matrix.h"

namespace datasumm {

struct SparseEntry {
  int index;
  double value;
};

// Pairwise similarities s_ij in [0, 1], dense or sparse (missing = 0).
class Kernel {
 public:
  Kernel() = default;

  // Row-major n x n values. Throws kInvalidParam when a value is outside
  // [0, 1] or the size does not match.
  static Kernel FromDense(int n, std::vector<double> values);

  // rows[i] lists (j, s_ij); indices are sorted and deduplicated here.
  static Kernel FromSparseRows(int n,
                               std::vector<std::vector<SparseEntry>> rows);

  int size() const { return n_; }
  bool is_sparse() const { return sparse_; }
  bool symmetric() const { return symmetric_; }

  double at(int i, int j) const;
  double row_sum(int i) const { return row_sums_[i]; }
  double column_sum(int j) const { return column_sums_[j]; }
  const std::vector<double>& row_sums() const { return row_sums_; }
  const std::vector<double>& column_sums() const { return column_sums_; }

  // fn(j, s_ij) for the stored entries of row i.
  template <typename Fn>
  void ForEachInRow(int i, Fn&& fn) const {
    if (sparse_) {
      for (const SparseEntry& e : rows_[i]) fn(e.index, e.value);
    } else {
      const double* row = dense_.data() + static_cast<size_t>(i) * n_;
      for (int j = 0; j < n_; ++j) fn(j, row[j]);
    }
  }

  // fn(i, s_ij) for the stored entries of column j.
  template <typename Fn>
  void ForEachInColumn(int j, Fn&& fn) const {
    if (symmetric_) {
      ForEachInRow(j, fn);
    } else if (sparse_) {
      for (const SparseEntry& e : columns_[j]) fn(e.index, e.value);
    } else {
      for (int i = 0; i < n_; ++i) fn(i, dense_[static_cast<size_t>(i) * n_ + j]);
    }
  }

  // Row-major n x n copy with zeros for missing entries.
  std::vector<double> ToDense() const;

 private:
  void ComputeSums();

  int n_ = 0;
  bool sparse_ = false;
  bool symmetric_ = true;
  std::vector<double> dense_;
  std::vector<std::vector<SparseEntry>> rows_;
  std::vector<std::vector<SparseEntry>> columns_;  // only when asymmetric
  std::vector<double> row_sums_;
  std::vector<double> column_sums_;
};

// Dense symmetric non-negative distances with a zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  // Throws kInvalidParam unless values form a valid distance matrix.
  static DistanceMatrix FromDense(int n, std::vector<double> values);

  int size() const { return n_; }
  double operator()(int i, int j) const {
    return values_[static_cast<size_t>(i) * n_ + j];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

struct KernelMetric {
  enum class Type { kCosine, kGaussian };
  Type type = Type::kCosine;
  double sigma = 1.0;
};

enum class DistanceMetric { kEuclidean, kOneMinusCosine };

// Parse "cosine" / "gaussian" and "euclidean" / "one_minus_cosine".
// Throw kInvalidParam for anything else.
KernelMetric::Type ParseKernelMetric(std::string_view name);
DistanceMetric ParseDistanceMetric(std::string_view name);

// Dense symmetric kernel. Cosine requires no all-zero rows (kZeroVector);
// gaussian uses exp(-|xi - xj|^2 / (2 sigma^2)) and needs sigma > 0.
Kernel ComputeKernel(const FeatureMatrix& features, KernelMetric metric = {});

// Keeps the k largest off-diagonal entries per row plus the diagonal, then
// symmetrizes with max(s_ij, s_ji). Requires a dense kernel and 1 <= k < n.
Kernel SparsifyKnn(const Kernel& kernel, int k);

DistanceMatrix ComputeDistances(
    const FeatureMatrix& features,
    DistanceMetric metric = DistanceMetric::kEuclidean);

}  // namespace datasumm

#endif  // DATASUMM_SIMILARITY_H_
