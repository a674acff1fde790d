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

#include "datasumm/similarity.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "datasumm/error.h"

namespace datasumm {
namespace {

// Tile edge for the pairwise passes.
constexpr int kBlock = 64;

void CheckUnitInterval(double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::kInvalidParam,
                "kernel value " + std::to_string(v) + " outside [0, 1]");
  }
}

// Calls fn(i, j) for every i <= j, tile by tile.
template <typename Fn>
void ForEachUpperPairBlocked(int n, Fn&& fn) {
  for (int bi = 0; bi < n; bi += kBlock) {
    const int ei = std::min(n, bi + kBlock);
    for (int bj = bi; bj < n; bj += kBlock) {
      const int ej = std::min(n, bj + kBlock);
      for (int i = bi; i < ei; ++i) {
        for (int j = std::max(i, bj); j < ej; ++j) fn(i, j);
      }
    }
  }
}

std::vector<double> RowNorms(const FeatureMatrix& features) {
  std::vector<double> norms(features.rows());
  for (int i = 0; i < features.rows(); ++i) {
    double sq = 0.0;
    for (double v : features.row(i)) sq += v * v;
    norms[i] = std::sqrt(sq);
    if (norms[i] == 0.0) {
      throw Error(ErrorCode::kZeroVector,
                  "feature row " + std::to_string(i) +
                      " is all zero; cosine is undefined");
    }
  }
  return norms;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sq += d * d;
  }
  return sq;
}

void RequireRows(const FeatureMatrix& features) {
  if (features.rows() < 1) {
    throw Error(ErrorCode::kInvalidParam, "feature matrix has no rows");
  }
}

}  // namespace

Kernel Kernel::FromDense(int n, std::vector<double> values) {
  if (n < 0 || values.size() != static_cast<size_t>(n) * n) {
    throw Error(ErrorCode::kInvalidParam, "dense kernel size mismatch");
  }
  for (double v : values) CheckUnitInterval(v);
  Kernel k;
  k.n_ = n;
  k.sparse_ = false;
  k.dense_ = std::move(values);
  k.symmetric_ = true;
  for (int i = 0; i < n && k.symmetric_; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (k.dense_[static_cast<size_t>(i) * n + j] !=
          k.dense_[static_cast<size_t>(j) * n + i]) {
        k.symmetric_ = false;
        break;
      }
    }
  }
  k.ComputeSums();
  return k;
}

Kernel Kernel::FromSparseRows(int n,
                              std::vector<std::vector<SparseEntry>> rows) {
  if (n < 0 || rows.size() != static_cast<size_t>(n)) {
    throw Error(ErrorCode::kInvalidParam, "sparse kernel row count mismatch");
  }
  for (auto& row : rows) {
    for (const SparseEntry& e : row) {
      if (e.index < 0 || e.index >= n) {
        throw Error(ErrorCode::kInvalidParam, "sparse kernel index out of range");
      }
      CheckUnitInterval(e.value);
    }
    std::stable_sort(row.begin(), row.end(),
                     [](const SparseEntry& a, const SparseEntry& b) {
                       return a.index < b.index;
                     });
    // Duplicate entries keep the larger value.
    std::vector<SparseEntry> unique;
    unique.reserve(row.size());
    for (const SparseEntry& e : row) {
      if (!unique.empty() && unique.back().index == e.index) {
        unique.back().value = std::max(unique.back().value, e.value);
      } else {
        unique.push_back(e);
      }
    }
    row = std::move(unique);
  }
  Kernel k;
  k.n_ = n;
  k.sparse_ = true;
  k.rows_ = std::move(rows);
  k.symmetric_ = true;
  for (int i = 0; i < n && k.symmetric_; ++i) {
    for (const SparseEntry& e : k.rows_[i]) {
      if (k.at(e.index, i) != e.value) {
        k.symmetric_ = false;
        break;
      }
    }
  }
  if (!k.symmetric_) {
    k.columns_.assign(n, {});
    for (int i = 0; i < n; ++i) {
      for (const SparseEntry& e : k.rows_[i]) {
        k.columns_[e.index].push_back({i, e.value});
      }
    }
  }
  k.ComputeSums();
  return k;
}

double Kernel::at(int i, int j) const {
  if (!sparse_) return dense_[static_cast<size_t>(i) * n_ + j];
  const auto& row = rows_[i];
  auto it = std::lower_bound(
      row.begin(), row.end(), j,
      [](const SparseEntry& e, int idx) { return e.index < idx; });
  return (it != row.end() && it->index == j) ? it->value : 0.0;
}

void Kernel::ComputeSums() {
  row_sums_.assign(n_, 0.0);
  column_sums_.assign(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    ForEachInRow(i, [&](int j, double s) {
      row_sums_[i] += s;
      column_sums_[j] += s;
    });
  }
  // Keep both sums bitwise identical for symmetric storage.
  if (symmetric_) column_sums_ = row_sums_;
}

std::vector<double> Kernel::ToDense() const {
  if (!sparse_) return dense_;
  std::vector<double> out(static_cast<size_t>(n_) * n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    for (const SparseEntry& e : rows_[i]) {
      out[static_cast<size_t>(i) * n_ + e.index] = e.value;
    }
  }
  return out;
}

DistanceMatrix DistanceMatrix::FromDense(int n, std::vector<double> values) {
  if (n < 0 || values.size() != static_cast<size_t>(n) * n) {
    throw Error(ErrorCode::kInvalidParam, "distance matrix size mismatch");
  }
  for (int i = 0; i < n; ++i) {
    if (values[static_cast<size_t>(i) * n + i] != 0.0) {
      throw Error(ErrorCode::kInvalidParam,
                  "distance matrix diagonal must be zero");
    }
    for (int j = 0; j < n; ++j) {
      const double v = values[static_cast<size_t>(i) * n + j];
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidParam,
                    "distances must be finite and non-negative");
      }
      if (v != values[static_cast<size_t>(j) * n + i]) {
        throw Error(ErrorCode::kInvalidParam,
                    "distance matrix must be symmetric");
      }
    }
  }
  DistanceMatrix d;
  d.n_ = n;
  d.values_ = std::move(values);
  return d;
}

KernelMetric::Type ParseKernelMetric(std::string_view name) {
  if (name == "cosine") return KernelMetric::Type::kCosine;
  if (name == "gaussian") return KernelMetric::Type::kGaussian;
  throw Error(ErrorCode::kInvalidParam,
              "unknown similarity metric '" + std::string(name) +
                  "' (expected cosine or gaussian)");
}

DistanceMetric ParseDistanceMetric(std::string_view name) {
  if (name == "euclidean") return DistanceMetric::kEuclidean;
  if (name == "one_minus_cosine") return DistanceMetric::kOneMinusCosine;
  throw Error(ErrorCode::kInvalidParam,
              "unknown distance metric '" + std::string(name) +
                  "' (expected euclidean or one_minus_cosine)");
}

Kernel ComputeKernel(const FeatureMatrix& features, KernelMetric metric) {
  RequireRows(features);
  const int n = features.rows();
  std::vector<double> values(static_cast<size_t>(n) * n);
  auto put = [&](int i, int j, double v) {
    values[static_cast<size_t>(i) * n + j] = v;
    values[static_cast<size_t>(j) * n + i] = v;
  };
  if (metric.type == KernelMetric::Type::kCosine) {
    const std::vector<double> norms = RowNorms(features);
    ForEachUpperPairBlocked(n, [&](int i, int j) {
      if (i == j) {
        put(i, j, 1.0);
        return;
      }
      const double c = Dot(features.row(i), features.row(j)) /
                       (norms[i] * norms[j]);
      put(i, j, std::clamp(c, 0.0, 1.0));
    });
  } else {
    if (!(metric.sigma > 0.0) || !std::isfinite(metric.sigma)) {
      throw Error(ErrorCode::kInvalidParam,
                  "gaussian sigma must be positive, got " +
                      std::to_string(metric.sigma));
    }
    const double scale = 1.0 / (2.0 * metric.sigma * metric.sigma);
    ForEachUpperPairBlocked(n, [&](int i, int j) {
      if (i == j) {
        put(i, j, 1.0);
        return;
      }
      put(i, j, std::exp(-SquaredDistance(features.row(i), features.row(j)) *
                         scale));
    });
  }
  return Kernel::FromDense(n, std::move(values));
}

Kernel SparsifyKnn(const Kernel& kernel, int k) {
  const int n = kernel.size();
  if (kernel.is_sparse()) {
    throw Error(ErrorCode::kInvalidParam, "kNN sparsification needs a dense kernel");
  }
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::kInvalidParam,
                "knn k must satisfy 1 <= k < n (k=" + std::to_string(k) +
                    ", n=" + std::to_string(n) + ")");
  }
  std::vector<std::vector<SparseEntry>> rows(n);
  std::vector<int> order(n - 1);
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    // Largest first; ties go to the lower index.
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int a, int b) {
                        const double sa = kernel.at(i, a);
                        const double sb = kernel.at(i, b);
                        return sa != sb ? sa > sb : a < b;
                      });
    rows[i].push_back({i, kernel.at(i, i)});
    for (int t = 0; t < k; ++t) rows[i].push_back({order[t], kernel.at(i, order[t])});
  }
  // Symmetrize: s_ij = s_ji = max of whatever either row kept.
  std::vector<std::vector<SparseEntry>> sym(rows);
  for (int i = 0; i < n; ++i) {
    for (const SparseEntry& e : rows[i]) {
      if (e.index != i) sym[e.index].push_back({i, e.value});
    }
  }
  return Kernel::FromSparseRows(n, std::move(sym));
}

DistanceMatrix ComputeDistances(const FeatureMatrix& features,
                                DistanceMetric metric) {
  RequireRows(features);
  const int n = features.rows();
  std::vector<double> values(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> norms;
  if (metric == DistanceMetric::kOneMinusCosine) norms = RowNorms(features);
  ForEachUpperPairBlocked(n, [&](int i, int j) {
    if (i == j) return;
    double d;
    if (metric == DistanceMetric::kEuclidean) {
      d = std::sqrt(SquaredDistance(features.row(i), features.row(j)));
    } else {
      const double c = Dot(features.row(i), features.row(j)) /
                       (norms[i] * norms[j]);
      d = std::max(0.0, 1.0 - c);
    }
    values[static_cast<size_t>(i) * n + j] = d;
    values[static_cast<size_t>(j) * n + i] = d;
  });
  return DistanceMatrix::FromDense(n, std::move(values));
}

}  // namespace datasumm
