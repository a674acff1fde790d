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

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "datasumm/bench.h"
#include "datasumm/error.h"
#include "datasumm/ingest.h"

namespace datasumm {
namespace {

template <typename Fn>
ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kIoError;
}

TEST(BenchTest, SmallRunSelectsIdentically) {
  for (const std::string model :
       {"facility_location", "saturated_coverage", "graph_cut"}) {
    BenchReport r = BenchFunction(model, 100, 0.05, 1, 1);
    EXPECT_EQ(r.function, model);
    EXPECT_EQ(r.n, 100);
    EXPECT_EQ(r.k, 5);
    EXPECT_TRUE(r.selections_equal);
    EXPECT_GT(r.memoized_seconds, 0.0);
    EXPECT_DOUBLE_EQ(r.speedup, r.naive_seconds / r.memoized_seconds);
    EXPECT_FALSE(r.environment.empty());
  }
}

TEST(BenchTest, SyntheticInputsMatchModelSource) {
  for (const auto& model : DefaultBenchModels()) {
    ModelInputs in = SyntheticInputs(model, 120, 3);
    EXPECT_EQ(in.ItemCount(model), 120) << model;
  }
}

TEST(BenchTest, MatrixCoversEveryCell) {
  const auto& models = DefaultBenchModels();
  const auto& fractions = DefaultBenchFractions();
  ASSERT_EQ(models.size(), 8u);
  ASSERT_EQ(fractions.size(), 3u);
  std::vector<BenchReport> rows = BenchMatrix(models, 100, fractions, 2, 1);
  ASSERT_EQ(rows.size(), 24u);
  for (const auto& r : rows) {
    EXPECT_TRUE(r.selections_equal) << r.function << " " << r.fraction;
    EXPECT_EQ(r.k, static_cast<int>(std::ceil(r.fraction * 100 - 1e-9)));
  }

  const std::string csv = BenchCsv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "function,n,fraction,k,memoized_s,naive_s,speedup,selections_equal");
  FeatureMatrix parsed = ParseFeaturesCsv(csv);
  ASSERT_EQ(parsed.rows(), 24);
  ASSERT_EQ(parsed.cols(), 7);
  for (int i = 0; i < 24; ++i) {
    EXPECT_EQ(parsed.ids()[i], rows[i].function);
    EXPECT_EQ(parsed(i, 0), 100.0);
    EXPECT_EQ(parsed(i, 1), rows[i].fraction);
    EXPECT_EQ(parsed(i, 6), 1.0);
  }

  nlohmann::json j = BenchJson(rows);
  EXPECT_EQ(j["reports"].size(), 24u);
}

TEST(BenchTest, Validation) {
  EXPECT_EQ(CodeOf([] { BenchFunction("facility_location", 50, 0.05, 0, 1); }),
            ErrorCode::kInvalidParam);
  EXPECT_EQ(CodeOf([] { BenchFunction("facility_location", 100, 0.0, 0, 1); }),
            ErrorCode::kInvalidParam);
  EXPECT_EQ(CodeOf([] { BenchFunction("facility_location", 100, 0.1, 0, 0); }),
            ErrorCode::kInvalidParam);
  EXPECT_EQ(CodeOf([] { BenchFunction("no_such_model", 100, 0.1, 0, 1); }),
            ErrorCode::kInvalidParam);
}

}  // namespace
}  // namespace datasumm
