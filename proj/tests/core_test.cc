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

#include "datasumm/error.h"
#include "datasumm/functions.h"
#include "datasumm/ground_set.h"
#include "datasumm/objective.h"
#include "synthetic.h"

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

TEST(GroundSetTest, DefaultsToUnitCosts) {
  GroundSet gs = GroundSet::Create({"a", "b"});
  EXPECT_EQ(gs.size(), 2);
  EXPECT_EQ(gs.costs(), (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(gs.Find("b"), 1);
  EXPECT_FALSE(gs.Find("z").has_value());
}

TEST(GroundSetTest, RejectsDuplicateIds) {
  EXPECT_EQ(CodeOf([] { GroundSet::Create({"a", "a"}); }),
            ErrorCode::kDuplicateItem);
}

TEST(GroundSetTest, RejectsNegativeCost) {
  EXPECT_EQ(CodeOf([] { GroundSet::Create({"a"}, std::vector<double>{-1.0}); }),
            ErrorCode::kInvalidCost);
}

TEST(GroundSetTest, RejectsEmptyAndMismatchedCosts) {
  EXPECT_EQ(CodeOf([] { GroundSet::Create({}); }), ErrorCode::kInvalidParam);
  EXPECT_EQ(
      CodeOf([] { GroundSet::Create({"a", "b"}, std::vector<double>{1.0}); }),
      ErrorCode::kInvalidCost);
}

TEST(SelectionCostTest, SumsSelectedCosts) {
  Selection sel;
  sel.indices = {0, 1};
  EXPECT_DOUBLE_EQ(SelectionTotalCost(sel, GroundSet::Indexed(2)), 2.0);
  sel.indices = {};
  EXPECT_DOUBLE_EQ(SelectionTotalCost(sel, GroundSet::Indexed(2)), 0.0);
  sel.indices = {2};
  GroundSet gs = GroundSet::Create({"a", "b", "c"}, std::vector<double>{1, 1, 3.5});
  EXPECT_DOUBLE_EQ(SelectionTotalCost(sel, gs), 3.5);
}

TEST(SelectionCostTest, RejectsOutOfRange) {
  Selection sel;
  sel.indices = {5};
  EXPECT_EQ(CodeOf([&] { SelectionTotalCost(sel, GroundSet::Indexed(2)); }),
            ErrorCode::kInvalidSelection);
}

TEST(ValidateIndicesTest, RejectsDuplicatesAndRange) {
  std::vector<int> dup = {1, 1};
  std::vector<int> neg = {-1};
  EXPECT_EQ(CodeOf([&] { ValidateIndices(dup, 3); }), ErrorCode::kInvalidSelection);
  EXPECT_EQ(CodeOf([&] { ValidateIndices(neg, 3); }), ErrorCode::kInvalidSelection);
  std::vector<int> ok = {2, 0};
  EXPECT_NO_THROW(ValidateIndices(ok, 3));
}

class OracleContractTest : public ::testing::TestWithParam<std::string> {};

TEST_P(OracleContractTest, EmptySetIsZeroAfterReset) {
  auto c = synth::MakeCase(GetParam(), 10, 7);
  EXPECT_EQ(c.f->Evaluate({}), 0.0);
  auto memo = c.f->NewMemo();
  memo->Commit(3);
  memo->Commit(5);
  memo->Reset();
  EXPECT_EQ(memo->value(), 0.0);
  EXPECT_TRUE(memo->selected().empty());
  // A reset memo behaves like a fresh one.
  auto fresh = c.f->NewMemo();
  for (int j = 0; j < 10; ++j) EXPECT_NEAR(memo->Gain(j), fresh->Gain(j), 1e-12);
}

TEST_P(OracleContractTest, GainRejectsSelectedAndOutOfRange) {
  auto c = synth::MakeCase(GetParam(), 6, 3);
  auto memo = c.f->NewMemo();
  memo->Commit(2);
  EXPECT_EQ(CodeOf([&] { memo->Gain(2); }), ErrorCode::kAlreadySelected);
  EXPECT_EQ(CodeOf([&] { memo->Commit(2); }), ErrorCode::kAlreadySelected);
  EXPECT_EQ(CodeOf([&] { memo->Gain(6); }), ErrorCode::kInvalidSelection);
}

TEST_P(OracleContractTest, EvaluateRejectsInvalidSelection) {
  auto c = synth::MakeCase(GetParam(), 5, 3);
  std::vector<int> bad = {0, 9};
  EXPECT_EQ(CodeOf([&] { c.f->Evaluate(bad); }), ErrorCode::kInvalidSelection);
}

TEST_P(OracleContractTest, ScratchMemoMatchesDefinition) {
  auto c = synth::MakeCase(GetParam(), 9, 11);
  ScratchMemo memo(*c.f);
  std::vector<int> x;
  for (int j : {4, 0, 7}) {
    const double gain = memo.Commit(j);
    const double before = c.reference(x);
    x.push_back(j);
    EXPECT_NEAR(gain, c.reference(x) - before, 1e-9);
    EXPECT_NEAR(memo.value(), c.reference(x), 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(AllModels, OracleContractTest,
                         ::testing::ValuesIn(ModelNames()),
                         [](const auto& info) { return info.param; });

}  // namespace
}  // namespace datasumm
