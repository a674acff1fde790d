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
#include <limits>
#include <random>

#include "datasumm/error.h"
#include "datasumm/functions.h"
#include "datasumm/optimize.h"
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

using Indices = std::vector<int>;

std::shared_ptr<const Kernel> ThreeItemKernel() {
  return std::make_shared<const Kernel>(
      Kernel::FromDense(3, {1, .9, 0, .9, 1, 0, 0, 0, 1}));
}

std::shared_ptr<const ConceptData> Concepts(std::vector<std::vector<int>> sets,
                                            int m) {
  auto c = std::make_shared<ConceptData>();
  for (int u = 0; u < m; ++u) c->concept_names.push_back("c" + std::to_string(u));
  c->weights.assign(m, 1.0);
  c->item_concepts = std::move(sets);
  return c;
}

std::shared_ptr<const DistanceMatrix> Line(std::vector<double> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> v(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) v[i * n + j] = std::abs(pts[i] - pts[j]);
  }
  return std::make_shared<const DistanceMatrix>(DistanceMatrix::FromDense(n, v));
}

TEST(NaiveGreedyTest, TieGoesToLowestIndex) {
  FacilityLocation f(ThreeItemKernel());
  Selection s = NaiveGreedy(f, GroundSet::Indexed(3), 1);
  EXPECT_EQ(s.indices, Indices{0});
  EXPECT_NEAR(s.value(), 1.9, 1e-12);
}

TEST(NaiveGreedyTest, TwoPicksMatchBruteForce) {
  FacilityLocation f(ThreeItemKernel());
  Selection s = NaiveGreedy(f, GroundSet::Indexed(3), 2);
  EXPECT_EQ(s.indices, (Indices{0, 2}));
  EXPECT_NEAR(s.value(), 2.9, 1e-12);
  EXPECT_NEAR(BruteForceOpt(f, GroundSet::Indexed(3), 2).value, 2.9, 1e-12);
  EXPECT_EQ(s.objective_trace.size(), s.indices.size());
}

TEST(NaiveGreedyTest, FullSetReachesEvalOfV) {
  for (const auto& name : ModelNames()) {
    auto c = synth::MakeCase(name, 9, 3);
    SolverConfig cfg;
    cfg.stop_at_zero = false;
    Selection s = NaiveGreedy(*c.f, GroundSet::Indexed(9), 9, cfg);
    ASSERT_EQ(s.indices.size(), 9u) << name;
    Indices all(9);
    std::iota(all.begin(), all.end(), 0);
    if (name == "max_marginal_relevance") {
      EXPECT_NEAR(s.value(), c.f->Evaluate(s.indices), 1e-9);
    } else {
      EXPECT_NEAR(s.value(), c.f->Evaluate(all), 1e-9) << name;
    }
  }
}

TEST(NaiveGreedyTest, RejectsBadCardinalityAndSizeMismatch) {
  FacilityLocation f(ThreeItemKernel());
  EXPECT_EQ(CodeOf([&] { NaiveGreedy(f, GroundSet::Indexed(3), 0); }),
            ErrorCode::kInvalidParam);
  EXPECT_EQ(CodeOf([&] { NaiveGreedy(f, GroundSet::Indexed(3), 4); }),
            ErrorCode::kInvalidParam);
  EXPECT_EQ(CodeOf([&] { NaiveGreedy(f, GroundSet::Indexed(4), 1); }),
            ErrorCode::kInvalidSelection);
}

TEST(NaiveGreedyTest, StopsAtZeroForNonMonotoneByDefault) {
  // Graph cut with a small lambda turns negative quickly.
  GraphCut f(std::make_shared<const Kernel>(
                 Kernel::FromDense(3, std::vector<double>(9, 1.0))),
             0.5);
  Selection s = NaiveGreedy(f, GroundSet::Indexed(3), 3);
  EXPECT_TRUE(s.stats.stopped_at_zero);
  EXPECT_EQ(s.indices, Indices{0});
  SolverConfig cfg;
  cfg.stop_at_zero = false;
  EXPECT_EQ(NaiveGreedy(f, GroundSet::Indexed(3), 3, cfg).indices.size(), 3u);
}

TEST(NaiveGreedyTest, ThreadedScanIsDeterministic) {
  auto c = synth::MakeCase("facility_location", 120, 5);
  SolverConfig one, many;
  many.threads = 4;
  EXPECT_EQ(NaiveGreedy(*c.f, GroundSet::Indexed(120), 15, one).indices,
            NaiveGreedy(*c.f, GroundSet::Indexed(120), 15, many).indices);
}

TEST(LazyGreedyTest, MatchesNaiveOnFacilityLocation) {
  auto c = synth::MakeCase("facility_location", 50, 17);
  Selection lazy = LazyGreedy(*c.f, GroundSet::Indexed(50), 10);
  Selection naive = NaiveGreedy(*c.f, GroundSet::Indexed(50), 10);
  EXPECT_EQ(lazy.indices, naive.indices);
  EXPECT_EQ(lazy.objective_trace, naive.objective_trace);
  ASSERT_EQ(lazy.stats.resorts.size(), 10u);
  for (int r : lazy.stats.resorts) EXPECT_LE(r, 50);
  EXPECT_LT(lazy.stats.gain_evaluations, naive.stats.gain_evaluations);
}

TEST(LazyGreedyTest, NonSubmodularFallsBackToNaive) {
  for (const char* name : {"disparity_min", "disparity_sum",
                           "disparity_min_sum", "max_marginal_relevance"}) {
    auto c = synth::MakeCase(name, 20, 8);
    SolverConfig cfg;
    cfg.stop_at_zero = false;
    Selection lazy = LazyGreedy(*c.f, GroundSet::Indexed(20), 6, cfg);
    Selection naive = NaiveGreedy(*c.f, GroundSet::Indexed(20), 6, cfg);
    EXPECT_TRUE(lazy.stats.lazy_fallback) << name;
    EXPECT_EQ(lazy.indices, naive.indices) << name;
  }
}

TEST(LazyGreedyTest, ScratchGainsSelectTheSame) {
  for (const auto& name : synth::SubmodularModels()) {
    auto c = synth::MakeCase(name, 40, 2);
    SolverConfig scratch;
    scratch.memoize = false;
    EXPECT_EQ(LazyGreedy(*c.f, GroundSet::Indexed(40), 8).indices,
              LazyGreedy(*c.f, GroundSet::Indexed(40), 8, scratch).indices)
        << name;
  }
}

TEST(BudgetedGreedyTest, UnitCostsReduceToCardinality) {
  FacilityLocation f(ThreeItemKernel());
  Selection s = BudgetedGreedy(f, GroundSet::Indexed(3), 2.0);
  EXPECT_EQ(s.indices, (Indices{0, 2}));
}

TEST(BudgetedGreedyTest, SkipsItemsThatDoNotFit) {
  FacilityLocation f(ThreeItemKernel());
  GroundSet gs = GroundSet::Create({"a", "b", "c"}, std::vector<double>{1, 1, 10});
  Selection s = BudgetedGreedy(f, gs, 2.0);
  EXPECT_EQ(std::count(s.indices.begin(), s.indices.end(), 2), 0);
  EXPECT_LE(SelectionTotalCost(s, gs), 2.0);
}

TEST(BudgetedGreedyTest, BeatsEveryFeasibleSingleton) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto c = synth::MakeCase(trial % 2 ? "set_cover" : "facility_location", 10,
                             trial);
    auto costs = synth::Uniform(10, rng, 0.2, 3.0);
    GroundSet gs = GroundSet::Create(GroundSet::Indexed(10).item_ids(), costs);
    const double budget = 2.5;
    Selection s = BudgetedGreedy(*c.f, gs, budget);
    EXPECT_LE(SelectionTotalCost(s, gs), budget + 1e-12);
    for (int j = 0; j < 10; ++j) {
      if (costs[j] <= budget) {
        EXPECT_GE(s.value(), c.f->Evaluate(Indices{j}) - 1e-9);
      }
    }
  }
}

TEST(BudgetedGreedyTest, ZeroCostIsRejected) {
  FacilityLocation f(ThreeItemKernel());
  GroundSet gs = GroundSet::Create({"a", "b", "c"}, std::vector<double>{1, 0, 1});
  EXPECT_EQ(CodeOf([&] { BudgetedGreedy(f, gs, 2.0); }), ErrorCode::kInvalidCost);
  EXPECT_EQ(CodeOf([&] { BudgetedGreedy(f, GroundSet::Indexed(3), 0.0); }),
            ErrorCode::kInvalidParam);
}

TEST(CoverGreedyTest, HandTracedSetCover) {
  SetCover f(Concepts({{0, 1}, {1, 2}, {0}}, 3));
  Selection s = CoverGreedy(f, GroundSet::Indexed(3), 1.0);
  EXPECT_EQ(s.indices, (Indices{0, 1}));
  EXPECT_EQ(s.objective_trace, (std::vector<double>{2.0, 3.0}));
}

TEST(CoverGreedyTest, NothingToCoverGivesEmptySelection) {
  SetCover f(Concepts({{}, {}}, 1));
  EXPECT_TRUE(CoverGreedy(f, GroundSet::Indexed(2), 1.0).indices.empty());
}

TEST(CoverGreedyTest, FractionalTargetIsMet) {
  auto c = synth::MakeCase("facility_location", 30, 6);
  Indices all(30);
  std::iota(all.begin(), all.end(), 0);
  Selection s = CoverGreedy(*c.f, GroundSet::Indexed(30), 0.9);
  EXPECT_GE(s.value(), 0.9 * c.f->Evaluate(all) - 1e-9);
  EXPECT_LT(s.indices.size(), 30u);
}

TEST(CoverGreedyTest, RejectsNonMonotoneAndBadFraction) {
  auto c = synth::MakeCase("disparity_min", 5, 1);
  EXPECT_EQ(CodeOf([&] { CoverGreedy(*c.f, GroundSet::Indexed(5), 1.0); }),
            ErrorCode::kUnsupported);
  FacilityLocation f(ThreeItemKernel());
  EXPECT_EQ(CodeOf([&] { CoverGreedy(f, GroundSet::Indexed(3), 1.5); }),
            ErrorCode::kInvalidParam);
}

TEST(StreamGreedyTest, HandTracedThreshold) {
  FacilityLocation f(ThreeItemKernel());
  EXPECT_EQ(StreamGreedy(f, GroundSet::Indexed(3), 1.5).indices, Indices{0});
}

TEST(StreamGreedyTest, ThresholdExtremes) {
  FacilityLocation f(ThreeItemKernel());
  EXPECT_EQ(StreamGreedy(f, GroundSet::Indexed(3),
                         -std::numeric_limits<double>::infinity())
                .indices.size(),
            3u);
  EXPECT_TRUE(StreamGreedy(f, GroundSet::Indexed(3), 5.0).indices.empty());
}

TEST(StreamGreedyTest, SeededOrderIsReproducible) {
  auto c = synth::MakeCase("facility_location", 40, 9);
  auto a = StreamGreedy(*c.f, GroundSet::Indexed(40), 0.5, 123).indices;
  auto b = StreamGreedy(*c.f, GroundSet::Indexed(40), 0.5, 123).indices;
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
}

TEST(StreamGreedyTest, CoverageModelsAreUnsupported) {
  SetCover f(Concepts({{0}, {1}}, 2));
  EXPECT_EQ(CodeOf([&] { StreamGreedy(f, GroundSet::Indexed(2), 0.0); }),
            ErrorCode::kUnsupported);
}

TEST(CompatibilityTest, Matrix) {
  const ModelInfo sim{"fl", Family::kSimilarity, true, true};
  const ModelInfo cov{"sc", Family::kCoverage, true, true};
  const ModelInfo dist{"dm", Family::kDistance, false, false};
  const ModelInfo mod{"mi", Family::kModular, true, true};
  for (auto a : {Algorithm::kGreedy, Algorithm::kLazy, Algorithm::kBudgeted}) {
    for (const auto& m : {sim, cov, dist, mod}) {
      EXPECT_NO_THROW(CheckCompatibility(m, a));
    }
  }
  EXPECT_NO_THROW(CheckCompatibility(sim, Algorithm::kCover));
  EXPECT_NO_THROW(CheckCompatibility(cov, Algorithm::kCover));
  EXPECT_NO_THROW(CheckCompatibility(mod, Algorithm::kCover));
  EXPECT_THROW(CheckCompatibility(dist, Algorithm::kCover), Error);
  EXPECT_NO_THROW(CheckCompatibility(sim, Algorithm::kStream));
  EXPECT_NO_THROW(CheckCompatibility(dist, Algorithm::kStream));
  EXPECT_THROW(CheckCompatibility(cov, Algorithm::kStream), Error);
  EXPECT_THROW(CheckCompatibility(mod, Algorithm::kStream), Error);
}

TEST(DisparityMinGreedyTest, Examples) {
  auto d = std::make_shared<const DistanceMatrix>(
      DistanceMatrix::FromDense(3, {0, 3, 1, 3, 0, 2, 1, 2, 0}));
  DisparityMin f(d);
  EXPECT_EQ(DisparityMinGreedy(f, GroundSet::Indexed(3), 2).indices, (Indices{0, 1}));
  Selection all = DisparityMinGreedy(f, GroundSet::Indexed(3), 3);
  EXPECT_EQ(all.indices, (Indices{0, 1, 2}));
  EXPECT_DOUBLE_EQ(all.value(), 1.0);
  DisparityMin line(Line({0, 1, 10}));
  EXPECT_EQ(DisparityMinGreedy(line, GroundSet::Indexed(3), 2).indices,
            (Indices{0, 2}));
  EXPECT_EQ(CodeOf([&] { DisparityMinGreedy(f, GroundSet::Indexed(3), 4); }),
            ErrorCode::kInvalidParam);
}

TEST(FarthestPointExtendTest, ConditionsOnBase) {
  auto d = Line({0, 1, 5, 9, 10});
  // From {0}, farthest eligible is 10 (index 4), then 5 (index 2).
  EXPECT_EQ(FarthestPointExtend(*d, Indices{0}, 2), (Indices{4, 2}));
  std::vector<char> eligible = {1, 1, 1, 1, 0};
  EXPECT_EQ(FarthestPointExtend(*d, Indices{0}, 1, eligible), Indices{3});
}

TEST(GreedyExtendTest, ContinuesFromMemoAndRespectsMask) {
  auto c = synth::MakeCase("facility_location", 20, 4);
  auto memo = c.f->NewMemo();
  memo->Commit(3);
  std::vector<char> eligible(20, 1);
  eligible[7] = 0;
  Selection s = GreedyExtend(*c.f, *memo, 5, eligible);
  EXPECT_EQ(s.indices.size(), 5u);
  EXPECT_EQ(std::count(s.indices.begin(), s.indices.end(), 7), 0);
  EXPECT_EQ(std::count(s.indices.begin(), s.indices.end(), 3), 0);
  EXPECT_EQ(memo->selected().size(), 6u);
}

TEST(BruteForceTest, Examples) {
  FacilityLocation id(std::make_shared<const Kernel>(Kernel::FromDense(
      4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1})));
  auto r = BruteForceOpt(id, GroundSet::Indexed(4), 2);
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  EXPECT_EQ(r.indices, (Indices{0, 1}));
  auto full = BruteForceOpt(id, GroundSet::Indexed(4), 4);
  EXPECT_DOUBLE_EQ(full.value, 4.0);
}

TEST(BruteForceTest, GuardsLargeInstances) {
  auto c = synth::MakeCase("modular_importance", 40, 1);
  EXPECT_EQ(CodeOf([&] { BruteForceOpt(*c.f, GroundSet::Indexed(40), 20); }),
            ErrorCode::kTooLarge);
}

TEST(NearOptimalityTest, GreedyWithinBoundOfOptimum) {
  const double bound = 1.0 - std::exp(-1.0);
  for (const char* name : {"facility_location", "saturated_coverage",
                           "set_cover", "probabilistic_set_cover",
                           "feature_based", "graph_cut"}) {
    for (uint64_t seed = 0; seed < 10; ++seed) {
      for (int k = 1; k <= 4; ++k) {
        auto c = synth::MakeCase(name, 12, seed);
        const double opt = BruteForceOpt(*c.f, GroundSet::Indexed(12), k).value;
        const double got = LazyGreedy(*c.f, GroundSet::Indexed(12), k).value();
        EXPECT_GE(got, bound * opt - 1e-12) << name << " seed " << seed;
      }
    }
  }
}

TEST(SolveTest, DispatchesAndRoutesDisparityMin) {
  auto c = synth::MakeCase("disparity_min", 15, 2);
  Constraint con;
  con.algorithm = Algorithm::kLazy;
  con.k = 4;
  Selection s = Solve(*c.f, GroundSet::Indexed(15), con);
  EXPECT_EQ(s.indices,
            DisparityMinGreedy(*dynamic_cast<const DisparityMin*>(c.f.get()),
                               GroundSet::Indexed(15), 4)
                .indices);
  auto sc = synth::MakeCase("set_cover", 15, 2);
  con.algorithm = Algorithm::kStream;
  EXPECT_EQ(CodeOf([&] { Solve(*sc.f, GroundSet::Indexed(15), con); }),
            ErrorCode::kUnsupported);
}

TEST(SolveTest, DeterministicAcrossRuns) {
  for (const auto& name : ModelNames()) {
    auto c = synth::MakeCase(name, 25, 13);
    Constraint con;
    con.k = 5;
    SolverConfig cfg;
    cfg.stop_at_zero = false;
    EXPECT_EQ(Solve(*c.f, GroundSet::Indexed(25), con, cfg).indices,
              Solve(*c.f, GroundSet::Indexed(25), con, cfg).indices)
        << name;
  }
}

TEST(AlgorithmNamesTest, RoundTrip) {
  for (const char* n : {"greedy", "lazy", "budgeted", "cover", "stream"}) {
    EXPECT_EQ(AlgorithmName(ParseAlgorithm(n)), n);
  }
  EXPECT_EQ(CodeOf([] { ParseAlgorithm("random"); }), ErrorCode::kInvalidParam);
}

}  // namespace
}  // namespace datasumm
