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

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "datasumm/error.h"
#include "datasumm/pipelines.h"
#include "reference.h"
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

RunOptions Options(const std::string& model, int k,
                   Algorithm algorithm = Algorithm::kLazy) {
  RunOptions o;
  o.model.name = model;
  o.constraint.algorithm = algorithm;
  o.constraint.k = k;
  return o;
}

ModelInputs FromFeatures(std::shared_ptr<const FeatureMatrix> f) {
  ModelInputs in;
  in.features = std::move(f);
  return in;
}

TEST(ExtractiveTest, FacilityLocationPicksOnePerCluster) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    synth::Planted p = synth::PlantedClusters(seed);
    SelectionManifest m =
        ExtractiveSummarize(FromFeatures(p.features), Options("facility_location", 5));
    ASSERT_EQ(m.indices.size(), 5u);
    std::set<int> clusters;
    for (int i : m.indices) clusters.insert(p.cluster[i]);
    EXPECT_EQ(clusters, (std::set<int>{0, 1, 2, 3, 4})) << "seed " << seed;
  }
}

TEST(ExtractiveTest, DisparityMinKeepsTheOutlier) {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    synth::Planted p = synth::PlantedClusters(seed);
    SelectionManifest m =
        ExtractiveSummarize(FromFeatures(p.features), Options("disparity_min", 5));
    ASSERT_EQ(m.indices.size(), 5u);
    EXPECT_NE(std::find(m.indices.begin(), m.indices.end(), p.outlier),
              m.indices.end());
  }
}

TEST(ExtractiveTest, FullBudgetSelectsEverything) {
  synth::Planted p = synth::PlantedClusters(1, 3, 4, false);
  SelectionManifest m =
      ExtractiveSummarize(FromFeatures(p.features), Options("facility_location", 12));
  std::vector<int> sorted = m.indices;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 12; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_NEAR(m.objective_value, 12.0, 1e-9);
}

TEST(ExtractiveTest, ManifestFields) {
  synth::Planted p = synth::PlantedClusters(2);
  SelectionManifest m =
      ExtractiveSummarize(FromFeatures(p.features), Options("facility_location", 3));
  EXPECT_EQ(m.kind, "extractive");
  EXPECT_EQ(m.ground_set_size, 101);
  EXPECT_EQ(m.objective_trace.size(), 3u);
  EXPECT_DOUBLE_EQ(m.objective_trace.back(), m.objective_value);
  EXPECT_EQ(m.total_cost, 3.0);
  nlohmann::json j = m.ToJson();
  EXPECT_EQ(j["schema"], std::string(kManifestSchema));
  EXPECT_EQ(j["model"]["name"], "facility_location");
  EXPECT_EQ(j["algorithm"]["name"], "lazy");
  EXPECT_EQ(j["selected"].size(), 3u);
  EXPECT_EQ(j["selected"][0]["index"], m.indices[0]);
  EXPECT_TRUE(j.contains("timings"));
  EXPECT_FALSE(m.ToJson(false).contains("timings"));
}

TEST(ExtractiveTest, ManifestIsDeterministicWithoutTimings) {
  synth::Planted p = synth::PlantedClusters(4);
  auto a = ExtractiveSummarize(FromFeatures(p.features), Options("graph_cut", 6));
  auto b = ExtractiveSummarize(FromFeatures(p.features), Options("graph_cut", 6));
  EXPECT_EQ(a.ToCanonicalString(false), b.ToCanonicalString(false));
  EXPECT_EQ(a.ToCanonicalString(false).back(), '\n');
}

TEST(ExtractiveTest, ManifestSelectionRoundTrip) {
  synth::Planted p = synth::PlantedClusters(4);
  auto m = ExtractiveSummarize(FromFeatures(p.features), Options("facility_location", 4));
  ManifestSelection back = ParseManifestSelection(m.ToCanonicalString());
  EXPECT_EQ(back.indices, m.indices);
  EXPECT_EQ(back.ground_set_size, 101);
  EXPECT_EQ(back.frame_count, 101);
}

TEST(ExtractiveTest, IncompatiblePairingIsUnsupported) {
  ModelInputs in;
  auto c = std::make_shared<ConceptData>();
  c->concept_names = {"a"};
  c->weights = {1};
  c->item_concepts = {{0}, {0}};
  in.concepts = c;
  EXPECT_EQ(CodeOf([&] {
              ExtractiveSummarize(in, Options("set_cover", 1, Algorithm::kStream));
            }),
            ErrorCode::kUnsupported);
}

TEST(ExtractiveTest, CostsFeedBudgetedGreedy) {
  synth::Planted p = synth::PlantedClusters(3, 2, 3, false);
  RunOptions o = Options("facility_location", 0, Algorithm::kBudgeted);
  o.constraint.budget = 2.0;
  std::vector<double> costs(6, 1.0);
  costs[0] = 10.0;
  auto m = ExtractiveSummarize(FromFeatures(p.features), o, costs);
  EXPECT_LE(m.total_cost, 2.0);
  EXPECT_EQ(std::find(m.indices.begin(), m.indices.end(), 0), m.indices.end());
  std::vector<double> wrong(5, 1.0);
  EXPECT_EQ(CodeOf([&] { ExtractiveSummarize(FromFeatures(p.features), o, wrong); }),
            ErrorCode::kInvalidCost);
}

TEST(EntityTest, ThreeGroupsAndMedoid) {
  synth::Planted p = synth::PlantedClusters(6, 3, 10, false);
  auto m = EntitySummarize(FromFeatures(p.features), Options("facility_location", 3));
  EXPECT_EQ(m.kind, "entity");
  std::set<int> groups;
  for (int i : m.indices) groups.insert(p.cluster[i]);
  EXPECT_EQ(groups.size(), 3u);

  // k = 1 picks the item with the largest total similarity.
  auto one = EntitySummarize(FromFeatures(p.features), Options("facility_location", 1));
  const ref::Matrix s = ref::CosineKernel(synth::Rows(*p.features));
  int medoid = 0;
  double best = -1.0;
  for (size_t j = 0; j < s.size(); ++j) {
    double total = 0.0;
    for (size_t i = 0; i < s.size(); ++i) total += s[i][j];
    if (total > best + 1e-12) {
      best = total;
      medoid = static_cast<int>(j);
    }
  }
  ASSERT_EQ(one.indices.size(), 1u);
  EXPECT_EQ(one.indices[0], medoid);
}

// 8 frames with distinct histograms, 4 snippets of 2 frames; frames 0 and 5
// are tagged "beach".
QueryInputs SmallVideo() {
  std::mt19937_64 rng(9);
  QueryInputs q;
  q.frames = *synth::RandomFeatures(8, 5, rng);
  for (int s = 0; s < 4; ++s) {
    q.snippets.snippets.push_back({"s" + std::to_string(s), {2 * s, 2 * s + 1}, 2.0});
  }
  q.snippets.frame_count = 8;
  q.tags = ParseTags(
      "{\"item\": 0, \"tags\": [{\"tag\": \"beach\", \"conf\": 0.9}]}\n"
      "{\"item\": 5, \"tags\": [{\"tag\": \"beach\", \"conf\": 0.6}]}\n"
      "{\"item\": 7, \"tags\": [{\"tag\": \"road\", \"conf\": 0.9}]}\n",
      8);
  q.query = "beach";
  return q;
}

TEST(QueryTest, KeepsMatchingSnippetsOnly) {
  QueryInputs q = SmallVideo();
  auto m = QuerySummarize(q, Options("facility_location", 5));
  EXPECT_EQ(m.kind, "query");
  EXPECT_EQ(m.ground_set_size, 2);
  EXPECT_EQ(m.ids.size(), 2u);
  std::set<std::string> ids(m.ids.begin(), m.ids.end());
  EXPECT_EQ(ids, (std::set<std::string>{"s0", "s2"}));
  EXPECT_EQ(m.extra["query"]["snippets_matched"], 2);
  EXPECT_EQ(m.extra["query"]["snippets_total"], 4);
  EXPECT_EQ(m.extra["selected_frames"], (std::vector<int>{0, 1, 4, 5}));
  EXPECT_EQ(m.extra["frame_count"], 8);
  EXPECT_EQ(m.total_cost, 4.0);
  ManifestSelection back = ParseManifestSelection(m.ToCanonicalString());
  EXPECT_EQ(back.frames, (std::vector<int>{0, 1, 4, 5}));
  EXPECT_EQ(back.frame_count, 8);
}

TEST(QueryTest, ThresholdAndNoMatch) {
  QueryInputs q = SmallVideo();
  q.min_confidence = 0.8;
  auto m = QuerySummarize(q, Options("facility_location", 5));
  EXPECT_EQ(m.ground_set_size, 1);
  q.query = "mountain";
  EXPECT_EQ(CodeOf([&] { QuerySummarize(q, Options("facility_location", 5)); }),
            ErrorCode::kEmptyGroundSet);
}

TEST(QueryTest, MatchingEverythingEqualsExtractiveOnSnippets) {
  QueryInputs q = SmallVideo();
  std::string tags;
  for (int f = 0; f < 8; f += 2) {
    tags += "{\"item\": " + std::to_string(f) + ", \"tags\": [{\"tag\": \"all\"}]}\n";
  }
  q.tags = ParseTags(tags, 8);
  q.query = "all";
  auto m = QuerySummarize(q, Options("facility_location", 2));
  SnippetFeatures agg = AggregateSnippets(q.frames, q.snippets);
  auto e = ExtractiveSummarize(
      FromFeatures(std::make_shared<const FeatureMatrix>(agg.features)),
      Options("facility_location", 2), agg.costs);
  EXPECT_EQ(m.indices, e.indices);
  EXPECT_DOUBLE_EQ(m.objective_value, e.objective_value);
}

TEST(QueryTest, Errors) {
  QueryInputs q = SmallVideo();
  EXPECT_EQ(CodeOf([&] { QuerySummarize(q, Options("set_cover", 2)); }),
            ErrorCode::kUnsupported);
  q.snippets.frame_count = 9;
  EXPECT_EQ(CodeOf([&] { QuerySummarize(q, Options("facility_location", 2)); }),
            ErrorCode::kInvalidParam);
}

TEST(SubsetTest, TenPercentOfHundred) {
  synth::Planted p = synth::PlantedClusters(7, 5, 20, false);
  std::vector<std::string> labels;
  for (int c : p.cluster) labels.push_back("c" + std::to_string(c));
  auto m = SubsetSelect(FromFeatures(p.features), 0.1,
                        Options("facility_location", 0), labels);
  EXPECT_EQ(m.kind, "subset");
  EXPECT_EQ(m.indices.size(), 10u);
  EXPECT_EQ(m.extra["fraction"], 0.1);
  int total = 0;
  for (auto& [name, count] : m.extra["class_counts"].items()) {
    EXPECT_GE(count.get<int>(), 1) << name;
    total += count.get<int>();
  }
  EXPECT_EQ(total, 10);
  EXPECT_EQ(m.extra["class_counts"].size(), 5u);
}

TEST(SubsetTest, RoundsUpAndValidates) {
  synth::Planted p = synth::PlantedClusters(7, 3, 3, false);
  auto m = SubsetSelect(FromFeatures(p.features), 0.2, Options("facility_location", 0));
  EXPECT_EQ(m.indices.size(), 2u);  // ceil(1.8)
  EXPECT_EQ(CodeOf([&] {
              SubsetSelect(FromFeatures(p.features), 0.0, Options("facility_location", 0));
            }),
            ErrorCode::kInvalidParam);
  EXPECT_EQ(CodeOf([&] {
              SubsetSelect(FromFeatures(p.features), 0.5,
                           Options("facility_location", 0, Algorithm::kStream));
            }),
            ErrorCode::kInvalidParam);
  std::vector<std::string> short_labels(3, "a");
  EXPECT_EQ(CodeOf([&] {
              SubsetSelect(FromFeatures(p.features), 0.5,
                           Options("facility_location", 0), short_labels);
            }),
            ErrorCode::kInvalidParam);
}

Image Solid(int w, int h, uint8_t v) {
  return Image{w, h, std::vector<uint8_t>(static_cast<size_t>(w) * h * 3, v)};
}

TEST(MontageTest, GridGeometryAndPadding) {
  std::vector<Image> frames = {Solid(2, 3, 10), Solid(2, 3, 20), Solid(2, 3, 30),
                               Solid(2, 3, 40), Solid(2, 3, 50)};
  Image m = Montage(frames, 2);
  EXPECT_EQ(m.width, 4);
  EXPECT_EQ(m.height, 9);
  auto px = [&](int x, int y) { return m.rgb[(static_cast<size_t>(y) * m.width + x) * 3]; };
  EXPECT_EQ(px(0, 0), 10);
  EXPECT_EQ(px(3, 0), 20);
  EXPECT_EQ(px(1, 4), 30);
  EXPECT_EQ(px(2, 5), 40);
  EXPECT_EQ(px(0, 8), 50);
  EXPECT_EQ(px(3, 8), 0);
}

TEST(MontageTest, SingleFrameAndErrors) {
  std::vector<Image> one = {Solid(3, 2, 7)};
  Image m = Montage(one, 4);
  EXPECT_EQ(m.width, 3);
  EXPECT_EQ(m.height, 2);
  EXPECT_EQ(m.rgb, one[0].rgb);
  std::vector<Image> mixed = {Solid(2, 2, 1), Solid(3, 2, 1)};
  EXPECT_EQ(CodeOf([&] { Montage(mixed, 2); }), ErrorCode::kDimensionMismatch);
  EXPECT_EQ(CodeOf([&] { Montage(std::vector<Image>{}, 2); }), ErrorCode::kInvalidParam);
  EXPECT_EQ(CodeOf([&] { Montage(one, 0); }), ErrorCode::kInvalidParam);
}

DalConfig Dal(DalStrategy strategy, int rounds, int batch, uint64_t seed) {
  DalConfig c;
  c.strategy = strategy;
  c.rounds = rounds;
  c.batch = batch;
  c.seed = seed;
  c.model.name = "disparity_min";
  return c;
}

TEST(DalTest, LabeledCountGrowsByBatch) {
  synth::LabeledSet data = synth::TwoClustersPerClass(1);
  for (DalStrategy s : {DalStrategy::kRandom, DalStrategy::kUncertainty,
                        DalStrategy::kSubmodular}) {
    DalLog log = SimulateActiveLearning(data.features, data.labels, Dal(s, 3, 5, 1));
    ASSERT_EQ(log.rounds.size(), 3u);
    std::set<int> seen;
    const std::set<int> holdout(log.holdout.begin(), log.holdout.end());
    for (int r = 0; r < 3; ++r) {
      EXPECT_EQ(log.rounds[r].labeled, 5 * (r + 1));
      EXPECT_EQ(log.rounds[r].batch.size(), 5u);
      for (int i : log.rounds[r].batch) {
        EXPECT_TRUE(seen.insert(i).second) << "item relabeled";
        EXPECT_EQ(holdout.count(i), 0u) << "holdout item labeled";
      }
      EXPECT_GE(log.rounds[r].holdout_accuracy, 0.0);
      EXPECT_LE(log.rounds[r].holdout_accuracy, 1.0);
    }
    EXPECT_EQ(log.holdout.size(), 60u);
  }
}

TEST(DalTest, SeededRunsAreReproducible) {
  synth::LabeledSet data = synth::TwoClustersPerClass(2);
  for (DalStrategy s : {DalStrategy::kRandom, DalStrategy::kUncertainty,
                        DalStrategy::kSubmodular}) {
    DalLog a = SimulateActiveLearning(data.features, data.labels, Dal(s, 4, 3, 7));
    DalLog b = SimulateActiveLearning(data.features, data.labels, Dal(s, 4, 3, 7));
    EXPECT_EQ(a.ToCsv(), b.ToCsv());
    EXPECT_EQ(a.ToJson(), b.ToJson());
  }
}

TEST(DalTest, CsvAndRoundsToReach) {
  DalLog log;
  log.rounds = {{1, {3, 4}, 2, 0.5}, {2, {9}, 3, 0.75}};
  EXPECT_EQ(log.ToCsv(),
            "round,batch,labeled,holdout_acc\n1,3;4,2,0.5\n2,9,3,0.75\n");
  EXPECT_EQ(log.RoundsToReach(0.5), 1);
  EXPECT_EQ(log.RoundsToReach(0.7), 2);
  EXPECT_EQ(log.RoundsToReach(0.9), 3);
}

TEST(DalTest, StrategyNames) {
  for (auto s : {DalStrategy::kRandom, DalStrategy::kUncertainty,
                 DalStrategy::kSubmodular}) {
    EXPECT_EQ(ParseDalStrategy(DalStrategyName(s)), s);
  }
  EXPECT_EQ(CodeOf([] { ParseDalStrategy("oracle"); }), ErrorCode::kInvalidParam);
}

TEST(DalTest, Errors) {
  synth::LabeledSet data = synth::TwoClustersPerClass(3, 5);
  const auto& f = data.features;
  const auto& l = data.labels;
  EXPECT_EQ(CodeOf([&] {
              SimulateActiveLearning(f, l, Dal(DalStrategy::kRandom, 100, 100, 0));
            }),
            ErrorCode::kInvalidParam);
  std::vector<std::string> one_class(l.size(), "a");
  EXPECT_EQ(CodeOf([&] {
              SimulateActiveLearning(f, one_class, Dal(DalStrategy::kRandom, 1, 1, 0));
            }),
            ErrorCode::kInvalidParam);
  DalConfig c = Dal(DalStrategy::kRandom, 1, 1, 0);
  c.holdout = 1.0;
  EXPECT_EQ(CodeOf([&] { SimulateActiveLearning(f, l, c); }), ErrorCode::kInvalidParam);
  c = Dal(DalStrategy::kSubmodular, 1, 1, 0);
  c.model.name = "set_cover";
  EXPECT_EQ(CodeOf([&] { SimulateActiveLearning(f, l, c); }), ErrorCode::kUnsupported);
}

TEST(DigestTest, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace datasumm
