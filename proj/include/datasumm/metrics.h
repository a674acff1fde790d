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

#ifndef DATASUMM_METRICS_H_
#define DATASUMM_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "datasumm/functions.h"

namespace datasumm {

enum class SegmentKind { kScene, kOutlierEvent, kCluster, kGroundTruthSummary };

SegmentKind ParseSegmentKind(std::string_view name);
std::string_view SegmentKindName(SegmentKind kind);

struct Segment {
  std::string id;
  std::vector<int> items;
};

struct SegmentAnnotation {
  SegmentKind kind = SegmentKind::kScene;
  std::vector<Segment> segments;
};

// Throws kInvalidAnnotation if there are no segments, an item is negative
// (or >= item_count when item_count >= 0), or segments overlap for any kind
// other than groundtruth_summary.
void ValidateAnnotation(const SegmentAnnotation& annotation,
                        int item_count = -1);

// JSON lines {"segment": id, "kind": s, "items": [ints]}, grouped by kind in
// the order scene, outlier_event, cluster, groundtruth_summary.
std::vector<SegmentAnnotation> ParseAnnotations(std::string_view text);
std::vector<SegmentAnnotation> LoadAnnotations(const std::string& path);

// Fraction of scenes containing at least one selected item.
double RepresentationScore(std::span<const int> selected,
                           const SegmentAnnotation& scenes);

// |U(X)| / |U(V)|, unweighted.
double CoverageScore(std::span<const int> selected, const ConceptData& concepts);

// Number of outlier events hit at least once.
int OutlierScore(std::span<const int> selected,
                 const SegmentAnnotation& events);
// OutlierScore / number of events.
double NormalizedOutlierScore(std::span<const int> selected,
                              const SegmentAnnotation& events);

// Fraction of similar-frame clusters hit at least once.
double ClusterDiversityScore(std::span<const int> selected,
                             const SegmentAnnotation& clusters);

struct F1Result {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Frame-level overlap; duplicates are ignored and empty denominators give 0.
F1Result F1Score(std::span<const int> selected_frames,
                 std::span<const int> truth_frames, int total_frames);

}  // namespace datasumm

#endif  // DATASUMM_METRICS_H_
