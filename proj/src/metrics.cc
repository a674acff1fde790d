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

#include "datasumm/metrics.h"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_set>

#include "datasumm/error.h"
#include "datasumm/ingest.h"
#include "json.hpp"

namespace datasumm {
namespace {

void RequireKind(const SegmentAnnotation& a, SegmentKind kind) {
  if (a.kind != kind) {
    throw Error(ErrorCode::kInvalidAnnotation,
                "expected " + std::string(SegmentKindName(kind)) +
                    " segments, got " + std::string(SegmentKindName(a.kind)));
  }
  if (a.segments.empty()) {
    throw Error(ErrorCode::kInvalidAnnotation, "annotation has no segments");
  }
}

int SegmentsHit(std::span<const int> selected, const SegmentAnnotation& a) {
  const std::unordered_set<int> chosen(selected.begin(), selected.end());
  int hit = 0;
  for (const Segment& s : a.segments) {
    if (std::any_of(s.items.begin(), s.items.end(),
                    [&](int i) { return chosen.count(i) > 0; })) {
      ++hit;
    }
  }
  return hit;
}

}  // namespace

SegmentKind ParseSegmentKind(std::string_view name) {
  if (name == "scene") return SegmentKind::kScene;
  if (name == "outlier_event") return SegmentKind::kOutlierEvent;
  if (name == "cluster") return SegmentKind::kCluster;
  if (name == "groundtruth_summary") return SegmentKind::kGroundTruthSummary;
  throw Error(ErrorCode::kInvalidAnnotation,
              "unknown segment kind '" + std::string(name) + "'");
}

std::string_view SegmentKindName(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kScene: return "scene";
    case SegmentKind::kOutlierEvent: return "outlier_event";
    case SegmentKind::kCluster: return "cluster";
    case SegmentKind::kGroundTruthSummary: return "groundtruth_summary";
  }
  return "scene";
}

void ValidateAnnotation(const SegmentAnnotation& annotation, int item_count) {
  if (annotation.segments.empty()) {
    throw Error(ErrorCode::kInvalidAnnotation, "annotation has no segments");
  }
  std::set<int> seen;
  for (const Segment& s : annotation.segments) {
    for (int i : s.items) {
      if (i < 0 || (item_count >= 0 && i >= item_count)) {
        throw Error(ErrorCode::kInvalidAnnotation,
                    "segment '" + s.id + "' references invalid item " +
                        std::to_string(i));
      }
    }
    if (annotation.kind == SegmentKind::kGroundTruthSummary) continue;
    const std::set<int> members(s.items.begin(), s.items.end());
    for (int i : members) {
      if (!seen.insert(i).second) {
        throw Error(ErrorCode::kInvalidAnnotation,
                    "item " + std::to_string(i) + " appears in more than one " +
                        std::string(SegmentKindName(annotation.kind)) +
                        " segment");
      }
    }
  }
}

std::vector<SegmentAnnotation> ParseAnnotations(std::string_view text) {
  std::array<SegmentAnnotation, 4> by_kind;
  for (int k = 0; k < 4; ++k) by_kind[k].kind = static_cast<SegmentKind>(k);
  int number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(number) + ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("kind") || !rec.contains("items") ||
        !rec["kind"].is_string() || !rec["items"].is_array()) {
      throw Error(ErrorCode::kInvalidAnnotation,
                  "line " + std::to_string(number) +
                      ": annotation needs \"kind\" and \"items\"");
    }
    Segment seg;
    if (rec.contains("segment")) {
      seg.id = rec["segment"].is_string() ? rec["segment"].get<std::string>()
                                          : rec["segment"].dump();
    }
    for (const auto& v : rec["items"]) {
      if (!v.is_number_integer()) {
        throw Error(ErrorCode::kInvalidAnnotation,
                    "line " + std::to_string(number) + ": items must be integers");
      }
      seg.items.push_back(v.get<int>());
    }
    const SegmentKind kind = ParseSegmentKind(rec["kind"].get<std::string>());
    by_kind[static_cast<int>(kind)].segments.push_back(std::move(seg));
  }
  std::vector<SegmentAnnotation> out;
  for (auto& a : by_kind) {
    if (!a.segments.empty()) {
      ValidateAnnotation(a);
      out.push_back(std::move(a));
    }
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidAnnotation, "annotation file has no segments");
  }
  return out;
}

std::vector<SegmentAnnotation> LoadAnnotations(const std::string& path) {
  return ParseAnnotations(ReadFile(path));
}

double RepresentationScore(std::span<const int> selected,
                           const SegmentAnnotation& scenes) {
  RequireKind(scenes, SegmentKind::kScene);
  return static_cast<double>(SegmentsHit(selected, scenes)) /
         static_cast<double>(scenes.segments.size());
}

double CoverageScore(std::span<const int> selected, const ConceptData& concepts) {
  std::vector<char> in_universe(concepts.num_concepts(), 0);
  int universe = 0;
  for (const auto& list : concepts.item_concepts) {
    for (int u : list) {
      if (!in_universe[u]) {
        in_universe[u] = 1;
        ++universe;
      }
    }
  }
  if (universe == 0) {
    throw Error(ErrorCode::kInvalidAnnotation, "concept universe is empty");
  }
  std::vector<char> covered(concepts.num_concepts(), 0);
  int hit = 0;
  for (int i : selected) {
    if (i < 0 || i >= concepts.num_items()) {
      throw Error(ErrorCode::kInvalidSelection,
                  "item " + std::to_string(i) + " outside the concept table");
    }
    for (int u : concepts.item_concepts[i]) {
      if (!covered[u]) {
        covered[u] = 1;
        ++hit;
      }
    }
  }
  return static_cast<double>(hit) / universe;
}

int OutlierScore(std::span<const int> selected,
                 const SegmentAnnotation& events) {
  RequireKind(events, SegmentKind::kOutlierEvent);
  return SegmentsHit(selected, events);
}

double NormalizedOutlierScore(std::span<const int> selected,
                              const SegmentAnnotation& events) {
  return static_cast<double>(OutlierScore(selected, events)) /
         static_cast<double>(events.segments.size());
}

double ClusterDiversityScore(std::span<const int> selected,
                             const SegmentAnnotation& clusters) {
  RequireKind(clusters, SegmentKind::kCluster);
  return static_cast<double>(SegmentsHit(selected, clusters)) /
         static_cast<double>(clusters.segments.size());
}

F1Result F1Score(std::span<const int> selected_frames,
                 std::span<const int> truth_frames, int total_frames) {
  auto check = [&](int f) {
    if (f < 0 || f >= total_frames) {
      throw Error(ErrorCode::kInvalidSelection,
                  "frame " + std::to_string(f) + " outside [0, " +
                      std::to_string(total_frames) + ")");
    }
  };
  std::set<int> chosen, truth;
  for (int f : selected_frames) {
    check(f);
    chosen.insert(f);
  }
  for (int f : truth_frames) {
    check(f);
    truth.insert(f);
  }
  int overlap = 0;
  for (int f : chosen) overlap += truth.count(f) ? 1 : 0;
  F1Result r;
  if (!chosen.empty()) r.precision = static_cast<double>(overlap) / chosen.size();
  if (!truth.empty()) r.recall = static_cast<double>(overlap) / truth.size();
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

}  // namespace datasumm
