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
// File formats.
//
//   features CSV     optional header row, optional leading id column
//   VDSF binary      "VDSF", u32 version=1, u32 n, u32 d, n*d float32
//                    row-major; all little-endian
//   concepts JSONL   {"item": idx|id, "concepts": [..]} and optionally
//                    {"weights": {concept: w}}
//   probability CSV  header of concept names, rows of values in [0, 1]
//   tags JSONL       {"item": frame, "tags": [{"tag": s, "conf": x}]}
//   snippets JSONL   {"id": s, "frames": [ints], "cost": seconds}
//   scores CSV       one value per line
//
// Parse* functions take file contents; Load* read the file first.
//

#ifndef DATASUMM_INGEST_H_
#define DATASUMM_INGEST_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "datasumm/feature_matrix.h"
#include "datasumm/functions.h"
#include "datasumm/similarity.h"

namespace datasumm {

// Whole-file helpers. Throw kIoError.
std::string ReadFile(const std::string& path);
// Writes via a temporary file and rename so readers never see partial output.
void WriteFileAtomic(const std::string& path, std::string_view contents);

FeatureMatrix ParseFeaturesCsv(std::string_view text);
FeatureMatrix LoadFeaturesCsv(const std::string& path);
std::string FormatFeaturesCsv(const FeatureMatrix& features);

std::string EncodeBinary(int rows, int cols, std::span<const double> values);
FeatureMatrix DecodeFeaturesBinary(std::string_view bytes);
FeatureMatrix LoadFeaturesBinary(const std::string& path);
void SaveFeaturesBinary(const FeatureMatrix& features, const std::string& path);

// Square VDSF payloads.
Kernel LoadKernelBinary(const std::string& path);
void SaveKernelBinary(const Kernel& kernel, const std::string& path);
DistanceMatrix LoadDistancesBinary(const std::string& path);
void SaveDistancesBinary(const DistanceMatrix& d, const std::string& path);

// Binary when the file starts with the VDSF magic, CSV otherwise.
FeatureMatrix LoadFeatures(const std::string& path);

// item_ids resolves string items; when empty, items must be all integer
// indices (n = max + 1) or all strings (ids in order of first appearance).
ConceptData ParseConcepts(std::string_view text,
                          std::span<const std::string> item_ids = {});
ConceptData LoadConcepts(const std::string& path,
                         std::span<const std::string> item_ids = {});

// Concept weights default to 1.
ProbabilityData ParseProbabilities(std::string_view text);
ProbabilityData LoadProbabilities(const std::string& path);

std::vector<double> ParseScores(std::string_view text);
std::vector<double> LoadScores(const std::string& path);

std::vector<std::string> ParseLabels(std::string_view text);

struct Tag {
  std::string tag;  // lowercase
  double confidence = 1.0;
};

// Per-frame tags.
struct TagTable {
  std::vector<std::vector<Tag>> frames;
};

TagTable ParseTags(std::string_view text, int frame_count);
TagTable LoadTags(const std::string& path, int frame_count);

struct Snippet {
  std::string id;
  std::vector<int> frames;
  double cost = 0.0;  // seconds
};

struct SnippetIndex {
  std::vector<Snippet> snippets;
  int frame_count = 0;
};

// Throws kInvalidSnippet for empty or out-of-range snippets and
// non-positive costs.
SnippetIndex ParseSnippets(std::string_view text, int frame_count);
SnippetIndex LoadSnippets(const std::string& path, int frame_count);
void ValidateSnippets(const SnippetIndex& index);

// One row per snippet: the mean of its frames. ids are snippet ids.
struct SnippetFeatures {
  FeatureMatrix features;
  std::vector<double> costs;
};
SnippetFeatures AggregateSnippets(const FeatureMatrix& frames,
                                  const SnippetIndex& index);

struct QueryFilterResult {
  SnippetIndex kept;
  std::vector<int> provenance;  // original snippet position of each kept one
  bool warning = false;         // nothing matched
};

// Keeps snippets with at least one frame tagged `query` at confidence
// >= min_confidence. Matching is case-insensitive.
QueryFilterResult FilterByQuery(const SnippetIndex& index, const TagTable& tags,
                                std::string_view query,
                                double min_confidence = 0.5);

// 8-bit RGB raster.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;  // row-major, 3 bytes per pixel
};

// Binary PPM (P6, maxval 255). Throws kFormatError.
Image DecodePpm(std::string_view bytes);
std::string EncodePpm(const Image& image);

// Hue/saturation histogram, flattened h-major (index = h_bin * bins_s +
// s_bin) and L1-normalized. Hue in [0, 360) with uniform right-open bins.
std::vector<double> ColorHistogram(const Image& image, int bins_h = 16,
                                   int bins_s = 16);
std::vector<double> PpmColorHistogram(std::string_view bytes, int bins_h = 16,
                                      int bins_s = 16);

// Lexicographically sorted *.ppm paths in dir.
std::vector<std::string> ListFrames(const std::string& dir);

// One histogram row per frame, ids = file names.
FeatureMatrix LoadFrameDirectory(const std::string& dir, int bins_h = 16,
                                 int bins_s = 16);

}  // namespace datasumm

#endif  // DATASUMM_INGEST_H_
