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

#include "datasumm/ingest.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "datasumm/error.h"
#include "json.hpp"

namespace datasumm {
namespace {

using json = nlohmann::json;

constexpr char kMagic[4] = {'V', 'D', 'S', 'F'};
constexpr uint32_t kVersion = 1;
constexpr size_t kHeaderBytes = 16;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Non-empty lines with trailing whitespace removed, with 1-based line numbers.
std::vector<std::pair<int, std::string_view>> Lines(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int number = 0;
  size_t start = 0;
  // Skip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") start = 3;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = Trim(text.substr(start, end - start));
    if (!line.empty()) out.emplace_back(number, line);
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(Trim(line.substr(start)));
      break;
    }
    fields.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool ParseNumber(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool IsNumeric(std::string_view s) {
  double unused;
  return ParseNumber(s, unused);
}

[[noreturn]] void ParseFail(int line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what);
}

void PutU32(std::string& out, uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
}

uint32_t GetU32(std::string_view bytes, size_t offset) {
  uint32_t v = 0;
  for (int b = 0; b < 4; ++b) {
    v |= static_cast<uint32_t>(static_cast<uint8_t>(bytes[offset + b])) << (8 * b);
  }
  return v;
}

struct RawMatrix {
  int rows;
  int cols;
  std::vector<double> values;
};

RawMatrix DecodeRaw(std::string_view bytes) {
  if (bytes.size() < kHeaderBytes) {
    throw Error(ErrorCode::kFormatError, "file shorter than the VDSF header");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kFormatError, "bad magic; expected VDSF");
  }
  const uint32_t version = GetU32(bytes, 4);
  if (version != kVersion) {
    throw Error(ErrorCode::kFormatError,
                "unsupported VDSF version " + std::to_string(version));
  }
  const uint64_t n = GetU32(bytes, 8);
  const uint64_t d = GetU32(bytes, 12);
  if (n == 0 || d == 0) {
    throw Error(ErrorCode::kFormatError, "VDSF header declares an empty matrix");
  }
  const uint64_t expected = kHeaderBytes + 4 * n * d;
  if (bytes.size() != expected) {
    throw Error(ErrorCode::kFormatError,
                "VDSF payload has " + std::to_string(bytes.size()) +
                    " bytes, header implies " + std::to_string(expected));
  }
  RawMatrix m{static_cast<int>(n), static_cast<int>(d), {}};
  m.values.resize(n * d);
  for (size_t k = 0; k < m.values.size(); ++k) {
    const uint32_t bits = GetU32(bytes, kHeaderBytes + 4 * k);
    m.values[k] = static_cast<double>(std::bit_cast<float>(bits));
  }
  return m;
}

RawMatrix LoadSquare(const std::string& path) {
  RawMatrix m = DecodeRaw(ReadFile(path));
  if (m.rows != m.cols) {
    throw Error(ErrorCode::kFormatError,
                "expected a square matrix in " + path + ", got " +
                    std::to_string(m.rows) + "x" + std::to_string(m.cols));
  }
  return m;
}

std::string Lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

json ParseJsonLine(int line, std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    ParseFail(line, std::string("invalid JSON: ") + e.what());
  }
}

int RequireInt(const json& v, int line, const char* what) {
  if (!v.is_number_integer()) ParseFail(line, std::string(what) + " must be an integer");
  return v.get<int>();
}

double RequireNumber(const json& v, int line, const char* what) {
  if (!v.is_number()) ParseFail(line, std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::kIoError, "short write to '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot move output into '" + path + "'");
  }
}

FeatureMatrix ParseFeaturesCsv(std::string_view text) {
  const auto lines = Lines(text);
  if (lines.empty()) throw Error(ErrorCode::kParseError, "feature CSV is empty");
  std::vector<std::vector<std::string_view>> rows;
  rows.reserve(lines.size());
  for (const auto& [number, line] : lines) rows.push_back(SplitFields(line));

  const size_t width = rows[0].size();
  bool header = false;
  if (width == 1) {
    header = !IsNumeric(rows[0][0]) && rows.size() > 1 && IsNumeric(rows[1][0]);
  } else {
    for (size_t c = 1; c < width; ++c) {
      if (!IsNumeric(rows[0][c])) header = true;
    }
  }
  const size_t first = header ? 1 : 0;
  if (first >= rows.size()) {
    throw Error(ErrorCode::kParseError, "feature CSV has a header but no rows");
  }
  for (size_t r = first; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      ParseFail(lines[r].first, "expected " + std::to_string(width) +
                                    " fields, found " +
                                    std::to_string(rows[r].size()));
    }
  }
  bool has_ids = false;
  for (size_t r = first; r < rows.size() && width > 1; ++r) {
    if (!IsNumeric(rows[r][0])) has_ids = true;
  }
  const size_t skip = has_ids ? 1 : 0;
  const int n = static_cast<int>(rows.size() - first);
  const int d = static_cast<int>(width - skip);
  std::vector<double> values;
  values.reserve(static_cast<size_t>(n) * d);
  std::vector<std::string> ids;
  for (size_t r = first; r < rows.size(); ++r) {
    if (has_ids) ids.emplace_back(rows[r][0]);
    for (size_t c = skip; c < width; ++c) {
      double v;
      if (!ParseNumber(rows[r][c], v)) {
        ParseFail(lines[r].first,
                  "non-numeric feature value '" + std::string(rows[r][c]) + "'");
      }
      values.push_back(v);
    }
  }
  return FeatureMatrix(n, d, std::move(values), std::move(ids));
}

FeatureMatrix LoadFeaturesCsv(const std::string& path) {
  return ParseFeaturesCsv(ReadFile(path));
}

std::string FormatFeaturesCsv(const FeatureMatrix& features) {
  std::ostringstream out;
  out.precision(17);
  for (int i = 0; i < features.rows(); ++i) {
    if (features.has_ids()) out << features.ids()[i] << ',';
    for (int j = 0; j < features.cols(); ++j) {
      if (j > 0) out << ',';
      out << features(i, j);
    }
    out << '\n';
  }
  return out.str();
}

std::string EncodeBinary(int rows, int cols, std::span<const double> values) {
  if (rows < 1 || cols < 1 ||
      values.size() != static_cast<size_t>(rows) * cols) {
    throw Error(ErrorCode::kInvalidParam, "matrix shape mismatch for VDSF");
  }
  std::string out(kMagic, 4);
  out.reserve(kHeaderBytes + 4 * values.size());
  PutU32(out, kVersion);
  PutU32(out, static_cast<uint32_t>(rows));
  PutU32(out, static_cast<uint32_t>(cols));
  for (double v : values) {
    PutU32(out, std::bit_cast<uint32_t>(static_cast<float>(v)));
  }
  return out;
}

FeatureMatrix DecodeFeaturesBinary(std::string_view bytes) {
  RawMatrix m = DecodeRaw(bytes);
  return FeatureMatrix(m.rows, m.cols, std::move(m.values));
}

FeatureMatrix LoadFeaturesBinary(const std::string& path) {
  return DecodeFeaturesBinary(ReadFile(path));
}

void SaveFeaturesBinary(const FeatureMatrix& features, const std::string& path) {
  WriteFileAtomic(path,
                  EncodeBinary(features.rows(), features.cols(), features.values()));
}

Kernel LoadKernelBinary(const std::string& path) {
  RawMatrix m = LoadSquare(path);
  return Kernel::FromDense(m.rows, std::move(m.values));
}

void SaveKernelBinary(const Kernel& kernel, const std::string& path) {
  WriteFileAtomic(path, EncodeBinary(kernel.size(), kernel.size(), kernel.ToDense()));
}

DistanceMatrix LoadDistancesBinary(const std::string& path) {
  RawMatrix m = LoadSquare(path);
  return DistanceMatrix::FromDense(m.rows, std::move(m.values));
}

void SaveDistancesBinary(const DistanceMatrix& d, const std::string& path) {
  WriteFileAtomic(path, EncodeBinary(d.size(), d.size(), d.values()));
}

FeatureMatrix LoadFeatures(const std::string& path) {
  const std::string bytes = ReadFile(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
    return DecodeFeaturesBinary(bytes);
  }
  return ParseFeaturesCsv(bytes);
}

ConceptData ParseConcepts(std::string_view text,
                          std::span<const std::string> item_ids) {
  std::unordered_map<std::string, int> lookup;
  for (size_t i = 0; i < item_ids.size(); ++i) {
    lookup.emplace(item_ids[i], static_cast<int>(i));
  }
  const bool fixed = !item_ids.empty();
  std::vector<std::string> derived_ids;
  bool saw_int = false, saw_string = false;
  int max_index = -1;

  std::vector<std::pair<int, std::vector<std::string>>> records;
  std::map<std::string, double> weight_overrides;
  for (const auto& [number, line] : Lines(text)) {
    const json rec = ParseJsonLine(number, line);
    if (!rec.is_object()) ParseFail(number, "expected a JSON object");
    if (rec.contains("weights")) {
      const json& w = rec["weights"];
      if (!w.is_object()) ParseFail(number, "\"weights\" must be an object");
      for (auto it = w.begin(); it != w.end(); ++it) {
        const double v = RequireNumber(it.value(), number, "concept weight");
        if (!(v >= 0.0) || !std::isfinite(v)) {
          throw Error(ErrorCode::kInvalidWeight,
                      "concept '" + it.key() + "' has invalid weight " +
                          std::to_string(v));
        }
        weight_overrides[it.key()] = v;
      }
      continue;
    }
    if (!rec.contains("item") || !rec.contains("concepts")) {
      ParseFail(number, "record needs \"item\" and \"concepts\"");
    }
    const json& item = rec["item"];
    int index;
    if (item.is_number_integer()) {
      index = item.get<int>();
      saw_int = true;
      if (index < 0 || (fixed && index >= static_cast<int>(item_ids.size()))) {
        throw Error(ErrorCode::kUnknownItem,
                    "line " + std::to_string(number) + ": item index " +
                        std::to_string(index) + " outside the ground set");
      }
      max_index = std::max(max_index, index);
    } else if (item.is_string()) {
      const std::string id = item.get<std::string>();
      saw_string = true;
      auto it = lookup.find(id);
      if (it == lookup.end()) {
        if (fixed) {
          throw Error(ErrorCode::kUnknownItem,
                      "line " + std::to_string(number) + ": unknown item '" +
                          id + "'");
        }
        it = lookup.emplace(id, static_cast<int>(derived_ids.size())).first;
        derived_ids.push_back(id);
      }
      index = it->second;
    } else {
      ParseFail(number, "\"item\" must be an index or an id string");
    }
    if (!rec["concepts"].is_array()) ParseFail(number, "\"concepts\" must be an array");
    std::vector<std::string> names;
    for (const json& c : rec["concepts"]) {
      if (!c.is_string()) ParseFail(number, "concept names must be strings");
      names.push_back(c.get<std::string>());
    }
    records.emplace_back(index, std::move(names));
  }
  if (!fixed && saw_int && saw_string) {
    throw Error(ErrorCode::kParseError,
                "concept items mix indices and ids without a reference ground set");
  }

  ConceptData data;
  int n;
  if (fixed) {
    n = static_cast<int>(item_ids.size());
    data.item_ids.assign(item_ids.begin(), item_ids.end());
  } else if (saw_string) {
    n = static_cast<int>(derived_ids.size());
    data.item_ids = derived_ids;
  } else {
    n = max_index + 1;
  }
  std::map<std::string, int> universe;
  for (const auto& [index, names] : records) {
    for (const auto& name : names) universe.emplace(name, 0);
  }
  int next = 0;
  for (auto& [name, id] : universe) {
    id = next++;
    data.concept_names.push_back(name);
    auto w = weight_overrides.find(name);
    data.weights.push_back(w == weight_overrides.end() ? 1.0 : w->second);
  }
  data.item_concepts.assign(n, {});
  for (const auto& [index, names] : records) {
    auto& list = data.item_concepts[index];
    for (const auto& name : names) list.push_back(universe.at(name));
  }
  for (auto& list : data.item_concepts) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return data;
}

ConceptData LoadConcepts(const std::string& path,
                         std::span<const std::string> item_ids) {
  return ParseConcepts(ReadFile(path), item_ids);
}

ProbabilityData ParseProbabilities(std::string_view text) {
  const auto lines = Lines(text);
  if (lines.size() < 2) {
    throw Error(ErrorCode::kParseError,
                "probability CSV needs a header and at least one row");
  }
  ProbabilityData data;
  for (auto name : SplitFields(lines[0].second)) {
    data.concept_names.emplace_back(name);
  }
  const size_t width = data.concept_names.size();
  data.weights.assign(width, 1.0);
  for (size_t r = 1; r < lines.size(); ++r) {
    const auto fields = SplitFields(lines[r].second);
    if (fields.size() != width) {
      ParseFail(lines[r].first, "expected " + std::to_string(width) +
                                    " probabilities, found " +
                                    std::to_string(fields.size()));
    }
    for (auto f : fields) {
      double v;
      if (!ParseNumber(f, v)) {
        ParseFail(lines[r].first, "non-numeric probability '" + std::string(f) + "'");
      }
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidProbability,
                    "line " + std::to_string(lines[r].first) + ": probability " +
                        std::string(f) + " outside [0, 1]");
      }
      data.probabilities.push_back(v);
    }
  }
  data.num_items = static_cast<int>(lines.size() - 1);
  return data;
}

ProbabilityData LoadProbabilities(const std::string& path) {
  return ParseProbabilities(ReadFile(path));
}

std::vector<double> ParseScores(std::string_view text) {
  std::vector<double> scores;
  for (const auto& [number, line] : Lines(text)) {
    double v;
    if (!ParseNumber(line, v) || !std::isfinite(v)) {
      ParseFail(number, "invalid score '" + std::string(line) + "'");
    }
    scores.push_back(v);
  }
  if (scores.empty()) throw Error(ErrorCode::kParseError, "score file is empty");
  return scores;
}

std::vector<double> LoadScores(const std::string& path) {
  return ParseScores(ReadFile(path));
}

std::vector<std::string> ParseLabels(std::string_view text) {
  std::vector<std::string> labels;
  for (const auto& [number, line] : Lines(text)) labels.emplace_back(line);
  if (labels.empty()) throw Error(ErrorCode::kParseError, "label file is empty");
  return labels;
}

TagTable ParseTags(std::string_view text, int frame_count) {
  TagTable table;
  table.frames.assign(std::max(frame_count, 0), {});
  for (const auto& [number, line] : Lines(text)) {
    const json rec = ParseJsonLine(number, line);
    if (!rec.is_object() || !rec.contains("item") || !rec.contains("tags")) {
      ParseFail(number, "record needs \"item\" and \"tags\"");
    }
    int frame = -1;
    const json& item = rec["item"];
    if (item.is_number_integer()) {
      frame = item.get<int>();
    } else if (item.is_string()) {
      double v;
      const std::string s = item.get<std::string>();
      if (!ParseNumber(s, v) || v != std::floor(v)) {
        throw Error(ErrorCode::kUnknownItem,
                    "line " + std::to_string(number) + ": unknown frame '" + s + "'");
      }
      frame = static_cast<int>(v);
    } else {
      ParseFail(number, "\"item\" must be a frame index");
    }
    if (frame < 0 || frame >= frame_count) {
      throw Error(ErrorCode::kUnknownItem,
                  "line " + std::to_string(number) + ": frame " +
                      std::to_string(frame) + " outside [0, " +
                      std::to_string(frame_count) + ")");
    }
    if (!rec["tags"].is_array()) ParseFail(number, "\"tags\" must be an array");
    for (const json& t : rec["tags"]) {
      if (!t.is_object() || !t.contains("tag") || !t["tag"].is_string()) {
        ParseFail(number, "each tag needs a string \"tag\"");
      }
      Tag tag;
      tag.tag = Lowercase(t["tag"].get<std::string>());
      if (t.contains("conf")) tag.confidence = RequireNumber(t["conf"], number, "conf");
      if (!(tag.confidence >= 0.0 && tag.confidence <= 1.0)) {
        throw Error(ErrorCode::kInvalidProbability,
                    "line " + std::to_string(number) + ": tag confidence " +
                        std::to_string(tag.confidence) + " outside [0, 1]");
      }
      table.frames[frame].push_back(std::move(tag));
    }
  }
  return table;
}

TagTable LoadTags(const std::string& path, int frame_count) {
  return ParseTags(ReadFile(path), frame_count);
}

void ValidateSnippets(const SnippetIndex& index) {
  if (index.snippets.empty()) {
    throw Error(ErrorCode::kInvalidSnippet, "snippet index is empty");
  }
  for (const Snippet& s : index.snippets) {
    if (s.frames.empty()) {
      throw Error(ErrorCode::kInvalidSnippet, "snippet '" + s.id + "' has no frames");
    }
    for (int f : s.frames) {
      if (f < 0 || f >= index.frame_count) {
        throw Error(ErrorCode::kInvalidSnippet,
                    "snippet '" + s.id + "' references frame " +
                        std::to_string(f) + " outside [0, " +
                        std::to_string(index.frame_count) + ")");
      }
    }
    if (!(s.cost > 0.0) || !std::isfinite(s.cost)) {
      throw Error(ErrorCode::kInvalidSnippet,
                  "snippet '" + s.id + "' must have a positive cost");
    }
  }
}

SnippetIndex ParseSnippets(std::string_view text, int frame_count) {
  SnippetIndex index;
  index.frame_count = frame_count;
  for (const auto& [number, line] : Lines(text)) {
    const json rec = ParseJsonLine(number, line);
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("frames") ||
        !rec.contains("cost")) {
      ParseFail(number, "snippet needs \"id\", \"frames\" and \"cost\"");
    }
    Snippet s;
    s.id = rec["id"].is_string() ? rec["id"].get<std::string>() : rec["id"].dump();
    if (!rec["frames"].is_array()) ParseFail(number, "\"frames\" must be an array");
    for (const json& f : rec["frames"]) s.frames.push_back(RequireInt(f, number, "frame"));
    s.cost = RequireNumber(rec["cost"], number, "cost");
    index.snippets.push_back(std::move(s));
  }
  ValidateSnippets(index);
  return index;
}

SnippetIndex LoadSnippets(const std::string& path, int frame_count) {
  return ParseSnippets(ReadFile(path), frame_count);
}

SnippetFeatures AggregateSnippets(const FeatureMatrix& frames,
                                  const SnippetIndex& index) {
  if (index.frame_count != frames.rows()) {
    throw Error(ErrorCode::kInvalidSnippet,
                "snippet index expects " + std::to_string(index.frame_count) +
                    " frames, feature matrix has " + std::to_string(frames.rows()));
  }
  ValidateSnippets(index);
  const int d = frames.cols();
  std::vector<double> values;
  values.reserve(index.snippets.size() * d);
  std::vector<std::string> ids;
  std::vector<double> costs;
  for (const Snippet& s : index.snippets) {
    std::vector<double> mean(d, 0.0);
    for (int f : s.frames) {
      auto row = frames.row(f);
      for (int c = 0; c < d; ++c) mean[c] += row[c];
    }
    for (double& v : mean) v /= static_cast<double>(s.frames.size());
    values.insert(values.end(), mean.begin(), mean.end());
    ids.push_back(s.id);
    costs.push_back(s.cost);
  }
  return {FeatureMatrix(static_cast<int>(index.snippets.size()), d,
                        std::move(values), std::move(ids)),
          std::move(costs)};
}

QueryFilterResult FilterByQuery(const SnippetIndex& index, const TagTable& tags,
                                std::string_view query, double min_confidence) {
  if (Trim(query).empty()) {
    throw Error(ErrorCode::kInvalidParam, "query must not be empty");
  }
  const std::string needle = Lowercase(Trim(query));
  QueryFilterResult result;
  result.kept.frame_count = index.frame_count;
  for (size_t s = 0; s < index.snippets.size(); ++s) {
    const Snippet& snippet = index.snippets[s];
    bool match = false;
    for (int f : snippet.frames) {
      if (f < 0 || f >= static_cast<int>(tags.frames.size())) continue;
      for (const Tag& t : tags.frames[f]) {
        if (t.tag == needle && t.confidence >= min_confidence) {
          match = true;
          break;
        }
      }
      if (match) break;
    }
    if (match) {
      result.kept.snippets.push_back(snippet);
      result.provenance.push_back(static_cast<int>(s));
    }
  }
  result.warning = result.kept.snippets.empty();
  return result;
}

Image DecodePpm(std::string_view bytes) {
  size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_int = [&]() -> int {
    skip_space();
    size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
    int v = 0;
    auto [ptr, ec] = std::from_chars(bytes.data() + start, bytes.data() + pos, v);
    if (start == pos || ec != std::errc()) {
      throw Error(ErrorCode::kFormatError, "malformed PPM header");
    }
    return v;
  };
  if (bytes.size() < 2 || bytes.substr(0, 2) != "P6") {
    throw Error(ErrorCode::kFormatError, "not a binary PPM (missing P6 magic)");
  }
  pos = 2;
  Image img;
  img.width = read_int();
  img.height = read_int();
  const int maxval = read_int();
  if (maxval != 255) {
    throw Error(ErrorCode::kFormatError,
                "only maxval 255 is supported, got " + std::to_string(maxval));
  }
  if (pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw Error(ErrorCode::kFormatError, "malformed PPM header");
  }
  ++pos;
  if (img.width <= 0 || img.height <= 0) {
    throw Error(ErrorCode::kFormatError, "PPM image has no pixels");
  }
  const size_t need = static_cast<size_t>(img.width) * img.height * 3;
  if (bytes.size() - pos < need) {
    throw Error(ErrorCode::kFormatError, "PPM pixel data is truncated");
  }
  img.rgb.assign(bytes.begin() + pos, bytes.begin() + pos + need);
  return img;
}

std::string EncodePpm(const Image& image) {
  std::string out = "P6\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(image.rgb.begin(), image.rgb.end());
  return out;
}

std::vector<double> ColorHistogram(const Image& image, int bins_h, int bins_s) {
  if (bins_h < 1 || bins_s < 1) {
    throw Error(ErrorCode::kInvalidParam, "histogram bin counts must be >= 1");
  }
  const size_t pixels = static_cast<size_t>(image.width) * image.height;
  if (pixels == 0 || image.rgb.size() != pixels * 3) {
    throw Error(ErrorCode::kFormatError, "image has no pixels");
  }
  std::vector<double> hist(static_cast<size_t>(bins_h) * bins_s, 0.0);
  for (size_t p = 0; p < pixels; ++p) {
    const double r = image.rgb[3 * p] / 255.0;
    const double g = image.rgb[3 * p + 1] / 255.0;
    const double b = image.rgb[3 * p + 2] / 255.0;
    const double hi = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    const double delta = hi - lo;
    double h = 0.0;
    if (delta > 0.0) {
      if (hi == r) {
        h = 60.0 * std::fmod((g - b) / delta, 6.0);
      } else if (hi == g) {
        h = 60.0 * ((b - r) / delta + 2.0);
      } else {
        h = 60.0 * ((r - g) / delta + 4.0);
      }
      if (h < 0.0) h += 360.0;
    }
    const double s = hi > 0.0 ? delta / hi : 0.0;
    int hb = static_cast<int>(std::floor(h / 360.0 * bins_h));
    if (hb >= bins_h || hb < 0) hb = 0;
    int sb = std::min(static_cast<int>(std::floor(s * bins_s)), bins_s - 1);
    hist[static_cast<size_t>(hb) * bins_s + sb] += 1.0;
  }
  for (double& v : hist) v /= static_cast<double>(pixels);
  return hist;
}

std::vector<double> PpmColorHistogram(std::string_view bytes, int bins_h,
                                      int bins_s) {
  return ColorHistogram(DecodePpm(bytes), bins_h, bins_s);
}

std::vector<std::string> ListFrames(const std::string& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIoError, "'" + dir + "' is not a directory");
  }
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && Lowercase(entry.path().extension().string()) == ".ppm") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

FeatureMatrix LoadFrameDirectory(const std::string& dir, int bins_h, int bins_s) {
  const auto paths = ListFrames(dir);
  if (paths.empty()) {
    throw Error(ErrorCode::kEmptyGroundSet, "no .ppm frames in '" + dir + "'");
  }
  std::vector<double> values;
  std::vector<std::string> ids;
  for (const auto& p : paths) {
    const auto hist = PpmColorHistogram(ReadFile(p), bins_h, bins_s);
    values.insert(values.end(), hist.begin(), hist.end());
    ids.push_back(std::filesystem::path(p).filename().string());
  }
  return FeatureMatrix(static_cast<int>(paths.size()), bins_h * bins_s,
                       std::move(values), std::move(ids));
}

}  // namespace datasumm
