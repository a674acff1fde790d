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

#include "datasumm/pipelines.h"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "datasumm/error.h"

namespace datasumm {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double Since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

json ConstraintJson(const Constraint& c) {
  json out = json::object();
  switch (c.algorithm) {
    case Algorithm::kGreedy:
    case Algorithm::kLazy:
      out["k"] = c.k;
      break;
    case Algorithm::kBudgeted:
      out["budget"] = c.budget;
      break;
    case Algorithm::kCover:
      out["rho"] = c.rho;
      break;
    case Algorithm::kStream:
      out["tau"] = c.tau;
      out["order"] = c.seed ? "shuffled" : "natural";
      if (c.seed) out["seed"] = *c.seed;
      break;
  }
  return out;
}

SelectionManifest RunSelection(std::string kind, const ModelInputs& inputs,
                               const RunOptions& options,
                               std::span<const double> costs,
                               std::vector<std::string> ids = {}) {
  // Cheap pairing check first so incompatible requests fail before any
  // kernel is built.
  CheckCompatibility(DescribeModel(options.model), options.constraint.algorithm);
  BuiltModel built = BuildModel(options.model, inputs);
  const Objective& f = *built.objective;
  const ModelInfo info = f.Describe();
  CheckCompatibility(info, options.constraint.algorithm);

  if (ids.empty()) ids = inputs.ItemIds(options.model.name);
  std::optional<std::vector<double>> cost_vec;
  if (!costs.empty()) {
    if (costs.size() != static_cast<size_t>(f.size())) {
      throw Error(ErrorCode::kInvalidCost,
                  "expected " + std::to_string(f.size()) + " costs, got " +
                      std::to_string(costs.size()));
    }
    cost_vec.emplace(costs.begin(), costs.end());
  }
  const GroundSet gs = GroundSet::Create(std::move(ids), std::move(cost_vec));

  SolverConfig solver = options.solver;
  // Diversity objectives start from f({j}) = 0, so a zero-gain stop would
  // return nothing; a size request means "this many items".
  if (!solver.stop_at_zero && info.family == Family::kDistance) {
    solver.stop_at_zero = false;
  }
  const auto t = Clock::now();
  Selection sel = Solve(f, gs, options.constraint, solver);
  const double solve_seconds = Since(t);

  SelectionManifest m;
  m.kind = std::move(kind);
  m.model = info;
  m.model_params = built.params;
  m.algorithm = options.constraint.algorithm;
  m.constraint = ConstraintJson(options.constraint);
  m.stop_at_zero = options.constraint.algorithm == Algorithm::kCover ||
                   solver.stop_at_zero.value_or(!info.monotone);
  m.stats = sel.stats;
  m.ground_set_size = gs.size();
  m.indices = sel.indices;
  for (int i : sel.indices) m.ids.push_back(gs.id(i));
  m.objective_trace = sel.objective_trace;
  m.objective_value = sel.value();
  m.total_cost = SelectionTotalCost(sel, gs);
  m.timings = {built.kernel_seconds, built.construction_seconds, solve_seconds};
  m.provenance = options.provenance;
  if (sel.stats.lazy_fallback) {
    m.warnings.push_back("lazy evaluation disabled: " + info.name +
                         " is not submodular, plain greedy was used");
  }
  if (sel.stats.stopped_at_zero) {
    m.warnings.push_back("stopped early: no remaining item has positive gain");
  }
  return m;
}

int CeilFraction(double fraction, int n) {
  return std::max(1, static_cast<int>(std::ceil(fraction * n - 1e-9)));
}

// Portable Fisher-Yates so seeded runs agree across standard libraries.
template <typename T>
void SeededShuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng() % i]);
  }
}

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIoError, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

InputDigest DigestInput(std::string role, const std::string& path) {
  InputDigest d{std::move(role), path, {}};
  if (std::filesystem::is_directory(path)) {
    std::string blob;
    for (const auto& frame : ListFrames(path)) {
      blob += std::filesystem::path(frame).filename().string();
      blob += '\0';
      blob += Sha256Hex(ReadFile(frame));
      blob += '\n';
    }
    d.sha256 = Sha256Hex(blob);
  } else {
    d.sha256 = Sha256Hex(ReadFile(path));
  }
  return d;
}

json SelectionManifest::ToJson(bool include_timings) const {
  json j;
  j["schema"] = kManifestSchema;
  j["tool_version"] = kToolVersion;
  j["kind"] = kind;
  j["model"] = {{"name", model.name},
                {"family", FamilyName(model.family)},
                {"monotone", model.monotone},
                {"submodular", model.submodular},
                {"params", model_params}};
  j["algorithm"] = {{"name", AlgorithmName(algorithm)},
                    {"constraint", constraint},
                    {"stop_at_zero", stop_at_zero},
                    {"stopped_at_zero", stats.stopped_at_zero},
                    {"lazy_fallback", stats.lazy_fallback},
                    {"resorts", stats.resorts},
                    {"gain_evaluations", stats.gain_evaluations}};
  j["ground_set"] = {{"size", ground_set_size}};
  json selected = json::array();
  for (size_t t = 0; t < indices.size(); ++t) {
    selected.push_back({{"index", indices[t]}, {"id", ids[t]}});
  }
  j["selected"] = std::move(selected);
  j["objective_trace"] = objective_trace;
  j["objective_value"] = objective_value;
  j["total_cost"] = total_cost;
  if (include_timings) {
    j["timings"] = {{"kernel_seconds", timings.kernel_seconds},
                    {"construction_seconds", timings.construction_seconds},
                    {"solve_seconds", timings.solve_seconds}};
  }
  json prov = json::array();
  for (const auto& p : provenance) {
    prov.push_back({{"role", p.role}, {"path", p.path}, {"sha256", p.sha256}});
  }
  j["provenance"] = std::move(prov);
  j["warnings"] = warnings;
  for (const auto& [key, value] : extra.items()) j[key] = value;
  return j;
}

std::string SelectionManifest::ToCanonicalString(bool include_timings) const {
  // nlohmann objects are std::map backed, so keys come out sorted.
  return ToJson(include_timings).dump(2) + "\n";
}

ManifestSelection ParseManifestSelection(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("manifest: ") + e.what());
  }
  ManifestSelection out;
  try {
    for (const auto& s : j.at("selected")) {
      out.indices.push_back(s.at("index").get<int>());
    }
    out.ground_set_size = j.at("ground_set").at("size").get<int>();
    if (j.contains("selected_frames")) {
      out.frames = j["selected_frames"].get<std::vector<int>>();
    } else {
      out.frames = out.indices;
    }
    out.frame_count = j.contains("frame_count") ? j["frame_count"].get<int>()
                                                : out.ground_set_size;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("manifest is missing fields: ") + e.what());
  }
  return out;
}

SelectionManifest ExtractiveSummarize(const ModelInputs& inputs,
                                      const RunOptions& options,
                                      std::span<const double> costs) {
  return RunSelection("extractive", inputs, options, costs);
}

SelectionManifest EntitySummarize(const ModelInputs& inputs,
                                  const RunOptions& options,
                                  std::span<const double> costs) {
  return RunSelection("entity", inputs, options, costs);
}

SelectionManifest QuerySummarize(const QueryInputs& in,
                                 const RunOptions& options) {
  const ModelSource source = SourceOf(options.model.name);
  if (source == ModelSource::kConcepts ||
      source == ModelSource::kProbabilities) {
    throw Error(ErrorCode::kUnsupported,
                "query summarization works on snippet features; '" +
                    options.model.name + "' reads concept tables");
  }
  CheckCompatibility(DescribeModel(options.model), options.constraint.algorithm);
  if (in.frames.rows() != in.snippets.frame_count) {
    throw Error(ErrorCode::kInvalidParam,
                "snippet index covers " +
                    std::to_string(in.snippets.frame_count) +
                    " frames but the feature matrix has " +
                    std::to_string(in.frames.rows()));
  }
  ValidateSnippets(in.snippets);
  const QueryFilterResult filtered =
      FilterByQuery(in.snippets, in.tags, in.query, in.min_confidence);
  if (filtered.kept.snippets.empty()) {
    throw Error(ErrorCode::kEmptyGroundSet,
                "no snippet is tagged '" + in.query + "' at confidence >= " +
                    json(in.min_confidence).dump());
  }
  SnippetFeatures agg = AggregateSnippets(in.frames, filtered.kept);

  ModelInputs mi;
  mi.features = std::make_shared<const FeatureMatrix>(agg.features);
  if (!in.snippet_scores.empty()) {
    if (in.snippet_scores.size() != in.snippets.snippets.size()) {
      throw Error(ErrorCode::kInvalidParam,
                  "expected one relevance score per snippet");
    }
    for (int p : filtered.provenance) mi.scores.push_back(in.snippet_scores[p]);
  }
  std::vector<std::string> ids;
  for (const auto& s : filtered.kept.snippets) ids.push_back(s.id);

  // The match count is unknown up front, so a size budget larger than the
  // filtered set is clamped rather than rejected.
  RunOptions opts = options;
  const int kept = static_cast<int>(filtered.kept.snippets.size());
  const Algorithm algo = opts.constraint.algorithm;
  const bool clamp = (algo == Algorithm::kGreedy || algo == Algorithm::kLazy) &&
                     opts.constraint.k > kept;
  if (clamp) opts.constraint.k = kept;
  SelectionManifest m =
      RunSelection("query", mi, opts, agg.costs, std::move(ids));
  if (clamp) {
    m.warnings.push_back("k=" + std::to_string(options.constraint.k) +
                         " exceeds the " + std::to_string(kept) +
                         " matching snippets; selected all of them");
  }
  std::set<int> frames;
  for (int i : m.indices) {
    const auto& fr = filtered.kept.snippets[i].frames;
    frames.insert(fr.begin(), fr.end());
  }
  m.extra["query"] = {{"text", in.query},
                      {"min_confidence", in.min_confidence},
                      {"snippets_total", in.snippets.snippets.size()},
                      {"snippets_matched", filtered.kept.snippets.size()}};
  m.extra["selected_frames"] = std::vector<int>(frames.begin(), frames.end());
  m.extra["frame_count"] = in.frames.rows();
  return m;
}

SelectionManifest SubsetSelect(const ModelInputs& inputs, double fraction,
                               const RunOptions& options,
                               std::span<const std::string> labels) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "fraction must lie in (0, 1]");
  }
  const Algorithm algo = options.constraint.algorithm;
  if (algo != Algorithm::kGreedy && algo != Algorithm::kLazy) {
    throw Error(ErrorCode::kInvalidParam,
                "subset selection uses a size constraint; use greedy or lazy");
  }
  const int n = inputs.ItemCount(options.model.name);
  if (!labels.empty() && labels.size() != static_cast<size_t>(n)) {
    throw Error(ErrorCode::kInvalidParam,
                "expected " + std::to_string(n) + " labels, got " +
                    std::to_string(labels.size()));
  }
  RunOptions opts = options;
  opts.constraint.k = CeilFraction(fraction, n);
  SelectionManifest m = RunSelection("subset", inputs, opts, {});
  m.extra["fraction"] = fraction;
  if (!labels.empty()) {
    std::map<std::string, int> counts;
    for (const auto& l : labels) counts[l] = 0;
    for (int i : m.indices) ++counts[labels[i]];
    m.extra["class_counts"] = counts;
  }
  return m;
}

Image Montage(std::span<const Image> frames, int columns) {
  if (frames.empty()) {
    throw Error(ErrorCode::kInvalidParam, "montage needs at least one frame");
  }
  if (columns < 1) {
    throw Error(ErrorCode::kInvalidParam, "montage columns must be >= 1");
  }
  const int w = frames[0].width;
  const int h = frames[0].height;
  for (const Image& f : frames) {
    if (f.width != w || f.height != h) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "montage frames must share dimensions: " + std::to_string(w) +
                      "x" + std::to_string(h) + " vs " +
                      std::to_string(f.width) + "x" + std::to_string(f.height));
    }
  }
  const int count = static_cast<int>(frames.size());
  const int cols = std::min(columns, count);
  const int rows = (count + cols - 1) / cols;
  Image out;
  out.width = cols * w;
  out.height = rows * h;
  out.rgb.assign(static_cast<size_t>(out.width) * out.height * 3, 0);
  for (int t = 0; t < count; ++t) {
    const int x0 = (t % cols) * w;
    const int y0 = (t / cols) * h;
    for (int y = 0; y < h; ++y) {
      const auto* src = frames[t].rgb.data() + static_cast<size_t>(y) * w * 3;
      auto* dst =
          out.rgb.data() + (static_cast<size_t>(y0 + y) * out.width + x0) * 3;
      std::copy(src, src + static_cast<size_t>(w) * 3, dst);
    }
  }
  return out;
}

DalStrategy ParseDalStrategy(std::string_view name) {
  if (name == "random") return DalStrategy::kRandom;
  if (name == "uncertainty") return DalStrategy::kUncertainty;
  if (name == "submodular") return DalStrategy::kSubmodular;
  throw Error(ErrorCode::kInvalidParam,
              "unknown strategy '" + std::string(name) +
                  "'; expected random, uncertainty or submodular");
}

std::string_view DalStrategyName(DalStrategy s) {
  switch (s) {
    case DalStrategy::kRandom: return "random";
    case DalStrategy::kUncertainty: return "uncertainty";
    case DalStrategy::kSubmodular: return "submodular";
  }
  return "random";
}

int DalLog::RoundsToReach(double target) const {
  for (const DalRound& r : rounds) {
    if (r.holdout_accuracy >= target) return r.round;
  }
  return static_cast<int>(rounds.size()) + 1;
}

std::string DalLog::ToCsv() const {
  std::string out = "round,batch,labeled,holdout_acc\n";
  for (const DalRound& r : rounds) {
    std::string batch;
    for (int i : r.batch) {
      if (!batch.empty()) batch += ';';
      batch += std::to_string(i);
    }
    out += std::to_string(r.round) + "," + batch + "," +
           std::to_string(r.labeled) + "," + json(r.holdout_accuracy).dump() +
           "\n";
  }
  return out;
}

json DalLog::ToJson() const {
  json rows = json::array();
  for (const DalRound& r : rounds) {
    rows.push_back({{"round", r.round},
                    {"batch", r.batch},
                    {"labeled", r.labeled},
                    {"holdout_acc", r.holdout_accuracy}});
  }
  return {{"schema", "datasumm.dal/1"},
          {"tool_version", kToolVersion},
          {"strategy", DalStrategyName(strategy)},
          {"probe", "nearest class centroid"},
          {"holdout", holdout},
          {"rounds", std::move(rows)}};
}

namespace {

class CentroidProbe {
 public:
  CentroidProbe(const FeatureMatrix& x, const std::vector<int>& cls,
                int num_classes, const std::vector<int>& labeled)
      : x_(x), sums_(num_classes, std::vector<double>(x.cols(), 0.0)),
        counts_(num_classes, 0) {
    for (int i : labeled) {
      ++counts_[cls[i]];
      const auto row = x.row(i);
      for (int c = 0; c < x.cols(); ++c) sums_[cls[i]][c] += row[c];
    }
    for (int k = 0; k < num_classes; ++k) {
      if (counts_[k] == 0) continue;
      ++present_;
      for (double& v : sums_[k]) v /= counts_[k];
    }
  }

  int classes_present() const { return present_; }

  // Squared distances to present centroids, ascending, as (dist, class).
  std::vector<std::pair<double, int>> Ranked(int i) const {
    std::vector<std::pair<double, int>> out;
    const auto row = x_.row(i);
    for (size_t k = 0; k < sums_.size(); ++k) {
      if (counts_[k] == 0) continue;
      double d = 0.0;
      for (int c = 0; c < x_.cols(); ++c) {
        const double diff = row[c] - sums_[k][c];
        d += diff * diff;
      }
      out.emplace_back(d, static_cast<int>(k));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  const FeatureMatrix& x_;
  std::vector<std::vector<double>> sums_;  // centroids after construction
  std::vector<int> counts_;
  int present_ = 0;
};

}  // namespace

DalLog SimulateActiveLearning(const FeatureMatrix& features,
                              std::span<const std::string> labels,
                              const DalConfig& config) {
  const int n = features.rows();
  if (labels.size() != static_cast<size_t>(n)) {
    throw Error(ErrorCode::kInvalidParam,
                "expected " + std::to_string(n) + " labels, got " +
                    std::to_string(labels.size()));
  }
  std::map<std::string, int> class_index;
  for (const auto& l : labels) class_index.emplace(l, 0);
  if (class_index.size() < 2) {
    throw Error(ErrorCode::kInvalidParam,
                "active learning needs at least two classes");
  }
  int next = 0;
  for (auto& [name, idx] : class_index) idx = next++;
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = class_index[labels[i]];
  const int num_classes = next;

  if (!(config.holdout > 0.0 && config.holdout < 1.0)) {
    throw Error(ErrorCode::kInvalidParam, "holdout fraction must lie in (0, 1)");
  }
  if (config.rounds < 1 || config.batch < 1) {
    throw Error(ErrorCode::kInvalidParam, "rounds and batch must be >= 1");
  }
  std::mt19937_64 split_rng(config.seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  SeededShuffle(order, split_rng);
  const int h = std::max(1, static_cast<int>(std::lround(config.holdout * n)));
  if (h >= n) {
    throw Error(ErrorCode::kInvalidParam, "holdout leaves no pool to label");
  }
  std::vector<int> holdout(order.begin(), order.begin() + h);
  std::vector<int> pool(order.begin() + h, order.end());
  std::sort(holdout.begin(), holdout.end());
  std::sort(pool.begin(), pool.end());
  const int pool_size = static_cast<int>(pool.size());
  if (static_cast<int64_t>(config.batch) * config.rounds > pool_size) {
    throw Error(ErrorCode::kInvalidParam,
                "batch x rounds = " +
                    std::to_string(static_cast<int64_t>(config.batch) *
                                   config.rounds) +
                    " exceeds the pool of " + std::to_string(pool_size) +
                    " items");
  }

  // Submodular strategy: one model over the pool, conditioned each round on
  // what is already labeled.
  std::unique_ptr<Objective> model;
  const DisparityMin* disparity_min = nullptr;
  if (config.strategy == DalStrategy::kSubmodular) {
    if (SourceOf(config.model.name) != ModelSource::kFeatures ||
        NeedsScores(config.model.name)) {
      throw Error(ErrorCode::kUnsupported,
                  "active learning builds models from features only; '" +
                      config.model.name + "' needs other inputs");
    }
    std::vector<double> values;
    values.reserve(static_cast<size_t>(pool_size) * features.cols());
    for (int i : pool) {
      const auto row = features.row(i);
      values.insert(values.end(), row.begin(), row.end());
    }
    ModelInputs mi;
    mi.features = std::make_shared<const FeatureMatrix>(
        pool_size, features.cols(), std::move(values));
    model = BuildModel(config.model, mi).objective;
    disparity_min = dynamic_cast<const DisparityMin*>(model.get());
  }

  std::mt19937_64 pick_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<char> labeled_mask(pool_size, 0);  // by pool position
  std::vector<int> labeled_local;
  std::vector<int> labeled;  // item indices

  DalLog log;
  log.strategy = config.strategy;
  log.holdout = holdout;
  for (int round = 1; round <= config.rounds; ++round) {
    std::vector<int> unlabeled;
    for (int p = 0; p < pool_size; ++p) {
      if (!labeled_mask[p]) unlabeled.push_back(p);
    }
    std::vector<int> batch_local;
    DalStrategy strategy = config.strategy;
    std::optional<CentroidProbe> probe;
    if (strategy == DalStrategy::kUncertainty) {
      probe.emplace(features, cls, num_classes, labeled);
      // Margins need two centroids; until then pick at random.
      if (probe->classes_present() < 2) strategy = DalStrategy::kRandom;
    }
    switch (strategy) {
      case DalStrategy::kRandom: {
        SeededShuffle(unlabeled, pick_rng);
        batch_local.assign(unlabeled.begin(),
                           unlabeled.begin() + config.batch);
        break;
      }
      case DalStrategy::kUncertainty: {
        std::vector<std::pair<double, int>> margins;
        for (int p : unlabeled) {
          const auto ranked = probe->Ranked(pool[p]);
          margins.emplace_back(
              std::sqrt(ranked[1].first) - std::sqrt(ranked[0].first), p);
        }
        std::sort(margins.begin(), margins.end());
        for (int t = 0; t < config.batch; ++t) {
          batch_local.push_back(margins[t].second);
        }
        break;
      }
      case DalStrategy::kSubmodular: {
        std::vector<char> eligible(pool_size, 0);
        for (int p : unlabeled) eligible[p] = 1;
        if (disparity_min != nullptr) {
          batch_local = FarthestPointExtend(disparity_min->distances(),
                                            labeled_local, config.batch,
                                            eligible);
        } else {
          auto memo = model->NewMemo();
          for (int p : labeled_local) memo->Commit(p);
          SolverConfig sc;
          sc.stop_at_zero = false;
          batch_local =
              GreedyExtend(*model, *memo, config.batch, eligible, sc).indices;
        }
        break;
      }
    }
    DalRound r;
    r.round = round;
    for (int p : batch_local) {
      labeled_mask[p] = 1;
      labeled_local.push_back(p);
      labeled.push_back(pool[p]);
      r.batch.push_back(pool[p]);
    }
    r.labeled = static_cast<int>(labeled.size());
    const CentroidProbe trained(features, cls, num_classes, labeled);
    int correct = 0;
    for (int i : holdout) {
      if (trained.Ranked(i).front().second == cls[i]) ++correct;
    }
    r.holdout_accuracy = static_cast<double>(correct) / h;
    log.rounds.push_back(std::move(r));
  }
  return log;
}

}  // namespace datasumm
