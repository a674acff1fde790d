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

#include "datasumm/cli.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "datasumm/bench.h"
#include "datasumm/error.h"
#include "datasumm/ingest.h"
#include "datasumm/metrics.h"
#include "datasumm/models.h"
#include "datasumm/pipelines.h"
#include "json.hpp"

namespace datasumm {
namespace {

constexpr std::string_view kMatrixNote =
    "compatibility: greedy, lazy and budgeted accept every model; cover needs "
    "a monotone similarity, coverage or modular model; stream needs a "
    "similarity or distance model";

// A failure detected before any input is read.
struct UsageError {
  std::string code;
  std::string message;
};

[[noreturn]] void Usage(std::string message, std::string code = "Usage") {
  throw UsageError{std::move(code), std::move(message)};
}

std::string OneLine(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

struct Flags {
  // inputs
  std::string features, frames, kernel, snippets, tags, query, scores,
      concepts, probs, annotations, labels, costs, manifest;
  // model
  ModelConfig model;
  // algorithm
  std::string algo = "lazy";
  int k = 0;
  double budget = 0.0;
  double rho = 1.0;
  double tau = 0.0;
  std::optional<uint64_t> seed;
  int threads = 1;
  // query
  double min_conf = 0.5;
  // subset
  double fraction = 0.1;
  // dal
  int rounds = 5;
  int batch = 10;
  std::string strategy = "random";
  double holdout = 0.3;
  // bench
  std::string models;
  int n = 2000;
  std::string fractions = "0.05,0.15,0.3";
  int repeats = 3;
  bool json = false;
  // outputs
  std::string out, montage;
  int cols = 4;
  bool no_timings = false;
};

std::vector<std::string> SplitCsvList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void Emit(const Flags& flags, const std::string& contents, std::ostream& out) {
  if (flags.out.empty() || flags.out == "-") {
    out << contents;
  } else {
    WriteFileAtomic(flags.out, contents);
  }
}

Algorithm CheckPairing(const Flags& flags, bool needs_size) {
  Algorithm algo;
  ModelInfo info;
  try {
    algo = ParseAlgorithm(flags.algo);
    info = DescribeModel(flags.model);
  } catch (const Error& e) {
    Usage(e.what(), std::string(ErrorCodeName(e.code())));
  }
  try {
    CheckCompatibility(info, algo);
  } catch (const Error& e) {
    Usage(std::string(e.what()) + " (" + std::string(kMatrixNote) + ")",
          "Unsupported");
  }
  if (needs_size) {
    switch (algo) {
      case Algorithm::kGreedy:
      case Algorithm::kLazy:
        if (flags.k < 1) Usage("--k must be >= 1 for " + flags.algo);
        break;
      case Algorithm::kBudgeted:
        if (!(flags.budget > 0.0)) Usage("--budget must be > 0 for budgeted");
        break;
      case Algorithm::kCover:
        if (!(flags.rho > 0.0 && flags.rho <= 1.0)) {
          Usage("--rho must lie in (0, 1]");
        }
        break;
      case Algorithm::kStream:
        break;
    }
  }
  if (flags.threads < 1) Usage("--threads must be >= 1");
  return algo;
}

RunOptions MakeRunOptions(const Flags& flags, Algorithm algo) {
  RunOptions o;
  o.model = flags.model;
  o.constraint.algorithm = algo;
  o.constraint.k = flags.k;
  o.constraint.budget = flags.budget;
  o.constraint.rho = flags.rho;
  o.constraint.tau = flags.tau;
  o.constraint.seed = flags.seed;
  o.solver.threads = flags.threads;
  return o;
}

// Checks which input flags a model needs, before anything is read.
void CheckModelInputs(const Flags& flags) {
  const std::string& name = flags.model.name;
  switch (SourceOf(name)) {
    case ModelSource::kFeatures:
      if (flags.features.empty() && flags.frames.empty() &&
          flags.kernel.empty()) {
        Usage(name + " needs --features, --frames or --kernel");
      }
      if (!flags.kernel.empty() &&
          DescribeModel(flags.model).family != Family::kSimilarity) {
        Usage("--kernel only applies to similarity-based models");
      }
      if (NeedsScores(name) && flags.scores.empty()) {
        Usage(name + " needs --scores");
      }
      break;
    case ModelSource::kConcepts:
      if (flags.concepts.empty()) Usage(name + " needs --concepts");
      break;
    case ModelSource::kProbabilities:
      if (flags.probs.empty()) Usage(name + " needs --probs");
      break;
    case ModelSource::kScores:
      if (flags.scores.empty()) Usage(name + " needs --scores");
      break;
  }
  if (!flags.montage.empty() && flags.frames.empty()) {
    Usage("--montage needs --frames");
  }
  if (flags.cols < 1) Usage("--cols must be >= 1");
}

FeatureMatrix LoadFeatureSource(const Flags& flags) {
  if (!flags.frames.empty()) return LoadFrameDirectory(flags.frames);
  return LoadFeatures(flags.features);
}

struct LoadedInputs {
  ModelInputs model;
  std::vector<InputDigest> provenance;
};

LoadedInputs LoadModelInputs(const Flags& flags) {
  LoadedInputs li;
  const std::string& name = flags.model.name;
  auto note = [&](const std::string& role, const std::string& path) {
    li.provenance.push_back(DigestInput(role, path));
  };
  const ModelSource source = SourceOf(name);
  std::vector<std::string> ids;
  if (source == ModelSource::kFeatures || !flags.features.empty() ||
      !flags.frames.empty()) {
    if (!flags.kernel.empty() && source == ModelSource::kFeatures) {
      li.model.kernel =
          std::make_shared<const Kernel>(LoadKernelBinary(flags.kernel));
      note("kernel", flags.kernel);
    } else if (!flags.frames.empty()) {
      li.model.features = std::make_shared<const FeatureMatrix>(
          LoadFrameDirectory(flags.frames));
      note("frames", flags.frames);
    } else if (!flags.features.empty()) {
      li.model.features =
          std::make_shared<const FeatureMatrix>(LoadFeatures(flags.features));
      note("features", flags.features);
    }
    if (li.model.features && li.model.features->has_ids()) {
      ids = li.model.features->ids();
    }
  }
  if (source == ModelSource::kConcepts) {
    li.model.concepts =
        std::make_shared<const ConceptData>(LoadConcepts(flags.concepts, ids));
    note("concepts", flags.concepts);
  }
  if (source == ModelSource::kProbabilities) {
    li.model.probabilities =
        std::make_shared<const ProbabilityData>(LoadProbabilities(flags.probs));
    note("probabilities", flags.probs);
  }
  if (!flags.scores.empty() && NeedsScores(name)) {
    li.model.scores = LoadScores(flags.scores);
    note("scores", flags.scores);
  }
  return li;
}

void WriteMontage(const Flags& flags, std::span<const int> frame_indices) {
  const auto paths = ListFrames(flags.frames);
  std::vector<Image> images;
  for (int i : frame_indices) images.push_back(DecodePpm(ReadFile(paths.at(i))));
  WriteFileAtomic(flags.montage, EncodePpm(Montage(images, flags.cols)));
}

int RunSummarize(const Flags& flags, bool entity, std::ostream& out) {
  const Algorithm algo = CheckPairing(flags, true);
  CheckModelInputs(flags);
  LoadedInputs li = LoadModelInputs(flags);
  RunOptions options = MakeRunOptions(flags, algo);
  options.provenance = li.provenance;
  std::vector<double> costs;
  if (!flags.costs.empty()) {
    costs = LoadScores(flags.costs);
    options.provenance.push_back(DigestInput("costs", flags.costs));
  }
  SelectionManifest m = entity ? EntitySummarize(li.model, options, costs)
                               : ExtractiveSummarize(li.model, options, costs);
  if (!flags.montage.empty()) WriteMontage(flags, m.indices);
  Emit(flags, m.ToCanonicalString(!flags.no_timings), out);
  return 0;
}

int RunQuery(const Flags& flags, std::ostream& out) {
  const Algorithm algo = CheckPairing(flags, true);
  if (flags.features.empty() && flags.frames.empty()) {
    Usage("query needs --features or --frames");
  }
  if (flags.snippets.empty() || flags.tags.empty() || flags.query.empty()) {
    Usage("query needs --snippets, --tags and --query");
  }
  const ModelSource source = SourceOf(flags.model.name);
  if (source == ModelSource::kConcepts ||
      source == ModelSource::kProbabilities) {
    Usage("query summarization works on snippet features; '" +
              flags.model.name + "' reads concept tables",
          "Unsupported");
  }
  if (NeedsScores(flags.model.name) && flags.scores.empty()) {
    Usage(flags.model.name + " needs --scores (one per snippet)");
  }
  if (!flags.montage.empty() && flags.frames.empty()) {
    Usage("--montage needs --frames");
  }
  QueryInputs in;
  RunOptions options = MakeRunOptions(flags, algo);
  in.frames = LoadFeatureSource(flags);
  options.provenance.push_back(DigestInput(
      flags.frames.empty() ? "features" : "frames",
      flags.frames.empty() ? flags.features : flags.frames));
  in.snippets = LoadSnippets(flags.snippets, in.frames.rows());
  options.provenance.push_back(DigestInput("snippets", flags.snippets));
  in.tags = LoadTags(flags.tags, in.frames.rows());
  options.provenance.push_back(DigestInput("tags", flags.tags));
  in.query = flags.query;
  in.min_confidence = flags.min_conf;
  if (NeedsScores(flags.model.name)) {
    in.snippet_scores = LoadScores(flags.scores);
    options.provenance.push_back(DigestInput("scores", flags.scores));
  }
  SelectionManifest m = QuerySummarize(in, options);
  if (!flags.montage.empty()) {
    WriteMontage(flags, m.extra["selected_frames"].get<std::vector<int>>());
  }
  Emit(flags, m.ToCanonicalString(!flags.no_timings), out);
  return 0;
}

int RunSubset(const Flags& flags, std::ostream& out) {
  const Algorithm algo = CheckPairing(flags, false);
  if (algo != Algorithm::kGreedy && algo != Algorithm::kLazy) {
    Usage("subset uses a size constraint; pass --algo greedy or lazy");
  }
  if (!(flags.fraction > 0.0 && flags.fraction <= 1.0)) {
    Usage("--fraction must lie in (0, 1]");
  }
  CheckModelInputs(flags);
  LoadedInputs li = LoadModelInputs(flags);
  RunOptions options = MakeRunOptions(flags, algo);
  options.provenance = li.provenance;
  std::vector<std::string> labels;
  if (!flags.labels.empty()) {
    labels = ParseLabels(ReadFile(flags.labels));
    options.provenance.push_back(DigestInput("labels", flags.labels));
  }
  SelectionManifest m = SubsetSelect(li.model, flags.fraction, options, labels);
  Emit(flags, m.ToCanonicalString(!flags.no_timings), out);
  return 0;
}

int RunDal(const Flags& flags, std::ostream& out) {
  if (flags.features.empty() || flags.labels.empty()) {
    Usage("dal needs --features and --labels");
  }
  DalConfig config;
  try {
    config.strategy = ParseDalStrategy(flags.strategy);
    if (config.strategy == DalStrategy::kSubmodular) {
      DescribeModel(flags.model);
      const ModelSource s = SourceOf(flags.model.name);
      if (s != ModelSource::kFeatures || NeedsScores(flags.model.name)) {
        throw Error(ErrorCode::kUnsupported,
                    "active learning builds models from features only");
      }
    }
  } catch (const Error& e) {
    Usage(e.what(), std::string(ErrorCodeName(e.code())));
  }
  if (flags.rounds < 1 || flags.batch < 1) {
    Usage("--rounds and --batch must be >= 1");
  }
  config.rounds = flags.rounds;
  config.batch = flags.batch;
  config.model = flags.model;
  config.holdout = flags.holdout;
  config.seed = flags.seed.value_or(0);
  const FeatureMatrix x = LoadFeatures(flags.features);
  const auto labels = ParseLabels(ReadFile(flags.labels));
  const DalLog log = SimulateActiveLearning(x, labels, config);
  if (flags.json) {
    Emit(flags, log.ToJson().dump(2) + "\n", out);
  } else {
    Emit(flags, log.ToCsv(), out);
    if (!flags.out.empty() && flags.out != "-") {
      std::filesystem::path p(flags.out);
      WriteFileAtomic(p.replace_extension(".json").string(),
                      log.ToJson().dump(2) + "\n");
    }
  }
  return 0;
}

std::string FormatNumber(double v) { return nlohmann::json(v).dump(); }

int RunEval(const Flags& flags, std::ostream& out) {
  if (flags.manifest.empty()) Usage("eval needs --manifest");
  if (flags.annotations.empty() && flags.concepts.empty()) {
    Usage("eval needs --annotations and/or --concepts");
  }
  const ManifestSelection sel = ParseManifestSelection(ReadFile(flags.manifest));
  std::vector<std::pair<std::string, std::string>> rows;
  if (!flags.annotations.empty()) {
    for (const auto& a : LoadAnnotations(flags.annotations)) {
      switch (a.kind) {
        case SegmentKind::kScene:
          rows.emplace_back("R", FormatNumber(RepresentationScore(sel.indices, a)));
          break;
        case SegmentKind::kOutlierEvent:
          rows.emplace_back("D", std::to_string(OutlierScore(sel.indices, a)));
          rows.emplace_back("D_normalized",
                            FormatNumber(NormalizedOutlierScore(sel.indices, a)));
          break;
        case SegmentKind::kCluster:
          rows.emplace_back("M", FormatNumber(ClusterDiversityScore(sel.indices, a)));
          break;
        case SegmentKind::kGroundTruthSummary: {
          std::vector<int> truth;
          for (const auto& s : a.segments) {
            truth.insert(truth.end(), s.items.begin(), s.items.end());
          }
          const F1Result f1 = F1Score(sel.frames, truth, sel.frame_count);
          rows.emplace_back("precision", FormatNumber(f1.precision));
          rows.emplace_back("recall", FormatNumber(f1.recall));
          rows.emplace_back("F1", FormatNumber(f1.f1));
          break;
        }
      }
    }
  }
  if (!flags.concepts.empty()) {
    const ConceptData c = LoadConcepts(flags.concepts);
    rows.emplace_back("C", FormatNumber(CoverageScore(sel.indices, c)));
  }
  std::string text;
  if (flags.json) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : rows) j[key] = nlohmann::json::parse(value);
    text = j.dump(2) + "\n";
  } else {
    for (const auto& [key, value] : rows) text += key + " " + value + "\n";
  }
  Emit(flags, text, out);
  return 0;
}

int RunBench(const Flags& flags, std::ostream& out) {
  std::vector<std::string> models = flags.models.empty()
                                        ? DefaultBenchModels()
                                        : SplitCsvList(flags.models);
  for (const auto& m : models) {
    try {
      SourceOf(m);
    } catch (const Error& e) {
      Usage(e.what(), std::string(ErrorCodeName(e.code())));
    }
  }
  std::vector<double> fractions;
  for (const auto& f : SplitCsvList(flags.fractions)) {
    try {
      fractions.push_back(std::stod(f));
    } catch (const std::exception&) {
      Usage("bad fraction '" + f + "'");
    }
    if (!(fractions.back() > 0.0 && fractions.back() <= 1.0)) {
      Usage("fractions must lie in (0, 1]");
    }
  }
  if (fractions.empty()) Usage("--fractions is empty");
  if (flags.n < 100) Usage("--n must be >= 100");
  if (flags.repeats < 1) Usage("--repeats must be >= 1");
  const auto reports = BenchMatrix(models, flags.n, fractions,
                                   flags.seed.value_or(0), flags.repeats);
  Emit(flags, flags.json ? BenchJson(reports).dump(2) + "\n" : BenchCsv(reports),
       out);
  return 0;
}

int RunKernel(const Flags& flags, std::ostream& out) {
  if (flags.features.empty() && flags.frames.empty()) {
    Usage("kernel needs --features or --frames");
  }
  if (flags.out.empty() || flags.out == "-") {
    Usage("kernel writes a binary file; pass --out");
  }
  const std::string metric = flags.model.metric.empty() ? "cosine"
                                                        : flags.model.metric;
  bool distance = false;
  try {
    ParseKernelMetric(metric);
  } catch (const Error&) {
    try {
      ParseDistanceMetric(metric);
      distance = true;
    } catch (const Error& e) {
      Usage("unknown metric '" + metric +
                "'; expected cosine, gaussian, euclidean or one_minus_cosine",
            "InvalidParam");
    }
  }
  if (flags.model.knn < 0) Usage("--knn must be >= 0");
  if (distance && flags.model.knn > 0) Usage("--knn applies to kernels only");
  const FeatureMatrix x = LoadFeatureSource(flags);
  if (distance) {
    SaveDistancesBinary(ComputeDistances(x, ParseDistanceMetric(metric)),
                        flags.out);
  } else {
    KernelMetric m;
    m.type = ParseKernelMetric(metric);
    m.sigma = flags.model.sigma;
    Kernel k = ComputeKernel(x, m);
    if (flags.model.knn > 0) k = SparsifyKnn(k, flags.model.knn);
    SaveKernelBinary(k, flags.out);
  }
  out << (distance ? "distances " : "kernel ") << x.rows() << "x" << x.rows()
      << " written to " << flags.out << "\n";
  return 0;
}

void AddModelFlags(CLI::App* sub, Flags& f) {
  sub->add_option("--model", f.model.name, "Model name")
      ->capture_default_str();
  sub->add_option("--alpha", f.model.alpha, "Saturation fraction");
  sub->add_option("--lambda", f.model.lambda, "Graph cut weight");
  sub->add_option("--psi", f.model.psi, "Concave shape: sqrt, log1p, inverse");
  sub->add_option("--theta", f.model.theta, "MMR relevance weight");
  sub->add_option("--knn", f.model.knn, "Sparsify kernel to k nearest");
  sub->add_option("--metric", f.model.metric,
                  "cosine, gaussian, euclidean or one_minus_cosine");
  sub->add_option("--sigma", f.model.sigma, "Gaussian kernel width");
}

void AddAlgoFlags(CLI::App* sub, Flags& f) {
  sub->add_option("--algo", f.algo, "greedy, lazy, budgeted, cover or stream")
      ->capture_default_str();
  sub->add_option("--k", f.k, "Cardinality budget");
  sub->add_option("--budget", f.budget, "Knapsack budget");
  sub->add_option("--rho", f.rho, "Cover fraction of f(V)");
  sub->add_option("--tau", f.tau, "Stream gain threshold");
  sub->add_option("--threads", f.threads, "Threads for plain greedy scans");
}

void AddInputFlags(CLI::App* sub, Flags& f) {
  sub->add_option("--features", f.features, "Feature CSV or VDSF file");
  sub->add_option("--frames", f.frames, "Directory of PPM frames");
  sub->add_option("--kernel", f.kernel, "Precomputed VDSF kernel");
  sub->add_option("--scores", f.scores, "Relevance scores, one per line");
  sub->add_option("--concepts", f.concepts, "Concept sets (JSON lines)");
  sub->add_option("--probs", f.probs, "Concept probabilities CSV");
  sub->add_option("--costs", f.costs, "Item costs, one per line");
}

void AddOutputFlags(CLI::App* sub, Flags& f) {
  sub->add_option("--out", f.out, "Output path (stdout when omitted)");
  sub->add_option("--seed", f.seed, "Seed for every stochastic choice");
  sub->add_flag("--no-timings", f.no_timings,
                "Omit wall-clock timings from the manifest");
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  Flags f;
  CLI::App app{"Data subset selection and summarization with submodular "
               "functions"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1, 1);

  auto* summarize = app.add_subcommand("summarize", "Extractive summary");
  auto* entity = app.add_subcommand("entity", "Summarize detected entities");
  for (auto* sub : {summarize, entity}) {
    AddInputFlags(sub, f);
    AddModelFlags(sub, f);
    AddAlgoFlags(sub, f);
    AddOutputFlags(sub, f);
    sub->add_option("--montage", f.montage, "Write a PPM montage of the picks");
    sub->add_option("--cols", f.cols, "Montage columns");
  }

  auto* query = app.add_subcommand("query", "Query-focused snippet summary");
  AddModelFlags(query, f);
  AddAlgoFlags(query, f);
  AddOutputFlags(query, f);
  query->add_option("--features", f.features, "Per-frame features");
  query->add_option("--frames", f.frames, "Directory of PPM frames");
  query->add_option("--snippets", f.snippets, "Snippet index (JSON lines)");
  query->add_option("--tags", f.tags, "Per-frame tags (JSON lines)");
  query->add_option("--query", f.query, "Tag to match");
  query->add_option("--min-conf", f.min_conf, "Minimum tag confidence");
  query->add_option("--scores", f.scores, "Relevance per snippet");
  query->add_option("--montage", f.montage, "Write a PPM montage of frames");
  query->add_option("--cols", f.cols, "Montage columns");

  auto* subset = app.add_subcommand("subset", "Training subset selection");
  AddInputFlags(subset, f);
  AddModelFlags(subset, f);
  AddAlgoFlags(subset, f);
  AddOutputFlags(subset, f);
  subset->add_option("--fraction", f.fraction, "Fraction of items to keep");
  subset->add_option("--labels", f.labels, "Class labels, one per line");

  auto* dal = app.add_subcommand("dal", "Simulated diversified active learning");
  AddModelFlags(dal, f);
  AddOutputFlags(dal, f);
  dal->add_option("--features", f.features, "Feature CSV or VDSF file");
  dal->add_option("--labels", f.labels, "Class labels, one per line");
  dal->add_option("--rounds", f.rounds, "Labeling rounds");
  dal->add_option("--batch", f.batch, "Items labeled per round");
  dal->add_option("--strategy", f.strategy,
                  "random, uncertainty or submodular");
  dal->add_option("--holdout", f.holdout, "Holdout fraction");
  dal->add_flag("--json", f.json, "Emit JSON instead of CSV");

  auto* eval = app.add_subcommand("eval", "Score a manifest");
  eval->add_option("--manifest", f.manifest, "Selection manifest");
  eval->add_option("--annotations", f.annotations, "Annotations (JSON lines)");
  eval->add_option("--concepts", f.concepts, "Concept sets for C(X)");
  eval->add_option("--out", f.out, "Output path (stdout when omitted)");
  eval->add_flag("--json", f.json, "Emit JSON");

  auto* bench = app.add_subcommand("bench", "Memoization timing harness");
  bench->add_option("--models", f.models, "Comma-separated model names");
  bench->add_option("--n", f.n, "Ground set size")->capture_default_str();
  bench->add_option("--fractions", f.fractions, "Comma-separated fractions")
      ->capture_default_str();
  bench->add_option("--repeats", f.repeats, "Timed runs per cell");
  bench->add_option("--seed", f.seed, "Synthetic data seed");
  bench->add_option("--out", f.out, "Output path (stdout when omitted)");
  bench->add_flag("--json", f.json, "Emit JSON instead of CSV");

  auto* kernel = app.add_subcommand("kernel", "Precompute a kernel");
  kernel->add_option("--features", f.features, "Feature CSV or VDSF file");
  kernel->add_option("--frames", f.frames, "Directory of PPM frames");
  kernel->add_option("--metric", f.model.metric,
                     "cosine, gaussian, euclidean or one_minus_cosine");
  kernel->add_option("--sigma", f.model.sigma, "Gaussian kernel width");
  kernel->add_option("--knn", f.model.knn, "Sparsify to k nearest");
  kernel->add_option("--out", f.out, "Output VDSF path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ERROR Usage: " << OneLine(e.what()) << "\n";
    return 2;
  }

  try {
    if (summarize->parsed()) return RunSummarize(f, false, out);
    if (entity->parsed()) return RunSummarize(f, true, out);
    if (query->parsed()) return RunQuery(f, out);
    if (subset->parsed()) return RunSubset(f, out);
    if (dal->parsed()) return RunDal(f, out);
    if (eval->parsed()) return RunEval(f, out);
    if (bench->parsed()) return RunBench(f, out);
    if (kernel->parsed()) return RunKernel(f, out);
  } catch (const UsageError& e) {
    err << "ERROR " << e.code << ": " << OneLine(e.message) << "\n";
    return 2;
  } catch (const Error& e) {
    err << "ERROR " << ErrorCodeName(e.code()) << ": " << OneLine(e.what())
        << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "ERROR Internal: " << OneLine(e.what()) << "\n";
    return 1;
  }
  return 2;
}

}  // namespace datasumm
