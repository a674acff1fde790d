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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "datasumm/bench.h"
#include "datasumm/cli.h"
#include "datasumm/error.h"
#include "datasumm/metrics.h"
#include "datasumm/models.h"
#include "datasumm/pipelines.h"
#include "datasumm/similarity.h"

namespace py = pybind11;
using namespace datasumm;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

FeatureMatrix ToFeatures(const Array& a) {
  if (a.ndim() != 2) throw Error(ErrorCode::kInvalidParam, "features must be 2-D");
  const auto* p = a.data();
  return FeatureMatrix(static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)),
                       std::vector<double>(p, p + a.size()));
}

Array ToArray(const std::vector<double>& v, int rows, int cols) {
  Array out({rows, cols});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ModelConfig Config(const std::string& model, const py::dict& params) {
  ModelConfig c;
  c.name = model;
  for (auto [key, value] : params) {
    const std::string k = py::str(key);
    if (k == "alpha") c.alpha = value.cast<double>();
    else if (k == "lambda_" || k == "lambda") c.lambda = value.cast<double>();
    else if (k == "theta") c.theta = value.cast<double>();
    else if (k == "psi") c.psi = value.cast<std::string>();
    else if (k == "knn") c.knn = value.cast<int>();
    else if (k == "metric") c.metric = value.cast<std::string>();
    else if (k == "sigma") c.sigma = value.cast<double>();
    else throw Error(ErrorCode::kInvalidParam, "unknown model parameter '" + k + "'");
  }
  return c;
}

// Inputs from keyword arguments; concepts are per-item lists of concept
// indices, probabilities an items x concepts array.
ModelInputs Inputs(const std::optional<Array>& features,
                   const std::optional<Array>& kernel,
                   const std::optional<std::vector<std::vector<int>>>& concepts,
                   const std::optional<Array>& probabilities,
                   const std::optional<std::vector<double>>& weights,
                   const std::optional<std::vector<double>>& scores) {
  ModelInputs in;
  if (features) in.features = std::make_shared<const FeatureMatrix>(ToFeatures(*features));
  if (kernel) {
    if (kernel->ndim() != 2 || kernel->shape(0) != kernel->shape(1)) {
      throw Error(ErrorCode::kInvalidParam, "kernel must be square");
    }
    const int n = static_cast<int>(kernel->shape(0));
    in.kernel = std::make_shared<const Kernel>(Kernel::FromDense(
        n, std::vector<double>(kernel->data(), kernel->data() + kernel->size())));
  }
  if (concepts) {
    auto c = std::make_shared<ConceptData>();
    int m = 0;
    for (const auto& list : *concepts) {
      for (int u : list) {
        if (u < 0) throw Error(ErrorCode::kInvalidParam, "negative concept index");
        m = std::max(m, u + 1);
      }
    }
    if (weights) m = std::max<int>(m, static_cast<int>(weights->size()));
    for (int u = 0; u < m; ++u) c->concept_names.push_back(std::to_string(u));
    c->weights = weights ? *weights : std::vector<double>(m, 1.0);
    if (static_cast<int>(c->weights.size()) != m) {
      throw Error(ErrorCode::kInvalidWeight, "expected one weight per concept");
    }
    for (double w : c->weights) {
      if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidWeight, "weights must be >= 0");
    }
    c->item_concepts = *concepts;
    for (auto& list : c->item_concepts) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    in.concepts = c;
  }
  if (probabilities) {
    if (probabilities->ndim() != 2) {
      throw Error(ErrorCode::kInvalidParam, "probabilities must be 2-D");
    }
    auto p = std::make_shared<ProbabilityData>();
    p->num_items = static_cast<int>(probabilities->shape(0));
    const int m = static_cast<int>(probabilities->shape(1));
    for (int u = 0; u < m; ++u) p->concept_names.push_back(std::to_string(u));
    p->weights = weights ? *weights : std::vector<double>(m, 1.0);
    if (static_cast<int>(p->weights.size()) != m) {
      throw Error(ErrorCode::kInvalidWeight, "expected one weight per concept");
    }
    p->probabilities.assign(probabilities->data(),
                            probabilities->data() + probabilities->size());
    for (double v : p->probabilities) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidProbability, "probabilities must lie in [0, 1]");
      }
    }
    in.probabilities = p;
  }
  if (scores) in.scores = *scores;
  return in;
}

SegmentAnnotation Segments(SegmentKind kind, const std::vector<std::vector<int>>& groups) {
  SegmentAnnotation a;
  a.kind = kind;
  for (size_t s = 0; s < groups.size(); ++s) {
    a.segments.push_back({std::to_string(s), groups[s]});
  }
  ValidateAnnotation(a);
  return a;
}

}  // namespace

PYBIND11_MODULE(_datasumm, m) {
  m.doc() = "Submodular data subset selection and summarization";
  m.attr("__version__") = std::string(kToolVersion);

  // Raised for every library error; `code` holds the error name.
  static PyObject* error_type = PyErr_NewException(
      "datasumm._datasumm.DatasummError", PyExc_RuntimeError, nullptr);
  m.attr("DatasummError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string code(ErrorCodeName(e.code()));
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(
          code + ": " + e.what());
      exc.attr("code") = code;
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def("model_names", [] { return ModelNames(); });

  m.def("describe_model",
        [](const std::string& model, const py::dict& params) {
          ModelInfo info = DescribeModel(Config(model, params));
          py::dict d;
          d["name"] = info.name;
          d["family"] = std::string(FamilyName(info.family));
          d["monotone"] = info.monotone;
          d["submodular"] = info.submodular;
          return d;
        },
        py::arg("model"), py::arg("params") = py::dict());

  m.def("compute_kernel",
        [](const Array& features, const std::string& metric, double sigma, int knn) {
          KernelMetric km;
          km.type = ParseKernelMetric(metric);
          km.sigma = sigma;
          Kernel k = ComputeKernel(ToFeatures(features), km);
          if (knn > 0) k = SparsifyKnn(k, knn);
          return ToArray(k.ToDense(), k.size(), k.size());
        },
        py::arg("features"), py::arg("metric") = "cosine", py::arg("sigma") = 1.0,
        py::arg("knn") = 0);

  m.def("compute_distances",
        [](const Array& features, const std::string& metric) {
          DistanceMatrix d = ComputeDistances(ToFeatures(features),
                                              ParseDistanceMetric(metric));
          return ToArray(d.values(), d.size(), d.size());
        },
        py::arg("features"), py::arg("metric") = "euclidean");

  m.def("evaluate",
        [](const std::string& model, const std::vector<int>& selection,
           std::optional<Array> features, std::optional<Array> kernel,
           std::optional<std::vector<std::vector<int>>> concepts,
           std::optional<Array> probabilities,
           std::optional<std::vector<double>> weights,
           std::optional<std::vector<double>> scores, const py::dict& params) {
          BuiltModel b = BuildModel(Config(model, params),
                                    Inputs(features, kernel, concepts, probabilities,
                                           weights, scores));
          return b.objective->Evaluate(selection);
        },
        py::arg("model"), py::arg("selection"), py::kw_only(),
        py::arg("features") = py::none(), py::arg("kernel") = py::none(),
        py::arg("concepts") = py::none(), py::arg("probabilities") = py::none(),
        py::arg("weights") = py::none(), py::arg("scores") = py::none(),
        py::arg("params") = py::dict());

  m.def("_select_json",
        [](const std::string& model, const std::string& algorithm, int k, double budget,
           double rho, double tau, std::optional<uint64_t> seed,
           std::optional<std::vector<double>> costs, std::optional<Array> features,
           std::optional<Array> kernel,
           std::optional<std::vector<std::vector<int>>> concepts,
           std::optional<Array> probabilities,
           std::optional<std::vector<double>> weights,
           std::optional<std::vector<double>> scores, const py::dict& params) {
          RunOptions o;
          o.model = Config(model, params);
          o.constraint.algorithm = ParseAlgorithm(algorithm);
          o.constraint.k = k;
          o.constraint.budget = budget;
          o.constraint.rho = rho;
          o.constraint.tau = tau;
          o.constraint.seed = seed;
          ModelInputs in =
              Inputs(features, kernel, concepts, probabilities, weights, scores);
          std::vector<double> c = costs ? *costs : std::vector<double>{};
          py::gil_scoped_release release;
          return ExtractiveSummarize(in, o, c).ToCanonicalString();
        },
        py::arg("model"), py::arg("algorithm"), py::arg("k"), py::arg("budget"),
        py::arg("rho"), py::arg("tau"), py::arg("seed"), py::arg("costs"),
        py::arg("features"), py::arg("kernel"), py::arg("concepts"),
        py::arg("probabilities"), py::arg("weights"), py::arg("scores"),
        py::arg("params"));

  m.def("representation_score",
        [](const std::vector<int>& selected, const std::vector<std::vector<int>>& scenes) {
          return RepresentationScore(selected, Segments(SegmentKind::kScene, scenes));
        },
        py::arg("selected"), py::arg("scenes"));
  m.def("coverage_score",
        [](const std::vector<int>& selected,
           const std::vector<std::vector<int>>& item_concepts) {
          ModelInputs in = Inputs({}, {}, item_concepts, {}, {}, {});
          return CoverageScore(selected, *in.concepts);
        },
        py::arg("selected"), py::arg("item_concepts"));
  m.def("outlier_score",
        [](const std::vector<int>& selected, const std::vector<std::vector<int>>& events) {
          return OutlierScore(selected, Segments(SegmentKind::kOutlierEvent, events));
        },
        py::arg("selected"), py::arg("events"));
  m.def("cluster_diversity_score",
        [](const std::vector<int>& selected, const std::vector<std::vector<int>>& clusters) {
          return ClusterDiversityScore(selected, Segments(SegmentKind::kCluster, clusters));
        },
        py::arg("selected"), py::arg("clusters"));
  m.def("f1_score",
        [](const std::vector<int>& selected, const std::vector<int>& truth, int total) {
          F1Result r = F1Score(selected, truth, total);
          return py::make_tuple(r.precision, r.recall, r.f1);
        },
        py::arg("selected"), py::arg("truth"), py::arg("total_frames"));

  m.def("bench",
        [](const std::string& model, int n, double fraction, uint64_t seed, int repeats) {
          BenchReport r;
          {
            py::gil_scoped_release release;
            r = BenchFunction(model, n, fraction, seed, repeats);
          }
          py::dict d;
          d["function"] = r.function;
          d["n"] = r.n;
          d["fraction"] = r.fraction;
          d["k"] = r.k;
          d["memoized_s"] = r.memoized_seconds;
          d["naive_s"] = r.naive_seconds;
          d["speedup"] = r.speedup;
          d["selections_equal"] = r.selections_equal;
          return d;
        },
        py::arg("model"), py::arg("n") = 2000, py::arg("fraction") = 0.05,
        py::arg("seed") = 0, py::arg("repeats") = 3);

  m.def("run_cli",
        [](std::vector<std::string> args) {
          args.insert(args.begin(), "datasumm");
          std::vector<const char*> argv;
          for (const auto& a : args) argv.push_back(a.c_str());
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
