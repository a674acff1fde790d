# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Submodular data subset selection and summarization."""

import json
import sys

from ._datasumm import (
    DatasummError,
    __version__,
    bench,
    cluster_diversity_score,
    compute_distances,
    compute_kernel,
    coverage_score,
    describe_model,
    evaluate,
    f1_score,
    model_names,
    outlier_score,
    representation_score,
    run_cli,
)
from . import _datasumm


def select(model, *, k=0, algorithm="lazy", budget=0.0, rho=1.0, tau=0.0,
           seed=None, costs=None, features=None, kernel=None, concepts=None,
           probabilities=None, weights=None, scores=None, **params):
    """Solve one selection problem and return the manifest as a dict.

    Inputs mirror the CLI: `features` is an items x dims array, `kernel` a
    precomputed similarity matrix, `concepts` per-item lists of concept
    indices, `probabilities` an items x concepts array and `scores` one
    relevance value per item. Extra keyword arguments are model parameters
    (alpha, lambda_, theta, psi, knn, metric, sigma).
    """
    text = _datasumm._select_json(model, algorithm, k, budget, rho, tau, seed,
                                  costs, features, kernel, concepts,
                                  probabilities, weights, scores, params)
    return json.loads(text)


def main():
    code, out, err = run_cli(sys.argv[1:])
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


__all__ = [
    "DatasummError", "__version__", "bench", "cluster_diversity_score",
    "compute_distances", "compute_kernel", "coverage_score", "describe_model",
    "evaluate", "f1_score", "main", "model_names", "outlier_score",
    "representation_score", "run_cli", "select",
]
