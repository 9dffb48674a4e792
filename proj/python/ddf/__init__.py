# Copyright 2026 The ddf Authors
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

"""Learned linear filters that preserve one binary task and suppress another."""

import numpy as _np

from ._ddf import *  # noqa: F401,F403
from ._ddf import apply_filter as _apply_filter_matrix

__version__ = "0.1.0"


def apply_filter(filter, x):
    """Filter a single sample (1-D) or every column of a d x N matrix."""
    x = _np.asarray(x, dtype=float)
    if x.ndim == 1:
        return _apply_filter_matrix(filter, x.reshape(-1, 1))[:, 0]
    return _apply_filter_matrix(filter, x)


def learn_filter(dataset, spec="conv:5", preserve=Task.A, beta=0.5, alpha=0.1,
                 optimizer="gd", iters=None, evals=None, seed=0):
    """Random initial filter plus minimize(), with the command line defaults."""
    cfg = ObjectiveConfig()
    cfg.alpha = alpha
    cfg.beta = beta
    cfg.preserve = preserve
    cfg.seed = seed
    big = 2**31 - 1
    if optimizer == "gd":
        cfg.optimizer = Optimizer.GradientDescent
        cfg.max_iters = 50 if iters is None else iters
        cfg.max_evals = big if evals is None else evals
    elif optimizer == "cg":
        cfg.optimizer = Optimizer.ConjugateGradient
        cfg.max_iters = big if iters is None else iters
        cfg.max_evals = 100 if evals is None else evals
    else:
        raise ValueError("optimizer must be 'gd' or 'cg'")
    theta0 = init_filter(spec, dataset.dim, seed)
    return minimize(dataset, theta0, cfg)
