# Copyright 2025 The wsnids Authors.
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

"""Gradient-boosted trees on one-vs-rest softmax logits.

Every round fits one regression tree per class on the gradient and hessian of
the softmax cross-entropy (`g = p - y`, `h = 2 p (1 - p)`), with leaf weights
`-G / (H + l2)` scaled by the learning rate. The two variants only differ in
their split finder:

* `xgb`: exact greedy enumeration, grown depth-wise.
* `lgb`: per-feature histograms, grown leaf-wise.
"""

from __future__ import annotations

import dataclasses

from absl import logging
import joblib
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from scipy import special
from wsnids.ids.models import _config
from wsnids.ids.models import _splits
from wsnids.ids.models import _tree

_MIN_PRIOR = 1e-15
_MIN_HESSIAN = 1e-16


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class Booster:
  """Fitted boosting model.

  Attributes:
    init: Initial logits (log class priors).
    trees: Trees in round-major, class-minor order.
    n_classes: Number of classes.
    loss_history: Training cross-entropy before the first round and after
      every round.
  """

  init: Float['k']
  trees: list[_tree.Tree]
  n_classes: int
  loss_history: Float['r']

  def logits(self, features: Float['m d']) -> Float['m k']:
    raw = np.tile(self.init, (len(features), 1))
    for i, tree in enumerate(self.trees):
      raw[:, i % self.n_classes] += tree.predict_value(features)[:, 0]
    return raw

  def scores(self, features: Float['m d']) -> Float['m k']:
    return special.softmax(self.logits(features), axis=1)


def cross_entropy(logits: Float['n k'], labels: Int['n']) -> float:
  log_p = special.log_softmax(logits, axis=1)
  return float(-np.mean(log_p[np.arange(len(labels)), labels]))


def fit_booster(
    features: Float['n d'],
    labels: Int['n'],
    n_classes: int,
    config: _config.BoostingConfig,
    *,
    histogram: bool,
    n_jobs: int = 1,
) -> Booster:
  """Fits the boosted trees.

  Args:
    features: Training rows.
    labels: Training codes.
    n_classes: Number of classes.
    config: Boosting config.
    histogram: Use histogram split finding (otherwise exact).
    n_jobs: Worker threads (the classes of a round are fit in parallel).

  Returns:
    The `Booster`.
  """
  n = len(labels)
  prior = np.bincount(labels, minlength=n_classes) / n
  init = np.log(np.clip(prior, _MIN_PRIOR, None))
  raw = np.tile(init, (n, 1))
  one_hot = np.eye(n_classes)[labels]

  if histogram:
    splitter = _splits.HistogramSplitter(features, config.n_bins)
  else:
    splitter = _splits.ExactSplitter(features)
  root = splitter.root(np.ones(n, dtype=bool))
  criterion = _splits.Newton(
      l2=config.l2, min_child_weight=config.min_child_weight
  )
  limits = _splits.GrowthLimits(
      max_depth=config.max_depth,
      max_leaves=config.max_leaves,
      min_samples_split=config.min_samples_split,
      min_samples_leaf=config.min_samples_leaf,
      leafwise=config.leafwise,
  )

  def fit_class(prob: Float['n k'], k: int) -> tuple[_tree.Tree, Float['n']]:
    p = prob[:, k]
    grad = p - one_hot[:, k]
    hess = np.maximum(2.0 * p * (1.0 - p), _MIN_HESSIAN)
    tree = _splits.grow_tree(
        splitter, root, np.stack([grad, hess], axis=1), criterion, limits
    )
    tree = tree.replace(value=tree.value * config.learning_rate)
    return tree, tree.value[tree.apply(features), 0]

  trees = []
  losses = [cross_entropy(raw, labels)]
  with joblib.Parallel(n_jobs=n_jobs, prefer='threads') as parallel:
    for _ in range(config.n_rounds):
      prob = special.softmax(raw, axis=1)
      fitted = parallel(
          joblib.delayed(fit_class)(prob, k) for k in range(n_classes)
      )
      for k, (tree, update) in enumerate(fitted):
        trees.append(tree)
        raw[:, k] += update
      losses.append(cross_entropy(raw, labels))

  logging.info(
      '%s boosting: %d rounds, %d trees, train loss %.5f -> %.5f.',
      'Histogram' if histogram else 'Exact',
      config.n_rounds,
      len(trees),
      losses[0],
      losses[-1],
  )
  return Booster(
      init=init,
      trees=trees,
      n_classes=n_classes,
      loss_history=np.asarray(losses),
  )
