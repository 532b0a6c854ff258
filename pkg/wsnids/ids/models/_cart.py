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

"""CART decision tree and random forest."""

from __future__ import annotations

from absl import logging
import joblib
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.models import _config
from wsnids.ids.models import _splits
from wsnids.ids.models import _tree
from wsnids.ids.utils import _rng


def _limits(config: _config.TreeConfig) -> _splits.GrowthLimits:
  return _splits.GrowthLimits(
      max_depth=config.max_depth,
      min_samples_split=config.min_samples_split,
      min_samples_leaf=config.min_samples_leaf,
  )


def fit_cart_tree(
    splitter: _splits.ExactSplitter,
    labels: Int['n'],
    n_classes: int,
    config: _config.TreeConfig,
    *,
    weights: Float['n'] | None = None,
    rng: np.random.Generator | None = None,
    n_candidates: int | None = None,
) -> _tree.Tree:
  """Grows one Gini tree.

  Args:
    splitter: Exact split finder on the training rows.
    labels: Training codes.
    n_classes: Number of classes (width of the leaf counts).
    config: Tree config.
    weights: Row multiplicities (bootstrap). Rows with weight 0 are left out.
    rng: Draws the candidate features of each node, when `n_candidates` is
      below the number of features.
    n_candidates: Candidate features per node (default: all).

  Returns:
    The tree. Leaf values are the (weighted) class counts.
  """
  n_features = splitter.features.shape[1]
  if weights is None:
    weights = np.ones(len(labels))
  stats = np.zeros((len(labels), n_classes))
  stats[np.arange(len(labels)), labels] = weights

  sample_features = None
  if n_candidates is not None and n_candidates < n_features:
    if rng is None:
      raise ValueError('Feature sampling needs an `rng`.')

    def sample_features():
      return np.sort(rng.choice(n_features, size=n_candidates, replace=False))

  return _splits.grow_tree(
      splitter,
      splitter.root(weights > 0),
      stats,
      _splits.Gini(),
      _limits(config),
      weights=weights,
      sample_features=sample_features,
  )


def fit_decision_tree(
    features: Float['n d'],
    labels: Int['n'],
    n_classes: int,
    config: _config.TreeConfig,
) -> list[_tree.Tree]:
  tree = fit_cart_tree(
      _splits.ExactSplitter(features), labels, n_classes, config
  )
  logging.info(
      'DT: %d nodes, %d leaves, depth %d.',
      tree.n_nodes,
      tree.n_leaves,
      tree.depth,
  )
  return [tree]


def fit_forest(
    features: Float['n d'],
    labels: Int['n'],
    n_classes: int,
    config: _config.ForestConfig,
    *,
    seed: int,
    n_jobs: int = 1,
) -> list[_tree.Tree]:
  """Fits `config.n_trees` CART trees on bootstrap samples.

  Tree `t` draws its bootstrap sample and its candidate features from the
  stream `(seed, 'rf', t)`, so the forest does not depend on `n_jobs`.

  Args:
    features: Training rows.
    labels: Training codes.
    n_classes: Number of classes.
    config: Forest config.
    seed: Root seed.
    n_jobs: Worker threads.

  Returns:
    The trees.
  """
  splitter = _splits.ExactSplitter(features)
  n = len(labels)
  n_candidates = config.n_candidate_features(features.shape[1])

  def fit_one(t: int) -> _tree.Tree:
    rng = _rng.rng_for(seed, 'rf', t)
    if config.bootstrap:
      weights = np.bincount(rng.integers(0, n, size=n), minlength=n)
      weights = weights.astype(np.float64)
    else:
      weights = None
    return fit_cart_tree(
        splitter,
        labels,
        n_classes,
        config.tree,
        weights=weights,
        rng=rng,
        n_candidates=n_candidates,
    )

  trees = joblib.Parallel(n_jobs=n_jobs, prefer='threads')(
      joblib.delayed(fit_one)(t) for t in range(config.n_trees)
  )
  logging.info(
      'RF: %d trees, %d features per split, mean depth %.1f.',
      len(trees),
      n_candidates,
      np.mean([t.depth for t in trees]),
  )
  return list(trees)


def leaf_frequencies(
    tree: _tree.Tree, features: Float['m d']
) -> Float['m k']:
  """Class frequencies of the leaf reached by every row."""
  counts = tree.predict_value(features)
  return counts / counts.sum(axis=1, keepdims=True)


def forest_scores(
    trees: list[_tree.Tree],
    features: Float['m d'],
    voting: _config.Voting = _config.Voting.SOFT,
) -> Float['m k']:
  """Combines the trees: mean leaf frequencies, or vote fractions."""
  total = None
  for tree in trees:
    freq = leaf_frequencies(tree, features)
    if voting == _config.Voting.HARD:
      freq = np.eye(freq.shape[1])[np.argmax(freq, axis=1)]
    total = freq if total is None else total + freq
  return total / len(trees)


def feature_importances(
    trees: list[_tree.Tree], n_features: int
) -> Float['d']:
  """Gini importance: impurity decrease per feature, averaged over trees."""
  out = np.zeros(n_features)
  for tree in trees:
    per_tree = np.zeros(n_features)
    splits = tree.feature != _tree.LEAF
    np.add.at(
        per_tree, tree.feature[splits], np.maximum(tree.gain[splits], 0.0)
    )
    if per_tree.sum() > 0:
      out += per_tree / per_tree.sum()
  total = out.sum()
  return out / total if total > 0 else out
