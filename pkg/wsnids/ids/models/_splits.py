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

"""Split finding and tree growing, shared by CART and boosting.

A tree is grown from per-row statistics `stats` of shape `(n, s)`:

* CART: `stats[i] = weight_i * one_hot(label_i)`, the Gini criterion.
* Boosting: `stats[i] = (gradient_i, hessian_i)`, the Newton criterion.

Both criteria score a node from its summed statistics, and the gain of a split
is `score(left) + score(right) - score(parent)`.

Two split finders enumerate the candidate thresholds:

* `ExactSplitter`: every midpoint between consecutive distinct values. Rows
  are sorted once per fit and children inherit their parent's sorted order.
* `HistogramSplitter`: the edges of per-feature bins computed once per fit.
"""

from __future__ import annotations

from collections.abc import Callable
import dataclasses
import heapq
from typing import Any, Protocol

from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.models import _tree


class Criterion(Protocol):
  """Scores nodes from their summed statistics."""

  def score(self, sums: Float['*b s']) -> Float['*b']:
    ...

  def leaf_value(self, sums: Float['s']) -> Float['v']:
    ...

  def is_pure(self, sums: Float['s']) -> bool:
    ...

  def children_ok(
      self, left: Float['*b s'], right: Float['*b s']
  ) -> np.ndarray:
    ...

  def accepts(self, gain: float) -> bool:
    ...


@dataclasses.dataclass(frozen=True)
class Gini:
  """Weighted Gini impurity.

  `score(counts) = sum(counts**2) / sum(counts)`, so that the gain is the
  decrease of the weighted impurity times the total weight. Impure nodes are
  split even when the best gain is 0.
  """

  def score(self, sums):
    total = sums.sum(axis=-1)
    squares = np.square(sums).sum(axis=-1)
    return np.divide(
        squares, total, out=np.zeros_like(total), where=total > 0
    )

  def leaf_value(self, sums):
    return np.asarray(sums, dtype=np.float64)

  def is_pure(self, sums):
    return np.count_nonzero(sums) <= 1

  def children_ok(self, left, right):
    return np.ones(left.shape[:-1], dtype=bool)

  def accepts(self, gain):
    return True


@dataclasses.dataclass(frozen=True)
class Newton:
  """Second-order boosting objective.

  `score(G, H) = G**2 / (H + l2)`; the leaf weight is `-G / (H + l2)`.

  Attributes:
    l2: L2 regularization.
    min_child_weight: Minimum hessian sum of each child.
  """

  l2: float = 1.0
  min_child_weight: float = 1.0

  def score(self, sums):
    g = sums[..., 0]
    h = sums[..., 1]
    denom = h + self.l2
    return np.divide(
        np.square(g), denom, out=np.zeros_like(g), where=denom > 0
    )

  def leaf_value(self, sums):
    denom = sums[1] + self.l2
    return np.asarray([-sums[0] / denom if denom > 0 else 0.0])

  def is_pure(self, sums):
    return False

  def children_ok(self, left, right):
    return (left[..., 1] >= self.min_child_weight) & (
        right[..., 1] >= self.min_child_weight
    )

  def accepts(self, gain):
    return gain > 0


@dataclasses.dataclass(frozen=True)
class Split:
  feature: int
  threshold: float
  gain: float


class ExactSplitter:
  """Enumerates the midpoints between consecutive distinct values.

  A node is the `(m, d)` matrix of its row ids, sorted by each feature.
  """

  def __init__(self, features: Float['n d']):
    self.features = features
    # Stable sort: equal values keep the row order.
    self._order = np.argsort(features, axis=0, kind='stable')

  def root(self, rows_mask: np.ndarray) -> Int['m d']:
    if rows_mask.all():
      return self._order
    keep = rows_mask[self._order]
    d = self.features.shape[1]
    return self._order.T[keep.T].reshape(d, -1).T

  def rows(self, node: Int['m d']) -> Int['m']:
    return node[:, 0]

  def best_split(
      self,
      node: Int['m d'],
      stats: Float['n s'],
      weights: Float['n'],
      criterion: Criterion,
      candidates: Int['c'],
      min_samples_leaf: float,
  ) -> Split | None:
    parent = stats[node[:, 0]].sum(axis=0)
    parent_score = criterion.score(parent)
    total_weight = weights[node[:, 0]].sum()
    best = None
    for f in candidates:
      idx = node[:, f]
      values = self.features[idx, f]
      distinct = values[:-1] < values[1:]
      if not distinct.any():
        continue
      positions = np.flatnonzero(distinct)
      left = np.cumsum(stats[idx], axis=0)[positions]
      right = parent - left
      left_weight = np.cumsum(weights[idx])[positions]
      ok = (
          criterion.children_ok(left, right)
          & (left_weight >= min_samples_leaf)
          & (total_weight - left_weight >= min_samples_leaf)
      )
      if not ok.any():
        continue
      gain = criterion.score(left) + criterion.score(right) - parent_score
      gain = np.where(ok, gain, -np.inf)
      i = int(np.argmax(gain))
      if best is None or gain[i] > best.gain:
        pos = positions[i]
        best = Split(
            feature=int(f),
            threshold=_midpoint(values[pos], values[pos + 1]),
            gain=float(gain[i]),
        )
    return best

  def partition(
      self, node: Int['m d'], split: Split
  ) -> tuple[Int['l d'], Int['r d']]:
    goes_left = np.zeros(len(self.features), dtype=bool)
    rows = node[:, 0]
    goes_left[rows] = self.features[rows, split.feature] <= split.threshold
    mask = goes_left[node]
    d = node.shape[1]
    n_left = int(mask[:, 0].sum())
    left = node.T[mask.T].reshape(d, n_left).T
    right = node.T[~mask.T].reshape(d, len(node) - n_left).T
    return left, right


def bin_edges(column: Float['n'], n_bins: int) -> Float['e']:
  """Upper edges of the bins of one feature.

  Midpoints between distinct values when there are at most `n_bins` of them,
  quantiles of the column otherwise.

  Args:
    column: Training values of the feature.
    n_bins: Maximum number of bins.

  Returns:
    Sorted edges. Bin `b` holds the values in `(edges[b-1], edges[b]]`.
  """
  distinct = np.unique(column)
  if len(distinct) <= n_bins:
    return np.asarray(
        [_midpoint(a, b) for a, b in zip(distinct[:-1], distinct[1:])],
        dtype=np.float64,
    )
  quantiles = np.linspace(0.0, 1.0, n_bins + 1)[1:-1]
  edges = np.unique(np.quantile(column, quantiles))
  return edges[edges < distinct[-1]]


class HistogramSplitter:
  """Enumerates the bin edges of each feature.

  A node is the vector of its row ids.
  """

  def __init__(self, features: Float['n d'], n_bins: int):
    self.features = features
    self.edges = [
        bin_edges(features[:, f], n_bins) for f in range(features.shape[1])
    ]
    self.n_bins = np.asarray([len(e) + 1 for e in self.edges])
    self._width = int(self.n_bins.max())
    self._codes = np.stack(
        [
            np.searchsorted(e, features[:, f], side='left')
            for f, e in enumerate(self.edges)
        ],
        axis=1,
    ).astype(np.int64)
    self._offsets = np.arange(features.shape[1]) * self._width

  def root(self, rows_mask: np.ndarray) -> Int['m']:
    return np.flatnonzero(rows_mask)

  def rows(self, node: Int['m']) -> Int['m']:
    return node

  def histogram(
      self, node: Int['m'], values: Float['n s']
  ) -> Float['d b s']:
    """Per-feature, per-bin sums of `values` over the rows of `node`."""
    d = len(self.edges)
    flat = (self._codes[node] + self._offsets).ravel()
    size = d * self._width
    cols = [
        np.bincount(
            flat, weights=np.repeat(values[node, j], d), minlength=size
        )
        for j in range(values.shape[1])
    ]
    return np.stack(cols, axis=-1).reshape(d, self._width, -1)

  def best_split(
      self,
      node: Int['m'],
      stats: Float['n s'],
      weights: Float['n'],
      criterion: Criterion,
      candidates: Int['c'],
      min_samples_leaf: float,
  ) -> Split | None:
    hist = self.histogram(node, np.concatenate([stats, weights[:, None]], 1))
    hist = hist[candidates]
    cum = np.cumsum(hist, axis=1)
    parent = cum[0, -1]
    left, right = cum[..., :-1], parent[None, None, :-1] - cum[..., :-1]
    left_weight = cum[..., -1]
    right_weight = parent[-1] - left_weight
    bins = np.arange(self._width)[None, :]
    ok = (
        (bins < (self.n_bins[candidates] - 1)[:, None])
        & (left_weight > 0)
        & (right_weight > 0)
        & (left_weight >= min_samples_leaf)
        & (right_weight >= min_samples_leaf)
        & criterion.children_ok(left, right)
    )
    if not ok.any():
      return None
    gain = (
        criterion.score(left)
        + criterion.score(right)
        - criterion.score(parent[:-1])
    )
    gain = np.where(ok, gain, -np.inf)
    c, b = np.unravel_index(int(np.argmax(gain)), gain.shape)
    f = int(candidates[c])
    return Split(
        feature=f, threshold=float(self.edges[f][b]), gain=float(gain[c, b])
    )

  def partition(
      self, node: Int['m'], split: Split
  ) -> tuple[Int['l'], Int['r']]:
    goes_left = self.features[node, split.feature] <= split.threshold
    return node[goes_left], node[~goes_left]


@dataclasses.dataclass(frozen=True, kw_only=True)
class GrowthLimits:
  """When to stop splitting.

  Attributes:
    max_depth: Maximum depth (`None` for unlimited).
    max_leaves: Maximum number of leaves (`None` for unlimited).
    min_samples_split: Nodes with less (weighted) rows are not split.
    min_samples_leaf: Minimum (weighted) rows in each child.
    leafwise: Split the leaf with the largest gain first. Otherwise nodes are
      split level by level.
  """

  max_depth: int | None = None
  max_leaves: int | None = None
  min_samples_split: float = 2
  min_samples_leaf: float = 1
  leafwise: bool = False


def grow_tree(
    splitter: ExactSplitter | HistogramSplitter,
    root: Any,
    stats: Float['n s'],
    criterion: Criterion,
    limits: GrowthLimits,
    *,
    weights: Float['n'] | None = None,
    sample_features: Callable[[], Int['c']] | None = None,
) -> _tree.Tree:
  """Grows one tree greedily.

  Args:
    splitter: Split finder built on the training rows.
    root: Root node, from `splitter.root()`.
    stats: Per-row statistics of the criterion.
    criterion: Node scores.
    limits: Stopping rules.
    weights: Per-row weights for the size rules (default 1).
    sample_features: Returns the candidate features of the next node
      (default: all of them, ascending). When none of the sampled features can
      split the node, the remaining ones are tried.

  Returns:
    The tree. Node ids follow creation order.
  """
  n_features = splitter.features.shape[1]
  all_features = np.arange(n_features)
  if weights is None:
    weights = np.ones(len(stats))

  feature, threshold, left, right, value, gain = [], [], [], [], [], []
  frontier = []

  def add_node(node, depth: int) -> int:
    rows = splitter.rows(node)
    sums = stats[rows].sum(axis=0)
    node_id = len(feature)
    feature.append(_tree.LEAF)
    threshold.append(0.0)
    left.append(_tree.LEAF)
    right.append(_tree.LEAF)
    value.append(criterion.leaf_value(sums))
    gain.append(0.0)
    if limits.max_depth is not None and depth >= limits.max_depth:
      return node_id
    if weights[rows].sum() < limits.min_samples_split or criterion.is_pure(
        sums
    ):
      return node_id
    split = find_split(node)
    if split is None or not criterion.accepts(split.gain):
      return node_id
    key = (-split.gain, node_id) if limits.leafwise else (depth, node_id)
    heapq.heappush(frontier, (key, node_id, depth, split, node))
    return node_id

  def find_split(node):
    candidates = all_features if sample_features is None else sample_features()
    split = splitter.best_split(
        node, stats, weights, criterion, candidates, limits.min_samples_leaf
    )
    if split is None and len(candidates) < n_features:
      rest = np.setdiff1d(all_features, candidates)
      split = splitter.best_split(
          node, stats, weights, criterion, rest, limits.min_samples_leaf
      )
    return split

  add_node(root, 0)
  n_leaves = 1
  while frontier:
    if limits.max_leaves is not None and n_leaves >= limits.max_leaves:
      break
    _, node_id, depth, split, node = heapq.heappop(frontier)
    left_node, right_node = splitter.partition(node, split)
    feature[node_id] = split.feature
    threshold[node_id] = split.threshold
    gain[node_id] = split.gain
    left[node_id] = add_node(left_node, depth + 1)
    right[node_id] = add_node(right_node, depth + 1)
    n_leaves += 1

  return _tree.Tree(
      feature=np.asarray(feature, dtype=np.int64),
      threshold=np.asarray(threshold, dtype=np.float64),
      left=np.asarray(left, dtype=np.int64),
      right=np.asarray(right, dtype=np.int64),
      value=np.stack(value).astype(np.float64),
      gain=np.asarray(gain, dtype=np.float64),
  )


def _midpoint(a: float, b: float) -> float:
  """`(a + b) / 2`, kept strictly below `b` (`a < b`)."""
  mid = a + (b - a) / 2
  return float(mid if mid < b else a)
