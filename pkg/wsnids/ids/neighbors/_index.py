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

"""Exact Euclidean k-nearest-neighbor search.

Small indexes are scanned block by block. Large ones use a KD-tree to
collect candidates, whose distances are then recomputed exactly. In both
cases the returned distances come from `euclidean()` and ties are broken by
ascending row id, so both paths return the same neighbors.
"""

from __future__ import annotations

import dataclasses
import functools

from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from scipy import spatial
from wsnids.ids.utils import _arrays

# Below this size, queries are answered by a blocked brute-force scan.
BRUTE_FORCE_MAX_ROWS = 4096

# Number of `query x reference` distances computed at once by the scan.
_BLOCK_ELEMENTS = 1 << 22

# Relative slack on the KD-tree radius, to absorb its own rounding.
_RADIUS_SLACK = 1e-9


def euclidean(a: Float['*b d'], b: Float['*b d']) -> Float['*b']:
  """Euclidean distance along the last axis."""
  diff = a - b
  return np.sqrt(np.sum(diff * diff, axis=-1))


@dataclasses.dataclass(frozen=True, eq=False)
class NeighborIndex:
  """Immutable index over the rows of a feature matrix.

  Attributes:
    features: The indexed rows (read-only).
    brute_force_max_rows: Size up to which queries scan all rows instead of
      using a KD-tree.
  """

  features: Float['n d']
  brute_force_max_rows: int = BRUTE_FORCE_MAX_ROWS

  def __post_init__(self):
    features = _arrays.as_features(self.features)
    if features.shape[0] == 0:
      raise ValueError('Cannot build a neighbor index over an empty matrix.')
    object.__setattr__(self, 'features', _arrays.readonly(features))

  @property
  def size(self) -> int:
    return self.features.shape[0]

  @property
  def n_features(self) -> int:
    return self.features.shape[1]

  @property
  def uses_tree(self) -> bool:
    return self.size > self.brute_force_max_rows

  @functools.cached_property
  def _tree(self) -> spatial.cKDTree:
    return spatial.cKDTree(self.features)


def build_index(
    features: Float['n d'], *, brute_force_max_rows: int = BRUTE_FORCE_MAX_ROWS
) -> NeighborIndex:
  """Indexes the rows of `features`."""
  return NeighborIndex(
      features=features, brute_force_max_rows=brute_force_max_rows
  )


def k_nearest(
    index: NeighborIndex,
    query: int | Float['d'],
    k: int,
    *,
    exclude_self: bool = False,
) -> list[tuple[int, float]]:
  """Returns the `k` nearest rows of a single query.

  Args:
    index: The index to search.
    query: A row id of the index, or an external point.
    k: Number of neighbors.
    exclude_self: When `query` is a row id, omit that row from the results.

  Returns:
    `(row id, distance)` pairs sorted by distance, then row id.
  """
  if isinstance(query, (int, np.integer)):
    ids, dists = k_nearest_rows(index, [query], k, exclude_self=exclude_self)
  else:
    if exclude_self:
      raise ValueError('`exclude_self` requires querying by row id.')
    ids, dists = k_nearest_points(index, np.asarray(query)[None, :], k)
  return [(int(i), float(d)) for i, d in zip(ids[0], dists[0])]


def k_nearest_rows(
    index: NeighborIndex,
    rows: Int['q'],
    k: int,
    *,
    exclude_self: bool = False,
    n_jobs: int = 1,
) -> tuple[Int['q k'], Float['q k']]:
  """Batch `k_nearest` for rows of the index."""
  rows = np.asarray(rows, dtype=np.int64).reshape(-1)
  if rows.size and (rows.min() < 0 or rows.max() >= index.size):
    raise IndexError(f'Row ids should be in [0, {index.size}).')
  return _search(
      index,
      index.features[rows],
      k,
      self_rows=rows if exclude_self else None,
      n_jobs=n_jobs,
  )


def k_nearest_points(
    index: NeighborIndex,
    points: Float['q d'],
    k: int,
    *,
    n_jobs: int = 1,
) -> tuple[Int['q k'], Float['q k']]:
  """Batch `k_nearest` for external points."""
  points = _arrays.as_features(points, name='points')
  if points.shape[1] != index.n_features:
    raise ValueError(
        f'Index has {index.n_features} features, queries have'
        f' {points.shape[1]}.'
    )
  return _search(index, points, k, self_rows=None, n_jobs=n_jobs)


def all_k_nearest(
    index: NeighborIndex, k: int, *, n_jobs: int = 1
) -> tuple[Int['n k'], Float['n k']]:
  """`k` nearest other rows, for every row of the index."""
  return k_nearest_rows(
      index, np.arange(index.size), k, exclude_self=True, n_jobs=n_jobs
  )


def _search(
    index: NeighborIndex,
    points: Float['q d'],
    k: int,
    *,
    self_rows: Int['q'] | None,
    n_jobs: int,
) -> tuple[Int['q k'], Float['q k']]:
  """Dispatches to the brute-force scan or the KD-tree search."""
  available = index.size - (self_rows is not None)
  if k < 1:
    raise ValueError(f'k should be positive. Got {k}.')
  if k > available:
    raise ValueError(
        f'Requested k={k} neighbors but only {available} candidates exist.'
    )
  if not len(points):
    return (
        np.zeros((0, k), dtype=np.int64),
        np.zeros((0, k), dtype=np.float64),
    )
  if index.uses_tree:
    return _tree_search(index, points, k, self_rows=self_rows, n_jobs=n_jobs)
  return _scan(index, points, k, self_rows=self_rows)


def _scan(
    index: NeighborIndex,
    points: Float['q d'],
    k: int,
    *,
    self_rows: Int['q'] | None,
) -> tuple[Int['q k'], Float['q k']]:
  """Blocked brute force over all rows."""
  n = index.size
  block = max(1, _BLOCK_ELEMENTS // (n * max(index.n_features, 1)))
  ids = np.empty((len(points), k), dtype=np.int64)
  dists = np.empty((len(points), k), dtype=np.float64)
  row_ids = np.arange(n)
  for start in range(0, len(points), block):
    stop = min(start + block, len(points))
    d = euclidean(points[start:stop, None, :], index.features[None, :, :])
    if self_rows is not None:
      d[np.arange(stop - start), self_rows[start:stop]] = np.inf
    for q in range(stop - start):
      # Sort by (distance, row id).
      order = np.lexsort((row_ids, d[q]))[:k]
      ids[start + q] = order
      dists[start + q] = d[q, order]
  return ids, dists


def _tree_search(
    index: NeighborIndex,
    points: Float['q d'],
    k: int,
    *,
    self_rows: Int['q'] | None,
    n_jobs: int,
) -> tuple[Int['q k'], Float['q k']]:
  """KD-tree candidates, then exact distances and the row id tie-break."""
  tree = index._tree  # pylint: disable=protected-access
  workers = -1 if n_jobs < 0 else max(n_jobs, 1)
  k_tree = k + (self_rows is not None)
  tree_dists, _ = tree.query(points, k=k_tree, workers=workers)
  tree_dists = np.asarray(tree_dists).reshape(len(points), k_tree)
  # Every row at least as close as the k-th tree neighbor, ties included.
  radius = tree_dists[:, -1] * (1 + _RADIUS_SLACK) + _RADIUS_SLACK
  candidates = tree.query_ball_point(points, r=radius, workers=workers)

  ids = np.empty((len(points), k), dtype=np.int64)
  dists = np.empty((len(points), k), dtype=np.float64)
  for q, cands in enumerate(candidates):
    cands = np.asarray(cands, dtype=np.int64)
    if self_rows is not None:
      cands = cands[cands != self_rows[q]]
    d = euclidean(points[q][None, :], index.features[cands])
    order = np.lexsort((cands, d))[:k]
    ids[q] = cands[order]
    dists[q] = d[order]
  return ids, dists
