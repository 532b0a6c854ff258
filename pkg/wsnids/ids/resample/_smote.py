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

"""SMOTE oversampling."""

from __future__ import annotations

from collections.abc import Mapping
import dataclasses

from absl import logging
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.data import _dataset
from wsnids.ids.data import _distribution
from wsnids.ids.neighbors import _index
from wsnids.ids.utils import _arrays
from wsnids.ids.utils import _rng


@dataclasses.dataclass(frozen=True, kw_only=True)
class SmoteParams:
  """SMOTE parameters.

  Attributes:
    k_neighbors: Number of same-class neighbors to interpolate towards.
      Clamped to `class size - 1` for small classes.
    targets: `code -> target count`. Classes not listed (or all of them when
      `None`) are grown to the majority count.
    seed: Root seed. Each class draws from its own stream.
  """

  k_neighbors: int = 5
  targets: Mapping[int, int] | None = None
  seed: int = 0

  def __post_init__(self):
    if self.k_neighbors < 1:
      raise ValueError(f'k_neighbors should be >= 1. Got {self.k_neighbors}.')

  def resolve_targets(
      self, dist: _distribution.ClassDistribution
  ) -> dict[int, int]:
    """Per-class target counts for the given distribution."""
    targets = {code: dist.majority_count for code in dist.counts}
    for code, target in (self.targets or {}).items():
      targets[int(code)] = int(target)
    for code, target in targets.items():
      if target < dist[code]:
        raise ValueError(
            f'Target {target} of class {code} is below its current count'
            f' {dist[code]}.'
        )
    return targets

  def to_dict(self) -> dict[str, object]:
    return {
        'k_neighbors': self.k_neighbors,
        'targets': None if self.targets is None else dict(self.targets),
        'seed': self.seed,
    }


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class SmoteResult:
  """Output of `smote`.

  Original rows come first, unchanged, followed by the synthetic rows grouped
  by class (ascending code).

  Attributes:
    features: Original then synthetic rows.
    labels: Their labels.
    synthetic_counts: `code -> number of synthetic rows`.
    base: For each synthetic row, the input row it was grown from.
    neighbor: For each synthetic row, the input row it interpolates towards.
    delta: For each synthetic row, the interpolation factor in `[0, 1]`.
  """

  features: Float['m d']
  labels: Int['m']
  synthetic_counts: dict[int, int]
  base: Int['s']
  neighbor: Int['s']
  delta: Float['s']

  def __iter__(self):
    # Allows `features, labels, counts = smote(...)`.
    return iter((self.features, self.labels, self.synthetic_counts))


def interpolate(
    base: Float['s d'], neighbor: Float['s d'], delta: Float['s']
) -> Float['s d']:
  """`base + delta * (neighbor - base)`, kept inside the closed segment."""
  delta = delta[:, None]
  out = base + delta * (neighbor - base)
  out = np.clip(out, np.minimum(base, neighbor), np.maximum(base, neighbor))
  return np.where(delta == 1.0, neighbor, out)


def smote(
    features: Float['n d'], labels: Int['n'], params: SmoteParams
) -> SmoteResult:
  """Grows classes to their target counts with synthetic interpolated rows.

  For a class to grow by `g` rows, its rows are shuffled (seeded) and visited
  cyclically. Each visit of a base row `x_i` draws one of its `k` nearest
  same-class rows `x_z` and `delta ~ U[0, 1)` and emits
  `x_i + delta * (x_z - x_i)`.

  Args:
    features: Input rows.
    labels: Input codes.
    params: SMOTE parameters.

  Returns:
    The oversampled rows, with the provenance of every synthetic row.

  Raises:
    DataError: If the dataset is empty or a class to grow has a single row.
  """
  features, labels = _arrays.as_features_and_labels(features, labels)
  if not len(labels):
    raise _dataset.DataError('Cannot oversample an empty dataset.')
  dist = _distribution.class_distribution(labels)
  targets = params.resolve_targets(dist)

  new_features = [features]
  new_labels = [labels]
  bases = []
  neighbors = []
  deltas = []
  synthetic_counts = {}
  for code in sorted(targets):
    grow = targets[code] - dist[code]
    synthetic_counts[code] = grow
    if grow == 0:
      continue
    rows = np.flatnonzero(labels == code)
    if len(rows) < 2:
      raise _dataset.DataError(
          f'Class {code} has {len(rows)} sample(s) and cannot be interpolated'
          f' to {targets[code]} rows.'
      )
    k = min(params.k_neighbors, len(rows) - 1)
    class_features = features[rows]
    index = _index.build_index(class_features)
    nn_ids, _ = _index.all_k_nearest(index, k)

    rng = _rng.rng_for(params.seed, 'smote', code)
    order = rng.permutation(len(rows))
    base = order[np.arange(grow) % len(rows)]
    neighbor = nn_ids[base, rng.integers(0, k, size=grow)]
    delta = rng.random(grow)

    new_features.append(
        interpolate(class_features[base], class_features[neighbor], delta)
    )
    new_labels.append(np.full(grow, code, dtype=np.int64))
    bases.append(rows[base])
    neighbors.append(rows[neighbor])
    deltas.append(delta)
    logging.info(
        'SMOTE class %d: %d -> %d rows (k=%d).', code, len(rows),
        targets[code], k,
    )

  def _concat(arrays, dtype):
    return np.concatenate(arrays) if arrays else np.zeros(0, dtype=dtype)

  return SmoteResult(
      features=np.concatenate(new_features),
      labels=np.concatenate(new_labels),
      synthetic_counts=synthetic_counts,
      base=_concat(bases, np.int64),
      neighbor=_concat(neighbors, np.int64),
      delta=_concat(deltas, np.float64),
  )
