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

"""Tomek-link detection and removal."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import dataclasses
import enum

from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.data import _distribution
from wsnids.ids.neighbors import _index
from wsnids.ids.utils import _arrays


class RemovalPolicy(enum.StrEnum):
  """Which endpoints of a Tomek link are removed.

  * `BOTH`: Both rows.
  * `MAJORITY_ONLY`: Only the row of the larger class.
  """

  BOTH = 'both'
  MAJORITY_ONLY = 'majority_only'


@dataclasses.dataclass(frozen=True, order=True)
class TomekPair:
  """Mutual nearest neighbors with different labels (`i < j`)."""

  i: int
  j: int


def tomek_link_array(
    features: Float['n d'], labels: Int['n'], *, n_jobs: int = 1
) -> Int['p 2']:
  """Array version of `tomek_links`, sorted by `i`."""
  features, labels = _arrays.as_features_and_labels(features, labels)
  if len(labels) < 2:
    return np.zeros((0, 2), dtype=np.int64)
  index = _index.build_index(features)
  nn_ids, _ = _index.all_k_nearest(index, 1, n_jobs=n_jobs)
  nearest = nn_ids[:, 0]
  rows = np.arange(len(labels))
  linked = (
      (nearest[nearest] == rows)
      & (labels != labels[nearest])
      & (rows < nearest)
  )
  return np.stack([rows[linked], nearest[linked]], axis=1)


def tomek_links(
    features: Float['n d'], labels: Int['n'], *, n_jobs: int = 1
) -> list[TomekPair]:
  """Finds the Tomek links of the dataset, in a single pass.

  A link is a pair of rows with different labels that are each other's exact
  nearest neighbor (ties broken by the lowest row id). Any two classes can be
  linked.

  Args:
    features: Input rows.
    labels: Input codes.
    n_jobs: Workers used by the neighbor search.

  Returns:
    The links, each listed once with `i < j`, sorted.
  """
  pairs = tomek_link_array(features, labels, n_jobs=n_jobs)
  return [TomekPair(int(i), int(j)) for i, j in pairs]


def remove_tomek(
    features: Float['n d'],
    labels: Int['n'],
    pairs: Sequence[TomekPair] | Int['p 2'],
    policy: RemovalPolicy | str = RemovalPolicy.BOTH,
    *,
    class_counts: Mapping[int, int] | None = None,
) -> tuple[Float['m d'], Int['m'], dict[int, int]]:
  """Removes Tomek-link endpoints.

  Args:
    features: Input rows.
    labels: Input codes.
    pairs: Links found on these rows.
    policy: `both` removes the two endpoints; `majority_only` removes the
      endpoint of the larger class (lowest code when both classes have the
      same count).
    class_counts: Counts deciding the larger class. Defaults to the counts of
      `labels`. `smote_tomek` passes the counts from before oversampling,
      when all classes are the same size.

  Returns:
    The surviving rows (relative order kept), their labels and
    `code -> number of removed rows` for every class of `labels`.
  """
  features, labels = _arrays.as_features_and_labels(features, labels)
  policy = RemovalPolicy(policy)
  pairs = _as_pair_array(pairs)
  if not len(labels):
    return features, labels, {}
  if pairs.size and (pairs.min() < 0 or pairs.max() >= len(labels)):
    raise IndexError(f'Tomek pairs should index [0, {len(labels)}).')

  if class_counts is None:
    class_counts = _distribution.class_distribution(labels).counts
  present = np.unique(labels)

  if policy == RemovalPolicy.BOTH:
    removed_rows = pairs.reshape(-1)
  else:
    li, lj = labels[pairs[:, 0]], labels[pairs[:, 1]]
    count_i = np.asarray([class_counts.get(int(c), 0) for c in li])
    count_j = np.asarray([class_counts.get(int(c), 0) for c in lj])
    i_is_majority = (count_i > count_j) | ((count_i == count_j) & (li < lj))
    removed_rows = np.where(i_is_majority, pairs[:, 0], pairs[:, 1])
    removed_rows = removed_rows.astype(np.int64)

  keep = np.ones(len(labels), dtype=bool)
  keep[removed_rows] = False  # A row in several pairs is removed once.
  removed = np.bincount(labels[~keep], minlength=int(labels.max()) + 1)
  removed_per_class = {int(c): int(removed[c]) for c in present}
  return features[keep], labels[keep], removed_per_class


def _as_pair_array(pairs) -> Int['p 2']:
  if isinstance(pairs, np.ndarray):
    return pairs.astype(np.int64).reshape(-1, 2)
  return np.asarray([(p.i, p.j) for p in pairs], dtype=np.int64).reshape(-1, 2)
