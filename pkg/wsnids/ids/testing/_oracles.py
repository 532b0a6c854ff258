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

"""Brute-force O(n^2) reference implementations, for testing."""

from __future__ import annotations

from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.neighbors import _index


def brute_force_knn(
    features: Float['n d'],
    query_row: int,
    k: int,
    *,
    exclude_self: bool = True,
) -> list[tuple[int, float]]:
  """Nearest rows of `query_row`, one distance at a time."""
  features = np.asarray(features, dtype=np.float64)
  candidates = []
  for j in range(len(features)):
    if exclude_self and j == query_row:
      continue
    d = float(_index.euclidean(features[query_row], features[j]))
    candidates.append((d, j))
  candidates.sort()
  return [(j, d) for d, j in candidates[:k]]


def brute_force_tomek(
    features: Float['n d'], labels: Int['n']
) -> set[tuple[int, int]]:
  """Pairs `(i, j)`, `i < j`, of mutual nearest neighbors with other labels."""
  nearest = [
      brute_force_knn(features, i, 1)[0][0] for i in range(len(features))
  ]
  pairs = set()
  for i, j in enumerate(nearest):
    if nearest[j] == i and labels[i] != labels[j]:
      pairs.add((min(i, j), max(i, j)))
  return pairs


def pair_count_auc(y_true: Int['n'], scores: Float['n']) -> float:
  """`P(score_pos > score_neg) + P(score_pos == score_neg) / 2`."""
  y_true = np.asarray(y_true)
  scores = np.asarray(scores, dtype=np.float64)
  pos = scores[y_true == 1]
  neg = scores[y_true != 1]
  greater = (pos[:, None] > neg[None, :]).sum()
  ties = (pos[:, None] == neg[None, :]).sum()
  return float((greater + 0.5 * ties) / (len(pos) * len(neg)))
