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

"""k-nearest-neighbors vote."""

from __future__ import annotations

from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.neighbors import _index


def vote_fractions(
    train_features: Float['n d'],
    train_labels: Int['n'],
    features: Float['m d'],
    *,
    k: int,
    n_classes: int,
    n_jobs: int = 1,
) -> Float['m k']:
  """Fraction of the `k` nearest training rows in each class.

  Neighbors at equal distance are taken by lowest training row id.

  Args:
    train_features: Stored training rows.
    train_labels: Their codes.
    features: Query rows.
    k: Number of neighbors (clamped to the training size).
    n_classes: Number of classes.
    n_jobs: Workers of the neighbor search.

  Returns:
    The vote fractions.
  """
  k = min(k, len(train_labels))
  index = _index.build_index(train_features)
  nn_ids, _ = _index.k_nearest_points(index, features, k, n_jobs=n_jobs)
  votes = np.zeros((len(features), n_classes))
  rows = np.repeat(np.arange(len(features)), k)
  np.add.at(votes, (rows, train_labels[nn_ids].ravel()), 1.0)
  return votes / k
