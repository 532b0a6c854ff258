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

"""K-fold splits."""

from __future__ import annotations

import dataclasses

from kauldron.typing import Int  # pylint: disable=g-importing-member
import numpy as np
from wsnids.ids.utils import _arrays
from wsnids.ids.utils import _rng


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class Fold:
  """Row ids of one fold (both sorted ascending)."""

  index: int
  train: Int['n_train']
  test: Int['n_test']


def split_folds(
    n_rows: int,
    folds: int,
    *,
    shuffle: bool = True,
    seed: int = 0,
    labels: Int['n'] | None = None,
) -> list[Fold]:
  """Splits `range(n_rows)` into `folds` test sets.

  Without `labels`, the ids are permuted with the stream `(seed, 'folds')`
  (if `shuffle`) and cut into consecutive slices, the first
  `n_rows % folds` slices holding one more row.

  With `labels` the split is stratified: the (shuffled) ids of each class
  are dealt round-robin to the folds, continuing where the previous class
  stopped.

  In both cases the test sets partition the rows and their sizes differ by
  at most 1.

  Args:
    n_rows: Number of rows.
    folds: Number of folds (`2 <= folds <= n_rows`).
    shuffle: Whether to permute the ids first.
    seed: Root seed.
    labels: Codes of the rows, for a stratified split.

  Returns:
    The folds, in order.
  """
  if folds < 2:
    raise ValueError(f'Need at least 2 folds. Got {folds}.')
  if folds > n_rows:
    raise ValueError(f'Cannot split {n_rows} rows into {folds} folds.')
  rng = _rng.rng_for(seed, 'folds')

  if labels is None:
    ids = rng.permutation(n_rows) if shuffle else np.arange(n_rows)
    sizes = np.full(folds, n_rows // folds)
    sizes[: n_rows % folds] += 1
    assignment = np.empty(n_rows, dtype=np.int64)
    assignment[ids] = np.repeat(np.arange(folds), sizes)
  else:
    labels = _arrays.as_labels(labels)
    if len(labels) != n_rows:
      raise ValueError(f'Got {len(labels)} labels for {n_rows} rows.')
    assignment = np.empty(n_rows, dtype=np.int64)
    offset = 0
    for code in np.unique(labels):
      ids = np.flatnonzero(labels == code)
      if shuffle:
        ids = rng.permutation(ids)
      assignment[ids] = (offset + np.arange(len(ids))) % folds
      offset += len(ids)

  return [
      Fold(
          index=i,
          train=np.flatnonzero(assignment != i),
          test=np.flatnonzero(assignment == i),
      )
      for i in range(folds)
  ]
