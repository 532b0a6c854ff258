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

"""Confusion matrices."""

from __future__ import annotations

import dataclasses

from kauldron.typing import Int  # pylint: disable=g-importing-member
import numpy as np
from wsnids.ids.data import _labels
from wsnids.ids.utils import _arrays


@dataclasses.dataclass(frozen=True, eq=False)
class ConfusionMatrix:
  """`counts[t, p]` is the number of rows of true class `t` predicted `p`.

  The one-vs-rest counts of every class `c` are derived from it:

  * `tp[c] = counts[c, c]`
  * `fn[c] = sum(counts[c, :]) - tp[c]`
  * `fp[c] = sum(counts[:, c]) - tp[c]`
  * `tn[c] = total - tp[c] - fn[c] - fp[c]`
  """

  counts: Int['k k']

  def __post_init__(self):
    counts = np.asarray(self.counts, dtype=np.int64)
    if counts.ndim != 2 or counts.shape[0] != counts.shape[1]:
      raise ValueError(f'Confusion counts should be square. Got {counts.shape}')
    if np.any(counts < 0):
      raise ValueError('Confusion counts should be non-negative.')
    object.__setattr__(self, 'counts', _arrays.readonly(counts))

  @classmethod
  def from_binary_counts(
      cls, *, tp: int, tn: int, fp: int, fn: int
  ) -> ConfusionMatrix:
    """Binary matrix with class 1 as the positive class."""
    return cls(np.asarray([[tn, fp], [fn, tp]]))

  @property
  def n_classes(self) -> int:
    return self.counts.shape[0]

  @property
  def total(self) -> int:
    return int(self.counts.sum())

  @property
  def tp(self) -> Int['k']:
    return np.diag(self.counts).copy()

  @property
  def fn(self) -> Int['k']:
    return self.counts.sum(axis=1) - self.tp

  @property
  def fp(self) -> Int['k']:
    return self.counts.sum(axis=0) - self.tp

  @property
  def tn(self) -> Int['k']:
    return self.total - self.tp - self.fn - self.fp

  @property
  def support(self) -> Int['k']:
    """True rows per class."""
    return self.counts.sum(axis=1)

  def __add__(self, other: ConfusionMatrix) -> ConfusionMatrix:
    if other.n_classes != self.n_classes:
      raise ValueError(
          f'Cannot add {self.n_classes}- and {other.n_classes}-class matrices.'
      )
    return ConfusionMatrix(self.counts + other.counts)

  def __eq__(self, other) -> bool:
    if not isinstance(other, ConfusionMatrix):
      return NotImplemented
    return np.array_equal(self.counts, other.counts)

  __hash__ = None

  def cells(self) -> list[tuple[int, int, int]]:
    """`(true, predicted, count)` for every cell, row-major."""
    k = self.n_classes
    return [
        (t, p, int(self.counts[t, p])) for t in range(k) for p in range(k)
    ]

  def to_dict(
      self, label_map: _labels.LabelMap | None = None
  ) -> dict[str, object]:
    out = {'counts': self.counts.tolist()}
    if label_map is not None:
      out['classes'] = list(label_map.names)
    return out


def confusion_matrix(
    y_true: Int['n'], y_pred: Int['n'], n_classes: int
) -> ConfusionMatrix:
  """Counts `(true, predicted)` pairs.

  Args:
    y_true: True codes.
    y_pred: Predicted codes.
    n_classes: Number of classes.

  Returns:
    The `n_classes x n_classes` matrix.
  """
  y_true = _arrays.as_labels(y_true, name='y_true')
  y_pred = _arrays.as_labels(y_pred, name='y_pred')
  if len(y_true) != len(y_pred):
    raise ValueError(
        f'Got {len(y_true)} true labels but {len(y_pred)} predictions.'
    )
  for name, codes in (('y_true', y_true), ('y_pred', y_pred)):
    if codes.size and (codes.min() < 0 or codes.max() >= n_classes):
      raise ValueError(
          f'`{name}` has codes outside [0, {n_classes}): {np.unique(codes)}.'
      )
  flat = np.bincount(y_true * n_classes + y_pred, minlength=n_classes**2)
  return ConfusionMatrix(flat.reshape(n_classes, n_classes))
