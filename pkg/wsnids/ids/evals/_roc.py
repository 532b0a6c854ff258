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

"""ROC curves and trapezoidal AUC."""

from __future__ import annotations

import dataclasses

from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.utils import _arrays


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class RocCurve:
  """ROC points, from `(0, 0)` to `(1, 1)`.

  Attributes:
    fpr: False-positive rate of each point (non-decreasing).
    tpr: True-positive rate of each point (non-decreasing).
    thresholds: Rows with `score >= thresholds[i]` are predicted positive at
      point `i` (the first threshold is `inf`).
    auc: Trapezoidal area under the points, in `[0, 1]`.
  """

  fpr: Float['p']
  tpr: Float['p']
  thresholds: Float['p']
  auc: float

  @property
  def n_points(self) -> int:
    return len(self.fpr)


def roc_curve(y_true: Int['n'], scores: Float['n']) -> RocCurve:
  """Sweeps the distinct scores in decreasing order.

  Args:
    y_true: Binary truth (1 is the positive class).
    scores: Positive-class scores (higher means more likely positive).

  Returns:
    The curve. Rows with equal scores move together, which makes the AUC
    count ties as one half.
  """
  y_true = _arrays.as_labels(y_true, name='y_true')
  scores = np.asarray(scores, dtype=np.float64)
  if scores.shape != y_true.shape:
    raise ValueError(
        f'Got {len(y_true)} labels but scores of shape {scores.shape}.'
    )
  if not np.all(np.isin(y_true, (0, 1))):
    raise ValueError('`y_true` should be binary (0 / 1).')
  if not np.all(np.isfinite(scores)):
    raise ValueError('ROC scores should be finite.')
  n_pos = int(y_true.sum())
  n_neg = len(y_true) - n_pos
  if not n_pos or not n_neg:
    raise ValueError(
        'ROC needs at least one positive and one negative row. Got'
        f' {n_pos} positive(s) and {n_neg} negative(s).'
    )

  order = np.argsort(-scores, kind='stable')
  sorted_scores = scores[order]
  # Last position of every run of equal scores.
  ends = np.r_[np.flatnonzero(np.diff(sorted_scores)), len(scores) - 1]
  tps = np.cumsum(y_true[order])[ends]
  fps = ends + 1 - tps

  tpr = np.r_[0.0, tps / n_pos]
  fpr = np.r_[0.0, fps / n_neg]
  auc = float(np.sum(np.diff(fpr) * (tpr[1:] + tpr[:-1]) / 2))
  return RocCurve(
      fpr=fpr,
      tpr=tpr,
      thresholds=np.r_[np.inf, sorted_scores[ends]],
      auc=auc,
  )


def multiclass_roc(
    y_true: Int['n'], scores: Float['n k']
) -> dict[int, RocCurve]:
  """One-vs-rest curve of every class with both positive and negative rows."""
  y_true = _arrays.as_labels(y_true, name='y_true')
  scores = _arrays.as_features(scores, name='scores')
  curves = {}
  for code in range(scores.shape[1]):
    positive = (y_true == code).astype(np.int64)
    if 0 < positive.sum() < len(positive):
      curves[code] = roc_curve(positive, scores[:, code])
  return curves


def macro_auc(curves: dict[int, RocCurve]) -> float | None:
  """Unweighted mean AUC over the curves (`None` without curves)."""
  if not curves:
    return None
  return float(np.mean([c.auc for c in curves.values()]))
