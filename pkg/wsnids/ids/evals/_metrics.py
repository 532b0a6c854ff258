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

"""Classification metrics on the percent scale."""

from __future__ import annotations

import dataclasses
import enum

from absl import logging
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.data import _labels
from wsnids.ids.evals import _confusion
from wsnids.ids.evals import _roc
from wsnids.ids.utils import _arrays


class Averaging(enum.StrEnum):
  """How per-class precision / recall are combined.

  * `MACRO`: unweighted mean over the classes present in the truth or the
    predictions.
  * `WEIGHTED`: mean weighted by the true support of each class.
  * `BINARY`: the positive class (code 1) only.
  """

  MACRO = 'macro'
  WEIGHTED = 'weighted'
  BINARY = 'binary'

  @classmethod
  def default_for(cls, n_classes: int) -> Averaging:
    return cls.BINARY if n_classes == 2 else cls.MACRO


@dataclasses.dataclass(frozen=True, kw_only=True)
class ClassMetrics:
  """One-vs-rest metrics of one class (percent)."""

  precision: float
  recall: float
  f1: float
  support: int

  def to_dict(self) -> dict[str, float | int]:
    return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True, kw_only=True)
class BasicMetrics:
  """Accuracy, precision, recall and F1 (percent).

  Attributes:
    accuracy: `trace / total`.
    precision: Averaged precision.
    recall: Averaged recall.
    f1: Averaged per-class F1 (the positive-class F1 for `binary`).
    averaging: How the per-class values were combined.
    per_class: One-vs-rest metrics of each code.
    flags: Zero-denominator events, e.g. `'precision_zero_division:3'`.
  """

  accuracy: float
  precision: float
  recall: float
  f1: float
  averaging: Averaging
  per_class: tuple[ClassMetrics, ...]
  flags: tuple[str, ...] = ()


def _ratio(num: float, den: float) -> float:
  return 100.0 * num / den if den else 0.0


def _harmonic(precision: float, recall: float) -> float:
  if precision + recall == 0:
    return 0.0
  return 2 * precision * recall / (precision + recall)


def basic_metrics(
    cm: _confusion.ConfusionMatrix,
    averaging: Averaging | str | None = None,
) -> BasicMetrics:
  """Computes accuracy, precision, recall and F1 from a confusion matrix.

  Precision, recall and F1 are computed one-vs-rest per class and then
  combined per `averaging`, so a multiclass F1 is the average of the per-class
  F1 scores, not the harmonic mean of the averaged precision and recall. A
  class whose denominator is 0 contributes 0 and is reported in `flags`.

  Args:
    cm: The confusion matrix.
    averaging: Defaults to `binary` on 2 classes, `macro` otherwise.

  Returns:
    The metrics.
  """
  if cm.total == 0:
    raise ValueError('Cannot compute metrics on an empty confusion matrix.')
  if averaging is None:
    averaging = Averaging.default_for(cm.n_classes)
  averaging = Averaging(averaging)
  if averaging == Averaging.BINARY and cm.n_classes != 2:
    raise ValueError(
        f'Binary averaging needs 2 classes. Got {cm.n_classes}.'
    )

  tp, fp, fn = cm.tp, cm.fp, cm.fn
  support = cm.support
  flags = []
  per_class = []
  for c in range(cm.n_classes):
    predicted = tp[c] + fp[c]
    if not predicted and support[c]:
      flags.append(f'precision_zero_division:{c}')
    if not support[c] and predicted:
      flags.append(f'recall_zero_division:{c}')
    precision = _ratio(tp[c], predicted)
    recall = _ratio(tp[c], support[c])
    per_class.append(
        ClassMetrics(
            precision=precision,
            recall=recall,
            f1=_harmonic(precision, recall),
            support=int(support[c]),
        )
    )

  precisions = np.asarray([m.precision for m in per_class])
  recalls = np.asarray([m.recall for m in per_class])
  f1s = np.asarray([m.f1 for m in per_class])
  match averaging:
    case Averaging.BINARY:
      precision, recall, f1 = precisions[1], recalls[1], f1s[1]
    case Averaging.MACRO:
      present = (support > 0) | (tp + fp > 0)
      precision = float(precisions[present].mean())
      recall = float(recalls[present].mean())
      f1 = float(f1s[present].mean())
    case Averaging.WEIGHTED:
      weights = support / support.sum()
      precision = float(precisions @ weights)
      recall = float(recalls @ weights)
      f1 = float(f1s @ weights)
    case _:
      raise KeyError(f'Unknown averaging {averaging!r}.')

  if flags:
    logging.warning('Zero-division in metrics: %s', ', '.join(flags))
  return BasicMetrics(
      accuracy=_ratio(np.trace(cm.counts), cm.total),
      precision=float(precision),
      recall=float(recall),
      f1=float(f1),
      averaging=averaging,
      per_class=tuple(per_class),
      flags=tuple(flags),
  )


@dataclasses.dataclass(frozen=True, kw_only=True)
class ErrorMetrics:
  """MAE, MSE and RMSE of the integer codes, times 100."""

  mae: float
  mse: float
  rmse: float


def regression_style_errors(y_true: Int['n'], y_pred: Int['n']) -> ErrorMetrics:
  """Errors between encoded labels, on the percent scale.

  `mae = mean|pred - true|`, `mse = mean (pred - true)^2`,
  `rmse = sqrt(mse)`; each is then multiplied by 100.

  Args:
    y_true: True codes.
    y_pred: Predicted codes.

  Returns:
    The errors.
  """
  y_true = _arrays.as_labels(y_true, name='y_true')
  y_pred = _arrays.as_labels(y_pred, name='y_pred')
  if len(y_true) != len(y_pred):
    raise ValueError(
        f'Got {len(y_true)} true labels but {len(y_pred)} predictions.'
    )
  if not len(y_true):
    raise ValueError('Cannot compute errors on empty labels.')
  diff = (y_pred - y_true).astype(np.float64)
  mse = float(np.mean(diff**2))
  return ErrorMetrics(
      mae=100.0 * float(np.mean(np.abs(diff))),
      mse=100.0 * mse,
      rmse=100.0 * float(np.sqrt(mse)),
  )


# Scalar metrics, in report order.
METRIC_NAMES = (
    'accuracy',
    'precision',
    'recall',
    'f1',
    'mae',
    'mse',
    'rmse',
    'auc',
)


@dataclasses.dataclass(frozen=True, kw_only=True)
class MetricsReport:
  """All metrics of one set of predictions.

  Attributes:
    accuracy: Percent.
    precision: Percent, per `averaging`.
    recall: Percent, per `averaging`.
    f1: Percent, per `averaging`.
    mae: Percent scale.
    mse: Percent scale.
    rmse: Percent scale.
    auc: Fraction in `[0, 1]`, `None` without scores (or without a class
      having both positive and negative rows). Multiclass: macro over the
      one-vs-rest curves.
    averaging: Averaging of the headline precision / recall / F1.
    weighted: Weighted precision / recall / F1 (multiclass only).
    per_class: One-vs-rest metrics of each code.
    flags: Zero-division flags.
    n: Number of rows.
  """

  accuracy: float
  precision: float
  recall: float
  f1: float
  mae: float
  mse: float
  rmse: float
  auc: float | None
  averaging: Averaging
  weighted: dict[str, float] | None = None
  per_class: tuple[ClassMetrics, ...] = ()
  flags: tuple[str, ...] = ()
  n: int = 0

  def scalars(self) -> dict[str, float | None]:
    """`METRIC_NAMES` values."""
    return {name: getattr(self, name) for name in METRIC_NAMES}

  def to_dict(
      self, label_map: _labels.LabelMap | None = None
  ) -> dict[str, object]:
    names = (
        label_map.names
        if label_map is not None
        else [str(c) for c in range(len(self.per_class))]
    )
    out = dict(self.scalars())
    out.update(
        averaging=str(self.averaging),
        weighted=self.weighted,
        per_class={
            name: m.to_dict() for name, m in zip(names, self.per_class)
        },
        flags=list(self.flags),
        n=self.n,
    )
    return out


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class Evaluation:
  """Metrics, confusion matrix and ROC curves of one set of predictions."""

  metrics: MetricsReport
  confusion: _confusion.ConfusionMatrix
  roc: dict[int, _roc.RocCurve] = dataclasses.field(default_factory=dict)


def evaluate_predictions(
    y_true: Int['n'],
    y_pred: Int['n'],
    *,
    n_classes: int,
    scores: Float['n k'] | None = None,
    averaging: Averaging | str | None = None,
) -> Evaluation:
  """Evaluates predictions with every metric.

  Args:
    y_true: True codes.
    y_pred: Predicted codes.
    n_classes: Number of classes.
    scores: Optional per-class scores, for ROC / AUC. On 2 classes the curve
      of class 1 gives the AUC; otherwise the one-vs-rest curves are
      macro-averaged.
    averaging: Headline averaging (default: binary on 2 classes, else macro).

  Returns:
    The `Evaluation`.
  """
  cm = _confusion.confusion_matrix(y_true, y_pred, n_classes)
  basic = basic_metrics(cm, averaging)
  errors = regression_style_errors(y_true, y_pred)
  weighted = None
  if basic.averaging != Averaging.BINARY:
    w = basic_metrics(cm, Averaging.WEIGHTED)
    weighted = {'precision': w.precision, 'recall': w.recall, 'f1': w.f1}

  curves = {}
  auc = None
  if scores is not None:
    scores = _arrays.as_features(scores, name='scores')
    if scores.shape != (cm.total, n_classes):
      raise ValueError(
          f'Scores should have shape ({cm.total}, {n_classes}). Got'
          f' {scores.shape}.'
      )
    curves = _roc.multiclass_roc(y_true, scores)
    if n_classes == 2:
      auc = curves[1].auc if 1 in curves else None
    else:
      auc = _roc.macro_auc(curves)

  metrics = MetricsReport(
      accuracy=basic.accuracy,
      precision=basic.precision,
      recall=basic.recall,
      f1=basic.f1,
      mae=errors.mae,
      mse=errors.mse,
      rmse=errors.rmse,
      auc=auc,
      averaging=basic.averaging,
      weighted=weighted,
      per_class=basic.per_class,
      flags=basic.flags,
      n=cm.total,
  )
  return Evaluation(metrics=metrics, confusion=cm, roc=curves)
