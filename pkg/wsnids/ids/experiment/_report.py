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

"""Experiment results and their on-disk layout.

`write_report` produces:

```
<out>/
  report.json           # ExperimentReport.to_dict()
  bars.csv              # fold-mean metrics, one row per model
  confusion_<model>.csv # confusion cells summed over folds
  roc_<model>.csv       # ROC points of the pooled test predictions
```
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import dataclasses
import json
import platform
import sys
from typing import Any

from absl import logging
from etils import epath
import flax
import jax
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
import pandas as pd
from wsnids.ids.data import _distribution
from wsnids.ids.data import _labels
from wsnids.ids.evals import _metrics
from wsnids.ids.experiment import _config
from wsnids.ids.experiment import _plot_data
from wsnids.ids.models import _config as _models_config
from wsnids.ids.preprocess import _standardize
from wsnids.ids.resample import _smote_tomek

FORMAT_VERSION = 1
REPORT_FILE = 'report.json'
BARS_FILE = 'bars.csv'


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class ModelRun:
  """One model trained and evaluated on one fold.

  Attributes:
    kind: Classifier family.
    seed: Training seed derived for this (fold, model) pair.
    evaluation: Test-fold evaluation (`None` if the run failed).
    test_labels: True codes of the test rows.
    scores: Predicted scores of the test rows.
    importances: Feature importances (DT and RF).
    train_seconds: Training wall time.
    predict_seconds: Scoring wall time.
    error: Failure message, if any.
  """

  kind: _models_config.ModelKind
  seed: int
  evaluation: _metrics.Evaluation | None = None
  test_labels: Int['m'] | None = None
  scores: Float['m k'] | None = None
  importances: Float['d'] | None = None
  train_seconds: float = 0.0
  predict_seconds: float = 0.0
  error: str | None = None

  @property
  def ok(self) -> bool:
    return self.error is None

  def to_dict(self, label_map: _labels.LabelMap) -> dict[str, Any]:
    out = {'seed': self.seed}
    if self.ok:
      out['metrics'] = self.evaluation.metrics.to_dict(label_map)
      out['confusion'] = self.evaluation.confusion.to_dict()
    else:
      out['error'] = self.error
    return out


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class FoldResult:
  """Everything produced on one fold.

  Attributes:
    index: Fold index.
    test_rows: Row ids of the test set (after balancing in `full_data`
      mode).
    n_train: Training rows, after balancing in `strict` mode.
    runs: Per-model results, in config order.
    provenance: Rows each fitted component saw (`standardizer`,
      `resampler`, `models`), e.g. `'fold 3 train'` or `'full data'`.
    standardizer: Fold standardizer (`strict` mode).
    resample: Fold balancing report (`strict` mode).
    preprocess_seconds: Standardization and balancing wall time.
  """

  index: int
  test_rows: Int['m']
  n_train: int
  runs: dict[_models_config.ModelKind, ModelRun]
  provenance: dict[str, str]
  standardizer: _standardize.StandardizerParams | None = None
  resample: _smote_tomek.ResampleReport | None = None
  preprocess_seconds: float = 0.0

  @property
  def n_test(self) -> int:
    return len(self.test_rows)

  def to_dict(self, label_map: _labels.LabelMap) -> dict[str, Any]:
    return {
        'index': self.index,
        'n_train': self.n_train,
        'n_test': self.n_test,
        'provenance': dict(self.provenance),
        'standardizer': (
            None if self.standardizer is None else self.standardizer.to_dict()
        ),
        'resample': (
            None if self.resample is None else self.resample.to_dict(label_map)
        ),
        'models': {
            str(kind): run.to_dict(label_map) for kind, run in self.runs.items()
        },
    }


def aggregate_folds(
    fold_metrics: Sequence[_metrics.MetricsReport | Mapping[str, Any]],
) -> dict[str, float | None]:
  """Arithmetic mean of every scalar metric over the folds.

  Folds where a metric is `None` (e.g. AUC on a single-class test fold) are
  left out of that metric's mean; it is `None` if no fold has it.

  Args:
    fold_metrics: `MetricsReport`s or `{metric: value}` dicts.

  Returns:
    `{metric: mean}` for every name in `METRIC_NAMES`.
  """
  if not fold_metrics:
    raise ValueError('Cannot aggregate an empty list of folds.')
  rows = [
      m.scalars() if isinstance(m, _metrics.MetricsReport) else m
      for m in fold_metrics
  ]
  means = {}
  for name in _metrics.METRIC_NAMES:
    values = [row[name] for row in rows if row.get(name) is not None]
    means[name] = float(np.mean(values)) if values else None
  return means


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class ModelSummary:
  """Results of one model across folds.

  Attributes:
    kind: Classifier family.
    fold_means: Mean of the per-fold metrics (`aggregate_folds`).
    pooled: Evaluation of all test predictions pooled over the folds.
    importances: Fold-mean feature importances (DT and RF).
    failed_folds: Folds where the model failed.
  """

  kind: _models_config.ModelKind
  fold_means: dict[str, float | None] | None
  pooled: _metrics.Evaluation | None
  importances: Float['d'] | None = None
  failed_folds: tuple[int, ...] = ()

  def to_dict(
      self, label_map: _labels.LabelMap, feature_names: Sequence[str]
  ) -> dict[str, Any]:
    out = {
        'name': self.kind.display_name,
        'fold_means': self.fold_means,
        'failed_folds': list(self.failed_folds),
    }
    if self.pooled is not None:
      out['pooled'] = self.pooled.metrics.to_dict(label_map)
      out['confusion'] = self.pooled.confusion.to_dict(label_map)
      out['auc_per_class'] = {
          label_map.names[code]: curve.auc
          for code, curve in sorted(self.pooled.roc.items())
      }
      out['roc_file'] = f'roc_{self.kind}.csv'
      out['confusion_file'] = f'confusion_{self.kind}.csv'
    if self.importances is not None:
      out['feature_importances'] = dict(
          zip(feature_names, self.importances.tolist())
      )
    return out


def summarize(
    kind: _models_config.ModelKind,
    folds: Sequence[FoldResult],
    n_classes: int,
) -> ModelSummary:
  """Fold means and pooled evaluation of `kind`."""
  runs = [f.runs[kind] for f in folds]
  ok = [r for r in runs if r.ok]
  failed = tuple(f.index for f, r in zip(folds, runs) if not r.ok)
  if not ok:
    return ModelSummary(
        kind=kind, fold_means=None, pooled=None, failed_folds=failed
    )
  y_true = np.concatenate([r.test_labels for r in ok])
  scores = np.concatenate([r.scores for r in ok])
  pooled = _metrics.evaluate_predictions(
      y_true,
      np.argmax(scores, axis=1),
      n_classes=n_classes,
      scores=scores,
  )
  importances = None
  if ok[0].importances is not None:
    importances = np.mean([r.importances for r in ok], axis=0)
  return ModelSummary(
      kind=kind,
      fold_means=aggregate_folds([r.evaluation.metrics for r in ok]),
      pooled=pooled,
      importances=importances,
      failed_folds=failed,
  )


def environment_fingerprint() -> dict[str, str]:
  """Versions of the interpreter and numeric libraries."""
  return {
      'python': sys.version.split()[0],
      'platform': platform.platform(),
      'numpy': np.__version__,
      'pandas': pd.__version__,
      'jax': jax.__version__,
      'flax': flax.__version__,
  }


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class ExperimentReport:
  """Result of `run_experiment`.

  Attributes:
    config: The experiment config.
    label_map: Codes of the task.
    feature_names: Feature columns.
    distribution: Class distribution of the loaded data.
    standardizer: Full-data standardizer (`full_data` mode).
    resample: Full-data balancing report (`full_data` mode).
    folds: Per-fold results.
    models: Per-model summaries, in config order.
    warnings: Soft-check messages.
    environment: `environment_fingerprint()`.
    total_seconds: Wall time of the run.
  """

  config: _config.ExperimentConfig
  label_map: _labels.LabelMap
  feature_names: tuple[str, ...]
  distribution: _distribution.ClassDistribution
  standardizer: _standardize.StandardizerParams | None
  resample: _smote_tomek.ResampleReport | None
  folds: list[FoldResult]
  models: dict[_models_config.ModelKind, ModelSummary]
  warnings: list[str] = dataclasses.field(default_factory=list)
  environment: dict[str, str] = dataclasses.field(
      default_factory=environment_fingerprint
  )
  total_seconds: float = 0.0

  def fold_means(self) -> dict[str, dict[str, float | None]]:
    """`{model: {metric: fold mean}}` of the models with results."""
    return {
        str(kind): s.fold_means
        for kind, s in self.models.items()
        if s.fold_means is not None
    }

  def timings(self) -> dict[str, Any]:
    return {
        'total_seconds': self.total_seconds,
        'n_jobs': self.config.n_jobs,
        'folds': [
            {
                'preprocess_seconds': f.preprocess_seconds,
                'models': {
                    str(kind): {
                        'train_seconds': r.train_seconds,
                        'predict_seconds': r.predict_seconds,
                    }
                    for kind, r in f.runs.items()
                },
            }
            for f in self.folds
        ],
    }

  def to_dict(self, *, include_timings: bool = True) -> dict[str, Any]:
    """JSON-compatible report.

    Args:
      include_timings: Whether to add the wall times and worker counts, the
        only values that change between identical runs.

    Returns:
      The report.
    """
    out = {
        'format_version': FORMAT_VERSION,
        'config': self.config.to_dict(),
        'dataset': {
            'rows': self.distribution.total,
            'features': len(self.feature_names),
            'feature_names': list(self.feature_names),
            'distribution': self.distribution.to_dict(self.label_map),
            'label_map': self.label_map.to_dict(),
        },
        'standardizer': (
            None if self.standardizer is None else self.standardizer.to_dict()
        ),
        'resample': (
            None
            if self.resample is None
            else self.resample.to_dict(self.label_map)
        ),
        'folds': [f.to_dict(self.label_map) for f in self.folds],
        'models': {
            str(kind): s.to_dict(self.label_map, self.feature_names)
            for kind, s in self.models.items()
        },
        'bars_file': BARS_FILE,
        'warnings': list(self.warnings),
        'environment': dict(self.environment),
    }
    if include_timings:
      out['timings'] = self.timings()
    return out


def _json_default(obj):
  if isinstance(obj, np.generic):
    return obj.item()
  if isinstance(obj, np.ndarray):
    return obj.tolist()
  raise TypeError(f'Not JSON serializable: {type(obj).__name__}')


def to_json(value: Any) -> str:
  """Stable JSON text (sorted keys, numpy scalars converted)."""
  return json.dumps(value, indent=2, sort_keys=True, default=_json_default)


def write_evaluation_files(
    evaluation: _metrics.Evaluation,
    out_dir: epath.PathLike,
    class_names: Sequence[str],
    *,
    suffix: str = '',
) -> list[epath.Path]:
  """Writes the confusion cells and (if any) ROC points of `evaluation`."""
  out_dir = epath.Path(out_dir)
  paths = [
      _plot_data.write_frame(
          _plot_data.confusion_frame(evaluation.confusion, class_names),
          out_dir / f'confusion{suffix}.csv',
      )
  ]
  if evaluation.roc:
    paths.append(
        _plot_data.write_frame(
            _plot_data.roc_frame(evaluation.roc, class_names),
            out_dir / f'roc{suffix}.csv',
        )
    )
  return paths


def write_report(
    report: ExperimentReport, out_dir: epath.PathLike
) -> epath.Path:
  """Writes the report and the plot data to `out_dir`.

  Args:
    report: The experiment report.
    out_dir: Output directory (created if needed).

  Returns:
    Path of `report.json`.
  """
  out_dir = epath.Path(out_dir)
  out_dir.mkdir(parents=True, exist_ok=True)
  names = report.label_map.names
  for kind, summary in report.models.items():
    if summary.pooled is not None:
      write_evaluation_files(
          summary.pooled, out_dir, names, suffix=f'_{kind}'
      )
  _plot_data.write_frame(
      _plot_data.bars_frame(report.fold_means()), out_dir / BARS_FILE
  )
  path = out_dir / REPORT_FILE
  path.write_text(to_json(report.to_dict()))
  logging.info('Report written to %s.', path)
  return path


def compare_arms(
    with_stl: ExperimentReport,
    without_stl: ExperimentReport,
    *,
    kinds: Sequence[_models_config.ModelKind | str] = ('rf', 'dt'),
    metric: str = 'f1',
) -> list[str]:
  """Checks that balancing does not lower `metric` for `kinds`.

  A violation is logged as a warning and returned, not raised.

  Args:
    with_stl: Report of the balanced (`WiSTL`) arm.
    without_stl: Report of the unbalanced (`WoSTL`) arm.
    kinds: Models to compare (those missing from either report are skipped).
    metric: Fold-mean metric to compare.

  Returns:
    The warning messages.
  """
  if with_stl.config.task != without_stl.config.task:
    raise ValueError(
        f'Cannot compare a {with_stl.config.task} run with a'
        f' {without_stl.config.task} run.'
    )
  a = with_stl.fold_means()
  b = without_stl.fold_means()
  messages = []
  for kind in _models_config.ModelKind.parse_list(kinds):
    if str(kind) not in a or str(kind) not in b:
      continue
    balanced, raw = a[str(kind)][metric], b[str(kind)][metric]
    if balanced < raw:
      msg = (
          f'{kind.display_name} {metric}: WiSTL {balanced:.4f} < WoSTL'
          f' {raw:.4f} ({with_stl.config.task}).'
      )
      logging.warning('%s', msg)
      messages.append(msg)
  return messages
