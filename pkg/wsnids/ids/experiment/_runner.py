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

"""Cross-validation experiment.

```python
config = ids.experiment.ExperimentConfig(
    data='WSN-DS.csv', task='binary', balance='smotetomek', models=('rf',)
)
report = ids.experiment.run_experiment(config)
ids.experiment.write_report(report, 'out/')
```
"""

from __future__ import annotations

import dataclasses
import time

from absl import logging
from etils import epy
import joblib
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.data import _csv
from wsnids.ids.data import _dataset
from wsnids.ids.evals import _metrics
from wsnids.ids.experiment import _config
from wsnids.ids.experiment import _folds
from wsnids.ids.experiment import _report
from wsnids.ids.models import _config as _models_config
from wsnids.ids.models import _model
from wsnids.ids.preprocess import _standardize
from wsnids.ids.resample import _smote
from wsnids.ids.resample import _smote_tomek
from wsnids.ids.utils import _rng

_FULL_DATA = 'full data'
_IMPORTANCE_KINDS = (_models_config.ModelKind.DT, _models_config.ModelKind.RF)


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class _PreparedFold:
  fold: _folds.Fold
  train_features: Float['n d']
  train_labels: Int['n']
  test_features: Float['m d']
  test_labels: Int['m']
  provenance: dict[str, str]
  standardizer: _standardize.StandardizerParams | None
  resample: _smote_tomek.ResampleReport | None
  seconds: float


def _balance(config, features, labels, *, seed_keys, fitted_on, n_jobs):
  params = _smote.SmoteParams(
      k_neighbors=config.k_neighbors,
      seed=_rng.derive_seed(config.seed, 'smote', *seed_keys),
  )
  return _smote_tomek.smote_tomek(
      features,
      labels,
      params,
      policy=config.policy,
      fitted_on=fitted_on,
      n_jobs=n_jobs,
  )


def _prepare_fold(
    config: _config.ExperimentConfig,
    fold: _folds.Fold,
    features: Float['n d'],
    labels: Int['n'],
) -> _PreparedFold:
  """Slices the fold and, in strict mode, fits on its training rows."""
  start = time.perf_counter()
  train_x, train_y = features[fold.train], labels[fold.train]
  test_x, test_y = features[fold.test], labels[fold.test]
  train_rows = f'fold {fold.index} train'
  standardizer = resample = None

  if config.leakage_mode == _config.LeakageMode.STRICT:
    train_x, standardizer = _standardize.fit_transform(
        train_x, ddof=config.ddof, fitted_on=train_rows
    )
    test_x = _standardize.transform(standardizer, test_x)
    provenance = {'standardizer': train_rows}
    if config.balance == _config.Balance.SMOTETOMEK:
      try:
        train_x, train_y, resample = _balance(
            config,
            train_x,
            train_y,
            seed_keys=(fold.index,),
            fitted_on=train_rows,
            n_jobs=1,
        )
      except ValueError as e:
        epy.reraise(e, prefix=f'Balancing {train_rows}: ')
      provenance['resampler'] = train_rows
  else:
    provenance = {'standardizer': _FULL_DATA}
    if config.balance == _config.Balance.SMOTETOMEK:
      provenance['resampler'] = _FULL_DATA
  provenance['models'] = train_rows

  return _PreparedFold(
      fold=fold,
      train_features=train_x,
      train_labels=train_y,
      test_features=test_x,
      test_labels=test_y,
      provenance=provenance,
      standardizer=standardizer,
      resample=resample,
      seconds=time.perf_counter() - start,
  )


def _run_model(
    config: _config.ExperimentConfig,
    prepared: _PreparedFold,
    kind: _models_config.ModelKind,
    n_classes: int,
) -> _report.ModelRun:
  """Trains `kind` on the fold and evaluates it on the test rows."""
  index = prepared.fold.index
  seed = _rng.derive_seed(config.seed, 'fold', index, kind)
  train_config = dataclasses.replace(config.train, seed=seed)
  train_seconds = predict_seconds = 0.0
  try:
    start = time.perf_counter()
    model = _model.train(
        kind,
        prepared.train_features,
        prepared.train_labels,
        train_config,
        n_classes=n_classes,
        trained_on=prepared.provenance['models'],
    )
    train_seconds = time.perf_counter() - start
    start = time.perf_counter()
    scores = _model.predict_scores(model, prepared.test_features)
    predict_seconds = time.perf_counter() - start
    evaluation = _metrics.evaluate_predictions(
        prepared.test_labels,
        np.argmax(scores, axis=1),
        n_classes=n_classes,
        scores=scores,
    )
    importances = None
    if kind in _IMPORTANCE_KINDS:
      importances = _model.feature_importances(model)
  except Exception as e:  # pylint: disable=broad-exception-caught
    logging.warning('Fold %d, %s failed: %r', index, kind.display_name, e)
    return _report.ModelRun(
        kind=kind,
        seed=seed,
        train_seconds=train_seconds,
        predict_seconds=predict_seconds,
        error=f'{type(e).__name__}: {e}',
    )

  logging.info(
      'Fold %d, %s: accuracy %.4f%%, f1 %.4f%% (train %.2fs).',
      index,
      kind.display_name,
      evaluation.metrics.accuracy,
      evaluation.metrics.f1,
      train_seconds,
  )
  return _report.ModelRun(
      kind=kind,
      seed=seed,
      evaluation=evaluation,
      test_labels=prepared.test_labels,
      scores=scores,
      importances=importances,
      train_seconds=train_seconds,
      predict_seconds=predict_seconds,
  )


def run_experiment(
    config: _config.ExperimentConfig,
    *,
    dataset: _dataset.Dataset | None = None,
) -> _report.ExperimentReport:
  """Runs the k-fold experiment.

  `full_data` mode standardizes and balances the whole dataset, then splits
  it. `strict` mode splits first, then fits the standardizer and the
  balancing on the training rows of each fold. In both modes every model is
  trained on the training rows of each fold and evaluated on its test rows.

  Folds and models run on `config.n_jobs` threads. Every (fold, model) run
  has its own seed stream, so the report does not depend on `n_jobs`.

  Args:
    config: The experiment.
    dataset: Data to use instead of loading `config.data` (encoded for
      `config.task` if needed).

  Returns:
    The report. A model failing on a fold is recorded in the report, other
    models and folds still run.
  """
  start = time.perf_counter()
  if dataset is None:
    dataset = _csv.load_encoded_csv(
        config.data,
        task=config.task,
        label_column=config.label_column,
        drop_columns=config.drop_columns,
        extra_classes=config.extra_classes,
    )
  elif dataset.labels is None:
    dataset = dataset.encode(config.task, extra_classes=config.extra_classes)
  elif dataset.label_map is None or dataset.label_map.task != config.task:
    raise ValueError(
        f'Dataset is not encoded for the {config.task} task. Pass it'
        ' unencoded (with raw labels) or encode it first.'
    )
  n_classes = dataset.n_classes
  logging.info(
      'Experiment: %s %s, %s mode, %d folds, models %s.',
      config.task,
      config.balance.arm,
      config.leakage_mode,
      config.folds,
      [k.display_name for k in config.models],
  )

  features = np.asarray(dataset.features)
  labels = np.asarray(dataset.labels)
  standardizer = resample = None
  if config.leakage_mode == _config.LeakageMode.FULL_DATA:
    features, standardizer = _standardize.fit_transform(
        features, ddof=config.ddof, fitted_on=_FULL_DATA
    )
    if config.balance == _config.Balance.SMOTETOMEK:
      features, labels, resample = _balance(
          config,
          features,
          labels,
          seed_keys=(),
          fitted_on=_FULL_DATA,
          n_jobs=config.n_jobs,
      )

  folds = _folds.split_folds(
      len(labels),
      config.folds,
      shuffle=config.shuffle,
      seed=config.seed,
      labels=labels if config.stratified else None,
  )
  parallel = joblib.Parallel(n_jobs=config.n_jobs, prefer='threads')
  prepared = parallel(
      joblib.delayed(_prepare_fold)(config, fold, features, labels)
      for fold in folds
  )
  units = [(p, kind) for p in prepared for kind in config.models]
  runs = parallel(
      joblib.delayed(_run_model)(config, p, kind, n_classes)
      for p, kind in units
  )

  fold_results = []
  for i, p in enumerate(prepared):
    fold_runs = runs[i * len(config.models) : (i + 1) * len(config.models)]
    fold_results.append(
        _report.FoldResult(
            index=p.fold.index,
            test_rows=p.fold.test,
            n_train=len(p.train_labels),
            runs={r.kind: r for r in fold_runs},
            provenance=p.provenance,
            standardizer=p.standardizer,
            resample=p.resample,
            preprocess_seconds=p.seconds,
        )
    )
  summaries = {
      kind: _report.summarize(kind, fold_results, n_classes)
      for kind in config.models
  }

  warnings = []
  for kind, summary in summaries.items():
    if summary.failed_folds:
      warnings.append(
          f'{kind.display_name} failed on folds {list(summary.failed_folds)}.'
      )

  return _report.ExperimentReport(
      config=config,
      label_map=dataset.label_map,
      feature_names=dataset.feature_names,
      distribution=dataset.distribution(),
      standardizer=standardizer,
      resample=resample,
      folds=fold_results,
      models=summaries,
      warnings=warnings,
      total_seconds=time.perf_counter() - start,
  )
