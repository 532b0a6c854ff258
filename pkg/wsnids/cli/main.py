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

r"""`wsnids` command line.

```sh
wsnids run --data=WSN-DS.csv --task=binary --balance=smotetomek \
    --models=rf --folds=10 --seed=42 --out=results/
wsnids balance --data=WSN-DS.csv --task=multiclass --out=balanced.csv
wsnids evaluate --counts=rf_counts.csv --out=eval/
wsnids inspect --data=WSN-DS.csv --task=multiclass
```

Flag values can also come from a flat YAML file (`--config`, or the
`WSNIDS_CONFIG` environment variable) whose keys are flag names. Flags given
on the command line win over the file.

Exit codes: 0 on success, 2 on bad flags or config values, 3 on unreadable
or malformed data, 1 on any other failure.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
import os
import sys

from absl import app
from absl import flags
from absl import logging
from etils import epath
from etils import epy
import numpy as np
import pandas as pd
import yaml
from wsnids import ids

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2
EXIT_DATA = 3

CONFIG_ENV = 'WSNIDS_CONFIG'
PREDICTION_COLUMN = 'prediction'

# Data
_DATA = flags.DEFINE_string('data', None, 'WSN-DS-shaped CSV file.')
_TASK = flags.DEFINE_enum(
    'task', 'binary', [t.value for t in ids.data.Task], 'Classification task.'
)
_LABEL_COLUMN = flags.DEFINE_string(
    'label_column', ids.data.WSNDS_LABEL_COLUMN, 'Class column of the CSVs.'
)
_DROP_COLUMNS = flags.DEFINE_list(
    'drop_columns', [], 'CSV columns that are not features.'
)
_OUT = flags.DEFINE_string(
    'out',
    None,
    'Output directory (`run`, `evaluate`) or CSV file (`balance`).',
)
_CONFIG = flags.DEFINE_string(
    'config', None, f'YAML file of flag values (default: ${CONFIG_ENV}).'
)

# Experiment
_BALANCE = flags.DEFINE_enum(
    'balance',
    'smotetomek',
    ['none', 'smotetomek', 'both'],
    '`none` (WoSTL), `smotetomek` (WiSTL) or `both` arms.',
)
_MODELS = flags.DEFINE_list(
    'models',
    [k.value for k in ids.models.ModelKind],
    'Classifiers among dt, rf, knn, mlp, xgb, lgb.',
)
_FOLDS = flags.DEFINE_integer('folds', 10, 'Number of folds.')
_SHUFFLE = flags.DEFINE_bool('shuffle', True, 'Shuffle rows before the split.')
_STRATIFIED = flags.DEFINE_bool('stratified', False, 'Stratified folds.')
_SEED = flags.DEFINE_integer('seed', 0, 'Root seed.')
_LEAKAGE_MODE = flags.DEFINE_enum(
    'leakage_mode',
    'full_data',
    [m.value for m in ids.experiment.LeakageMode],
    'Fit the standardizer and the balancing on the full data or on each'
    ' training fold.',
)
_DDOF = flags.DEFINE_integer('ddof', 0, 'Standard deviation ddof (0 or 1).')
_OVERRIDE = flags.DEFINE_multi_string(
    'override',
    [],
    'Model hyperparameter override `section.field=value` (YAML value), e.g.'
    ' `rf.n_trees=50` or `mlp.hidden=[64,32]`.',
)
_N_JOBS = flags.DEFINE_integer('n_jobs', 1, 'Worker threads.')

# Balancing
_K_NEIGHBORS = flags.DEFINE_integer('k_neighbors', 5, 'SMOTE neighbors.')
_POLICY = flags.DEFINE_enum(
    'policy',
    'both',
    [p.value for p in ids.resample.RemovalPolicy],
    'Which endpoints of a Tomek link are removed.',
)

# Evaluation
_TRUTH = flags.DEFINE_string(
    'truth', None, 'CSV whose `--label_column` holds the true class names.'
)
_PREDICTIONS = flags.DEFINE_string(
    'predictions',
    None,
    f'CSV whose `{PREDICTION_COLUMN}` column holds predicted class names.',
)
_SCORES = flags.DEFINE_string(
    'scores', None, 'CSV of per-class scores, one column per class name.'
)
_COUNTS = flags.DEFINE_string(
    'counts', None, 'CSV with binary `tp,tn,fp,fn` columns (one row).'
)


class DataInputError(Exception):
  """Input files that cannot be used (exit code 3)."""


def _usage(msg: str) -> app.UsageError:
  return app.UsageError(msg, exitcode=EXIT_USAGE)


def _apply_config_file() -> None:
  """Sets the flags not given on the command line from the YAML file."""
  path = _CONFIG.value or os.environ.get(CONFIG_ENV)
  if not path:
    return
  path = epath.Path(path)
  if not path.exists():
    raise _usage(f'Config file not found: {path}')
  try:
    values = yaml.safe_load(path.read_text()) or {}
  except yaml.YAMLError as e:
    raise _usage(f'{path}: invalid YAML. {e}') from e
  if not isinstance(values, dict):
    raise _usage(f'{path}: expected a flat mapping of flag names.')
  for name, value in values.items():
    name = str(name).replace('-', '_')
    if name == 'config' or name not in flags.FLAGS:
      raise _usage(f'{path}: unknown flag {name!r}.')
    flag = flags.FLAGS[name]
    if flag.present:
      continue
    if name == 'override' and isinstance(value, dict):
      value = [f'{k}={v}' for k, v in value.items()]
    try:
      if isinstance(flag, flags.MultiFlag):
        flag.parse([str(v) for v in value])
      elif isinstance(value, list):
        flag.parse(','.join(map(str, value)))
      else:
        flag.parse(str(value))
    except flags.Error as e:
      raise _usage(f'{path}: {e}') from e
  logging.info('Flag values read from %s.', path)


def _require(*flag_holders: flags.FlagHolder) -> None:
  for holder in flag_holders:
    if holder.value is None:
      raise _usage(f'--{holder.name} is required.')


def _train_config() -> ids.models.TrainConfig:
  overrides = {}
  for item in _OVERRIDE.value:
    key, sep, value = item.partition('=')
    if not sep:
      raise _usage(f'--override expects section.field=value. Got {item!r}.')
    overrides[key.strip()] = yaml.safe_load(value)
  config = ids.models.TrainConfig(n_jobs=_N_JOBS.value)
  return config.with_overrides(overrides)


def _experiment_config(balance: str) -> ids.experiment.ExperimentConfig:
  return ids.experiment.ExperimentConfig(
      data=_DATA.value,
      task=_TASK.value,
      balance=balance,
      models=tuple(_MODELS.value),
      folds=_FOLDS.value,
      shuffle=_SHUFFLE.value,
      stratified=_STRATIFIED.value,
      seed=_SEED.value,
      leakage_mode=_LEAKAGE_MODE.value,
      k_neighbors=_K_NEIGHBORS.value,
      policy=_POLICY.value,
      ddof=_DDOF.value,
      train=_train_config(),
      label_column=_LABEL_COLUMN.value,
      drop_columns=tuple(_DROP_COLUMNS.value),
      n_jobs=_N_JOBS.value,
  )


def _load() -> ids.data.Dataset:
  return ids.data.load_encoded_csv(
      _DATA.value,
      task=_TASK.value,
      label_column=_LABEL_COLUMN.value,
      drop_columns=_DROP_COLUMNS.value,
  )


def _print_means(report: ids.experiment.ExperimentReport) -> None:
  print(f'{report.config.task} {report.config.balance.arm}:')
  for model, means in report.fold_means().items():
    print(
        f'  {model:>4}  accuracy {means["accuracy"]:.2f}  precision'
        f' {means["precision"]:.2f}  recall {means["recall"]:.2f}  f1'
        f' {means["f1"]:.2f}'
    )


def cmd_run() -> None:
  """Runs the cross-validation experiment and writes its report."""
  _require(_DATA, _OUT)
  arms = (
      ['smotetomek', 'none'] if _BALANCE.value == 'both' else [_BALANCE.value]
  )
  try:
    configs = [_experiment_config(balance) for balance in arms]
  except (ValueError, KeyError) as e:
    raise _usage(str(e)) from e

  dataset = _load()
  out = epath.Path(_OUT.value)
  reports = []
  for config in configs:
    report = ids.experiment.run_experiment(config, dataset=dataset)
    arm_out = out / config.balance.arm.lower() if len(configs) > 1 else out
    path = ids.experiment.write_report(report, arm_out)
    _print_means(report)
    print(f'Report: {path}')
    reports.append(report)

  if len(reports) == 2:
    messages = ids.experiment.compare_arms(*reports)
    (out / 'comparison.json').write_text(
        ids.experiment.to_json({
            'task': str(_TASK.value),
            'metric': 'f1',
            'warnings': messages,
        })
    )


def cmd_balance() -> None:
  """Balances a CSV file with SMOTE and Tomek links."""
  _require(_DATA, _OUT)
  try:
    params = ids.resample.SmoteParams(
        k_neighbors=_K_NEIGHBORS.value, seed=_SEED.value
    )
  except ValueError as e:
    raise _usage(str(e)) from e
  ds = _load()
  features, labels, report = ids.resample.smote_tomek(
      ds.features,
      ds.labels,
      params,
      policy=_POLICY.value,
      fitted_on=str(_DATA.value),
      n_jobs=_N_JOBS.value,
  )
  out = epath.Path(_OUT.value)
  ids.data.write_csv(
      ds.with_arrays(features, labels), out, label_column=_LABEL_COLUMN.value
  )
  report_path = out.with_name(out.name + '.report.json')
  report_path.write_text(
      ids.experiment.to_json(report.to_dict(ds.label_map))
  )
  names = ds.label_map.names
  print(f'Before: {report.before.named(ds.label_map)}')
  print(f'After:  {report.after.named(ds.label_map)}')
  print(f'Wrote {len(labels)} rows to {out} ({len(names)} classes).')


def _read_frame(path: str) -> pd.DataFrame:
  path = epath.Path(path)
  if not path.exists():
    raise FileNotFoundError(f'File not found: {path}')
  with path.open('r') as f:
    df = pd.read_csv(f)
  df.columns = [str(c).strip() for c in df.columns]
  return df


def _column(df: pd.DataFrame, name: str, path: str) -> np.ndarray:
  if name not in df.columns:
    raise DataInputError(
        f'{path}: missing column {name!r}. Columns: {list(df.columns)}'
    )
  return df[name].astype(str).str.strip().to_numpy(dtype=object)


def _encode(
    names: np.ndarray, path: str
) -> tuple[np.ndarray, ids.data.LabelMap]:
  try:
    return ids.data.encode_labels(names, _TASK.value)
  except KeyError as e:
    epy.reraise(e, prefix=f'{path}: ')


def _labels_from_counts(path: str) -> tuple[np.ndarray, np.ndarray]:
  """Expands binary `tp, tn, fp, fn` counts into label arrays."""
  df = _read_frame(path)
  counts = {}
  for name in ('tp', 'tn', 'fp', 'fn'):
    values = df[name].to_numpy() if name in df.columns else []
    if len(values) != 1 or values[0] < 0:
      raise DataInputError(
          f'{path}: expected one non-negative {name!r} count.'
      )
    counts[name] = int(values[0])
  repeats = [counts[k] for k in ('tp', 'tn', 'fp', 'fn')]
  return np.repeat([1, 0, 0, 1], repeats), np.repeat([1, 0, 1, 0], repeats)


def cmd_evaluate() -> None:
  """Evaluates predictions (or binary confusion counts) from files."""
  _require(_OUT)
  scores = None
  if _COUNTS.value is not None:
    if _TASK.value != ids.data.Task.BINARY:
      raise _usage('--counts is only supported with --task=binary.')
    y_true, y_pred = _labels_from_counts(_COUNTS.value)
    label_map = ids.data.binary_label_map()
  else:
    _require(_TRUTH, _PREDICTIONS)
    truth = _read_frame(_TRUTH.value)
    predictions = _read_frame(_PREDICTIONS.value)
    y_true, label_map = _encode(
        _column(truth, _LABEL_COLUMN.value, _TRUTH.value), _TRUTH.value
    )
    y_pred, _ = _encode(
        _column(predictions, PREDICTION_COLUMN, _PREDICTIONS.value),
        _PREDICTIONS.value,
    )
    if len(y_true) != len(y_pred):
      raise DataInputError(
          f'{_TRUTH.value} has {len(y_true)} rows but {_PREDICTIONS.value}'
          f' has {len(y_pred)}.'
      )
    if _SCORES.value is not None:
      scores_df = _read_frame(_SCORES.value)
      missing = [n for n in label_map.names if n not in scores_df.columns]
      if missing:
        raise DataInputError(
            f'{_SCORES.value}: missing score columns {missing}.'
        )
      scores = scores_df[list(label_map.names)].to_numpy(dtype=np.float64)
      if len(scores) != len(y_true):
        raise DataInputError(
            f'{_SCORES.value} has {len(scores)} rows, expected {len(y_true)}.'
        )

  evaluation = ids.evals.evaluate_predictions(
      y_true, y_pred, n_classes=label_map.n_classes, scores=scores
  )
  out = epath.Path(_OUT.value)
  out.mkdir(parents=True, exist_ok=True)
  (out / 'metrics.json').write_text(
      ids.experiment.to_json({
          'metrics': evaluation.metrics.to_dict(label_map),
          'confusion': evaluation.confusion.to_dict(label_map),
      })
  )
  ids.experiment.write_evaluation_files(evaluation, out, label_map.names)
  m = evaluation.metrics
  print(
      f'accuracy {m.accuracy:.2f}  precision {m.precision:.2f}  recall'
      f' {m.recall:.2f}  f1 {m.f1:.2f}  mae {m.mae:.2f}  rmse {m.rmse:.2f}'
  )


def cmd_inspect() -> None:
  """Prints the schema and class distribution of a CSV file."""
  _require(_DATA)
  ds = _load()
  print(f'File:     {_DATA.value}')
  print(f'Rows:     {ds.n_rows}')
  print(f'Features: {ds.n_features}')
  print(f'Columns:  {", ".join(ds.feature_names)}')
  print(f'Classes ({ds.label_map.task}):')
  for name, count in ds.distribution().named(ds.label_map).items():
    print(f'  {name:<10} {count}')


_HANDLERS: dict[str, Callable[[], None]] = {
    'run': cmd_run,
    'balance': cmd_balance,
    'evaluate': cmd_evaluate,
    'inspect': cmd_inspect,
}


def _exit_code(e: BaseException) -> int:
  if isinstance(e, (app.UsageError, flags.Error)):
    return EXIT_USAGE
  if isinstance(
      e, (ids.data.DataError, DataInputError, FileNotFoundError, KeyError)
  ):
    return EXIT_DATA
  return EXIT_INTERNAL


def main(argv: Sequence[str]) -> int:
  """Dispatches `argv[1]` and maps errors to exit codes."""
  try:
    if len(argv) != 2 or argv[1] not in _HANDLERS:
      raise _usage(
          f'Expected one command among {list(_HANDLERS)}. Got {argv[1:]}.'
      )
    _apply_config_file()
    _HANDLERS[argv[1]]()
  except Exception as e:  # pylint: disable=broad-exception-caught
    code = _exit_code(e)
    if code == EXIT_INTERNAL:
      logging.exception('wsnids %s failed.', argv[1:2])
    print(f'wsnids: error: {e}', file=sys.stderr)
    return code
  return EXIT_OK


def _parse_flags(argv: list[str]) -> list[str]:
  try:
    return flags.FLAGS(argv)
  except flags.Error as e:
    print(f'wsnids: error: {e}', file=sys.stderr)
    sys.exit(EXIT_USAGE)


def run() -> None:
  """Console script entry point."""
  app.run(main, flags_parser=_parse_flags)


if __name__ == '__main__':
  run()
