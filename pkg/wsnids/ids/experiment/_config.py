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

"""Experiment configuration."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses
import enum
from typing import Any

from wsnids.ids.data import _csv
from wsnids.ids.data import _labels
from wsnids.ids.models import _config as _models_config
from wsnids.ids.resample import _tomek


class Balance(enum.StrEnum):
  """Whether the training data is balanced.

  * `NONE`: Raw class distribution (the `WoSTL` arm).
  * `SMOTETOMEK`: SMOTE followed by Tomek-link removal (the `WiSTL` arm).
  """

  NONE = 'none'
  SMOTETOMEK = 'smotetomek'

  @property
  def arm(self) -> str:
    return 'WiSTL' if self == Balance.SMOTETOMEK else 'WoSTL'


class LeakageMode(enum.StrEnum):
  """Where the standardizer and the balancing are fit.

  * `FULL_DATA`: On the full dataset, before the fold split. Test rows
    influence the standardizer, and synthetic rows derived from one fold can
    land in another.
  * `STRICT`: On the training rows of each fold only.
  """

  FULL_DATA = 'full_data'
  STRICT = 'strict'


ALL_MODELS = tuple(_models_config.ModelKind)


@dataclasses.dataclass(frozen=True, kw_only=True)
class ExperimentConfig:
  """Cross-validation experiment.

  Attributes:
    data: CSV path.
    task: `binary` or `multiclass`.
    balance: `none` or `smotetomek`.
    models: Classifiers to train in every fold.
    folds: Number of folds.
    shuffle: Whether rows are shuffled before the split.
    stratified: Whether every fold keeps the class proportions.
    seed: Root seed. Folds, SMOTE and every (fold, model) training run draw
      from streams derived from it.
    leakage_mode: `full_data` (default) or `strict`.
    k_neighbors: SMOTE neighbors.
    policy: Tomek removal policy.
    ddof: Standard deviation denominator offset.
    train: Per-model hyperparameters. Its `seed` is ignored: each run gets a
      derived seed, recorded in the report.
    label_column: Class column of the CSV.
    drop_columns: CSV columns that are not features.
    extra_classes: Multiclass names accepted beyond the WSN-DS ones.
    n_jobs: Worker threads for folds and models.
  """

  data: str = ''
  task: _labels.Task = _labels.Task.BINARY
  balance: Balance = Balance.SMOTETOMEK
  models: tuple[_models_config.ModelKind, ...] = ALL_MODELS
  folds: int = 10
  shuffle: bool = True
  stratified: bool = False
  seed: int = 0
  leakage_mode: LeakageMode = LeakageMode.FULL_DATA
  k_neighbors: int = 5
  policy: _tomek.RemovalPolicy = _tomek.RemovalPolicy.BOTH
  ddof: int = 0
  train: _models_config.TrainConfig = _models_config.TrainConfig()
  label_column: str = _csv.WSNDS_LABEL_COLUMN
  drop_columns: tuple[str, ...] = ()
  extra_classes: tuple[str, ...] = ()
  n_jobs: int = 1

  def __post_init__(self):
    object.__setattr__(self, 'data', str(self.data))
    object.__setattr__(self, 'task', _labels.Task(self.task))
    object.__setattr__(self, 'balance', Balance(self.balance))
    object.__setattr__(
        self, 'models', _models_config.ModelKind.parse_list(self.models)
    )
    object.__setattr__(self, 'leakage_mode', LeakageMode(self.leakage_mode))
    object.__setattr__(self, 'policy', _tomek.RemovalPolicy(self.policy))
    object.__setattr__(self, 'drop_columns', _as_tuple(self.drop_columns))
    object.__setattr__(self, 'extra_classes', _as_tuple(self.extra_classes))
    if self.folds < 2:
      raise ValueError(f'Need at least 2 folds. Got {self.folds}.')
    if self.k_neighbors < 1:
      raise ValueError(f'k_neighbors should be >= 1. Got {self.k_neighbors}.')
    if self.n_jobs == 0 or self.n_jobs < -1:
      raise ValueError(f'n_jobs should be >= 1 or -1. Got {self.n_jobs}.')

  def to_dict(self) -> dict[str, Any]:
    """Every resolved value, JSON-compatible.

    Worker counts are left out: they do not change the results.
    """
    train = self.train.to_dict()
    del train['seed'], train['n_jobs']
    return {
        'data': self.data,
        'task': str(self.task),
        'balance': str(self.balance),
        'arm': self.balance.arm,
        'models': [str(k) for k in self.models],
        'folds': self.folds,
        'shuffle': self.shuffle,
        'stratified': self.stratified,
        'seed': self.seed,
        'leakage_mode': str(self.leakage_mode),
        'k_neighbors': self.k_neighbors,
        'policy': str(self.policy),
        'ddof': self.ddof,
        'train': train,
        'label_column': self.label_column,
        'drop_columns': list(self.drop_columns),
        'extra_classes': list(self.extra_classes),
    }


def _as_tuple(value: str | Sequence[str]) -> tuple[str, ...]:
  if isinstance(value, str):
    return tuple(v.strip() for v in value.split(',') if v.strip())
  return tuple(value)
