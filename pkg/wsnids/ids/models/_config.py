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

"""Training configs of the six classifiers."""

from __future__ import annotations

from collections.abc import Mapping
import dataclasses
import enum
import math
from typing import Any


class ModelKind(enum.StrEnum):
  """Classifier families.

  * `DT`: CART decision tree (Gini).
  * `RF`: Random forest of CART trees.
  * `KNN`: k-nearest-neighbors vote.
  * `MLP`: Fully connected network (flax).
  * `XGB`: Gradient boosting with exact greedy split finding.
  * `LGB`: Gradient boosting with histogram split finding, grown leaf-wise.
  """

  DT = 'dt'
  RF = 'rf'
  KNN = 'knn'
  MLP = 'mlp'
  XGB = 'xgb'
  LGB = 'lgb'

  @property
  def display_name(self) -> str:
    return self.value.upper()

  @classmethod
  def parse_list(cls, value: str | Any) -> tuple[ModelKind, ...]:
    """Parses `'dt,rf'` (or a list of names) into kinds."""
    if isinstance(value, str):
      value = [v for v in value.split(',') if v.strip()]
    kinds = []
    for v in value:
      try:
        kinds.append(cls(str(v).strip().lower()))
      except ValueError:
        raise KeyError(
            f'Unknown model kind {v!r}. Expected one of'
            f' {[k.value for k in cls]}.'
        ) from None
    if not kinds:
      raise ValueError('The model list should not be empty.')
    return tuple(dict.fromkeys(kinds))


class Voting(enum.StrEnum):
  """How forest trees are combined.

  * `SOFT`: Mean of the leaf class frequencies.
  * `HARD`: Fraction of the trees voting for each class.
  """

  SOFT = 'soft'
  HARD = 'hard'


def _check_positive(cls_name: str, **values):
  for name, value in values.items():
    if value is not None and value <= 0:
      raise ValueError(f'{cls_name}.{name} should be > 0. Got {value}.')


@dataclasses.dataclass(frozen=True, kw_only=True)
class TreeConfig:
  """CART decision tree.

  Attributes:
    max_depth: Maximum depth (`None` grows until the leaves are pure).
    min_samples_split: Nodes with fewer (weighted) rows are not split.
    min_samples_leaf: Minimum (weighted) rows in each child.
  """

  max_depth: int | None = None
  min_samples_split: int = 2
  min_samples_leaf: int = 1

  def __post_init__(self):
    _check_positive(
        'TreeConfig',
        max_depth=self.max_depth,
        min_samples_split=self.min_samples_split,
        min_samples_leaf=self.min_samples_leaf,
    )


@dataclasses.dataclass(frozen=True, kw_only=True)
class ForestConfig:
  """Random forest.

  Attributes:
    n_trees: Number of trees.
    bootstrap: Fit each tree on `n` rows drawn with replacement.
    max_features: Candidate features per split: `'sqrt'` (`ceil(sqrt(d))`),
      an integer, or `None` for all of them.
    voting: How trees are combined.
    tree: Config of each tree.
  """

  n_trees: int = 100
  bootstrap: bool = True
  max_features: str | int | None = 'sqrt'
  voting: Voting = Voting.SOFT
  tree: TreeConfig = TreeConfig()

  def __post_init__(self):
    _check_positive('ForestConfig', n_trees=self.n_trees)
    object.__setattr__(self, 'voting', Voting(self.voting))
    if isinstance(self.max_features, str) and self.max_features not in (
        'sqrt',
        'all',
    ):
      raise ValueError(
          "ForestConfig.max_features should be 'sqrt', 'all', an int or"
          f' None. Got {self.max_features!r}.'
      )
    if isinstance(self.max_features, int):
      _check_positive('ForestConfig', max_features=self.max_features)

  def n_candidate_features(self, n_features: int) -> int:
    if self.max_features == 'sqrt':
      return min(n_features, math.ceil(math.sqrt(n_features)))
    if self.max_features in (None, 'all'):
      return n_features
    return min(n_features, int(self.max_features))


@dataclasses.dataclass(frozen=True, kw_only=True)
class KnnConfig:
  """k-nearest-neighbors vote.

  Attributes:
    k: Number of neighbors (clamped to the training size).
  """

  k: int = 5

  def __post_init__(self):
    _check_positive('KnnConfig', k=self.k)


@dataclasses.dataclass(frozen=True, kw_only=True)
class MlpConfig:
  """Multilayer perceptron trained with mini-batch gradient descent.

  Attributes:
    hidden: Width of each hidden layer. `()` gives a softmax regression.
    learning_rate: Fixed step size.
    batch_size: Mini-batch size.
    epochs: Passes over the training rows (0 keeps the initialization).
  """

  hidden: tuple[int, ...] = (100,)
  learning_rate: float = 1e-3
  batch_size: int = 256
  epochs: int = 50

  def __post_init__(self):
    object.__setattr__(self, 'hidden', tuple(int(h) for h in self.hidden))
    if any(h <= 0 for h in self.hidden):
      raise ValueError(
          f'MlpConfig.hidden layers should have > 0 units. Got {self.hidden}.'
      )
    _check_positive(
        'MlpConfig',
        learning_rate=self.learning_rate,
        batch_size=self.batch_size,
    )
    if self.epochs < 0:
      raise ValueError(f'MlpConfig.epochs should be >= 0. Got {self.epochs}.')


@dataclasses.dataclass(frozen=True, kw_only=True)
class BoostingConfig:
  """Gradient-boosted trees on softmax logits.

  Attributes:
    n_rounds: Boosting rounds (one tree per class per round).
    learning_rate: Shrinkage applied to every leaf weight. `0` keeps the
      class prior.
    max_depth: Maximum tree depth (`None` for unlimited).
    max_leaves: Maximum leaves per tree (`None` for unlimited).
    leafwise: Grow the leaf with the largest gain first, instead of level by
      level.
    l2: L2 regularization on the leaf weights.
    min_child_weight: Minimum hessian sum in each child.
    min_samples_split: Nodes with fewer rows are not split.
    min_samples_leaf: Minimum rows in each child.
    n_bins: Bins per feature (histogram split finding only).
  """

  n_rounds: int = 100
  learning_rate: float = 0.3
  max_depth: int | None = 6
  max_leaves: int | None = None
  leafwise: bool = False
  l2: float = 1.0
  min_child_weight: float = 1.0
  min_samples_split: int = 2
  min_samples_leaf: int = 1
  n_bins: int = 255

  def __post_init__(self):
    _check_positive(
        'BoostingConfig',
        n_rounds=self.n_rounds,
        max_depth=self.max_depth,
        min_samples_split=self.min_samples_split,
        min_samples_leaf=self.min_samples_leaf,
    )
    if self.max_leaves is not None and self.max_leaves < 2:
      raise ValueError(
          f'BoostingConfig.max_leaves should be >= 2. Got {self.max_leaves}.'
      )
    if self.n_bins < 2:
      raise ValueError(
          f'BoostingConfig.n_bins should be >= 2. Got {self.n_bins}.'
      )
    if self.learning_rate < 0 or self.l2 < 0 or self.min_child_weight < 0:
      raise ValueError(
          'BoostingConfig.learning_rate, l2 and min_child_weight should be'
          f' >= 0. Got {self}.'
      )


XGB_DEFAULTS = BoostingConfig()
LGB_DEFAULTS = BoostingConfig(
    learning_rate=0.1,
    max_depth=None,
    max_leaves=31,
    leafwise=True,
    l2=0.0,
    min_child_weight=1e-3,
    min_samples_leaf=20,
)

_SECTIONS = {
    'dt': TreeConfig,
    'rf': ForestConfig,
    'knn': KnnConfig,
    'mlp': MlpConfig,
    'xgb': BoostingConfig,
    'lgb': BoostingConfig,
}


@dataclasses.dataclass(frozen=True, kw_only=True)
class TrainConfig:
  """Hyperparameters of every classifier, plus the seed.

  Attributes:
    dt: Decision tree.
    rf: Random forest.
    knn: k-nearest-neighbors.
    mlp: Multilayer perceptron.
    xgb: Exact gradient boosting.
    lgb: Histogram gradient boosting.
    seed: Root seed of every random stream used in training.
    n_jobs: Worker threads (forest trees, boosting classes).
  """

  dt: TreeConfig = TreeConfig()
  rf: ForestConfig = ForestConfig()
  knn: KnnConfig = KnnConfig()
  mlp: MlpConfig = MlpConfig()
  xgb: BoostingConfig = XGB_DEFAULTS
  lgb: BoostingConfig = LGB_DEFAULTS
  seed: int = 0
  n_jobs: int = 1

  def for_kind(self, kind: ModelKind | str) -> Any:
    return getattr(self, ModelKind(kind).value)

  def with_overrides(self, overrides: Mapping[str, Any]) -> TrainConfig:
    """Returns a copy with dotted-path overrides applied.

    ```python
    config.with_overrides({'rf.n_trees': 10, 'rf.tree.max_depth': 8})
    ```

    Args:
      overrides: `'section.field' -> value`.

    Returns:
      The new config.
    """
    config = self
    for path, value in overrides.items():
      config = _replace_path(config, path.split('.'), value, path)
    return config

  def to_dict(self) -> dict[str, Any]:
    return _to_dict(self)

  @classmethod
  def from_dict(cls, value: Mapping[str, Any]) -> TrainConfig:
    kwargs = {}
    for name, section in value.items():
      if name in ('seed', 'n_jobs'):
        kwargs[name] = int(section)
      elif name == 'rf':
        section = dict(section)
        if 'tree' in section:
          section['tree'] = TreeConfig(**section['tree'])
        kwargs[name] = ForestConfig(**section)
      elif name in _SECTIONS:
        kwargs[name] = _SECTIONS[name](**section)
      else:
        raise KeyError(f'Unknown TrainConfig section {name!r}.')
    return cls(**kwargs)


def _replace_path(obj, parts: list[str], value, path: str):
  head, *rest = parts
  if not dataclasses.is_dataclass(obj) or head not in {
      f.name for f in dataclasses.fields(obj)
  }:
    raise KeyError(f'Unknown config field {path!r}.')
  if rest:
    value = _replace_path(getattr(obj, head), rest, value, path)
  elif head == 'hidden' and not isinstance(value, tuple):
    value = tuple(value)
  return dataclasses.replace(obj, **{head: value})


def _to_dict(obj) -> Any:
  if dataclasses.is_dataclass(obj):
    return {
        f.name: _to_dict(getattr(obj, f.name))
        for f in dataclasses.fields(obj)
    }
  if isinstance(obj, enum.Enum):
    return obj.value
  if isinstance(obj, tuple):
    return list(obj)
  return obj
