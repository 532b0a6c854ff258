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

"""Training and prediction contract shared by the six classifiers."""

from __future__ import annotations

import dataclasses
import functools
from typing import Any

from absl import logging
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.models import _boosting
from wsnids.ids.models import _cart
from wsnids.ids.models import _config
from wsnids.ids.models import _knn
from wsnids.ids.models import _mlp
from wsnids.ids.models import _tree
from wsnids.ids.utils import _arrays


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class Model:
  """A trained classifier.

  Models are immutable and can be shared across threads.

  Attributes:
    kind: Classifier family.
    n_classes: Scores have one column per code in `[0, n_classes)`.
    n_features: Expected feature width.
    params: Trained arrays (nested dict), per kind:
      * `dt`, `rf`: `{'trees': ...}` (packed trees, leaf class counts).
      * `xgb`, `lgb`: `{'trees': ..., 'init': ..., 'loss_history': ...}`.
      * `knn`: `{'features': ..., 'labels': ...}`.
      * `mlp`: `{'net': <flax params>}`.
      * Single-class training data: `{'constant': [code]}`.
    config: Training config snapshot.
    trained_on: Free-form provenance (e.g. `'fold 3 train'`).
  """

  kind: _config.ModelKind
  n_classes: int
  n_features: int
  params: dict[str, Any]
  config: _config.TrainConfig
  trained_on: str = ''

  def __post_init__(self):
    object.__setattr__(self, 'kind', _config.ModelKind(self.kind))

  @property
  def seed(self) -> int:
    return self.config.seed

  @property
  def is_constant(self) -> bool:
    return 'constant' in self.params

  @functools.cached_property
  def trees(self) -> list[_tree.Tree]:
    if 'trees' not in self.params:
      return []
    return _tree.unstack_trees(self.params['trees'])

  @functools.cached_property
  def booster(self) -> _boosting.Booster:
    return _boosting.Booster(
        init=np.asarray(self.params['init']),
        trees=self.trees,
        n_classes=self.n_classes,
        loss_history=np.asarray(self.params['loss_history']),
    )


def train(
    kind: _config.ModelKind | str,
    features: Float['n d'],
    labels: Int['n'],
    config: _config.TrainConfig = _config.TrainConfig(),
    *,
    n_classes: int | None = None,
    trained_on: str = '',
) -> Model:
  """Trains one classifier.

  Training is deterministic given the data (in its row order), the config and
  `config.seed`. DT and KNN do not depend on the row order.

  Args:
    kind: Classifier family.
    features: Training rows (standardized).
    labels: Training codes.
    config: Hyperparameters and seed.
    n_classes: Width of the scores (default: `max(labels) + 1`).
    trained_on: Provenance recorded on the model.

  Returns:
    The trained `Model`. Single-class training data gives a constant
    predictor of that class.
  """
  kind = _config.ModelKind(kind)
  features, labels = _arrays.as_features_and_labels(features, labels)
  if not len(labels):
    raise ValueError(f'Cannot train {kind} on an empty dataset.')
  if labels.min() < 0:
    raise ValueError(f'Codes should be non-negative. Got {labels.min()}.')
  if n_classes is None:
    n_classes = int(labels.max()) + 1
  elif labels.max() >= n_classes:
    raise ValueError(
        f'Got code {labels.max()} for a {n_classes}-class model.'
    )
  model = functools.partial(
      Model,
      kind=kind,
      n_classes=n_classes,
      n_features=features.shape[1],
      config=config,
      trained_on=trained_on,
  )

  present = np.unique(labels)
  if len(present) == 1:
    logging.info('%s: single-class data, constant predictor.', kind)
    return model(params={'constant': present.astype(np.int64)})

  kind_config = config.for_kind(kind)
  match kind:
    case _config.ModelKind.DT:
      trees = _cart.fit_decision_tree(
          features, labels, n_classes, kind_config
      )
      params = {'trees': _tree.stack_trees(trees)}
    case _config.ModelKind.RF:
      trees = _cart.fit_forest(
          features,
          labels,
          n_classes,
          kind_config,
          seed=config.seed,
          n_jobs=config.n_jobs,
      )
      params = {'trees': _tree.stack_trees(trees)}
    case _config.ModelKind.KNN:
      params = {'features': features.copy(), 'labels': labels.copy()}
    case _config.ModelKind.MLP:
      params = {
          'net': _mlp.fit_mlp(
              features, labels, n_classes, kind_config, seed=config.seed
          )
      }
    case _config.ModelKind.XGB | _config.ModelKind.LGB:
      booster = _boosting.fit_booster(
          features,
          labels,
          n_classes,
          kind_config,
          histogram=kind == _config.ModelKind.LGB,
          n_jobs=config.n_jobs,
      )
      params = {
          'trees': _tree.stack_trees(booster.trees),
          'init': booster.init,
          'loss_history': booster.loss_history,
      }
    case _:
      raise KeyError(f'Unknown model kind {kind!r}.')
  return model(params=params)


def predict_scores(model: Model, features: Float['m d']) -> Float['m k']:
  """Per-class scores, one row per input row.

  * DT: class frequencies of the leaf.
  * RF: mean leaf frequencies over trees (or vote fractions for hard voting).
  * KNN: neighbor vote fractions.
  * MLP, XGB, LGB: softmax of the logits.

  Args:
    model: Trained model.
    features: Rows to score.

  Returns:
    Scores of shape `(m, n_classes)`, each row summing to 1.
  """
  features = _arrays.as_features(features)
  if features.shape[1] != model.n_features:
    raise ValueError(
        f'{model.kind} model expects {model.n_features} features. Got'
        f' {features.shape[1]}.'
    )
  if model.is_constant:
    scores = np.zeros((len(features), model.n_classes))
    scores[:, int(model.params['constant'][0])] = 1.0
    return scores

  kind_config = model.config.for_kind(model.kind)
  match model.kind:
    case _config.ModelKind.DT:
      return _cart.leaf_frequencies(model.trees[0], features)
    case _config.ModelKind.RF:
      return _cart.forest_scores(model.trees, features, kind_config.voting)
    case _config.ModelKind.KNN:
      return _knn.vote_fractions(
          model.params['features'],
          model.params['labels'],
          features,
          k=kind_config.k,
          n_classes=model.n_classes,
          n_jobs=model.config.n_jobs,
      )
    case _config.ModelKind.MLP:
      return _mlp.mlp_scores(
          model.params['net'],
          features,
          hidden=kind_config.hidden,
          n_classes=model.n_classes,
      )
    case _config.ModelKind.XGB | _config.ModelKind.LGB:
      return model.booster.scores(features)
    case _:
      raise KeyError(f'Unknown model kind {model.kind!r}.')


def predict(model: Model, features: Float['m d']) -> Int['m']:
  """Argmax of `predict_scores` (lowest code on ties)."""
  return np.argmax(predict_scores(model, features), axis=1).astype(np.int64)


def feature_importances(model: Model) -> Float['d']:
  """Mean impurity decrease per feature (DT and RF), summing to 1.

  Args:
    model: A `dt` or `rf` model.

  Returns:
    The importances, all 0 when the model has no split.
  """
  if model.is_constant:
    return np.zeros(model.n_features)
  if model.kind not in (_config.ModelKind.DT, _config.ModelKind.RF):
    raise ValueError(
        'Feature importances are only defined for dt and rf. Got'
        f' {model.kind}.'
    )
  return _cart.feature_importances(model.trees, model.n_features)

