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

"""Dataset container."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses

from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.data import _distribution
from wsnids.ids.data import _labels
from wsnids.ids.utils import _arrays


class DataError(ValueError):
  """Malformed input data (missing column, non-numeric cell, ragged row,...)."""


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class Dataset:
  """Feature matrix with its labels.

  A freshly loaded dataset only has `raw_labels`. `encode()` returns a copy
  with the integer `labels` and the `label_map` to decode them.

  Arrays are read-only, so a `Dataset` can be shared across threads.

  Attributes:
    features: `float64` matrix of shape `(n_rows, n_features)`.
    feature_names: Column name of each feature.
    raw_labels: Class names as found in the file (if any).
    labels: Integer codes in `[0, n_classes)` (once encoded).
    label_map: Mapping used to produce `labels`.
  """

  features: Float['n d']
  feature_names: tuple[str, ...]
  raw_labels: np.ndarray | None = None
  labels: Int['n'] | None = None
  label_map: _labels.LabelMap | None = None

  def __post_init__(self):
    features = _arrays.as_features(self.features)
    object.__setattr__(self, 'features', _arrays.readonly(features))
    object.__setattr__(self, 'feature_names', tuple(self.feature_names))
    if len(self.feature_names) != features.shape[1]:
      raise ValueError(
          f'Got {len(self.feature_names)} feature names for'
          f' {features.shape[1]} feature columns.'
      )
    if self.raw_labels is not None:
      raw_labels = np.asarray(self.raw_labels, dtype=object)
      if raw_labels.shape != (len(features),):
        raise ValueError(
            f'Got {raw_labels.shape} raw labels for {len(features)} rows.'
        )
      object.__setattr__(self, 'raw_labels', _arrays.readonly(raw_labels))
    if self.labels is not None:
      labels = _arrays.as_labels(self.labels)
      if len(labels) != len(features):
        raise ValueError(f'Got {len(labels)} labels for {len(features)} rows.')
      if self.label_map is not None and labels.size:
        if labels.min() < 0 or labels.max() >= self.label_map.n_classes:
          raise ValueError(
              f'Labels should be in [0, {self.label_map.n_classes}).'
          )
      object.__setattr__(self, 'labels', _arrays.readonly(labels))

  @property
  def n_rows(self) -> int:
    return self.features.shape[0]

  @property
  def n_features(self) -> int:
    return self.features.shape[1]

  @property
  def n_classes(self) -> int:
    if self.label_map is not None:
      return self.label_map.n_classes
    if self.labels is None or not self.labels.size:
      return 0
    return int(self.labels.max()) + 1

  def encode(
      self,
      task: _labels.Task | str,
      *,
      normal_name: str = _labels.NORMAL,
      extra_classes: Sequence[str] = (),
  ) -> Dataset:
    """Returns a copy with `labels` encoded from `raw_labels`."""
    if self.raw_labels is None:
      raise ValueError('Dataset has no raw labels to encode.')
    labels, label_map = _labels.encode_labels(
        self.raw_labels,
        task,
        normal_name=normal_name,
        extra_classes=extra_classes,
    )
    return dataclasses.replace(self, labels=labels, label_map=label_map)

  def distribution(self) -> _distribution.ClassDistribution:
    """Class distribution of the encoded labels."""
    if self.labels is None:
      raise ValueError('Dataset labels are not encoded. Call `.encode()`.')
    return _distribution.class_distribution(
        self.labels, n_classes=self.n_classes
    )

  def with_arrays(self, features: Float['m d'], labels: Int['m']) -> Dataset:
    """Returns a dataset with the same schema but new rows."""
    return Dataset(
        features=features,
        feature_names=self.feature_names,
        labels=labels,
        label_map=self.label_map,
    )

  def take(self, rows: Int['m']) -> Dataset:
    """Returns the subset of `rows`, in the given order."""
    rows = np.asarray(rows, dtype=np.int64)
    return Dataset(
        features=self.features[rows],
        feature_names=self.feature_names,
        raw_labels=None if self.raw_labels is None else self.raw_labels[rows],
        labels=None if self.labels is None else self.labels[rows],
        label_map=self.label_map,
    )
