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

"""Array normalization helpers shared by all stages."""

from __future__ import annotations

from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np


def as_features(features, *, name: str = 'features') -> Float['n d']:
  """Returns `features` as a 2-D `float64` array."""
  features = np.asarray(features, dtype=np.float64)
  if features.ndim != 2:
    raise ValueError(
        f'`{name}` should be a 2-D (rows, features) matrix. Got shape'
        f' {features.shape}.'
    )
  return features


def as_labels(labels, *, name: str = 'labels') -> Int['n']:
  """Returns `labels` as a 1-D `int64` array."""
  labels = np.asarray(labels)
  if labels.ndim != 1:
    raise ValueError(f'`{name}` should be 1-D. Got shape {labels.shape}.')
  if labels.size and not np.issubdtype(labels.dtype, np.integer):
    as_int = labels.astype(np.int64)
    if not np.array_equal(as_int, labels):
      raise ValueError(f'`{name}` should contain integer codes.')
    labels = as_int
  return labels.astype(np.int64, copy=False)


def as_features_and_labels(
    features, labels
) -> tuple[Float['n d'], Int['n']]:
  """Normalizes a `(features, labels)` pair and checks the row counts."""
  features = as_features(features)
  labels = as_labels(labels)
  if len(features) != len(labels):
    raise ValueError(
        f'Got {len(features)} feature rows but {len(labels)} labels.'
    )
  return features, labels


def readonly(array: np.ndarray) -> np.ndarray:
  """Returns a read-only view of `array`."""
  view = array.view()
  view.setflags(write=False)
  return view
