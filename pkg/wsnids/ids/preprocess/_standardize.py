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

"""Feature standardization: `(x - mean) / std` per column."""

from __future__ import annotations

import dataclasses

from kauldron.typing import Float, typechecked  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.utils import _arrays

# Columns with `std <= EPSILON` are constant and standardize to 0.
EPSILON = 1e-12


@dataclasses.dataclass(frozen=True, kw_only=True, eq=False)
class StandardizerParams:
  """Per-column statistics.

  Attributes:
    mean: Column means.
    std: Column standard deviations (population by default, see `ddof`).
    ddof: Delta degrees of freedom used for `std` (`0`: divide by `n`, `1`:
      divide by `n - 1`).
    fitted_on: Free-form provenance of the rows the statistics come from
      (e.g. `'full'`, `'train_fold_3'`).
  """

  mean: Float['d']
  std: Float['d']
  ddof: int = 0
  fitted_on: str = ''

  def __post_init__(self):
    mean = _arrays.readonly(np.asarray(self.mean, dtype=np.float64))
    std = _arrays.readonly(np.asarray(self.std, dtype=np.float64))
    if mean.shape != std.shape or mean.ndim != 1:
      raise ValueError(
          f'mean and std should be 1-D of same length. Got {mean.shape} and'
          f' {std.shape}.'
      )
    if (std < 0).any():
      raise ValueError('Standard deviations should be non-negative.')
    object.__setattr__(self, 'mean', mean)
    object.__setattr__(self, 'std', std)

  @property
  def n_features(self) -> int:
    return len(self.mean)

  def to_dict(self) -> dict[str, object]:
    return {
        'mean': self.mean.tolist(),
        'std': self.std.tolist(),
        'ddof': self.ddof,
        'fitted_on': self.fitted_on,
    }


def fit_standardizer(
    features: Float['n d'], *, ddof: int = 0, fitted_on: str = ''
) -> StandardizerParams:
  """Computes the column means and standard deviations.

  Args:
    features: Matrix with at least one row.
    ddof: `0` for the population standard deviation (default), `1` for the
      sample one.
    fitted_on: Provenance recorded in the params.

  Returns:
    The fitted params.
  """
  features = _arrays.as_features(features)
  if features.shape[0] == 0:
    raise ValueError('Cannot fit a standardizer on an empty matrix.')
  if ddof not in (0, 1):
    raise ValueError(f'ddof should be 0 or 1. Got {ddof}.')
  if ddof and features.shape[0] < 2:
    raise ValueError('The sample standard deviation needs at least 2 rows.')
  return StandardizerParams(
      mean=features.mean(axis=0),
      std=features.std(axis=0, ddof=ddof),
      ddof=ddof,
      fitted_on=fitted_on,
  )


@typechecked
def _standardize(
    features: Float['n d'], mean: Float['d'], std: Float['d']
) -> Float['n d']:
  constant = std <= EPSILON
  safe_std = np.where(constant, 1.0, std)
  out = (features - mean) / safe_std
  out[:, constant] = 0.0
  return out


def transform(
    params: StandardizerParams, features: Float['n d']
) -> Float['n d']:
  """Standardizes `features` with `params`.

  Constant columns (`std <= EPSILON`) map to 0.

  Args:
    params: Fitted statistics.
    features: Matrix with `params.n_features` columns.

  Returns:
    The standardized matrix (a new array).
  """
  features = _arrays.as_features(features)
  if features.shape[1] != params.n_features:
    raise ValueError(
        f'Standardizer was fit on {params.n_features} features, got'
        f' {features.shape[1]}.'
    )
  return _standardize(features, params.mean, params.std)


def fit_transform(
    features: Float['n d'], *, ddof: int = 0, fitted_on: str = ''
) -> tuple[Float['n d'], StandardizerParams]:
  """Fits on `features` and returns them standardized, with the params."""
  params = fit_standardizer(features, ddof=ddof, fitted_on=fitted_on)
  return transform(params, features), params
