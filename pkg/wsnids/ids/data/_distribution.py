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

"""Class distributions."""

from __future__ import annotations

from collections.abc import Mapping
import dataclasses

from kauldron.typing import Int  # pylint: disable=g-importing-member
import numpy as np
from wsnids.ids.data import _labels
from wsnids.ids.utils import _arrays


@dataclasses.dataclass(frozen=True, kw_only=True)
class ClassDistribution:
  """Per-class counts.

  Attributes:
    counts: `code -> count`, ordered by code.
    total: Sum of the counts.
  """

  counts: Mapping[int, int]
  total: int

  def __post_init__(self):
    counts = {int(k): int(v) for k, v in sorted(self.counts.items())}
    if any(v < 0 for v in counts.values()):
      raise ValueError(f'Negative class count: {counts}')
    if sum(counts.values()) != self.total:
      raise ValueError(
          f'Counts {counts} do not sum to the total {self.total}.'
      )
    object.__setattr__(self, 'counts', counts)

  def __getitem__(self, code: int) -> int:
    return self.counts.get(code, 0)

  @property
  def majority_code(self) -> int:
    """Code of the largest class (lowest code on ties)."""
    return max(self.counts, key=lambda k: (self.counts[k], -k))

  @property
  def majority_count(self) -> int:
    return max(self.counts.values(), default=0)

  def named(self, label_map: _labels.LabelMap) -> dict[str, int]:
    """Returns `class name -> count`."""
    return {label_map.names[k]: v for k, v in self.counts.items()}

  def to_dict(
      self, label_map: _labels.LabelMap | None = None
  ) -> dict[str, object]:
    counts = (
        self.named(label_map)
        if label_map is not None
        else {str(k): v for k, v in self.counts.items()}
    )
    return {'counts': counts, 'total': self.total}


def class_distribution(
    labels: Int['n'], *, n_classes: int | None = None
) -> ClassDistribution:
  """Counts the rows of each class.

  Args:
    labels: Encoded labels.
    n_classes: If given, every code in `[0, n_classes)` is reported, including
      the empty ones. Otherwise only the codes present are reported.

  Returns:
    The class distribution.
  """
  labels = _arrays.as_labels(labels)
  if not labels.size:
    raise ValueError('Cannot compute the class distribution of no labels.')
  if labels.min() < 0:
    raise ValueError(f'Codes should be non-negative. Got {labels.min()}.')
  counts = np.bincount(labels, minlength=n_classes or 0)
  if n_classes is None:
    codes = np.flatnonzero(counts)
  else:
    codes = np.arange(len(counts))
  return ClassDistribution(
      counts={int(c): int(counts[c]) for c in codes},
      total=int(labels.size),
  )
