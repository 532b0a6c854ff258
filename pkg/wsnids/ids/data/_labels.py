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

"""Class label encoding."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
import dataclasses
import enum
import functools

from kauldron.typing import Int  # pylint: disable=g-importing-member
import numpy as np


class Task(enum.StrEnum):
  """Classification task.

  * `BINARY`: `Normal` vs `Attack`.
  * `MULTICLASS`: `Normal` and the four DoS attack types.
  """

  BINARY = 'binary'
  MULTICLASS = 'multiclass'


NORMAL = 'Normal'
ATTACK = 'Attack'

# Code order of the multiclass task.
WSNDS_CLASSES = ('Normal', 'Grayhole', 'Blackhole', 'TDMA', 'Flooding')

# Alternative spellings found across WSN-DS distributions.
_ALIASES = {
    'scheduling': 'TDMA',
    'gray hole': 'Grayhole',
    'black hole': 'Blackhole',
}


def _canonical(name: str) -> str:
  return ' '.join(str(name).split()).lower()


@dataclasses.dataclass(frozen=True, kw_only=True)
class LabelMap:
  """Mapping between raw class names and integer codes.

  Attributes:
    task: The task the codes were produced for.
    names: Class name for each code (`names[code]`).
  """

  task: Task
  names: tuple[str, ...]

  def __post_init__(self):
    object.__setattr__(self, 'task', Task(self.task))
    object.__setattr__(self, 'names', tuple(self.names))
    if len(set(map(_canonical, self.names))) != len(self.names):
      raise ValueError(f'Duplicate class names: {self.names}')
    if self.task == Task.BINARY and len(self.names) != 2:
      raise ValueError(f'Binary label map needs 2 classes. Got {self.names}')

  @functools.cached_property
  def mapping(self) -> Mapping[str, int]:
    """Ordered `name -> code` mapping."""
    return {name: code for code, name in enumerate(self.names)}

  @property
  def n_classes(self) -> int:
    return len(self.names)

  def code_of(self, name: str) -> int:
    """Returns the code of `name` (case-insensitive, trimmed)."""
    return self._lookup[_canonical(name)]

  def decode(self, labels: Int['n']) -> np.ndarray:
    """Returns the class names of the `labels` codes."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size and (labels.min() < 0 or labels.max() >= self.n_classes):
      raise ValueError(
          f'Codes should be in [0, {self.n_classes}). Got range'
          f' [{labels.min()}, {labels.max()}].'
      )
    return np.asarray(self.names, dtype=object)[labels]

  def to_dict(self) -> dict[str, object]:
    return {'task': str(self.task), 'names': list(self.names)}

  @classmethod
  def from_dict(cls, value: Mapping[str, object]) -> LabelMap:
    return cls(task=Task(value['task']), names=tuple(value['names']))

  @functools.cached_property
  def _lookup(self) -> Mapping[str, int]:
    lookup = {_canonical(name): code for code, name in enumerate(self.names)}
    for alias, target in _ALIASES.items():
      if _canonical(target) in lookup:
        lookup.setdefault(alias, lookup[_canonical(target)])
    return lookup


def binary_label_map() -> LabelMap:
  return LabelMap(task=Task.BINARY, names=(NORMAL, ATTACK))


def multiclass_label_map(extra_classes: Sequence[str] = ()) -> LabelMap:
  """WSN-DS multiclass map, optionally extended with extra class names."""
  return LabelMap(
      task=Task.MULTICLASS, names=WSNDS_CLASSES + tuple(extra_classes)
  )


def encode_labels(
    raw_labels: Sequence[str],
    task: Task | str,
    *,
    normal_name: str = NORMAL,
    extra_classes: Sequence[str] = (),
) -> tuple[Int['n'], LabelMap]:
  """Encodes raw class names into integer codes.

  Binary: the configured normal class is `0`, anything else is `1` (Attack).
  Multiclass: `Normal=0, Grayhole=1, Blackhole=2, TDMA=3, Flooding=4`, then
  `extra_classes` in the given order.

  Names are matched case-insensitively after trimming. `Scheduling` is an
  alias for `TDMA`.

  Args:
    raw_labels: The class names, one per row.
    task: `binary` or `multiclass`.
    normal_name: Name of the normal class (binary task only).
    extra_classes: Additional multiclass names accepted after the five WSN-DS
      classes.

  Returns:
    The `int64` codes and the `LabelMap` to decode them.
  """
  task = Task(task)
  canonical = np.asarray(
      [_canonical(name) for name in raw_labels], dtype=object
  )
  if empty := np.flatnonzero(canonical == '').tolist():
    raise ValueError(f'Empty class name at row(s) {empty[:10]}.')
  if task == Task.BINARY:
    label_map = binary_label_map()
    labels = (canonical != _canonical(normal_name)).astype(np.int64)
    return labels, label_map

  label_map = multiclass_label_map(extra_classes)
  uniques, inverse = np.unique(canonical, return_inverse=True)
  codes = []
  for name in uniques:
    try:
      codes.append(label_map._lookup[name])  # pylint: disable=protected-access
    except KeyError:
      raise KeyError(
          f'Unknown class {name!r}. Expected one of {label_map.names}. Use'
          ' `extra_classes=` to accept additional classes.'
      ) from None
  codes = np.asarray(codes, dtype=np.int64)
  return codes[inverse].reshape(-1), label_map


def decode_labels(labels: Int['n'], label_map: LabelMap) -> np.ndarray:
  """Inverse of `encode_labels` (binary decodes to `Normal`/`Attack`)."""
  return label_map.decode(labels)
