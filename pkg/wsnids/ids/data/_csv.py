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

"""CSV ingestion."""

from __future__ import annotations

from collections.abc import Sequence
import re

from absl import logging
from etils import epath
import numpy as np
import pandas as pd
from wsnids.ids.data import _dataset
from wsnids.ids.data import _labels

# Label column of the public WSN-DS CSV.
WSNDS_LABEL_COLUMN = 'Attack type'

# Line 1 is the header.
_FIRST_DATA_LINE = 2


def load_csv(
    path: epath.PathLike,
    *,
    label_column: str = WSNDS_LABEL_COLUMN,
    drop_columns: Sequence[str] = (),
) -> _dataset.Dataset:
  """Loads a WSN-DS-shaped CSV file.

  Every column other than `label_column` and `drop_columns` is a numeric
  feature, kept in file order. Column names are compared after trimming
  whitespace (WSN-DS headers have leading spaces).

  Args:
    path: CSV file with a header row.
    label_column: Column holding the class names.
    drop_columns: Columns to ignore (e.g. node id or time).

  Returns:
    The dataset, with `raw_labels` set and `labels` not encoded yet.

  Raises:
    FileNotFoundError: If `path` does not exist.
    DataError: On missing columns, ragged rows or non-numeric cells.
  """
  path = epath.Path(path)
  if not path.exists():
    raise FileNotFoundError(f'Dataset not found: {path}')

  try:
    with path.open('r') as f:
      df = pd.read_csv(
          f,
          dtype=str,
          keep_default_na=False,
          na_filter=False,
          skip_blank_lines=True,
      )
  except pd.errors.ParserError as e:
    raise _dataset.DataError(f'{path}: ragged row. {_parser_hint(e)}') from e
  except pd.errors.EmptyDataError as e:
    raise _dataset.DataError(f'{path}: empty file, no header row.') from e

  df.columns = [str(c).strip() for c in df.columns]
  if len(set(df.columns)) != len(df.columns):
    raise _dataset.DataError(f'{path}: duplicate column names {df.columns}.')

  label_column = label_column.strip()
  if label_column not in df.columns:
    raise _dataset.DataError(
        f'{path}: missing label column {label_column!r}. Columns:'
        f' {list(df.columns)}'
    )
  drop_columns = [c.strip() for c in drop_columns]
  if missing := sorted(set(drop_columns) - set(df.columns)):
    raise _dataset.DataError(f'{path}: cannot drop missing columns {missing}.')

  # Short rows are padded by pandas (with NaN or an empty string).
  df = df.fillna('').apply(lambda col: col.astype(str).str.strip())
  empty = (df == '').to_numpy()
  if empty.any():
    row, col = np.argwhere(empty)[0]
    raise _dataset.DataError(
        f'{path}: missing cell at line {row + _FIRST_DATA_LINE}, column'
        f' {df.columns[col]!r} (short row or empty field, expected'
        f' {len(df.columns)} fields).'
    )

  feature_names = [
      c for c in df.columns if c != label_column and c not in drop_columns
  ]
  features = np.empty((len(df), len(feature_names)), dtype=np.float64)
  for j, name in enumerate(feature_names):
    cells = df[name]
    values = pd.to_numeric(cells, errors='coerce')
    bad = values.isna().to_numpy()
    if bad.any():
      row = int(np.flatnonzero(bad)[0])
      raise _dataset.DataError(
          f'{path}: non-numeric cell {cells.iloc[row]!r} at line'
          f' {row + _FIRST_DATA_LINE}, column {name!r}.'
      )
    features[:, j] = values.to_numpy(dtype=np.float64)

  if not np.isfinite(features).all():
    row, col = np.argwhere(~np.isfinite(features))[0]
    raise _dataset.DataError(
        f'{path}: non-finite cell at line {row + _FIRST_DATA_LINE}, column'
        f' {feature_names[col]!r}.'
    )

  raw_labels = df[label_column].to_numpy(dtype=object)
  logging.info(
      'Loaded %s: %d rows, %d features.', path, len(df), len(feature_names)
  )
  return _dataset.Dataset(
      features=features,
      feature_names=tuple(feature_names),
      raw_labels=raw_labels,
  )


def load_encoded_csv(
    path: epath.PathLike,
    *,
    task: _labels.Task | str,
    label_column: str = WSNDS_LABEL_COLUMN,
    drop_columns: Sequence[str] = (),
    normal_name: str = _labels.NORMAL,
    extra_classes: Sequence[str] = (),
) -> _dataset.Dataset:
  """`load_csv` followed by `Dataset.encode`."""
  ds = load_csv(path, label_column=label_column, drop_columns=drop_columns)
  ds = ds.encode(task, normal_name=normal_name, extra_classes=extra_classes)
  logging.info(
      'Class distribution (%s): %s',
      ds.label_map.task,
      ds.distribution().named(ds.label_map),
  )
  return ds


def write_csv(
    ds: _dataset.Dataset,
    path: epath.PathLike,
    *,
    label_column: str = WSNDS_LABEL_COLUMN,
) -> None:
  """Writes an encoded dataset as CSV, labels decoded to class names."""
  if ds.labels is None or ds.label_map is None:
    raise ValueError('Only encoded datasets can be written.')
  df = pd.DataFrame(ds.features, columns=list(ds.feature_names))
  df[label_column] = ds.label_map.decode(ds.labels)
  path = epath.Path(path)
  path.parent.mkdir(parents=True, exist_ok=True)
  with path.open('w') as f:
    df.to_csv(f, index=False, float_format='%.17g')


def _parser_hint(e: pd.errors.ParserError) -> str:
  """Rewrites the pandas tokenizer message with file line numbers."""
  msg = str(e).strip()
  if m := re.search(r'Expected (\d+) fields in line (\d+), saw (\d+)', msg):
    expected, line, saw = m.groups()
    return f'Line {line}: expected {expected} fields, saw {saw}.'
  return msg
