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

"""Plot-ready CSV tables (one row per point / cell / model)."""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from etils import epath
import pandas as pd
from wsnids.ids.evals import _confusion
from wsnids.ids.evals import _metrics
from wsnids.ids.evals import _roc


def roc_frame(
    curves: Mapping[int, _roc.RocCurve], class_names: Sequence[str]
) -> pd.DataFrame:
  """Columns `class, fpr, tpr, threshold`, curves in code order."""
  rows = []
  for code in sorted(curves):
    curve = curves[code]
    for fpr, tpr, threshold in zip(curve.fpr, curve.tpr, curve.thresholds):
      rows.append((class_names[code], fpr, tpr, threshold))
  return pd.DataFrame(rows, columns=['class', 'fpr', 'tpr', 'threshold'])


def confusion_frame(
    cm: _confusion.ConfusionMatrix, class_names: Sequence[str]
) -> pd.DataFrame:
  """Columns `true, predicted, count`, row-major."""
  return pd.DataFrame(
      [(class_names[t], class_names[p], n) for t, p, n in cm.cells()],
      columns=['true', 'predicted', 'count'],
  )


def bars_frame(
    means: Mapping[str, Mapping[str, float | None]],
) -> pd.DataFrame:
  """One row per model with its fold-mean metrics."""
  return pd.DataFrame(
      [
          {'model': model, **{m: values[m] for m in _metrics.METRIC_NAMES}}
          for model, values in means.items()
      ],
      columns=['model', *_metrics.METRIC_NAMES],
  )


def write_frame(df: pd.DataFrame, path: epath.PathLike) -> epath.Path:
  path = epath.Path(path)
  path.parent.mkdir(parents=True, exist_ok=True)
  with path.open('w') as f:
    df.to_csv(f, index=False, float_format='%.17g')
  return path
