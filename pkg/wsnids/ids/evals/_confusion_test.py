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

import numpy as np
import pytest
from wsnids import ids


def test_hand_counted_binary():
  cm = ids.evals.confusion_matrix([1, 1, 0, 0], [1, 0, 0, 0], 2)
  np.testing.assert_array_equal(cm.counts, [[2, 0], [1, 1]])
  assert cm.tp[1] == 1
  assert cm.fn[1] == 1
  assert cm.fp[1] == 0
  assert cm.tn[1] == 2
  assert cm == ids.evals.ConfusionMatrix.from_binary_counts(
      tp=1, tn=2, fp=0, fn=1
  )


def test_perfect_predictions_are_diagonal():
  labels = np.array([0, 1, 2, 2, 4, 3, 0])
  cm = ids.evals.confusion_matrix(labels, labels, 5)
  np.testing.assert_array_equal(cm.counts, np.diag([2, 1, 2, 1, 1]))


def test_totals_and_supports():
  rng = np.random.default_rng(0)
  y_true = rng.integers(0, 5, size=500)
  y_pred = rng.integers(0, 5, size=500)
  cm = ids.evals.confusion_matrix(y_true, y_pred, 5)
  assert cm.total == 500
  np.testing.assert_array_equal(cm.support, np.bincount(y_true, minlength=5))
  np.testing.assert_array_equal(cm.tp + cm.fn, cm.support)
  np.testing.assert_array_equal(cm.tp + cm.fn + cm.fp + cm.tn, [500] * 5)


def test_addition_pools_counts():
  a = ids.evals.confusion_matrix([0, 1], [0, 0], 2)
  b = ids.evals.confusion_matrix([1, 1], [1, 0], 2)
  np.testing.assert_array_equal((a + b).counts, [[1, 0], [2, 1]])
  with pytest.raises(ValueError, match='3-class'):
    _ = a + ids.evals.confusion_matrix([2], [2], 3)


def test_cells_are_row_major():
  cm = ids.evals.ConfusionMatrix(np.array([[3, 1], [2, 4]]))
  assert cm.cells() == [(0, 0, 3), (0, 1, 1), (1, 0, 2), (1, 1, 4)]


def test_to_dict():
  cm = ids.evals.ConfusionMatrix(np.array([[3, 1], [2, 4]]))
  assert cm.to_dict(ids.data.binary_label_map()) == {
      'counts': [[3, 1], [2, 4]],
      'classes': ['Normal', 'Attack'],
  }


def test_errors():
  with pytest.raises(ValueError, match='2 true labels but 3'):
    ids.evals.confusion_matrix([0, 1], [0, 1, 1], 2)
  with pytest.raises(ValueError, match='outside'):
    ids.evals.confusion_matrix([0, 2], [0, 1], 2)
  with pytest.raises(ValueError, match='outside'):
    ids.evals.confusion_matrix([0, 1], [0, -1], 2)
  with pytest.raises(ValueError, match='square'):
    ids.evals.ConfusionMatrix(np.zeros((2, 3), np.int64))
  with pytest.raises(ValueError, match='non-negative'):
    ids.evals.ConfusionMatrix(np.array([[1, -1], [0, 0]]))
