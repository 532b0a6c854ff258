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

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
from wsnids import ids


def _random_instance(rng: np.random.Generator, with_ties: bool):
  n = int(rng.integers(2, 301))
  labels = rng.integers(0, 2, size=n)
  labels[:2] = [0, 1]
  if with_ties:
    scores = rng.integers(0, 10, size=n).astype(np.float64) - 4.5
  else:
    scores = rng.normal(size=n)
  return labels, scores


class RocCurveTest(parameterized.TestCase):

  def test_perfect_separation(self):
    curve = ids.evals.roc_curve([0, 0, 1, 1], [0.1, 0.2, 0.8, 0.9])
    self.assertEqual(curve.auc, 1.0)

  def test_reversed_scores(self):
    curve = ids.evals.roc_curve([0, 0, 1, 1], [0.9, 0.8, 0.2, 0.1])
    self.assertEqual(curve.auc, 0.0)

  def test_all_equal_scores(self):
    curve = ids.evals.roc_curve([0, 1, 1, 0, 1], [0.3] * 5)
    self.assertEqual(curve.auc, 0.5)
    np.testing.assert_array_equal(curve.fpr, [0.0, 1.0])
    np.testing.assert_array_equal(curve.tpr, [0.0, 1.0])
    np.testing.assert_array_equal(curve.thresholds, [np.inf, 0.3])

  def test_hand_computed_points(self):
    curve = ids.evals.roc_curve([1, 0, 1, 0], [0.9, 0.7, 0.7, 0.1])
    np.testing.assert_allclose(curve.fpr, [0.0, 0.0, 0.5, 1.0])
    np.testing.assert_allclose(curve.tpr, [0.0, 0.5, 1.0, 1.0])
    np.testing.assert_allclose(curve.thresholds, [np.inf, 0.9, 0.7, 0.1])
    self.assertAlmostEqual(curve.auc, 0.875, delta=1e-12)

  @parameterized.parameters(False, True)
  def test_pair_count_oracle(self, with_ties):
    rng = np.random.default_rng(int(with_ties))
    for _ in range(100):
      labels, scores = _random_instance(rng, with_ties)
      curve = ids.evals.roc_curve(labels, scores)
      self.assertAlmostEqual(
          curve.auc,
          ids.testing.pair_count_auc(labels, scores),
          delta=1e-12,
      )

  @parameterized.parameters(False, True)
  def test_curve_shape(self, with_ties):
    rng = np.random.default_rng(10 + int(with_ties))
    for _ in range(20):
      labels, scores = _random_instance(rng, with_ties)
      curve = ids.evals.roc_curve(labels, scores)
      self.assertEqual((curve.fpr[0], curve.tpr[0]), (0.0, 0.0))
      self.assertEqual((curve.fpr[-1], curve.tpr[-1]), (1.0, 1.0))
      self.assertTrue(np.all(np.diff(curve.fpr) >= 0))
      self.assertTrue(np.all(np.diff(curve.tpr) >= 0))
      self.assertTrue(np.all(np.diff(curve.thresholds) < 0))
      self.assertEqual(curve.n_points, len(np.unique(scores)) + 1)

  @parameterized.parameters(False, True)
  def test_invariant_under_cubing(self, with_ties):
    rng = np.random.default_rng(20 + int(with_ties))
    for _ in range(100):
      labels, scores = _random_instance(rng, with_ties)
      self.assertAlmostEqual(
          ids.evals.roc_curve(labels, scores).auc,
          ids.evals.roc_curve(labels, scores**3).auc,
          delta=1e-12,
      )

  def test_errors(self):
    with self.assertRaisesRegex(ValueError, 'one positive and one negative'):
      ids.evals.roc_curve([1, 1, 1], [0.1, 0.2, 0.3])
    with self.assertRaisesRegex(ValueError, 'binary'):
      ids.evals.roc_curve([0, 1, 2], [0.1, 0.2, 0.3])
    with self.assertRaisesRegex(ValueError, 'finite'):
      ids.evals.roc_curve([0, 1], [0.1, np.nan])
    with self.assertRaisesRegex(ValueError, 'shape'):
      ids.evals.roc_curve([0, 1], [0.1, 0.2, 0.3])


class MulticlassRocTest(absltest.TestCase):

  def test_one_curve_per_present_class(self):
    labels = np.array([0, 0, 1, 1, 3])
    scores = np.array([
        [0.8, 0.1, 0.05, 0.05],
        [0.6, 0.2, 0.1, 0.1],
        [0.1, 0.7, 0.1, 0.1],
        [0.5, 0.4, 0.05, 0.05],
        [0.1, 0.1, 0.1, 0.7],
    ])
    curves = ids.evals.multiclass_roc(labels, scores)
    self.assertEqual(sorted(curves), [0, 1, 3])
    self.assertEqual(curves[3].auc, 1.0)
    self.assertAlmostEqual(
        curves[0].auc, ids.testing.pair_count_auc(labels == 0, scores[:, 0])
    )
    self.assertAlmostEqual(
        ids.evals.macro_auc(curves),
        np.mean([c.auc for c in curves.values()]),
    )

  def test_macro_auc_without_curves(self):
    self.assertIsNone(ids.evals.macro_auc({}))


if __name__ == '__main__':
  absltest.main()
