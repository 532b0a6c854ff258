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


def _binary_fixtures():
  rng = np.random.default_rng(0)
  fixtures = [([1, 1, 0, 0], [1, 0, 0, 0]), ([0, 1], [0, 1])]
  for _ in range(20):
    n = int(rng.integers(1, 200))
    fixtures.append((rng.integers(0, 2, n), rng.integers(0, 2, n)))
  return fixtures


class BasicMetricsTest(parameterized.TestCase):

  def test_reported_random_forest_counts(self):
    cm = ids.evals.ConfusionMatrix.from_binary_counts(
        tp=33_873, tn=33_898, fp=77, fn=74
    )
    metrics = ids.evals.basic_metrics(cm)
    self.assertEqual(metrics.averaging, ids.evals.Averaging.BINARY)
    self.assertAlmostEqual(metrics.accuracy, 100 * 67_771 / 67_922)
    self.assertEqual(round(metrics.accuracy, 2), 99.78)
    self.assertAlmostEqual(metrics.precision, 100 * 33_873 / 33_950)
    self.assertAlmostEqual(metrics.recall, 100 * 33_873 / 33_947)

  def test_hand_evaluated_binary(self):
    cm = ids.evals.confusion_matrix([1, 1, 0, 0], [1, 0, 0, 0], 2)
    metrics = ids.evals.basic_metrics(cm, 'binary')
    self.assertAlmostEqual(metrics.accuracy, 75.0)
    self.assertAlmostEqual(metrics.precision, 100.0)
    self.assertAlmostEqual(metrics.recall, 50.0)
    self.assertAlmostEqual(metrics.f1, 200 / 3)
    self.assertEqual(metrics.flags, ())

  def test_perfect_matrix(self):
    cm = ids.evals.ConfusionMatrix(np.diag([5, 2, 7]))
    for averaging in ('macro', 'weighted'):
      metrics = ids.evals.basic_metrics(cm, averaging)
      for value in (
          metrics.accuracy,
          metrics.precision,
          metrics.recall,
          metrics.f1,
      ):
        self.assertAlmostEqual(value, 100.0)

  def test_macro_and_weighted(self):
    cm = ids.evals.ConfusionMatrix(
        np.array([[2, 1, 0], [0, 3, 0], [1, 0, 3]])
    )
    np.testing.assert_array_equal(cm.tp + cm.fp, [3, 4, 3])

    macro = ids.evals.basic_metrics(cm)
    self.assertEqual(macro.averaging, ids.evals.Averaging.MACRO)
    self.assertAlmostEqual(macro.accuracy, 80.0)
    expected = 100 * (2 / 3 + 3 / 4 + 1) / 3
    self.assertAlmostEqual(macro.precision, expected)
    self.assertAlmostEqual(macro.recall, expected)
    self.assertAlmostEqual(macro.f1, 100 * (2 / 3 + 6 / 7 + 6 / 7) / 3)

    weighted = ids.evals.basic_metrics(cm, 'weighted')
    self.assertAlmostEqual(weighted.precision, 82.5)
    self.assertAlmostEqual(weighted.recall, 80.0)
    self.assertAlmostEqual(weighted.f1, 80.0)

    self.assertEqual([m.support for m in macro.per_class], [3, 3, 4])
    self.assertAlmostEqual(macro.per_class[2].precision, 100.0)
    self.assertAlmostEqual(macro.per_class[2].recall, 75.0)

  def test_multiclass_f1_averages_per_class_f1(self):
    cm = ids.evals.ConfusionMatrix(
        np.array([[90, 10, 0], [0, 5, 5], [0, 0, 10]])
    )
    macro = ids.evals.basic_metrics(cm, 'macro')
    self.assertAlmostEqual(macro.precision, 100 * (1 + 1 / 3 + 2 / 3) / 3)
    self.assertAlmostEqual(macro.recall, 80.0)
    self.assertAlmostEqual(macro.f1, 100 * (18 / 19 + 0.4 + 0.8) / 3)
    # Not the harmonic mean of the averaged precision and recall (72.7).
    self.assertLess(macro.f1, 72.0)

    weighted = ids.evals.basic_metrics(cm, 'weighted')
    support = np.array([100, 10, 10])
    per_class_f1 = [m.f1 for m in weighted.per_class]
    self.assertAlmostEqual(
        weighted.f1, float(np.dot(per_class_f1, support) / support.sum())
    )

  def test_per_class_and_binary_f1_are_harmonic_means(self):
    rng = np.random.default_rng(3)
    for _ in range(20):
      cm = ids.evals.ConfusionMatrix(rng.integers(1, 50, size=(4, 4)))
      m = ids.evals.basic_metrics(cm, 'macro')
      for c in m.per_class:
        self.assertAlmostEqual(
            c.f1, 2 * c.precision * c.recall / (c.precision + c.recall)
        )
      self.assertAlmostEqual(m.f1, np.mean([c.f1 for c in m.per_class]))

      binary = ids.evals.basic_metrics(
          ids.evals.ConfusionMatrix(rng.integers(1, 50, size=(2, 2)))
      )
      self.assertAlmostEqual(
          binary.f1,
          2
          * binary.precision
          * binary.recall
          / (binary.precision + binary.recall),
      )

  def test_zero_division_is_flagged(self):
    # Class 2 is never predicted.
    cm = ids.evals.ConfusionMatrix(
        np.array([[1, 0, 0], [0, 1, 0], [1, 0, 0]])
    )
    metrics = ids.evals.basic_metrics(cm)
    self.assertEqual(metrics.flags, ('precision_zero_division:2',))
    self.assertEqual(metrics.per_class[2].precision, 0.0)
    self.assertEqual(metrics.per_class[2].f1, 0.0)
    self.assertAlmostEqual(metrics.precision, 100 * (0.5 + 1 + 0) / 3)

  def test_recall_zero_division_is_flagged(self):
    # Class 1 is predicted but never true.
    cm = ids.evals.ConfusionMatrix(np.array([[1, 1], [0, 0]]))
    metrics = ids.evals.basic_metrics(cm, 'binary')
    self.assertEqual(metrics.flags, ('recall_zero_division:1',))
    self.assertEqual(metrics.precision, 0.0)
    self.assertEqual(metrics.recall, 0.0)
    self.assertEqual(metrics.f1, 0.0)

  def test_absent_classes_are_not_averaged(self):
    cm = ids.evals.ConfusionMatrix(np.diag([4, 3, 0]))
    metrics = ids.evals.basic_metrics(cm, 'macro')
    self.assertAlmostEqual(metrics.precision, 100.0)
    self.assertEqual(metrics.flags, ())

  def test_errors(self):
    with self.assertRaisesRegex(ValueError, 'empty'):
      ids.evals.basic_metrics(ids.evals.ConfusionMatrix(np.zeros((2, 2))))
    with self.assertRaisesRegex(ValueError, 'needs 2 classes'):
      ids.evals.basic_metrics(
          ids.evals.ConfusionMatrix(np.eye(3, dtype=np.int64)), 'binary'
      )
    with self.assertRaises(ValueError):
      ids.evals.basic_metrics(
          ids.evals.ConfusionMatrix(np.eye(2, dtype=np.int64)), 'micro'
      )


class ErrorMetricsTest(parameterized.TestCase):

  def test_no_errors(self):
    errors = ids.evals.regression_style_errors([0, 3, 4], [0, 3, 4])
    self.assertEqual((errors.mae, errors.mse, errors.rmse), (0.0, 0.0, 0.0))

  def test_one_error_in_four(self):
    errors = ids.evals.regression_style_errors([1, 1, 0, 0], [1, 0, 0, 0])
    self.assertAlmostEqual(errors.mae, 25.0)
    self.assertAlmostEqual(errors.mse, 25.0)
    self.assertAlmostEqual(errors.rmse, 50.0)

  def test_multiclass_codes(self):
    errors = ids.evals.regression_style_errors([0, 4], [3, 4])
    self.assertAlmostEqual(errors.mae, 150.0)
    self.assertAlmostEqual(errors.mse, 450.0)
    self.assertAlmostEqual(errors.rmse, 100 * np.sqrt(4.5))

  @parameterized.parameters(*_binary_fixtures())
  def test_binary_mae_is_error_rate(self, y_true, y_pred):
    evaluation = ids.evals.evaluate_predictions(y_true, y_pred, n_classes=2)
    self.assertAlmostEqual(
        evaluation.metrics.mae / 100, 1 - evaluation.metrics.accuracy / 100
    )

  def test_errors(self):
    with self.assertRaisesRegex(ValueError, 'but 1 predictions'):
      ids.evals.regression_style_errors([0, 1], [0])
    with self.assertRaisesRegex(ValueError, 'empty'):
      ids.evals.regression_style_errors([], [])


class EvaluatePredictionsTest(absltest.TestCase):

  def test_binary_with_scores(self):
    y_true = np.array([0, 0, 1, 1])
    scores = np.array([[0.9, 0.1], [0.4, 0.6], [0.3, 0.7], [0.2, 0.8]])
    evaluation = ids.evals.evaluate_predictions(
        y_true, scores.argmax(axis=1), n_classes=2, scores=scores
    )
    metrics = evaluation.metrics
    self.assertEqual(metrics.auc, 1.0)
    self.assertAlmostEqual(metrics.accuracy, 75.0)
    self.assertIsNone(metrics.weighted)
    self.assertEqual(metrics.n, 4)
    self.assertEqual(sorted(evaluation.roc), [0, 1])
    np.testing.assert_array_equal(
        evaluation.confusion.counts, [[1, 1], [0, 2]]
    )

  def test_multiclass(self):
    rng = np.random.default_rng(0)
    y_true = rng.integers(0, 5, size=300)
    scores = rng.dirichlet(np.ones(5), size=300)
    y_pred = scores.argmax(axis=1)
    evaluation = ids.evals.evaluate_predictions(
        y_true, y_pred, n_classes=5, scores=scores
    )
    metrics = evaluation.metrics
    self.assertEqual(metrics.averaging, ids.evals.Averaging.MACRO)
    self.assertEqual(
        set(metrics.weighted), {'precision', 'recall', 'f1'}
    )
    self.assertAlmostEqual(
        metrics.auc, np.mean([c.auc for c in evaluation.roc.values()])
    )
    self.assertAlmostEqual(metrics.rmse, 10 * np.sqrt(metrics.mse))

  def test_without_scores(self):
    evaluation = ids.evals.evaluate_predictions(
        [0, 1, 2], [0, 1, 2], n_classes=3
    )
    self.assertIsNone(evaluation.metrics.auc)
    self.assertEqual(evaluation.roc, {})
    self.assertEqual(evaluation.metrics.accuracy, 100.0)

  def test_to_dict(self):
    evaluation = ids.evals.evaluate_predictions(
        [1, 1, 0, 0], [1, 0, 0, 0], n_classes=2
    )
    out = evaluation.metrics.to_dict(ids.data.binary_label_map())
    self.assertEqual(set(ids.evals.METRIC_NAMES) - set(out), set())
    self.assertEqual(out['averaging'], 'binary')
    self.assertEqual(sorted(out['per_class']), ['Attack', 'Normal'])
    self.assertEqual(out['per_class']['Attack']['support'], 2)

  def test_bad_scores_shape(self):
    with self.assertRaisesRegex(ValueError, 'shape'):
      ids.evals.evaluate_predictions(
          [0, 1], [0, 1], n_classes=2, scores=np.ones((2, 3))
      )


if __name__ == '__main__':
  absltest.main()
