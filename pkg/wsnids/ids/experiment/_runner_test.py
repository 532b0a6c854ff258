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

import dataclasses
import json
import os
import unittest
from unittest import mock

from absl.testing import absltest
from absl.testing import parameterized
import numpy as np
import pandas as pd
from wsnids import ids
from wsnids.ids.experiment import _runner

_FAST = ids.models.TrainConfig().with_overrides({
    'rf.n_trees': 5,
    'xgb.n_rounds': 5,
    'lgb.n_rounds': 5,
    'lgb.min_samples_leaf': 2,
})


class RunExperimentTest(parameterized.TestCase):

  def setUp(self):
    super().setUp()
    self.data = ids.testing.write_toy_csv(
        self.create_tempdir().full_path + '/toy.csv',
        [60, 20, 12],
        class_names=('Normal', 'Blackhole', 'Flooding'),
        seed=4,
    )

  def _config(self, **kwargs):
    kwargs = {
        'data': self.data,
        'task': 'binary',
        'models': ('dt', 'rf', 'knn'),
        'folds': 4,
        'seed': 7,
        'train': _FAST,
        'drop_columns': ('id',),
        **kwargs,
    }
    return ids.experiment.ExperimentConfig(**kwargs)

  def test_full_data_mode(self):
    report = ids.experiment.run_experiment(self._config())
    self.assertEqual(report.distribution.counts, {0: 60, 1: 32})
    self.assertIsNotNone(report.resample)
    self.assertEqual(report.resample.fitted_on, 'full data')
    self.assertEqual(report.standardizer.fitted_on, 'full data')

    n_rows = report.resample.after.total
    tests = np.concatenate([f.test_rows for f in report.folds])
    np.testing.assert_array_equal(np.sort(tests), np.arange(n_rows))
    self.assertEqual([f.index for f in report.folds], [0, 1, 2, 3])
    for f in report.folds:
      self.assertEqual(f.provenance['standardizer'], 'full data')
      self.assertEqual(f.provenance['resampler'], 'full data')
      self.assertEqual(f.provenance['models'], f'fold {f.index} train')
      self.assertEqual(f.n_train + f.n_test, n_rows)
      self.assertIsNone(f.standardizer)

    self.assertEqual(list(report.models), list(report.config.models))
    for summary in report.models.values():
      self.assertGreater(summary.fold_means['accuracy'], 90.0)
      self.assertEqual(summary.failed_folds, ())
    self.assertEqual(report.warnings, [])

  def test_strict_mode(self):
    config = self._config(leakage_mode='strict', task='multiclass')
    report = ids.experiment.run_experiment(config)
    self.assertIsNone(report.resample)
    self.assertIsNone(report.standardizer)
    tests = np.concatenate([f.test_rows for f in report.folds])
    np.testing.assert_array_equal(np.sort(tests), np.arange(92))
    for f in report.folds:
      train_rows = f'fold {f.index} train'
      self.assertEqual(
          f.provenance,
          {
              'standardizer': train_rows,
              'resampler': train_rows,
              'models': train_rows,
          },
      )
      self.assertEqual(f.standardizer.fitted_on, train_rows)
      self.assertEqual(f.resample.fitted_on, train_rows)
      self.assertEqual(f.resample.before.total, 92 - f.n_test)
      self.assertEqual(f.n_train, f.resample.after.total)

  def test_without_balancing(self):
    report = ids.experiment.run_experiment(self._config(balance='none'))
    self.assertIsNone(report.resample)
    self.assertNotIn('resampler', report.folds[0].provenance)
    self.assertEqual(sum(f.n_test for f in report.folds), 92)

  def test_fold_means_are_means_of_folds(self):
    report = ids.experiment.run_experiment(self._config(models=('dt',)))
    per_fold = [f.runs['dt'].evaluation.metrics for f in report.folds]
    for name in ('accuracy', 'precision', 'recall', 'f1', 'mae', 'rmse'):
      self.assertAlmostEqual(
          report.models['dt'].fold_means[name],
          np.mean([getattr(m, name) for m in per_fold]),
          delta=1e-9,
      )
    # The pooled confusion matrix sums the fold ones.
    summed = sum(
        (f.runs['dt'].evaluation.confusion for f in report.folds[1:]),
        report.folds[0].runs['dt'].evaluation.confusion,
    )
    self.assertEqual(report.models['dt'].pooled.confusion, summed)

  def test_identical_for_any_thread_count(self):
    config = self._config(models=('dt', 'rf', 'xgb'))
    a = ids.experiment.run_experiment(config)
    b = ids.experiment.run_experiment(dataclasses.replace(config, n_jobs=3))
    self.assertEqual(
        ids.experiment.to_json(a.to_dict(include_timings=False)),
        ids.experiment.to_json(b.to_dict(include_timings=False)),
    )

  def test_seed_changes_the_split(self):
    a = ids.experiment.run_experiment(self._config(models=('dt',)))
    b = ids.experiment.run_experiment(self._config(models=('dt',), seed=8))
    self.assertFalse(
        np.array_equal(a.folds[0].test_rows, b.folds[0].test_rows)
    )

  def test_model_failure_is_recorded(self):
    train = ids.models.train

    def failing_train(kind, *args, **kwargs):
      if kind == 'knn':
        raise RuntimeError('boom')
      return train(kind, *args, **kwargs)

    with mock.patch.object(_runner._model, 'train', failing_train):
      report = ids.experiment.run_experiment(self._config())
    self.assertEqual(report.models['knn'].failed_folds, (0, 1, 2, 3))
    self.assertIsNone(report.models['knn'].fold_means)
    self.assertEqual(
        report.folds[0].runs['knn'].error, 'RuntimeError: boom'
    )
    self.assertIsNotNone(report.models['rf'].fold_means)
    self.assertLen(report.warnings, 1)
    self.assertNotIn('knn', report.fold_means())

  def test_in_memory_dataset(self):
    ds = ids.data.load_csv(self.data, drop_columns=('id',))
    report = ids.experiment.run_experiment(
        self._config(data='', models=('dt',)), dataset=ds
    )
    self.assertEqual(report.feature_names, ('f0', 'f1', 'f2'))

    with self.assertRaisesRegex(ValueError, 'not encoded for the multiclass'):
      ids.experiment.run_experiment(
          self._config(task='multiclass'), dataset=ds.encode('binary')
      )

  def test_feature_importances(self):
    report = ids.experiment.run_experiment(self._config(models=('rf', 'knn')))
    self.assertAlmostEqual(report.models['rf'].importances.sum(), 1.0)
    self.assertIsNone(report.models['knn'].importances)

  def test_write_report(self):
    out = self.create_tempdir().full_path
    report = ids.experiment.run_experiment(self._config())
    path = ids.experiment.write_report(report, out)

    content = json.loads(path.read_text())
    self.assertEqual(content['format_version'], 1)
    self.assertEqual(content['config']['arm'], 'WiSTL')
    self.assertEqual(content['dataset']['rows'], 92)
    self.assertEqual(
        content['dataset']['distribution']['counts'],
        {'Normal': 60, 'Attack': 32},
    )
    self.assertLen(content['folds'], 4)
    self.assertEqual(
        content['models']['rf']['roc_file'], 'roc_rf.csv'
    )
    self.assertIn('timings', content)
    self.assertIn('feature_importances', content['models']['dt'])

    bars = pd.read_csv(path.parent / 'bars.csv')
    self.assertEqual(bars['model'].tolist(), ['dt', 'rf', 'knn'])
    self.assertAlmostEqual(
        bars['accuracy'][0], content['models']['dt']['fold_means']['accuracy']
    )
    for kind in ('dt', 'rf', 'knn'):
      confusion = pd.read_csv(path.parent / f'confusion_{kind}.csv')
      self.assertEqual(confusion['count'].sum(), report.resample.after.total)
      roc = pd.read_csv(path.parent / f'roc_{kind}.csv')
      self.assertEqual(set(roc['class']), {'Normal', 'Attack'})
      self.assertEqual(roc['fpr'].iloc[-1], 1.0)


class ExperimentConfigTest(absltest.TestCase):

  def test_defaults(self):
    config = ids.experiment.ExperimentConfig()
    self.assertEqual(config.folds, 10)
    self.assertTrue(config.shuffle)
    self.assertEqual(config.leakage_mode, ids.experiment.LeakageMode.FULL_DATA)
    self.assertLen(config.models, 6)

  def test_parsing(self):
    config = ids.experiment.ExperimentConfig(
        models='rf, XGB', task='multiclass', drop_columns='id, Time'
    )
    self.assertEqual(config.models, ('rf', 'xgb'))
    self.assertEqual(config.drop_columns, ('id', 'Time'))
    self.assertEqual(config.balance.arm, 'WiSTL')

  def test_to_dict_leaves_out_worker_counts(self):
    out = ids.experiment.ExperimentConfig(n_jobs=4).to_dict()
    self.assertNotIn('n_jobs', out)
    self.assertNotIn('n_jobs', out['train'])
    self.assertEqual(out['train']['rf']['n_trees'], 100)

  def test_errors(self):
    with self.assertRaisesRegex(ValueError, 'at least 2 folds'):
      ids.experiment.ExperimentConfig(folds=1)
    with self.assertRaisesRegex(ValueError, 'should not be empty'):
      ids.experiment.ExperimentConfig(models='')
    with self.assertRaises(KeyError):
      ids.experiment.ExperimentConfig(models='svm')
    with self.assertRaises(ValueError):
      ids.experiment.ExperimentConfig(leakage_mode='leaky')


@unittest.skipUnless(
    os.environ.get('WSNIDS_WSNDS_CSV'), 'WSNIDS_WSNDS_CSV not set.'
)
class WsndsReproductionTest(parameterized.TestCase):

  def _run(self, **kwargs):
    config = ids.experiment.ExperimentConfig(
        data=os.environ['WSNIDS_WSNDS_CSV'],
        seed=42,
        n_jobs=os.cpu_count() or 1,
        **kwargs,
    )
    return ids.experiment.run_experiment(config)

  def _assert_counts(self, report, expected):
    after = report.resample.after.named(report.label_map)
    self.assertEqual(set(after), set(expected))
    for name, count in expected.items():
      self.assertAlmostEqual(after[name], count, delta=0.005 * count, msg=name)

  def test_rf_binary_balanced(self):
    report = self._run(task='binary', models=('rf',))
    self._assert_counts(report, {'Normal': 340_056, 'Attack': 339_610})
    accuracy = report.models['rf'].fold_means['accuracy']
    self.assertAlmostEqual(accuracy, 99.78, delta=0.30)

  def test_rf_multiclass_balanced(self):
    report = self._run(task='multiclass', models=('rf',))
    self._assert_counts(
        report,
        {
            'Normal': 340_056,
            'Grayhole': 340_038,
            'Blackhole': 340_026,
            'TDMA': 339_846,
            'Flooding': 339_820,
        },
    )
    accuracy = report.models['rf'].fold_means['accuracy']
    self.assertAlmostEqual(accuracy, 99.92, delta=0.30)

  def test_xgb_binary_unbalanced(self):
    report = self._run(task='binary', balance='none', models=('xgb',))
    self.assertIsNone(report.resample)
    accuracy = report.models['xgb'].fold_means['accuracy']
    self.assertAlmostEqual(accuracy, 99.72, delta=0.40)

  def test_mlp_binary_balanced(self):
    report = self._run(task='binary', models=('mlp',))
    self.assertGreaterEqual(report.models['mlp'].fold_means['accuracy'], 98.5)

  @parameterized.parameters('binary', 'multiclass')
  def test_balancing_does_not_lower_f1(self, task):
    balanced = self._run(task=task, models=('rf', 'dt'))
    unbalanced = self._run(task=task, balance='none', models=('rf', 'dt'))

    self.assertEqual(ids.experiment.compare_arms(balanced, unbalanced), [])
    for kind in ('rf', 'dt'):
      self.assertGreaterEqual(
          balanced.models[kind].fold_means['f1'],
          unbalanced.models[kind].fold_means['f1'],
          msg=kind,
      )


if __name__ == '__main__':
  absltest.main()
