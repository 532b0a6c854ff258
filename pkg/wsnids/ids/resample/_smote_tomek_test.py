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


@pytest.mark.parametrize('policy', ['both', 'majority_only'])
def test_smote_tomek_report(policy):
  features, labels = ids.testing.make_blobs(
      [60, 10], separation=1.0, seed=2
  )
  out_features, out_labels, report = ids.resample.smote_tomek(
      features, labels, ids.resample.SmoteParams(seed=1), policy=policy
  )
  assert report.before.counts == {0: 60, 1: 10}
  assert report.after_smote.counts == {0: 60, 1: 60}
  assert report.after == ids.data.class_distribution(out_labels)
  assert len(out_features) == len(out_labels) == report.after.total
  removed = sum(report.removed_per_class.values())
  assert report.after.total == 120 - removed
  if policy == 'majority_only':
    # Class 0 was the larger class before oversampling.
    assert report.removed_per_class[1] == 0
    assert report.after[1] == 60
    assert removed == report.tomek_pairs
  else:
    assert removed == 2 * report.tomek_pairs


def test_smote_tomek_output_is_a_subset_of_oversampled_rows():
  features, labels = ids.testing.make_blobs([50, 8], separation=1.0)
  out_features, out_labels, report = ids.resample.smote_tomek(
      features, labels, ids.resample.SmoteParams(seed=0)
  )
  assert report.tomek_pairs > 0
  # Surviving rows are a subset of the oversampled rows.
  oversampled = ids.resample.smote(
      features, labels, ids.resample.SmoteParams(seed=0)
  )
  rows = {tuple(r) for r in oversampled.features}
  assert all(tuple(r) in rows for r in out_features)
  assert set(np.unique(out_labels)) <= {0, 1}


def test_smote_tomek_is_seeded():
  features, labels = ids.testing.make_blobs([40, 6], seed=3)
  params = ids.resample.SmoteParams(seed=11)
  a = ids.resample.smote_tomek(features, labels, params)
  b = ids.resample.smote_tomek(features, labels, params, n_jobs=2)
  np.testing.assert_array_equal(a[0], b[0])
  np.testing.assert_array_equal(a[1], b[1])
  assert a[2].to_dict() == b[2].to_dict()


def test_report_to_dict():
  features, labels = ids.testing.make_blobs([20, 5])
  *_, report = ids.resample.smote_tomek(
      features, labels, fitted_on='full'
  )
  label_map = ids.data.binary_label_map()
  out = report.to_dict(label_map)
  assert out['before']['counts'] == {'Normal': 20, 'Attack': 5}
  assert out['policy'] == 'both'
  assert out['fitted_on'] == 'full'
  assert out['smote'] == {'k_neighbors': 5, 'targets': None, 'seed': 0}
