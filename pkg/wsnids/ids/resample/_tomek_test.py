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


class TomekLinksTest(parameterized.TestCase):

  def test_line(self):
    features = [[0.0], [1.0], [5.0]]
    labels = [0, 1, 0]
    self.assertEqual(
        ids.resample.tomek_links(features, labels),
        [ids.resample.TomekPair(0, 1)],
    )

  def test_same_label_is_not_a_link(self):
    self.assertEqual(
        ids.resample.tomek_links([[0.0], [1.0], [5.0]], [0, 0, 1]), []
    )

  def test_single_row(self):
    self.assertEqual(ids.resample.tomek_links([[0.0]], [0]), [])

  def test_any_class_pair(self):
    features = [[0.0], [0.5], [10.0], [10.5], [20.0], [20.5]]
    labels = [0, 1, 1, 2, 2, 0]
    pairs = ids.resample.tomek_links(features, labels)
    self.assertEqual(
        [(p.i, p.j) for p in pairs], [(0, 1), (2, 3), (4, 5)]
    )

  @parameterized.parameters(1, 2)
  def test_matches_brute_force(self, n_jobs):
    rng = np.random.default_rng(n_jobs)
    for _ in range(50):
      n = int(rng.integers(2, 80))
      features = rng.normal(size=(n, int(rng.integers(1, 4))))
      labels = rng.integers(0, 3, size=n)
      pairs = ids.resample.tomek_links(features, labels, n_jobs=n_jobs)
      self.assertEqual(
          {(p.i, p.j) for p in pairs},
          ids.testing.brute_force_tomek(features, labels),
      )
      self.assertEqual(pairs, sorted(pairs))


class RemoveTomekTest(parameterized.TestCase):

  def test_both(self):
    features = np.array([[0.0], [1.0], [5.0]])
    labels = np.array([0, 1, 0])
    pairs = ids.resample.tomek_links(features, labels)
    out_features, out_labels, removed = ids.resample.remove_tomek(
        features, labels, pairs, 'both'
    )
    np.testing.assert_array_equal(out_features, [[5.0]])
    np.testing.assert_array_equal(out_labels, [0])
    self.assertEqual(removed, {0: 1, 1: 1})

  def test_majority_only(self):
    features = np.array([[0.0], [1.0], [5.0]])
    labels = np.array([0, 1, 0])
    pairs = ids.resample.tomek_links(features, labels)
    _, out_labels, removed = ids.resample.remove_tomek(
        features, labels, pairs, ids.resample.RemovalPolicy.MAJORITY_ONLY
    )
    np.testing.assert_array_equal(out_labels, [1, 0])
    self.assertEqual(removed, {0: 1, 1: 0})

  def test_majority_only_with_counts(self):
    features = np.array([[0.0], [1.0]])
    labels = np.array([0, 1])
    pairs = ids.resample.tomek_links(features, labels)
    _, out_labels, _ = ids.resample.remove_tomek(
        features, labels, pairs, 'majority_only', class_counts={0: 3, 1: 9}
    )
    np.testing.assert_array_equal(out_labels, [0])
    # Equal counts: the lowest code is removed.
    _, out_labels, _ = ids.resample.remove_tomek(
        features, labels, pairs, 'majority_only'
    )
    np.testing.assert_array_equal(out_labels, [1])

  def test_no_pairs(self):
    features = np.array([[0.0], [1.0]])
    labels = np.array([0, 0])
    out_features, out_labels, removed = ids.resample.remove_tomek(
        features, labels, []
    )
    np.testing.assert_array_equal(out_features, features)
    np.testing.assert_array_equal(out_labels, labels)
    self.assertEqual(removed, {0: 0})

  def test_bad_pairs(self):
    with self.assertRaisesRegex(IndexError, 'should index'):
      ids.resample.remove_tomek([[0.0]], [0], np.array([[0, 3]]))


if __name__ == '__main__':
  absltest.main()
