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
import jax
from jax import experimental as jax_experimental
from jax import flatten_util
import numpy as np
from wsnids import ids
from wsnids.ids.models import _mlp


class MlpTest(parameterized.TestCase):

  def test_gradient_matches_finite_differences(self):
    self.enter_context(jax_experimental.enable_x64())
    rng = np.random.default_rng(0)
    for i in range(10):
      n_features = int(rng.integers(2, 6))
      n_layers = int(rng.integers(1, 3))
      hidden = tuple(int(h) for h in rng.integers(3, 9, size=n_layers))
      n_classes = int(rng.integers(2, 4))
      module = _mlp.MlpNet(hidden=hidden, n_classes=n_classes)
      params = _mlp.init_params(module, n_features, seed=i)
      features = rng.normal(size=(16, n_features))
      labels = rng.integers(0, n_classes, size=16)

      flat, unravel = flatten_util.ravel_pytree(params)
      self.assertEqual(flat.dtype, np.float64)

      def loss(flat_params):
        return _mlp.loss_fn(unravel(flat_params), module, features, labels)

      analytic = np.asarray(jax.grad(loss)(flat))
      step = 1e-5
      numeric = np.zeros_like(analytic)
      for j in range(len(flat)):
        delta = np.zeros(len(flat))
        delta[j] = step
        numeric[j] = (loss(flat + delta) - loss(flat - delta)) / (2 * step)
      rel_err = np.linalg.norm(analytic - numeric) / (
          np.linalg.norm(analytic) + np.linalg.norm(numeric)
      )
      self.assertLess(rel_err, 1e-4)

  def test_float64_is_scoped_to_training(self):
    features, labels = ids.testing.make_blobs([20, 20])
    config = ids.models.TrainConfig(
        mlp=ids.models.MlpConfig(hidden=(4,), epochs=1)
    )
    model = ids.models.train('mlp', features, labels, config)
    for leaf in jax.tree.leaves(model.params):
      self.assertEqual(np.asarray(leaf).dtype, np.float64)
    self.assertFalse(jax.config.jax_enable_x64)
    self.assertEqual(jax.numpy.zeros(1).dtype, np.float32)

  def test_init_is_uniform_fan_in(self):
    module = _mlp.MlpNet(hidden=(64,), n_classes=3)
    params = _mlp.init_params(module, 12, seed=0)
    kernel = np.asarray(params['Dense_0']['kernel'])
    bound = np.sqrt(3.0 / 12)
    self.assertEqual(kernel.shape, (12, 64))
    self.assertTrue(np.all(np.abs(kernel) <= bound))
    self.assertGreater(np.abs(kernel).max(), 0.9 * bound)
    np.testing.assert_array_equal(params['Dense_0']['bias'], np.zeros(64))

  def test_softmax_rows_sum_to_one(self):
    features, labels = ids.testing.make_blobs([40, 40, 40], separation=3.0)
    config = ids.models.TrainConfig(
        mlp=ids.models.MlpConfig(hidden=(16,), epochs=5, batch_size=32)
    )
    model = ids.models.train('mlp', features, labels, config)
    scores = ids.models.predict_scores(model, features)
    np.testing.assert_allclose(scores.sum(axis=1), 1.0, atol=1e-9)

  def test_zero_epochs_gives_valid_codes(self):
    features, labels = ids.testing.make_blobs([10, 10])
    config = ids.models.TrainConfig(mlp=ids.models.MlpConfig(epochs=0))
    model = ids.models.train('mlp', features, labels, config)
    predictions = ids.models.predict(model, features)
    self.assertTrue(np.all((predictions >= 0) & (predictions < 2)))

  def test_learns_separable_data(self):
    features, labels = ids.testing.make_blobs([100, 100], separation=6.0)
    config = ids.models.TrainConfig(
        mlp=ids.models.MlpConfig(
            hidden=(16,), epochs=30, batch_size=16, learning_rate=0.05
        )
    )
    model = ids.models.train('mlp', features, labels, config)
    accuracy = np.mean(ids.models.predict(model, features) == labels)
    self.assertGreater(accuracy, 0.95)

  def test_is_seeded(self):
    features, labels = ids.testing.make_blobs([30, 30])
    config = ids.models.TrainConfig(
        mlp=ids.models.MlpConfig(hidden=(8,), epochs=3), seed=4
    )
    a = ids.models.train('mlp', features, labels, config)
    b = ids.models.train('mlp', features, labels, config)
    np.testing.assert_array_equal(
        ids.models.predict_scores(a, features),
        ids.models.predict_scores(b, features),
    )

  def test_zero_width_layer(self):
    with self.assertRaisesRegex(ValueError, 'should have > 0 units'):
      ids.models.MlpConfig(hidden=(10, 0))


if __name__ == '__main__':
  absltest.main()
