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

"""Multilayer perceptron."""

from __future__ import annotations

from collections.abc import Callable, Sequence
import functools
from typing import Any, TypeVar

from absl import logging
from flax import linen as nn
import jax
from jax import experimental as jax_experimental
import jax.numpy as jnp
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np
from wsnids.ids.models import _config
from wsnids.ids.utils import _rng

Params = Any

_FnT = TypeVar('_FnT', bound=Callable[..., Any])


def float64(fn: _FnT) -> _FnT:
  """Runs `fn` with 64-bit JAX types, without touching the global config."""

  @functools.wraps(fn)
  def decorated(*args, **kwargs):
    with jax_experimental.enable_x64():
      return fn(*args, **kwargs)

  return decorated


# `U(-sqrt(3 / fan_in), sqrt(3 / fan_in))`
_KERNEL_INIT = nn.initializers.variance_scaling(1.0, 'fan_in', 'uniform')


class MlpNet(nn.Module):
  """ReLU hidden layers followed by a linear layer producing the logits."""

  hidden: Sequence[int]
  n_classes: int

  @nn.compact
  def __call__(self, x: jax.Array) -> jax.Array:
    for width in self.hidden:
      x = nn.Dense(
          width,
          kernel_init=_KERNEL_INIT,
          bias_init=nn.initializers.zeros_init(),
          param_dtype=jnp.float64,
          dtype=jnp.float64,
      )(x)
      x = nn.relu(x)
    return nn.Dense(
        self.n_classes,
        kernel_init=_KERNEL_INIT,
        bias_init=nn.initializers.zeros_init(),
        param_dtype=jnp.float64,
        dtype=jnp.float64,
    )(x)


@float64
def init_params(
    module: MlpNet, n_features: int, *, seed: int
) -> Params:
  key = jax.random.key(_rng.derive_seed(seed, 'mlp', 'init') % 2**31)
  return module.init(key, jnp.zeros((1, n_features), jnp.float64))['params']


@float64
def loss_fn(
    params: Params,
    module: MlpNet,
    features: Float['n d'],
    labels: Int['n'],
) -> jax.Array:
  """Mean softmax cross-entropy."""
  logits = module.apply({'params': params}, features)
  log_p = jax.nn.log_softmax(logits, axis=-1)
  return -jnp.mean(jnp.take_along_axis(log_p, labels[:, None], axis=-1))


@float64
def fit_mlp(
    features: Float['n d'],
    labels: Int['n'],
    n_classes: int,
    config: _config.MlpConfig,
    *,
    seed: int,
) -> Params:
  """Mini-batch gradient descent with a fixed learning rate.

  The rows are reshuffled every epoch from the stream `(seed, 'mlp',
  'shuffle')`; the last batch of an epoch may be smaller.

  Args:
    features: Training rows (standardized).
    labels: Training codes.
    n_classes: Number of classes.
    config: MLP config.
    seed: Root seed.

  Returns:
    The trained flax params.
  """
  module = MlpNet(hidden=config.hidden, n_classes=n_classes)
  params = init_params(module, features.shape[1], seed=seed)
  rng = _rng.rng_for(seed, 'mlp', 'shuffle')

  @jax.jit
  def step(params, x, y):
    grads = jax.grad(loss_fn)(params, module, x, y)
    return jax.tree.map(
        lambda p, g: p - config.learning_rate * g, params, grads
    )

  x_all = jnp.asarray(features, jnp.float64)
  y_all = jnp.asarray(labels)
  n = len(labels)
  for epoch in range(config.epochs):
    order = rng.permutation(n)
    for start in range(0, n, config.batch_size):
      batch = order[start : start + config.batch_size]
      params = step(params, x_all[batch], y_all[batch])
    if (epoch + 1) % 10 == 0 or epoch + 1 == config.epochs:
      logging.info(
          'MLP epoch %d/%d: train loss %.5f.',
          epoch + 1,
          config.epochs,
          float(loss_fn(params, module, x_all, y_all)),
      )
  return jax.tree.map(np.asarray, params)


@float64
def mlp_scores(
    params: Params,
    features: Float['m d'],
    *,
    hidden: Sequence[int],
    n_classes: int,
) -> Float['m k']:
  module = MlpNet(hidden=tuple(hidden), n_classes=n_classes)
  x = jnp.asarray(features, jnp.float64)
  logits = module.apply({'params': params}, x)
  return np.asarray(jax.nn.softmax(logits, axis=-1), dtype=np.float64)
