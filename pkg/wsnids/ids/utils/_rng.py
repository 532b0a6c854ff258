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

"""Seeded random streams.

Every randomized unit of work (a SMOTE class, a forest tree, a fold/model
pair,...) draws from its own stream, derived from the root seed and the
unit keys. Results therefore do not depend on how units are scheduled
across workers.

```python
rng = rng_for(seed, fold_index, 'rf')
```
"""

from __future__ import annotations

import zlib

import numpy as np


def _as_entropy(key: int | str) -> int:
  if isinstance(key, str):
    # `hash()` is salted per process, crc32 is stable.
    return zlib.crc32(key.encode('utf-8'))
  if key < 0:
    raise ValueError(f'Stream keys should be non-negative. Got {key}.')
  return int(key)


def seed_sequence(seed: int, *keys: int | str) -> np.random.SeedSequence:
  """Returns the `SeedSequence` of the stream `(seed, *keys)`."""
  return np.random.SeedSequence([_as_entropy(seed), *map(_as_entropy, keys)])


def rng_for(seed: int, *keys: int | str) -> np.random.Generator:
  """Returns a generator for the stream `(seed, *keys)`."""
  return np.random.default_rng(seed_sequence(seed, *keys))


def derive_seed(seed: int, *keys: int | str) -> int:
  """Returns a 32-bit seed for the stream `(seed, *keys)`."""
  return int(seed_sequence(seed, *keys).generate_state(1)[0])
