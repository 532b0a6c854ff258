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

"""Model save / load.

A saved model is a directory:

```
<path>/
  metadata.json   # format_version, kind, n_classes, n_features, config
  params/         # orbax checkpoint of `Model.params`
```
"""

from __future__ import annotations

import json

from etils import epath
import jax
from jax import experimental as jax_experimental
import numpy as np
from orbax import checkpoint as ocp
from wsnids.ids.models import _config
from wsnids.ids.models import _model

FORMAT_VERSION = 1
_METADATA = 'metadata.json'
_PARAMS = 'params'


def save_model(model: _model.Model, path: epath.PathLike) -> epath.Path:
  """Saves the model to the `path` directory (overwritten if present).

  Args:
    model: The model to save.
    path: Output directory.

  Returns:
    The output directory.
  """
  path = epath.Path(path).resolve()
  path.mkdir(parents=True, exist_ok=True)
  ckpt = ocp.StandardCheckpointer()
  # MLP params are float64.
  with jax_experimental.enable_x64():
    ckpt.save(path / _PARAMS, model.params, force=True)
    ckpt.wait_until_finished()
  metadata = {
      'format_version': FORMAT_VERSION,
      'kind': model.kind.value,
      'n_classes': model.n_classes,
      'n_features': model.n_features,
      'trained_on': model.trained_on,
      'config': model.config.to_dict(),
  }
  (path / _METADATA).write_text(json.dumps(metadata, indent=2, sort_keys=True))
  return path


def load_model(path: epath.PathLike) -> _model.Model:
  """Loads a model written by `save_model`."""
  path = epath.Path(path).resolve()
  metadata_path = path / _METADATA
  if not metadata_path.exists():
    raise FileNotFoundError(f'No saved model at {path} ({_METADATA} missing).')
  metadata = json.loads(metadata_path.read_text())
  version = metadata.get('format_version')
  if version != FORMAT_VERSION:
    raise ValueError(
        f'Unsupported model format version {version} (expected'
        f' {FORMAT_VERSION}).'
    )
  with jax_experimental.enable_x64():
    params = ocp.StandardCheckpointer().restore(path / _PARAMS)
    params = jax.tree.map(np.asarray, params)
  return _model.Model(
      kind=_config.ModelKind(metadata['kind']),
      n_classes=int(metadata['n_classes']),
      n_features=int(metadata['n_features']),
      params=params,
      config=_config.TrainConfig.from_dict(metadata['config']),
      trained_on=metadata['trained_on'],
  )
