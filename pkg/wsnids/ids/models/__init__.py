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

"""The six classifiers: DT, RF, KNN, MLP, XGB and LGB."""

from etils import epy as _epy

# pylint: disable=g-import-not-at-top

with _epy.lazy_api_imports(globals()):

  # pylint: disable=g-importing-member,g-bad-import-order

  # Configs
  from wsnids.ids.models._config import BoostingConfig
  from wsnids.ids.models._config import ForestConfig
  from wsnids.ids.models._config import KnnConfig
  from wsnids.ids.models._config import LGB_DEFAULTS
  from wsnids.ids.models._config import MlpConfig
  from wsnids.ids.models._config import ModelKind
  from wsnids.ids.models._config import TrainConfig
  from wsnids.ids.models._config import TreeConfig
  from wsnids.ids.models._config import Voting
  from wsnids.ids.models._config import XGB_DEFAULTS

  # Train / predict
  from wsnids.ids.models._model import feature_importances
  from wsnids.ids.models._model import Model
  from wsnids.ids.models._model import predict
  from wsnids.ids.models._model import predict_scores
  from wsnids.ids.models._model import train

  # Trees
  from wsnids.ids.models._tree import Tree
  from wsnids.ids.models._tree import TreeNode

  # Persistence
  from wsnids.ids.models._io import load_model
  from wsnids.ids.models._io import save_model
