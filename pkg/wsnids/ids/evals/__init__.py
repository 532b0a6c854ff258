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

"""Confusion matrices, classification metrics and ROC curves."""

from etils import epy as _epy

# pylint: disable=g-import-not-at-top

with _epy.lazy_api_imports(globals()):

  # pylint: disable=g-importing-member,g-bad-import-order

  from wsnids.ids.evals._confusion import confusion_matrix
  from wsnids.ids.evals._confusion import ConfusionMatrix
  from wsnids.ids.evals._metrics import Averaging
  from wsnids.ids.evals._metrics import basic_metrics
  from wsnids.ids.evals._metrics import BasicMetrics
  from wsnids.ids.evals._metrics import ClassMetrics
  from wsnids.ids.evals._metrics import ErrorMetrics
  from wsnids.ids.evals._metrics import Evaluation
  from wsnids.ids.evals._metrics import evaluate_predictions
  from wsnids.ids.evals._metrics import METRIC_NAMES
  from wsnids.ids.evals._metrics import MetricsReport
  from wsnids.ids.evals._metrics import regression_style_errors
  from wsnids.ids.evals._roc import macro_auc
  from wsnids.ids.evals._roc import multiclass_roc
  from wsnids.ids.evals._roc import roc_curve
  from wsnids.ids.evals._roc import RocCurve
