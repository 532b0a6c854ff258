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

"""K-fold cross-validation experiments and their reports."""

from etils import epy as _epy

# pylint: disable=g-import-not-at-top

with _epy.lazy_api_imports(globals()):

  # pylint: disable=g-importing-member,g-bad-import-order

  from wsnids.ids.experiment._config import Balance
  from wsnids.ids.experiment._config import ExperimentConfig
  from wsnids.ids.experiment._config import LeakageMode
  from wsnids.ids.experiment._folds import Fold
  from wsnids.ids.experiment._folds import split_folds
  from wsnids.ids.experiment._plot_data import bars_frame
  from wsnids.ids.experiment._plot_data import confusion_frame
  from wsnids.ids.experiment._plot_data import roc_frame
  from wsnids.ids.experiment._report import aggregate_folds
  from wsnids.ids.experiment._report import compare_arms
  from wsnids.ids.experiment._report import environment_fingerprint
  from wsnids.ids.experiment._report import ExperimentReport
  from wsnids.ids.experiment._report import FoldResult
  from wsnids.ids.experiment._report import ModelRun
  from wsnids.ids.experiment._report import ModelSummary
  from wsnids.ids.experiment._report import to_json
  from wsnids.ids.experiment._report import write_evaluation_files
  from wsnids.ids.experiment._report import write_report
  from wsnids.ids.experiment._runner import run_experiment
