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

"""Data ingestion and label encoding."""

from etils import epy as _epy

# pylint: disable=g-import-not-at-top

with _epy.lazy_api_imports(globals()):

  # pylint: disable=g-importing-member,g-bad-import-order

  # Containers
  from wsnids.ids.data._dataset import Dataset
  from wsnids.ids.data._dataset import DataError
  from wsnids.ids.data._distribution import ClassDistribution
  from wsnids.ids.data._labels import LabelMap
  from wsnids.ids.data._labels import Task

  # CSV
  from wsnids.ids.data._csv import load_csv
  from wsnids.ids.data._csv import load_encoded_csv
  from wsnids.ids.data._csv import write_csv
  from wsnids.ids.data._csv import WSNDS_LABEL_COLUMN

  # Labels
  from wsnids.ids.data._distribution import class_distribution
  from wsnids.ids.data._labels import binary_label_map
  from wsnids.ids.data._labels import decode_labels
  from wsnids.ids.data._labels import encode_labels
  from wsnids.ids.data._labels import multiclass_label_map
  from wsnids.ids.data._labels import WSNDS_CLASSES
