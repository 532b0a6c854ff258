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

"""Class balancing: SMOTE, Tomek links and their combination."""

from etils import epy as _epy

# pylint: disable=g-import-not-at-top

with _epy.lazy_api_imports(globals()):

  # pylint: disable=g-importing-member,g-bad-import-order

  from wsnids.ids.resample._smote import interpolate
  from wsnids.ids.resample._smote import smote
  from wsnids.ids.resample._smote import SmoteParams
  from wsnids.ids.resample._smote import SmoteResult
  from wsnids.ids.resample._smote_tomek import ResampleReport
  from wsnids.ids.resample._smote_tomek import smote_tomek
  from wsnids.ids.resample._tomek import remove_tomek
  from wsnids.ids.resample._tomek import RemovalPolicy
  from wsnids.ids.resample._tomek import tomek_link_array
  from wsnids.ids.resample._tomek import tomek_links
  from wsnids.ids.resample._tomek import TomekPair
