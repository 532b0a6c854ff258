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

"""Exact nearest-neighbor search."""

from etils import epy as _epy

# pylint: disable=g-import-not-at-top

with _epy.lazy_api_imports(globals()):

  # pylint: disable=g-importing-member,g-bad-import-order

  from wsnids.ids.neighbors._index import all_k_nearest
  from wsnids.ids.neighbors._index import build_index
  from wsnids.ids.neighbors._index import euclidean
  from wsnids.ids.neighbors._index import k_nearest
  from wsnids.ids.neighbors._index import k_nearest_points
  from wsnids.ids.neighbors._index import k_nearest_rows
  from wsnids.ids.neighbors._index import NeighborIndex
