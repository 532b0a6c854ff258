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

"""wsnids API."""

# A new PyPI release will be pushed every time `__version__` is increased.
# When changing this, also update the CHANGELOG.md.
__version__ = '0.1.0'


def __getattr__(name: str):  # pylint: disable=invalid-name
  """Catches `import wsnids as ids` errors."""
  del name
  raise AttributeError(
      'Please use "from wsnids import ids", NOT "import wsnids as ids".'
  )
