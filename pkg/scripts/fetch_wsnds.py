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

r"""Downloads the WSN-DS CSV and verifies its SHA-256 checksum.

```sh
python scripts/fetch_wsnds.py --url=<dataset url> --sha256=<hex digest> \
    --out=data/WSN-DS.csv
```

WSN-DS is not redistributed with `wsnids`. Use the URL of a copy you are
allowed to download. Without `--sha256`, the digest is printed so it can be
pinned for later runs.
"""

from __future__ import annotations

from collections.abc import Sequence
import hashlib

from absl import app
from absl import flags
from absl import logging
from etils import epath
import requests

_URL = flags.DEFINE_string('url', None, 'Dataset URL.', required=True)
_SHA256 = flags.DEFINE_string('sha256', None, 'Expected SHA-256 hex digest.')
_OUT = flags.DEFINE_string('out', 'data/WSN-DS.csv', 'Output CSV path.')

_CHUNK_BYTES = 1 << 20


def fetch(url: str, out: epath.PathLike, sha256: str | None = None) -> str:
  """Downloads `url` to `out` and returns its SHA-256 digest.

  The file is written next to `out` first and only moved in place once the
  digest matches.

  Args:
    url: Dataset URL.
    out: Output path.
    sha256: Expected digest (not checked if `None`).

  Returns:
    The hex digest of the downloaded bytes.
  """
  out = epath.Path(out)
  out.parent.mkdir(parents=True, exist_ok=True)
  partial = out.with_name(out.name + '.partial')
  digest = hashlib.sha256()
  with requests.get(url, stream=True, timeout=60) as response:
    response.raise_for_status()
    with partial.open('wb') as f:
      for chunk in response.iter_content(chunk_size=_CHUNK_BYTES):
        digest.update(chunk)
        f.write(chunk)
  actual = digest.hexdigest()
  if sha256 is not None and actual != sha256.lower():
    partial.unlink()
    raise ValueError(f'Checksum mismatch for {url}: {actual} != {sha256}.')
  partial.rename(out)
  return actual


def main(argv: Sequence[str]) -> None:
  del argv
  digest = fetch(_URL.value, _OUT.value, _SHA256.value)
  logging.info('Wrote %s (sha256 %s).', _OUT.value, digest)
  print(digest)


if __name__ == '__main__':
  app.run(main)
