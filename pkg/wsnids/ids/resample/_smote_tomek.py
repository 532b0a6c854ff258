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

"""Combined SMOTE + Tomek-link balancing."""

from __future__ import annotations

import dataclasses

from absl import logging
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
from wsnids.ids.data import _distribution
from wsnids.ids.data import _labels
from wsnids.ids.resample import _smote
from wsnids.ids.resample import _tomek
from wsnids.ids.utils import _arrays


@dataclasses.dataclass(frozen=True, kw_only=True)
class ResampleReport:
  """Class counts through the balancing stages.

  Attributes:
    before: Input distribution.
    after_smote: Distribution after oversampling (the targets).
    tomek_pairs: Number of Tomek links found after oversampling.
    removed_per_class: `code -> rows removed` by the Tomek step.
    after: Output distribution.
    policy: Tomek removal policy.
    params: SMOTE parameters used.
    fitted_on: Provenance of the balanced rows (e.g. `'full'`).
  """

  before: _distribution.ClassDistribution
  after_smote: _distribution.ClassDistribution
  tomek_pairs: int
  removed_per_class: dict[int, int]
  after: _distribution.ClassDistribution
  policy: _tomek.RemovalPolicy
  params: _smote.SmoteParams
  fitted_on: str = ''

  def __post_init__(self):
    for code, count in self.after_smote.counts.items():
      expected = count - self.removed_per_class.get(code, 0)
      if self.after[code] != expected:
        raise ValueError(
            f'Inconsistent report for class {code}: {count} after SMOTE,'
            f' {self.removed_per_class.get(code, 0)} removed but'
            f' {self.after[code]} left.'
        )

  def to_dict(
      self, label_map: _labels.LabelMap | None = None
  ) -> dict[str, object]:
    if label_map is not None:
      removed = {
          label_map.names[k]: v for k, v in self.removed_per_class.items()
      }
    else:
      removed = {str(k): v for k, v in self.removed_per_class.items()}
    return {
        'before': self.before.to_dict(label_map),
        'after_smote': self.after_smote.to_dict(label_map),
        'tomek_pairs': self.tomek_pairs,
        'removed_per_class': removed,
        'after': self.after.to_dict(label_map),
        'policy': str(self.policy),
        'smote': self.params.to_dict(),
        'fitted_on': self.fitted_on,
    }


def smote_tomek(
    features: Float['n d'],
    labels: Int['n'],
    params: _smote.SmoteParams = _smote.SmoteParams(),
    *,
    policy: _tomek.RemovalPolicy | str = _tomek.RemovalPolicy.BOTH,
    fitted_on: str = '',
    n_jobs: int = 1,
) -> tuple[Float['m d'], Int['m'], ResampleReport]:
  """Balances the classes with SMOTE, then removes Tomek links.

  1. `smote` grows every class to its target (the majority count by default).
  2. `tomek_links` runs once on the oversampled rows.
  3. `remove_tomek` drops the link endpoints according to `policy`. For
     `majority_only`, the larger class is decided on the counts before
     oversampling.

  Args:
    features: Input rows.
    labels: Input codes.
    params: SMOTE parameters.
    policy: Tomek removal policy.
    fitted_on: Provenance recorded in the report.
    n_jobs: Workers used by the Tomek neighbor search.

  Returns:
    The balanced rows, their labels and the `ResampleReport`.
  """
  features, labels = _arrays.as_features_and_labels(features, labels)
  before = _distribution.class_distribution(labels)

  oversampled = _smote.smote(features, labels, params)
  after_smote = _distribution.class_distribution(oversampled.labels)

  pairs = _tomek.tomek_link_array(
      oversampled.features, oversampled.labels, n_jobs=n_jobs
  )
  out_features, out_labels, removed = _tomek.remove_tomek(
      oversampled.features,
      oversampled.labels,
      pairs,
      policy,
      class_counts=before.counts,
  )
  report = ResampleReport(
      before=before,
      after_smote=after_smote,
      tomek_pairs=len(pairs),
      removed_per_class=removed,
      after=_distribution.class_distribution(out_labels),
      policy=_tomek.RemovalPolicy(policy),
      params=params,
      fitted_on=fitted_on,
  )
  logging.info(
      'SMOTE-Tomek: %s -> %s (%d links, removed %s).',
      before.counts,
      report.after.counts,
      len(pairs),
      removed,
  )
  return out_features, out_labels, report
