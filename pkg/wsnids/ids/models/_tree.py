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

"""Flat-array binary trees."""

from __future__ import annotations

from collections.abc import Sequence
import dataclasses

import flax
from kauldron.typing import Float, Int  # pylint: disable=g-multiple-import,g-importing-member
import numpy as np

LEAF = -1


@dataclasses.dataclass(frozen=True, kw_only=True)
class TreeNode:
  """Read-only view of one node.

  Split nodes send `x[feature] <= threshold` to `left`. Leaves have
  `feature == -1`.

  Attributes:
    id: Node index (the root is 0).
    feature: Split feature, or -1 for a leaf.
    threshold: Split threshold (0 for a leaf).
    left: Left child id, or -1.
    right: Right child id, or -1.
    value: Class counts (CART) or leaf weight (boosting).
    depth: Depth of the node (the root is 0).
  """

  id: int
  feature: int
  threshold: float
  left: int
  right: int
  value: np.ndarray
  depth: int

  @property
  def is_leaf(self) -> bool:
    return self.feature == LEAF


@flax.struct.dataclass
class Tree:
  """Binary tree stored as parallel arrays indexed by node id.

  Attributes:
    feature: Split feature per node (-1 for leaves).
    threshold: Split threshold per node.
    left: Left child per node (-1 for leaves).
    right: Right child per node (-1 for leaves).
    value: Per-node value, `(n_nodes, v)`.
    gain: Criterion gain of the split (0 for leaves).
  """

  feature: Int['n']
  threshold: Float['n']
  left: Int['n']
  right: Int['n']
  value: Float['n v']
  gain: Float['n']

  @property
  def n_nodes(self) -> int:
    return len(self.feature)

  @property
  def n_leaves(self) -> int:
    return int(np.sum(self.feature == LEAF))

  @property
  def depth(self) -> int:
    return max(node.depth for node in self.nodes())

  def apply(self, features: Float['m d']) -> Int['m']:
    """Returns the leaf id reached by every row."""
    node = np.zeros(len(features), dtype=np.int64)
    rows = np.arange(len(features))
    active = self.feature[node] != LEAF
    while np.any(active):
      r = rows[active]
      n = node[active]
      go_left = features[r, self.feature[n]] <= self.threshold[n]
      node[r] = np.where(go_left, self.left[n], self.right[n])
      active = self.feature[node] != LEAF
    return node

  def predict_value(self, features: Float['m d']) -> Float['m v']:
    return self.value[self.apply(features)]

  def nodes(self) -> list[TreeNode]:
    """Nodes in id order."""
    depth = np.zeros(self.n_nodes, dtype=np.int64)
    for i in range(self.n_nodes):
      if self.feature[i] != LEAF:
        depth[self.left[i]] = depth[i] + 1
        depth[self.right[i]] = depth[i] + 1
    return [
        TreeNode(
            id=i,
            feature=int(self.feature[i]),
            threshold=float(self.threshold[i]),
            left=int(self.left[i]),
            right=int(self.right[i]),
            value=self.value[i],
            depth=int(depth[i]),
        )
        for i in range(self.n_nodes)
    ]


def leaf(value: Float['v']) -> Tree:
  """Single-leaf tree."""
  return Tree(
      feature=np.full(1, LEAF, dtype=np.int64),
      threshold=np.zeros(1),
      left=np.full(1, LEAF, dtype=np.int64),
      right=np.full(1, LEAF, dtype=np.int64),
      value=np.asarray(value, dtype=np.float64).reshape(1, -1),
      gain=np.zeros(1),
  )


def stack_trees(trees: Sequence[Tree]) -> dict[str, np.ndarray]:
  """Packs trees into one array dict (`offsets[t]` is the first node of t)."""
  sizes = [t.n_nodes for t in trees]
  out = {
      field.name: np.concatenate([getattr(t, field.name) for t in trees])
      for field in dataclasses.fields(Tree)
  }
  out['offsets'] = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
  return out


def unstack_trees(packed: dict[str, np.ndarray]) -> list[Tree]:
  """Inverse of `stack_trees`."""
  offsets = np.asarray(packed['offsets'])
  trees = []
  for start, end in zip(offsets[:-1], offsets[1:]):
    trees.append(
        Tree(**{
            field.name: np.asarray(packed[field.name][start:end])
            for field in dataclasses.fields(Tree)
        })
    )
  return trees
