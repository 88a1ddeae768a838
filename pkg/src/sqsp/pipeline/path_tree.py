"""
Binary tree of the target bitstrings.

Layer j of the tree splits on bit j. A branch node has both children;
there are exactly d - 1 of them. Branch nodes are numbered from 1 in
root-to-leaf, left-to-right order, so a parent branch always has a smaller
number than its descendants.
"""
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

LEFT = 0
RIGHT = 1


class PathBST:
    """
    Branch-node tables of the bitstring tree.

    Attributes:
        n (int): bitstring length.
        d (int): number of bitstrings.
        layer (Dict[int, int]): layer of branch k.
        parent (Dict[int, Optional[int]]): nearest branch ancestor PB(k), None for branch 1.
        side (Dict[int, Optional[int]]): LEFT or RIGHT subtree of PB(k) holding branch k.
        lowest (List[Optional[int]]): LB(i), deepest branch on the path of q_i.
        lowest_side (List[Optional[int]]): bit q_i takes at LB(i).
        by_layer (List[List[int]]): branch numbers per layer, left to right.
    """

    n: int
    d: int
    layer: Dict[int, int]
    parent: Dict[int, Optional[int]]
    side: Dict[int, Optional[int]]
    lowest: List[Optional[int]]
    lowest_side: List[Optional[int]]
    by_layer: List[List[int]]

    def __init__(self, bitstrings: Sequence[str]) -> None:
        self._bitstrings = tuple(bitstrings)
        self.d = len(self._bitstrings)
        self.n = len(self._bitstrings[0]) if self._bitstrings else 0
        self.layer = {}
        self.parent = {}
        self.side = {}
        self.lowest = [None] * self.d
        self.lowest_side = [None] * self.d
        self.by_layer = [[] for _ in range(self.n)]
        self._build()

    def _build(self) -> None:
        # (members, nearest branch above, side taken at it), in prefix order
        groups: List[Tuple[List[int], Optional[int], Optional[int]]] = [
            (list(range(self.d)), None, None)
        ]
        count = 0
        for j in range(self.n):
            next_groups = []
            for members, above, above_side in groups:
                left = [i for i in members if self._bitstrings[i][j] == "0"]
                right = [i for i in members if self._bitstrings[i][j] == "1"]
                if left and right:
                    count += 1
                    k = count
                    self.layer[k] = j
                    self.parent[k] = above
                    self.side[k] = above_side
                    self.by_layer[j].append(k)
                    for i in left:
                        self.lowest[i], self.lowest_side[i] = k, LEFT
                    for i in right:
                        self.lowest[i], self.lowest_side[i] = k, RIGHT
                    if len(left) > 1:
                        next_groups.append((left, k, LEFT))
                    if len(right) > 1:
                        next_groups.append((right, k, RIGHT))
                elif len(members) > 1:
                    next_groups.append((members, above, above_side))
            groups = next_groups

    @property
    def num_branches(self) -> int:
        return len(self.layer)

    def b(self, j: int) -> int:
        """Number of branch nodes in layer j."""
        return len(self.by_layer[j])

    def passes(self, i: int, k: int) -> bool:
        """Whether the path of q_i runs through branch k."""
        bits = self._bitstrings[i]
        node = k
        while node is not None:
            above = self.parent[node]
            if above is None:
                return True
            if int(bits[self.layer[above]]) != self.side[node]:
                return False
            node = above
        return True

    def record(self, i: int, k: int) -> Tuple[int, int]:
        """
        Two-bit record of branch k on the path of q_i: (1, 0) for a left
        turn, (0, 1) for a right turn, (0, 0) when the path misses k.
        """
        if not self.passes(i, k):
            return (0, 0)
        if self._bitstrings[i][self.layer[k]] == "0":
            return (1, 0)
        return (0, 1)

    def __repr__(self) -> str:
        return f"PathBST(n={self.n}, d={self.d}, branches={self.num_branches})"


def build_path_bst(spec) -> PathBST:
    """Branch tables for the bitstrings of a `SparseStateSpec`, in entry order."""
    return PathBST(spec.bitstrings)
