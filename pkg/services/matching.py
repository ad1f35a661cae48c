"""
Bipartite Matching

Maximum-cardinality matching by layered augmenting paths (Hopcroft-Karp).
Used as the oracle behind degree-relation matching questions: left and right
vertices are plain integers and the graph is a list of adjacency lists.
"""

import logging
import sys
from collections import deque
from typing import Deque, Dict, List, Sequence

logger = logging.getLogger(__name__)

UNREACHED = sys.maxsize


class HopcroftKarp:
    """
    Maximum matching on a bipartite graph given by ``adjacency[left] -> rights``.

    Call ``run()`` for the matching size; ``matching`` then maps left to right.
    """

    def __init__(self, adjacency: Sequence[Sequence[int]]):
        self._adjacency: List[List[int]] = [sorted(set(rights)) for rights in adjacency]
        self._pair_left: Dict[int, int] = {}
        self._pair_right: Dict[int, int] = {}
        self._dist: List[int] = [UNREACHED] * len(self._adjacency)
        self._limit = UNREACHED

    @property
    def matching(self) -> Dict[int, int]:
        return dict(self._pair_left)

    def run(self) -> int:
        self._pair_left.clear()
        self._pair_right.clear()
        size = 0
        while self._layer():
            for left in range(len(self._adjacency)):
                if left not in self._pair_left and self._augment(left):
                    size += 1
        logger.debug(f"Maximum matching of size {size} on {len(self._adjacency)} left vertices")
        return size

    def _layer(self) -> bool:
        """BFS from free left vertices; True when some free right vertex is reachable."""
        queue: Deque[int] = deque()
        for left in range(len(self._adjacency)):
            if left in self._pair_left:
                self._dist[left] = UNREACHED
            else:
                self._dist[left] = 0
                queue.append(left)
        self._limit = UNREACHED
        while queue:
            left = queue.popleft()
            if self._dist[left] >= self._limit:
                continue
            for right in self._adjacency[left]:
                partner = self._pair_right.get(right)
                if partner is None:
                    if self._limit == UNREACHED:
                        self._limit = self._dist[left] + 1
                elif self._dist[partner] == UNREACHED:
                    self._dist[partner] = self._dist[left] + 1
                    queue.append(partner)
        return self._limit != UNREACHED

    def _augment(self, left: int) -> bool:
        for right in self._adjacency[left]:
            partner = self._pair_right.get(right)
            if partner is None:
                if self._limit == self._dist[left] + 1:
                    self._pair_left[left] = right
                    self._pair_right[right] = left
                    return True
            elif self._dist[partner] == self._dist[left] + 1 and self._augment(partner):
                self._pair_left[left] = right
                self._pair_right[right] = left
                return True
        self._dist[left] = UNREACHED
        return False


def has_perfect_matching(adjacency: Sequence[Sequence[int]], right_count: int) -> bool:
    """True when every left and every right vertex can be matched."""
    if len(adjacency) != right_count:
        return False
    return HopcroftKarp(adjacency).run() == right_count
