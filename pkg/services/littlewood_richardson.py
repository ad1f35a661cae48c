"""
Littlewood-Richardson Coefficients

LR coefficients counted by enumerating LR skew tableaux (semistandard
fillings whose reverse reading word is a lattice word), restriction
constituents of chi^lambda to Young subgroups S_x x S_{n-x}, and the
multi-factor coefficient LR(lambda; mu_1, ..., mu_t).
"""

import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from services.exceptions import InvalidInputError
from services.partition_core import EMPTY, Partition, contains, make_partition, size, sub_partitions

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LRQuery:
    """LR(outer; inners[0], ..., inners[-1]) with the sizes adding up."""
    outer: Partition
    inners: Tuple[Partition, ...]

    def __post_init__(self):
        if sum(size(mu) for mu in self.inners) != size(self.outer):
            raise InvalidInputError(
                f"Inner sizes {[size(mu) for mu in self.inners]} do not add up to |{list(self.outer)}|"
            )

    def evaluate(self) -> int:
        return multi_lr_coeff(self.outer, self.inners)


@dataclass(frozen=True)
class Constituent:
    """chi^mu x chi^gamma appearing c times in a restriction to S_x x S_{n-x}."""
    mu: Partition
    gamma: Partition
    multiplicity: int


# ============================================================================
# SKEW TABLEAUX
# ============================================================================

def _reading_cells(outer: Partition, inner: Partition) -> List[Tuple[int, int]]:
    """Cells of outer/inner, rows top to bottom, right to left within a row."""
    cells = []
    for row, part in enumerate(outer):
        start = inner[row] if row < len(inner) else 0
        for col in range(part - 1, start - 1, -1):
            cells.append((row, col))
    return cells


def lr_tableaux(outer: Partition, inner: Partition) -> Iterator[Dict[Tuple[int, int], int]]:
    """Yield every LR tableau of shape outer/inner as a cell -> entry mapping."""
    if not contains(outer, inner):
        return
    cells = _reading_cells(outer, inner)
    filling: Dict[Tuple[int, int], int] = {}
    counts = [0] * (len(outer) + 2)

    def place(index: int) -> Iterator[Dict[Tuple[int, int], int]]:
        if index == len(cells):
            yield dict(filling)
            return
        row, col = cells[index]
        low = 1
        above = filling.get((row - 1, col))
        if above is not None:
            low = above + 1
        high = filling.get((row, col + 1), row + 1)
        high = min(high, row + 1)
        for value in range(low, high + 1):
            if value > 1 and counts[value] + 1 > counts[value - 1]:
                continue
            filling[(row, col)] = value
            counts[value] += 1
            yield from place(index + 1)
            counts[value] -= 1
            del filling[(row, col)]

    yield from place(0)


@lru_cache(maxsize=None)
def skew_contents(outer: Partition, inner: Partition) -> Dict[Partition, int]:
    """Content -> number of LR tableaux of shape outer/inner with that content."""
    tally: Counter = Counter()
    for tableau in lr_tableaux(outer, inner):
        values = Counter(tableau.values())
        content = tuple(values[v] for v in range(1, max(values, default=0) + 1))
        tally[make_partition(content)] += 1
    return dict(tally)


# ============================================================================
# COEFFICIENTS
# ============================================================================

def lr_coeff(outer: Partition, mu: Partition, gamma: Partition) -> int:
    """
    Multiplicity of chi^mu x chi^gamma in chi^outer restricted to S_|mu| x S_|gamma|.

    Raises:
        InvalidInputError: if |mu| + |gamma| != |outer|
    """
    if size(mu) + size(gamma) != size(outer):
        raise InvalidInputError(
            f"|{list(mu)}| + |{list(gamma)}| does not equal |{list(outer)}|"
        )
    if not contains(outer, gamma) or not contains(outer, mu):
        return 0
    return skew_contents(tuple(outer), tuple(gamma)).get(tuple(mu), 0)


def multi_lr_coeff(outer: Partition, inners: Sequence[Partition]) -> int:
    """LR(outer; mu_1, ..., mu_t) by peeling factors off left to right."""
    if sum(size(mu) for mu in inners) != size(outer):
        raise InvalidInputError("Inner partition sizes do not add up to the outer size")
    return _multi_lr(tuple(outer), tuple(tuple(mu) for mu in inners))


@lru_cache(maxsize=None)
def _multi_lr(outer: Partition, inners: Tuple[Partition, ...]) -> int:
    if not inners:
        return 1 if outer == EMPTY else 0
    if len(inners) == 1:
        return 1 if outer == inners[0] else 0
    first, rest = inners[0], inners[1:]
    total = 0
    for gamma in sub_partitions(outer, size(outer) - size(first)):
        coefficient = lr_coeff(outer, first, gamma)
        if coefficient:
            total += coefficient * _multi_lr(gamma, rest)
    return total


def restriction_constituents(outer: Partition, x: int) -> List[Constituent]:
    """
    Every chi^mu x chi^gamma (mu of x, gamma of n - x) in the restriction of
    chi^outer to S_x x S_{n-x}, with its multiplicity.
    """
    n = size(outer)
    if not 0 < x < n:
        raise InvalidInputError(f"Invalid split x={x} for a partition of {n}")
    result = []
    for gamma in sub_partitions(outer, n - x):
        for mu, count in skew_contents(tuple(outer), gamma).items():
            result.append(Constituent(mu=mu, gamma=gamma, multiplicity=count))
    result.sort(key=lambda c: (c.gamma, c.mu), reverse=True)
    return result


def nontrivial_constituent(outer: Partition, gamma: Partition) -> Optional[Partition]:
    """
    A mu outside {(x), (1^x)} with LR(outer; mu, gamma) > 0, if one exists.

    x is |outer| - |gamma|.
    """
    x = size(outer) - size(gamma)
    if x < 1 or not contains(outer, gamma):
        return None
    trivial = {(x,), (1,) * x}
    for mu in sorted(skew_contents(tuple(outer), tuple(gamma)), reverse=True):
        if mu not in trivial:
            return mu
    return None


def clear_caches() -> None:
    skew_contents.cache_clear()
    _multi_lr.cache_clear()
