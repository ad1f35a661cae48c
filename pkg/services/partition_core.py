"""
Partition Core

Integer partitions and the Young-diagram geometry built on them: conjugates,
sums and unions, t-boxes, hooks, beta-sets, the r-abacus, cores, quotients,
the N_s invariant and exact hook-length degrees.

Partitions are plain tuples of positive integers in weakly decreasing order;
the empty tuple is the empty partition. Beta-sets are tuples of distinct
nonnegative integers sorted in descending order. All functions are pure.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.functions.combinatorial.numbers import partition as partition_number
from sympy.ntheory import digits as sympy_digits
from sympy.utilities.iterables import partitions as sympy_partitions

from services.exceptions import InvalidInputError

logger = logging.getLogger(__name__)

Partition = Tuple[int, ...]
BetaSet = Tuple[int, ...]
EMPTY: Partition = ()


# ============================================================================
# DATA CLASSES
# ============================================================================

@dataclass(frozen=True)
class Hook:
    """A hook of a Young diagram, addressed by its (1-based) corner node."""
    row: int
    col: int
    arm: int
    leg: int

    @property
    def length(self) -> int:
        return self.arm + self.leg + 1


@dataclass(frozen=True)
class CoreQuotient:
    """The r-core of a partition together with its r-quotient."""
    r: int
    core: Partition
    quotient: Tuple[Partition, ...]

    @property
    def quotient_size(self) -> int:
        return sum(size(q) for q in self.quotient)

    def to_dict(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "core": list(self.core),
            "quotient": [list(q) for q in self.quotient],
            "quotient_size": self.quotient_size,
        }


# ============================================================================
# CONSTRUCTION AND BASIC OPERATIONS
# ============================================================================

def make_partition(parts: Iterable[int]) -> Partition:
    """
    Validate a sequence of parts and return it as a Partition.

    Trailing zeros are dropped. Anything negative, non-integral or increasing
    is rejected.

    Args:
        parts: Candidate parts, largest first

    Returns:
        The canonical tuple form of the partition
    """
    values = list(parts)
    for value in values:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidInputError(f"Invalid partition part {value!r}: parts must be integers")
        if value < 0:
            raise InvalidInputError(f"Invalid partition part {value}: parts must be nonnegative")
    while values and values[-1] == 0:
        values.pop()
    for left, right in zip(values, values[1:]):
        if right > left or right == 0:
            raise InvalidInputError(f"Invalid partition {values}: parts must be weakly decreasing and positive")
    return tuple(values)


def size(partition: Partition) -> int:
    return sum(partition)


def conjugate(partition: Partition) -> Partition:
    """Transpose the Young diagram."""
    if not partition:
        return EMPTY
    return tuple(sum(1 for part in partition if part > column) for column in range(partition[0]))


def plus(partition: Partition, other: Partition) -> Partition:
    """Componentwise sum, padding the shorter partition with zeros."""
    length = max(len(partition), len(other))
    padded = [0] * length
    for index, part in enumerate(partition):
        padded[index] += part
    for index, part in enumerate(other):
        padded[index] += part
    return tuple(padded)


def union(partition: Partition, other: Partition) -> Partition:
    """Merge the parts of both partitions and re-sort them."""
    return tuple(sorted(partition + other, reverse=True))


def in_box(partition: Partition, t: int) -> bool:
    """True when the partition fits in a t x t box."""
    if not partition:
        return True
    return partition[0] <= t and len(partition) <= t


def contains(outer: Partition, inner: Partition) -> bool:
    """True when the diagram of ``inner`` sits inside the diagram of ``outer``."""
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


def hook_partition(length: int, leg: int) -> Partition:
    """The hook shape (length - leg, 1^leg)."""
    return (length - leg,) + (1,) * leg


# ============================================================================
# ENUMERATION
# ============================================================================

def all_partitions(n: int) -> List[Partition]:
    """All partitions of n, in reverse lexicographic order."""
    if n < 0:
        raise InvalidInputError(f"Invalid size {n}: must be nonnegative")
    if n == 0:
        return [EMPTY]
    result = []
    for multiplicities in sympy_partitions(n):
        parts: List[int] = []
        for part in sorted(multiplicities, reverse=True):
            parts.extend([part] * multiplicities[part])
        result.append(tuple(parts))
    result.sort(reverse=True)
    return result


def partitions_in_box(n: int, t: int) -> List[Partition]:
    return [partition for partition in all_partitions(n) if in_box(partition, t)]


def sub_partitions(partition: Partition, m: int) -> Iterator[Partition]:
    """Yield every partition of m whose diagram lies inside ``partition``."""

    def extend(row: int, remaining: int, bound: int, prefix: Tuple[int, ...]) -> Iterator[Partition]:
        if remaining == 0:
            yield prefix
            return
        if row >= len(partition):
            return
        top = min(bound, partition[row], remaining)
        for part in range(top, 0, -1):
            yield from extend(row + 1, remaining - part, part, prefix + (part,))

    if m < 0 or m > size(partition):
        return
    yield from extend(0, m, partition[0] if partition else 0, ())


def count_multipartitions(s: int, a: int) -> int:
    """Number of s-tuples of partitions whose sizes add up to a."""
    if a == 0:
        return 1
    if s <= 0:
        return 0
    counts = [1] + [0] * a
    base = [int(partition_number(m)) for m in range(a + 1)]
    for _ in range(s):
        counts = [sum(counts[j] * base[m - j] for j in range(m + 1)) for m in range(a + 1)]
    return counts[a]


def multipartitions(s: int, a: int) -> Iterator[Tuple[Partition, ...]]:
    """
    Yield every s-tuple of partitions of total size a.

    Tuples come out in lexicographic order of their components.
    """
    if s == 0:
        if a == 0:
            yield ()
        return
    by_size = {m: sorted(all_partitions(m)) for m in range(a + 1)}

    def extend(slot: int, remaining: int, prefix: Tuple[Partition, ...]) -> Iterator[Tuple[Partition, ...]]:
        if slot == s - 1:
            for last in by_size[remaining]:
                yield prefix + (last,)
            return
        for m in range(remaining + 1):
            for component in by_size[m]:
                yield from extend(slot + 1, remaining - m, prefix + (component,))

    for tuple_ in sorted(extend(0, a, ())):
        yield tuple_


def p_adic_digits(n: int, p: int) -> Tuple[List[Tuple[int, int]], int]:
    """
    Split n = sum a_i p^k_i + a_0.

    Returns:
        ([(k, a_k) for nonzero digits with k >= 1, largest k first], a_0)
    """
    if n == 0:
        return [], 0
    raw = sympy_digits(n, p)[1:]
    top = len(raw) - 1
    digit_list = [(top - index, digit) for index, digit in enumerate(raw) if digit and top - index >= 1]
    return digit_list, raw[-1]


# ============================================================================
# HOOKS
# ============================================================================

def hooks(partition: Partition) -> List[Hook]:
    """Every hook of the diagram, row by row."""
    columns = conjugate(partition)
    result = []
    for row, part in enumerate(partition, start=1):
        for col in range(1, part + 1):
            result.append(Hook(row=row, col=col, arm=part - col, leg=columns[col - 1] - row))
    return result


def hook_lengths(partition: Partition) -> Dict[Tuple[int, int], int]:
    """Map each node (row, col) to the length of its hook."""
    return {(hook.row, hook.col): hook.length for hook in hooks(partition)}


def e_hooks(partition: Partition, e: int) -> List[Hook]:
    """Hooks whose length is divisible by e."""
    if e < 1:
        raise InvalidInputError(f"Invalid hook modulus {e}: must be at least 1")
    return [hook for hook in hooks(partition) if hook.length % e == 0]


@lru_cache(maxsize=None)
def degree(partition: Partition) -> int:
    """chi^lambda(1) by the hook-length formula, exact."""
    n = size(partition)
    return math.factorial(n) // math.prod(hook.length for hook in hooks(partition))


def degree_by_branching(partition: Partition) -> int:
    """chi^lambda(1) as a sum over removable corners; an oracle for ``degree``."""

    @lru_cache(maxsize=None)
    def count(shape: Partition) -> int:
        if size(shape) <= 1:
            return 1
        return sum(count(smaller) for smaller in remove_corners(shape))

    return count(partition)


def remove_corners(partition: Partition) -> List[Partition]:
    """Every partition obtained by deleting one removable node."""
    result = []
    for index, part in enumerate(partition):
        below = partition[index + 1] if index + 1 < len(partition) else 0
        if part > below:
            reduced = list(partition)
            reduced[index] -= 1
            result.append(make_partition(reduced))
    return result


def add_node_corners(partition: Partition) -> List[Partition]:
    """Every partition obtained by adding one addable node."""
    result = []
    for index in range(len(partition) + 1):
        current = partition[index] if index < len(partition) else 0
        above = partition[index - 1] if index > 0 else None
        if above is None or current < above:
            grown = list(partition) + ([0] if index == len(partition) else [])
            grown[index] += 1
            result.append(make_partition(grown))
    return result


# ============================================================================
# BETA-SETS AND THE ABACUS
# ============================================================================

def beta_set_of_size(partition: Partition, m: int) -> BetaSet:
    """The beta-set {lambda_i + m - i} with exactly m elements (m >= length)."""
    if m < len(partition):
        raise InvalidInputError(f"Beta-set size {m} is smaller than the length of {list(partition)}")
    return tuple((partition[i] if i < len(partition) else 0) + m - 1 - i for i in range(m))


def first_column_beta_set(partition: Partition) -> BetaSet:
    """First-column hook lengths, a beta-set with length(partition) elements."""
    return beta_set_of_size(partition, len(partition))


def shift(beta: Iterable[int], s: int) -> BetaSet:
    """X^{+s} = {x + s} together with {0, ..., s - 1}."""
    if s < 0:
        raise InvalidInputError(f"Invalid shift {s}: must be nonnegative")
    return tuple(sorted({x + s for x in beta} | set(range(s)), reverse=True))


def partition_of(beta: Iterable[int]) -> Partition:
    """P(X): the partition encoded by a beta-set."""
    elements = list(beta)
    if len(set(elements)) != len(elements):
        raise InvalidInputError(f"Invalid beta-set {elements}: elements must be distinct")
    if any(x < 0 for x in elements):
        raise InvalidInputError(f"Invalid beta-set {elements}: elements must be nonnegative")
    ordered = sorted(elements, reverse=True)
    t = len(ordered)
    return make_partition(ordered[i] - (t - 1 - i) for i in range(t))


def beta_hook_pairs(beta: Iterable[int]) -> List[Tuple[int, int]]:
    """All pairs (x, y) with x in X, y not in X and 0 <= y < x; each is a hook."""
    members = set(beta)
    return [(x, y) for x in sorted(members, reverse=True) for y in range(x - 1, -1, -1) if y not in members]


def remove_hook(beta: Iterable[int], x: int, y: int) -> BetaSet:
    """(X minus {x}) union {y}: a beta-set for lambda with the hook H(x, y) removed."""
    members = set(beta)
    if x not in members:
        raise InvalidInputError(f"Cannot remove hook H({x},{y}): {x} is not in the beta-set")
    if y in members:
        raise InvalidInputError(f"Cannot remove hook H({x},{y}): {y} is already in the beta-set")
    if not 0 <= y < x:
        raise InvalidInputError(f"Cannot remove hook H({x},{y}): need 0 <= y < x")
    return tuple(sorted((members - {x}) | {y}, reverse=True))


def beta_pair_to_hook(beta: Iterable[int], x: int, y: int) -> Hook:
    """Locate the hook H(x, y) of P(X) on the Young diagram."""
    ordered = sorted(set(beta), reverse=True)
    if x not in ordered or y in ordered or not 0 <= y < x:
        raise InvalidInputError(f"H({x},{y}) is not a hook of the beta-set {ordered}")
    partition = partition_of(ordered)
    row = ordered.index(x) + 1
    leg = sum(1 for z in ordered if y < z < x)
    arm = x - y - 1 - leg
    return Hook(row=row, col=partition[row - 1] - arm, arm=arm, leg=leg)


def hook_to_beta_pair(beta: Iterable[int], hook: Hook) -> Tuple[int, int]:
    """The (x, y) pair of a hook given by its node, relative to the beta-set X."""
    ordered = sorted(set(beta), reverse=True)
    x = ordered[hook.row - 1]
    return x, x - hook.length


def _abacus_size(length: int, r: int) -> int:
    return r * max(1, -(-length // r))


def _runner_partition(positions: Sequence[int]) -> Partition:
    ordered = sorted(positions, reverse=True)
    b = len(ordered)
    return make_partition(ordered[j] - (b - 1 - j) for j in range(b))


def core_quotient(partition: Partition, r: int) -> CoreQuotient:
    """
    The r-core and r-quotient of a partition.

    Uses a beta-set whose size is a multiple of r; every such beta-set gives
    the same component order, so the result is canonical.
    """
    if r < 2:
        raise InvalidInputError(f"Invalid abacus size {r}: must be at least 2")
    beta = beta_set_of_size(partition, _abacus_size(len(partition), r))
    runners: List[List[int]] = [[] for _ in range(r)]
    for x in beta:
        runners[x % r].append(x // r)
    quotient = tuple(_runner_partition(positions) for positions in runners)
    core_beta = [r * position + q for q in range(r) for position in range(len(runners[q]))]
    return CoreQuotient(r=r, core=partition_of(core_beta), quotient=quotient)


def is_core(partition: Partition, r: int) -> bool:
    """True when the partition has no hook of length r."""
    members = set(first_column_beta_set(partition))
    return all(x - r < 0 or (x - r) in members for x in members)


def from_core_quotient(core: Partition, quotient: Sequence[Partition], r: int) -> Partition:
    """
    Rebuild a partition from its r-core and r-quotient.

    Exact inverse of ``core_quotient`` under the multiple-of-r convention.
    """
    if r < 2:
        raise InvalidInputError(f"Invalid abacus size {r}: must be at least 2")
    if len(quotient) != r:
        raise InvalidInputError(f"Quotient has {len(quotient)} components, expected {r}")
    if not is_core(core, r):
        raise InvalidInputError(f"{list(core)} is not a {r}-core")
    t = max(1, -(-len(core) // r))
    while True:
        beta = beta_set_of_size(core, r * t)
        counts = [0] * r
        for x in beta:
            counts[x % r] += 1
        if all(counts[q] >= len(quotient[q]) for q in range(r)):
            break
        t += 1
    new_beta = []
    for q in range(r):
        component = quotient[q]
        b = counts[q]
        for j in range(b):
            part = component[j] if j < len(component) else 0
            new_beta.append(r * (part + b - 1 - j) + q)
    return partition_of(new_beta)


def n_s_invariant(partition: Partition, s: int) -> int:
    """N_s(lambda): the largest first part or length among the s-quotient components."""
    return quotient_n_value(core_quotient(partition, s).quotient)


def quotient_n_value(quotient: Sequence[Partition]) -> int:
    """N value read straight off a quotient tuple."""
    return max((max(component[0], len(component)) for component in quotient if component), default=0)


def clear_caches() -> None:
    degree.cache_clear()


def format_partition(partition: Optional[Partition]) -> str:
    """Compact text form used in CSV output and log lines."""
    if not partition:
        return "()"
    return "(" + ",".join(str(part) for part in partition) + ")"
