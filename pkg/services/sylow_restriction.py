"""
Sylow Restriction

Exact multiplicities [chi^lambda restricted to P_n, X(s)] for linear
characters X(s) of the Sylow p-subgroup P_n of S_n.

P_{p^k} is the iterated wreath product C_p wr ... wr C_p acting on p^k
points. A level-k element (g_0, ..., g_{p-1}; h) sends the point (i, x) to
(i + h, g_i(x)). Linear characters are labelled by coordinates
s = (s_1, ..., s_k) in Z_p and take the value omega^e(g) with
e(g; h) = sum e(g_i) + s_k * h (mod p).

Multiplicities are computed from the joint distribution of (cycle type,
exponent) over the group, so each partition needs one character value per
cycle type instead of one per element.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from services.cyclotomic import CycloInt
from services.exceptions import EnumerationCapError, ImplementationFault, InvalidInputError
from services.partition_core import Partition, degree, in_box, p_adic_digits, size
from services.sym_characters import mn_value, require_prime

logger = logging.getLogger(__name__)

DEFAULT_ENUMERATION_CAP = 10 ** 6

# (cycle type, exponent) -> number of group elements
Distribution = Dict[Tuple[Partition, int], int]


# ============================================================================
# GROUP ELEMENTS
# ============================================================================

@dataclass(frozen=True)
class WreathElement:
    """An element of P_{p^k}; level 0 is the identity on a single point."""
    p: int
    level: int
    base: Tuple["WreathElement", ...] = ()
    top: int = 0

    @classmethod
    def identity(cls, p: int, level: int) -> "WreathElement":
        if level == 0:
            return cls(p=p, level=0)
        child = cls.identity(p, level - 1)
        return cls(p=p, level=level, base=(child,) * p, top=0)

    @property
    def degree(self) -> int:
        return self.p ** self.level

    def __call__(self, point: int) -> int:
        """Image of a point in [0, p^level)."""
        if self.level == 0:
            return point
        block_size = self.p ** (self.level - 1)
        block, offset = divmod(point, block_size)
        return ((block + self.top) % self.p) * block_size + self.base[block](offset)

    def compose(self, other: "WreathElement") -> "WreathElement":
        """self o other: apply ``other`` first."""
        if self.level != other.level or self.p != other.p:
            raise InvalidInputError("Cannot compose wreath elements of different levels")
        if self.level == 0:
            return self
        p = self.p
        base = tuple(self.base[(i + other.top) % p].compose(other.base[i]) for i in range(p))
        return WreathElement(p=p, level=self.level, base=base, top=(self.top + other.top) % p)


def group_order(p: int, k: int) -> int:
    """|P_{p^k}| = p^((p^k - 1) / (p - 1))."""
    return p ** ((p ** k - 1) // (p - 1))


def enumerate_elements(p: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[WreathElement]:
    """Yield every element of P_{p^k}."""
    order = group_order(p, k)
    if order > cap:
        raise EnumerationCapError(order, cap, f"elements of P_{p ** k}")
    yield from _elements(p, k)


def _elements(p: int, k: int) -> Iterator[WreathElement]:
    if k == 0:
        yield WreathElement(p=p, level=0)
        return
    lower = list(_elements(p, k - 1))
    for base in itertools.product(lower, repeat=p):
        for top in range(p):
            yield WreathElement(p=p, level=k, base=base, top=top)


def cycle_product(g: WreathElement) -> WreathElement:
    """g_{(p-1)h} o ... o g_h o g_0: the return map on block 0."""
    p, h = g.p, g.top
    result = g.base[0]
    for step in range(1, p):
        result = g.base[(step * h) % p].compose(result)
    return result


def cycle_type(g: WreathElement) -> Partition:
    """Cycle type of g on its p^k points, largest cycle first."""
    if g.level == 0:
        return (1,)
    if g.top == 0:
        return tuple(sorted((length for child in g.base for length in cycle_type(child)), reverse=True))
    return tuple(g.p * length for length in cycle_type(cycle_product(g)))


def permutation_cycle_type(g: WreathElement) -> Partition:
    """Cycle type read off the point permutation directly."""
    seen = set()
    lengths = []
    for start in range(g.degree):
        if start in seen:
            continue
        length, point = 0, start
        while point not in seen:
            seen.add(point)
            point = g(point)
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


# ============================================================================
# LINEAR CHARACTERS
# ============================================================================

@dataclass(frozen=True)
class StarLabel:
    """
    A linear character of P_n.

    ``factors`` holds one coordinate tuple (s_1, ..., s_k) in Z_p per direct
    factor P_{p^k} of P_n; ``a0`` counts the fixed points.
    """
    p: int
    factors: Tuple[Tuple[int, ...], ...]
    a0: int = 0
    name: Optional[str] = field(default=None, compare=False)

    @classmethod
    def star(cls, p: int, k: int) -> "StarLabel":
        """X*_k: every coordinate equal to omega."""
        return cls(p=p, factors=((1,) * k,), name="star")

    @classmethod
    def trivial(cls, p: int, k: int) -> "StarLabel":
        return cls(p=p, factors=((0,) * k,), name="trivial")

    @classmethod
    def of(cls, p: int, coords: Sequence[int]) -> "StarLabel":
        return cls(p=p, factors=(tuple(c % p for c in coords),))

    @property
    def n(self) -> int:
        return sum(self.p ** len(coords) for coords in self.factors) + self.a0

    @property
    def order(self) -> int:
        result = 1
        for coords in self.factors:
            result *= group_order(self.p, len(coords))
        return result

    @property
    def zsets(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(i + 1 for i, c in enumerate(coords) if c == 0) for coords in self.factors)

    def display(self) -> str:
        if self.name:
            return self.name
        return ";".join(",".join(str(c) for c in coords) for coords in self.factors)


def star_product(n: int, p: int) -> StarLabel:
    """X*_(n): the product of X*_k over every p^k in the p-adic expansion of n."""
    require_prime(p)
    digits, a0 = p_adic_digits(n, p)
    factors = tuple((1,) * k for k, a in digits for _ in range(a))
    return StarLabel(p=p, factors=factors, a0=a0, name="star")


def exponent(coords: Sequence[int], g: WreathElement) -> int:
    """e(g) with X(s)(g) = omega^e(g)."""
    if len(coords) != g.level:
        raise InvalidInputError(f"Label of level {len(coords)} cannot evaluate a level-{g.level} element")
    if g.level == 0:
        return 0
    lower = coords[:-1]
    return (sum(exponent(lower, child) for child in g.base) + coords[-1] * g.top) % g.p


def lin_value(label: StarLabel, g: WreathElement) -> CycloInt:
    """X(s)(g) for a single-factor label."""
    if len(label.factors) != 1 or label.a0:
        raise InvalidInputError("lin_value evaluates single-factor labels on P_{p^k}")
    return CycloInt.from_power(label.p, exponent(label.factors[0], g))


# ============================================================================
# CLASS DISTRIBUTIONS
# ============================================================================

def _convolve(left: Distribution, right: Distribution, p: int) -> Distribution:
    result: Counter = Counter()
    for (type_a, e_a), count_a in left.items():
        for (type_b, e_b), count_b in right.items():
            merged = tuple(sorted(type_a + type_b, reverse=True))
            result[(merged, (e_a + e_b) % p)] += count_a * count_b
    return dict(result)


@lru_cache(maxsize=None)
def _level_distribution(p: int, coords: Tuple[int, ...]) -> Tuple[Tuple[Tuple[Partition, int], int], ...]:
    if not coords:
        return ((((1,), 0), 1),)
    lower = dict(_level_distribution(p, coords[:-1]))
    lower_order = sum(lower.values())
    s_k = coords[-1]

    # h = 0: independent base elements on the p blocks
    result: Counter = Counter()
    stacked: Distribution = {((), 0): 1}
    for _ in range(p):
        stacked = _convolve(stacked, lower, p)
    result.update(stacked)

    # h != 0: one p-fold cycle of blocks; the return map is uniform
    weight = lower_order ** (p - 1)
    for h in range(1, p):
        for (ctype, e), count in lower.items():
            result[(tuple(p * length for length in ctype), (e + s_k * h) % p)] += count * weight
    return tuple(sorted(result.items()))


def level_distribution(p: int, coords: Sequence[int]) -> Distribution:
    """(cycle type, exponent) counts over P_{p^k} for the label coordinates."""
    return dict(_level_distribution(p, tuple(c % p for c in coords)))


def enumerated_distribution(p: int, coords: Sequence[int], cap: int = DEFAULT_ENUMERATION_CAP) -> Distribution:
    """The same distribution, by walking every element."""
    result: Counter = Counter()
    for g in enumerate_elements(p, len(coords), cap):
        result[(cycle_type(g), exponent(coords, g))] += 1
    return dict(result)


def label_distribution(label: StarLabel, cap: int = DEFAULT_ENUMERATION_CAP) -> Distribution:
    """Distribution over P_n: factor distributions convolved, fixed points appended."""
    for coords in label.factors:
        order = group_order(label.p, len(coords))
        if order > cap:
            raise EnumerationCapError(order, cap, f"elements of P_{label.p ** len(coords)}")
    result: Distribution = {((), 0): 1}
    for coords in label.factors:
        result = _convolve(result, level_distribution(label.p, coords), label.p)
    if label.a0:
        fixed = (1,) * label.a0
        result = {(tuple(sorted(ctype + fixed, reverse=True)), e): count for (ctype, e), count in result.items()}
    return result


def cycle_type_count(p: int, k: int) -> int:
    """Number of distinct cycle types occurring in P_{p^k}."""
    return len({ctype for ctype, _ in level_distribution(p, (0,) * k)})


# ============================================================================
# MULTIPLICITIES
# ============================================================================

def restriction_multiplicity(partition: Partition, label: StarLabel, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """
    [chi^lambda restricted to P_n, X(s)], exactly.

    Raises:
        InvalidInputError: if |lambda| differs from the degree of P_n
        EnumerationCapError: if some factor P_{p^k} exceeds the cap
        ImplementationFault: if the inner product is not a nonnegative integer
    """
    require_prime(label.p)
    if size(partition) != label.n:
        raise InvalidInputError(f"|{list(partition)}| = {size(partition)} but the label acts on {label.n} points")
    distribution = label_distribution(label, cap)
    by_type: Dict[Partition, Dict[int, int]] = {}
    for (ctype, e), count in distribution.items():
        bucket = by_type.setdefault(ctype, {})
        bucket[-e % label.p] = bucket.get(-e % label.p, 0) + count

    total = CycloInt.from_int(label.p, 0)
    for ctype, conj_counts in sorted(by_type.items()):
        value = mn_value(partition, ctype)
        if value:
            total = total + value * CycloInt.from_exponent_counts(label.p, conj_counts)
    multiplicity = total.exact_div(label.order).to_int()
    if multiplicity < 0:
        raise ImplementationFault(f"Negative multiplicity {multiplicity} for {list(partition)} and {label.display()}")
    return multiplicity


def all_linear_labels(p: int, k: int) -> List[StarLabel]:
    """The p^k linear characters of P_{p^k}."""
    return [StarLabel.of(p, coords) for coords in itertools.product(range(p), repeat=k)]


def m_star(p: int, k: int) -> int:
    """m*(1) = p - 1 and m*(k) = p^k - p^(k-1) - p^(k-2) for k >= 2."""
    if k < 1:
        raise InvalidInputError(f"Invalid level k={k}: must be at least 1")
    if k == 1:
        return p - 1
    return p ** k - p ** (k - 1) - p ** (k - 2)


def composite_threshold(n: int, p: int) -> int:
    """T = sum of m*(k) over the p-adic expansion of n, plus a_0."""
    digits, a0 = p_adic_digits(n, p)
    return sum(a * m_star(p, k) for k, a in digits) + a0


# ============================================================================
# OMEGA CHECKS
# ============================================================================

@dataclass
class OmegaReport:
    """Outcome of checking box inclusion and degree floors against Omega(X)."""
    p: int
    n: int
    threshold: int
    degree_floor: Optional[int]
    checked: int = 0
    in_box: int = 0
    positive: int = 0
    min_positive_degree: Optional[int] = None
    violations: List[Dict[str, object]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "n": self.n,
            "threshold": self.threshold,
            "degree_floor": None if self.degree_floor is None else str(self.degree_floor),
            "checked": self.checked,
            "in_box": self.in_box,
            "positive": self.positive,
            "min_positive_degree": None if self.min_positive_degree is None else str(self.min_positive_degree),
            "violations": self.violations,
        }


def omega_check(label: StarLabel, threshold: int, sample: Sequence[Partition],
                degree_floor: Optional[int] = None, cap: int = DEFAULT_ENUMERATION_CAP) -> OmegaReport:
    """
    For each sampled partition: inside B_n(threshold) it must lie in Omega(label);
    with positive multiplicity its degree must reach ``degree_floor``.
    """
    report = OmegaReport(p=label.p, n=label.n, threshold=threshold, degree_floor=degree_floor)
    for partition in sample:
        multiplicity = restriction_multiplicity(partition, label, cap)
        report.checked += 1
        boxed = in_box(partition, threshold)
        if boxed:
            report.in_box += 1
            if multiplicity == 0:
                report.violations.append({"lambda": list(partition), "reason": "in box but not in Omega"})
        if multiplicity > 0:
            report.positive += 1
            value = degree(partition)
            if report.min_positive_degree is None or value < report.min_positive_degree:
                report.min_positive_degree = value
            if degree_floor is not None and value < degree_floor:
                report.violations.append(
                    {"lambda": list(partition), "reason": "degree below floor", "degree": str(value)}
                )
    if report.violations:
        logger.error(f"Omega check failed for {label.display()} at n={label.n}: {report.violations[:3]}")
    return report


def omega_star_check(p: int, k: int, sample: Sequence[Partition], cap: int = DEFAULT_ENUMERATION_CAP) -> OmegaReport:
    """B_{p^k}(m*(k)) inside Omega(X*_k), and degree >= (p-1)^(p^(k-1)) on Omega(X*_k)."""
    require_prime(p)
    return omega_check(StarLabel.star(p, k), m_star(p, k), sample, (p - 1) ** (p ** (k - 1)), cap)


def clear_caches() -> None:
    _level_distribution.cache_clear()
