"""
Sylow Normalizer Characters

Labels and exact degrees for the p'-degree irreducible characters of the
Sylow p-normalizer N_n of S_n. No character table is ever built: every
degree comes from the orbit description of Irr_{p'}(N_{p^k}) and the
wreath-product formula for N_{p^k} wr S_a.

Label layout:
    NormPkLabel         one character of N_{p^k}, (zset, twist) coordinates
    WreathAssignment    distinct NormPkLabels, each carrying a partition
    NormalizerCharLabel one WreathAssignment per p-adic digit, plus a tail
                        partition of a_0 for the S_{a_0} factor
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Tuple

from services.exceptions import InvalidInputError
from services.partition_core import (
    Partition,
    all_partitions,
    conjugate,
    degree,
    make_partition,
    multipartitions,
    p_adic_digits,
    size,
)
from services.sym_characters import require_prime

logger = logging.getLogger(__name__)


# ============================================================================
# LABEL TYPES
# ============================================================================

@dataclass(frozen=True, order=True)
class NormPkLabel:
    """
    An irreducible p'-character of N_{p^k}.

    ``zset`` lists the coordinates (1-based) where the underlying linear
    Sylow character is trivial; ``twist`` holds one residue mod p-1 per
    coordinate in ``zset``. The degree is (p-1)^(k - |zset|).
    """
    p: int
    k: int
    zset: Tuple[int, ...]
    twist: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return (self.p - 1) ** (self.k - len(self.zset))

    @property
    def is_linear(self) -> bool:
        return len(self.zset) == self.k

    def to_dict(self) -> Dict[str, Any]:
        return {"zset": list(self.zset), "twist": list(self.twist)}


@dataclass(frozen=True, order=True)
class WreathAssignment:
    """
    X(theta_1; mu_1) x ... induced to N_{p^k} wr S_a.

    ``pairs`` is sorted by label; labels are pairwise distinct and every mu
    is nonempty.
    """
    pairs: Tuple[Tuple[NormPkLabel, Partition], ...]

    def __post_init__(self):
        labels = [theta for theta, _ in self.pairs]
        if len(set(labels)) != len(labels):
            raise InvalidInputError("WreathAssignment labels must be pairwise distinct")
        if any(not mu for _, mu in self.pairs):
            raise InvalidInputError("WreathAssignment partitions must be nonempty")

    @classmethod
    def of(cls, pairs: Iterable[Tuple[NormPkLabel, Partition]]) -> "WreathAssignment":
        return cls(tuple(sorted(pairs)))

    @property
    def a(self) -> int:
        return sum(size(mu) for _, mu in self.pairs)

    @property
    def degree(self) -> int:
        """prod theta(1)^|mu| * prod chi^mu(1) * a! / prod |mu|!"""
        value = math.factorial(self.a)
        for theta, mu in self.pairs:
            value = value * theta.degree ** size(mu) * degree(mu) // math.factorial(size(mu))
        return value

    def to_list(self) -> List[Dict[str, Any]]:
        return [dict(theta.to_dict(), mu=list(mu)) for theta, mu in self.pairs]


@dataclass(frozen=True, order=True)
class NormalizerCharLabel:
    """A p'-character of N_n: one assignment per digit (largest k first) and a tail."""
    digits: Tuple[Tuple[int, int, WreathAssignment], ...]
    tail: Partition

    @property
    def degree(self) -> int:
        return math.prod(assignment.degree for _, _, assignment in self.digits) * degree(self.tail)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "digits": [{"k": k, "a": a, "assign": assignment.to_list()} for k, a, assignment in self.digits],
            "tail": list(self.tail),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], p: int) -> "NormalizerCharLabel":
        try:
            digits = []
            for digit in data["digits"]:
                k, a = int(digit["k"]), int(digit["a"])
                pairs = [
                    (NormPkLabel(p, k, tuple(entry["zset"]), tuple(entry["twist"])), make_partition(entry["mu"]))
                    for entry in digit["assign"]
                ]
                assignment = WreathAssignment.of(pairs)
                if assignment.a != a:
                    raise InvalidInputError(f"Digit k={k} declares a={a} but assigns {assignment.a}")
                digits.append((k, a, assignment))
            return cls(digits=tuple(digits), tail=make_partition(data["tail"]))
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"Malformed normalizer label: {e}") from e

    def prepend(self, k: int, a: int, assignment: WreathAssignment) -> "NormalizerCharLabel":
        """theta x (this label): the label for n + a p^k with a new leading digit."""
        return NormalizerCharLabel(digits=((k, a, assignment),) + self.digits, tail=self.tail)


def sort_key(label: NormalizerCharLabel) -> Tuple:
    return (label.degree, label)


# ============================================================================
# ENUMERATION
# ============================================================================

@lru_cache(maxsize=None)
def _norm_pk_labels(p: int, k: int) -> Tuple[NormPkLabel, ...]:
    labels = []
    for j in range(k + 1):
        for zset in itertools.combinations(range(1, k + 1), j):
            for twist in itertools.product(range(p - 1), repeat=j):
                labels.append(NormPkLabel(p=p, k=k, zset=zset, twist=twist))
    return tuple(sorted(labels))


def enum_norm_pk(p: int, k: int) -> List[NormPkLabel]:
    """The p^k irreducible p'-characters of N_{p^k}."""
    require_prime(p)
    if k < 1:
        raise InvalidInputError(f"Invalid level k={k}: must be at least 1")
    return list(_norm_pk_labels(p, k))


def linear_labels(p: int, k: int) -> List[NormPkLabel]:
    return [label for label in enum_norm_pk(p, k) if label.is_linear]


def labels_of_degree(p: int, k: int, value: int) -> List[NormPkLabel]:
    return [label for label in enum_norm_pk(p, k) if label.degree == value]


@lru_cache(maxsize=None)
def _norm_apk(p: int, k: int, a: int) -> Tuple[WreathAssignment, ...]:
    labels = _norm_pk_labels(p, k)
    result = []
    for tuple_ in multipartitions(len(labels), a):
        result.append(WreathAssignment.of((labels[i], mu) for i, mu in enumerate(tuple_) if mu))
    return tuple(sorted(result))


def enum_norm_apk(p: int, k: int, a: int) -> List[WreathAssignment]:
    """
    Irr_{p'}(N_{p^k} wr S_a) as assignments of partitions to distinct labels.

    Raises:
        InvalidInputError: unless 1 <= a <= p - 1
    """
    require_prime(p)
    if k < 1:
        raise InvalidInputError(f"Invalid level k={k}: must be at least 1")
    if not 1 <= a <= p - 1:
        raise InvalidInputError(f"Invalid digit a={a}: must lie in [1, {p - 1}]")
    return list(_norm_apk(p, k, a))


def enum_norm_n(n: int, p: int) -> List[NormalizerCharLabel]:
    """Irr_{p'}(N_n): one assignment per p-adic digit times a partition of a_0."""
    require_prime(p)
    if n < 0:
        raise InvalidInputError(f"Invalid n={n}: must be nonnegative")
    digits, a0 = p_adic_digits(n, p)
    factors = [[(k, a, assignment) for assignment in _norm_apk(p, k, a)] for k, a in digits]
    tails = all_partitions(a0)
    result = [
        NormalizerCharLabel(digits=tuple(choice), tail=tail)
        for choice in itertools.product(*factors)
        for tail in tails
    ]
    logger.debug(f"Enumerated {len(result)} normalizer labels for n={n}, p={p}")
    return result


def max_degree_apk(p: int, k: int, a: int) -> int:
    """(p-1)^(ak) times the largest character degree of S_a."""
    return (p - 1) ** (a * k) * max(degree(mu) for mu in all_partitions(a))


def max_degree_bound_n(n: int, p: int) -> int:
    """
    (p-1)^(ak) * a! * (p-1)! for n = a p^k + a_0 with a single digit above the units.

    Raises:
        InvalidInputError: if n has more than one digit above the units
    """
    digits, _ = p_adic_digits(n, p)
    if len(digits) != 1:
        raise InvalidInputError(f"n={n} does not have exactly one {p}-adic digit above the units")
    k, a = digits[0]
    return (p - 1) ** (a * k) * math.factorial(a) * math.factorial(p - 1)


# ============================================================================
# DISTINGUISHED SUBSETS
# ============================================================================

FAMILIES = ("X0", "X", "Y0", "Y", "Z", "W", "V", "Z5", "V1", "A", "M")


def closure(*shapes: Partition) -> FrozenSet[Partition]:
    """{nu}°: the given shapes together with their conjugates."""
    return frozenset(shape for nu in shapes for shape in (nu, conjugate(nu)))


def _family_slots(p: int, k: int, a: int, family: str) -> List[Tuple[FrozenSet[Partition], List[NormPkLabel]]]:
    """Each slot: the allowed partitions and the label pool it draws from."""
    lin = linear_labels(p, k)
    one = frozenset({(1,)})
    pair = closure((2,))

    def need(condition: bool, text: str) -> None:
        if not condition:
            raise InvalidInputError(f"Family {family} needs {text} (got p={p}, k={k}, a={a})")

    need(1 <= a <= p - 1, f"a in [1, {p - 1}]")
    if family == "X0":
        need(a >= 2, "a >= 2")
        return [(closure((a,)), lin)]
    if family == "X":
        need(a >= 2, "a >= 2")
        return [(closure((a,), (a - 1, 1)), lin)]
    if family == "Y0":
        need(a >= 2, "a >= 2")
        return [(closure((a - 1,)), lin), (one, lin)]
    if family == "Y":
        need(a >= 3, "a >= 3")
        return [(closure((a - 1,), (a - 2, 1)), lin), (one, lin)]
    if family == "Z":
        need(a >= 3, "a >= 3")
        return [(closure((a - 2,)), lin), (one, lin), (one, lin)]
    if family == "W":
        need(a >= 4, "a >= 4")
        return [(closure((a - 2,), (a - 3, 1)), lin), (one, lin), (one, lin)]
    if family == "V":
        need(a >= 5, "a >= 5")
        return [(closure((a - 2,), (a - 3, 1)), lin), (pair, lin)]
    if family == "Z5":
        need(a >= 6, "a >= 6")
        return [(closure((a - 4,)), lin), (pair, lin), (one, lin), (one, lin)]
    if family == "V1":
        need(a == 3, "a = 3")
        return [(one, lin), (one, lin), (one, lin)]
    if family == "A":
        need(a == 3 and k >= 2, "a = 3 and k >= 2")
        return [(one, labels_of_degree(p, k, p - 1)), (one, lin), (one, lin)]
    if family == "M":
        need(a == 2, "a = 2")
        return [(one, lin), (one, lin)]
    raise InvalidInputError(f"Unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def distinguished_subset(p: int, k: int, a: int, family: str) -> List[WreathAssignment]:
    """
    The named subset of Irr_{p'}(N_{a p^k}).

    Labels across slots are pairwise distinct; each resulting character is
    listed once, sorted.
    """
    require_prime(p)
    slots = _family_slots(p, k, a, family)
    found = set()
    for shapes in itertools.product(*(sorted(allowed) for allowed, _ in slots)):
        for thetas in _distinct_choices([pool for _, pool in slots]):
            found.add(WreathAssignment.of(zip(thetas, shapes)))
    return sorted(found)


def family_enumeration_size(p: int, k: int, a: int, family: str) -> int:
    """Shape choices times label choices visited when generating a family."""
    slots = _family_slots(p, k, a, family)
    return math.prod(len(allowed) * len(pool) for allowed, pool in slots)


def _distinct_choices(pools: Sequence[List[NormPkLabel]]) -> Iterable[Tuple[NormPkLabel, ...]]:
    def extend(index: int, chosen: Tuple[NormPkLabel, ...]):
        if index == len(pools):
            yield chosen
            return
        for theta in pools[index]:
            if theta not in chosen:
                yield from extend(index + 1, chosen + (theta,))

    yield from extend(0, ())


def case_one_m_set(p: int, k: int) -> List[WreathAssignment]:
    """Inductions of two distinct linear characters to N_{p^k} wr S_2; all of degree 2."""
    return distinguished_subset(p, k, 2, "M")


def family_closed_form(p: int, k: int, a: int, family: str) -> Tuple[int, bool]:
    """
    Cardinality formula for a family.

    Returns:
        (value, exact): ``exact`` is False when the formula is only a lower bound
    """
    _family_slots(p, k, a, family)
    lin = (p - 1) ** k
    if family == "X0":
        return 2 * lin, True
    if family == "X":
        return (2 * lin if a == 2 else 3 * lin if a == 3 else 4 * lin), True
    if family == "Y0":
        return (math.comb(lin, 2) if a == 2 else 2 * lin * (lin - 1)), True
    if family == "Y":
        if a == 3:
            return 2 * lin * (lin - 1), True
        return 3 * lin * (lin - 1), a == 4
    if family == "Z":
        return (math.comb(lin, 3) if a == 3 else 6 * math.comb(lin, 3)), True
    if family == "W":
        shapes = len(closure((a - 2,), (a - 3, 1)))
        return shapes * lin * math.comb(lin - 1, 2), True
    if family == "V":
        shapes = len(closure((a - 2,), (a - 3, 1)))
        return 2 * shapes * lin * (lin - 1), True
    if family == "Z5":
        return 4 * lin * (lin - 1) * math.comb(lin - 2, 2), True
    if family == "V1":
        return math.comb(lin, 3), True
    if family == "A":
        return k * (p - 1) ** (k - 1) * math.comb(lin, 2), True
    return math.comb(lin, 2), True


def family_degree_bound(p: int, a: int, family: str) -> int:
    """Largest degree any member of the family may have."""
    bounds = {
        "X0": 1,
        "X": max(1, a - 1),
        "Y0": a,
        "Y": max(a, a * (a - 2)),
        "Z": a * (a - 1),
        "W": a * (a - 1) * max(1, a - 3),
        "V": a * (a - 1) * max(1, a - 3) // 2,
        "Z5": a * (a - 1) * (a - 2) * (a - 3) // 2,
        "V1": 6,
        "M": 2,
        "A": 6 * (p - 1),
    }
    if family not in bounds:
        raise InvalidInputError(f"No degree bound recorded for family {family!r}")
    return bounds[family]


def clear_caches() -> None:
    _norm_pk_labels.cache_clear()
    _norm_apk.cache_clear()
