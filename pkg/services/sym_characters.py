"""
Symmetric Group Characters

p'-degree characters of S_n: constructive enumeration through the p-adic
core tower, blocks P(n | gamma) by p^k-core, the Delta_x stratification by
the N invariant, Murnaghan-Nakayama character values and the hook-addition
partitions used for block endpoints.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from sympy import Poly, isprime, symbols

from services.exceptions import ImplementationFault, InvalidInputError
from services.partition_core import (
    Partition,
    all_partitions,
    beta_set_of_size,
    count_multipartitions,
    degree,
    first_column_beta_set,
    from_core_quotient,
    is_core,
    make_partition,
    multipartitions,
    p_adic_digits,
    partition_of,
    partitions_in_box,
    quotient_n_value,
    size,
)

logger = logging.getLogger(__name__)

CycleType = Partition
BRUTE_FORCE_N_MAX = 30


# ============================================================================
# DATA CLASSES
# ============================================================================

@dataclass(frozen=True)
class PPrimeBlock:
    """
    P(n | gamma) for the top p-adic digit of n.

    n = a * p^k + r with r < p^k and 1 <= a <= p - 1; every member has
    p^k-core gamma. Members are ordered lexicographically by quotient tuple.
    """
    n: int
    p: int
    k: int
    a: int
    r: int
    gamma: Partition
    members: Tuple[Partition, ...]
    quotients: Tuple[Tuple[Partition, ...], ...] = field(repr=False)

    @property
    def modulus(self) -> int:
        return self.p ** self.k

    def quotient_of(self, member: Partition) -> Tuple[Partition, ...]:
        return self.quotients[self.members.index(member)]


# ============================================================================
# VALIDATION HELPERS
# ============================================================================

def require_prime(p: int) -> None:
    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise InvalidInputError(f"{p!r} is not a prime")


def top_digit(n: int, p: int) -> Tuple[int, int, int]:
    """(k, a, r) with n = a * p^k + r, r < p^k, for the leading p-adic digit."""
    digits, _ = p_adic_digits(n, p)
    if not digits:
        raise InvalidInputError(f"n={n} has no p-adic digit above the units for p={p}")
    k, a = digits[0]
    return k, a, n - a * p ** k


# ============================================================================
# ENUMERATION
# ============================================================================

def enumerate_p_prime(n: int, p: int, brute_force: bool = False,
                      brute_force_n_max: int = BRUTE_FORCE_N_MAX) -> List[Partition]:
    """
    All partitions of n whose character degree is prime to p.

    Built digit by digit: the leading digit a * p^k contributes every
    p^k-tuple of partitions of total size a, placed on top of each p'-core
    of the remainder. ``brute_force`` filters P(n) by degree instead and is
    meant as an oracle for small n.
    """
    require_prime(p)
    if n < 0:
        raise InvalidInputError(f"Invalid n={n}: must be nonnegative")
    if brute_force:
        if n > brute_force_n_max:
            raise InvalidInputError(f"Brute-force enumeration is limited to n <= {brute_force_n_max}")
        return sorted(partition for partition in all_partitions(n) if degree(partition) % p)
    return list(_enumerate_p_prime(n, p))


@lru_cache(maxsize=None)
def _enumerate_p_prime(n: int, p: int) -> Tuple[Partition, ...]:
    if n < p:
        return tuple(sorted(all_partitions(n)))
    k, a, r = top_digit(n, p)
    result: List[Partition] = []
    for gamma in _enumerate_p_prime(r, p):
        result.extend(_block_members(n, p, k, a, gamma)[0])
    logger.debug(f"Enumerated {len(result)} {p}'-partitions of {n}")
    return tuple(result)


@lru_cache(maxsize=None)
def _block_members(n: int, p: int, k: int, a: int,
                   gamma: Partition) -> Tuple[Tuple[Partition, ...], Tuple[Tuple[Partition, ...], ...]]:
    modulus = p ** k
    quotients = tuple(multipartitions(modulus, a))
    members = tuple(from_core_quotient(gamma, quotient, modulus) for quotient in quotients)
    return members, quotients


def validate_block(n: int, p: int, k: int, gamma: Partition) -> Tuple[int, int]:
    """
    Check that P(n | gamma) is a block of the leading digit and return (a, r).

    Raises:
        InvalidInputError: when (n, k) is not the leading digit, gamma has
            the wrong size, is not a p^k-core, or has degree divisible by p
    """
    require_prime(p)
    if k < 1:
        raise InvalidInputError(f"Invalid level k={k}: must be at least 1")
    gamma = make_partition(gamma)
    modulus = p ** k
    r = size(gamma)
    if (n - r) % modulus or n < r:
        raise InvalidInputError(f"n={n} is not of the form a*{modulus} + |gamma|")
    a = (n - r) // modulus
    if not 1 <= a <= p - 1 or r >= modulus:
        raise InvalidInputError(f"(n={n}, k={k}) is not the leading {p}-adic digit with r={r}")
    if not is_core(gamma, modulus):
        raise InvalidInputError(f"{list(gamma)} is not a {modulus}-core")
    if degree(gamma) % p == 0:
        raise InvalidInputError(f"{list(gamma)} has degree divisible by {p}")
    return a, r


def p_prime_block(n: int, p: int, k: int, gamma: Partition) -> PPrimeBlock:
    """Build the block P(n | gamma) for the leading digit a * p^k of n."""
    a, r = validate_block(n, p, k, gamma)
    modulus = p ** k
    members, quotients = _block_members(n, p, k, a, gamma)
    expected = count_multipartitions(modulus, a)
    if len(members) != expected:
        raise ImplementationFault(f"Block gamma={list(gamma)} has {len(members)} members, expected {expected}")
    return PPrimeBlock(n=n, p=p, k=k, a=a, r=r, gamma=gamma, members=members, quotients=quotients)


def blocks(n: int, p: int) -> List[PPrimeBlock]:
    """Every block of the leading digit of n, ordered by gamma."""
    k, _, r = top_digit(n, p)
    return [p_prime_block(n, p, k, gamma) for gamma in _enumerate_p_prime(r, p)]


# ============================================================================
# DELTA STRATIFICATION
# ============================================================================

def delta_sets(block: PPrimeBlock) -> Dict[int, List[Partition]]:
    """Split a block by N_{p^k}(lambda) = x for x in [1, a]."""
    result: Dict[int, List[Partition]] = {x: [] for x in range(1, block.a + 1)}
    for member, quotient in zip(block.members, block.quotients):
        x = quotient_n_value(quotient)
        if x not in result:
            raise ImplementationFault(f"Member {list(member)} has N={x} outside [1, {block.a}]")
        result[x].append(member)
    return result


def delta_sizes(p: int, k: int, a: int) -> Dict[int, int]:
    """
    |Delta_x| for x in [1, a] without enumerating members.

    A quotient tuple lies in Delta_x when every component fits an x-box and
    one does not fit an (x-1)-box, so |Delta_x| is the t^a coefficient of
    B_x(t)^s - B_{x-1}(t)^s where s = p^k and B_x counts boxed partitions.
    """
    t = symbols("t")
    s = p ** k

    def boxed_power(x: int) -> int:
        if x == 0:
            return 1 if a == 0 else 0
        series = Poly([len(partitions_in_box(m, x)) for m in range(a, -1, -1)], t)
        return _truncated_power(series, s, a, t).coeff_monomial(t ** a)

    powers = [boxed_power(x) for x in range(a + 1)]
    return {x: int(powers[x] - powers[x - 1]) for x in range(1, a + 1)}


def _truncated_power(series: Poly, exponent: int, top: int, t) -> Poly:
    """series^exponent with every term above t^top discarded."""

    def truncate(poly: Poly) -> Poly:
        coeffs = poly.all_coeffs()
        return Poly(coeffs[-(top + 1):], t) if len(coeffs) > top + 1 else poly

    result = Poly(1, t)
    base = truncate(series)
    while exponent:
        if exponent & 1:
            result = truncate(result * base)
        base = truncate(base * base)
        exponent >>= 1
    return result


def delta_closed_forms(p: int, k: int, a: int) -> Dict[int, int]:
    """Closed forms for the top few |Delta_x| where they are known."""
    q = p ** k
    forms: Dict[int, int] = {}
    if a >= 2:
        forms[a] = 2 * q
    if a >= 3:
        forms[a - 1] = 2 * q * q - q if a == 3 else 2 * q * q
    if a >= 6:
        forms[a - 2] = q ** 3 + 3 * q ** 2
    if k == 1 and a >= 8:
        forms[a - 3] = p * p * (p + 1) * (p + 8) // 3
    return forms


# ============================================================================
# CHARACTER VALUES
# ============================================================================

def mn_value(partition: Partition, cycle_type: CycleType) -> int:
    """
    chi^lambda on the class of the given cycle type (Murnaghan-Nakayama).

    Raises:
        InvalidInputError: if the sizes differ
    """
    if size(partition) != size(cycle_type):
        raise InvalidInputError(
            f"Partition {list(partition)} and cycle type {list(cycle_type)} have different sizes"
        )
    return _mn_value(tuple(partition), tuple(sorted(cycle_type, reverse=True)))


@lru_cache(maxsize=None)
def _mn_value(partition: Partition, cycle_type: CycleType) -> int:
    if not cycle_type:
        return 1
    if cycle_type[0] == 1:
        return degree(partition)
    length, rest = cycle_type[0], cycle_type[1:]
    beta = first_column_beta_set(partition)
    members = set(beta)
    total = 0
    for x in beta:
        y = x - length
        if y < 0 or y in members:
            continue
        leg = sum(1 for z in beta if y < z < x)
        reduced = partition_of((members - {x}) | {y})
        total += (-1) ** leg * _mn_value(reduced, rest)
    return total


def class_sign(cycle_type: CycleType) -> int:
    return (-1) ** (size(cycle_type) - len(cycle_type))


def centralizer_order(cycle_type: CycleType) -> int:
    """|C_{S_n}(g)| = prod i^{m_i} m_i! for g of the given cycle type."""
    counts = Counter(cycle_type)
    return math.prod(part ** mult * math.factorial(mult) for part, mult in counts.items())


def character_table(n: int) -> Tuple[List[Partition], List[CycleType], List[List[int]]]:
    """Full character table of S_n: rows by partition, columns by cycle type."""
    labels = all_partitions(n)
    table = [[mn_value(partition, cycle_type) for cycle_type in labels] for partition in labels]
    return labels, labels, table


# ============================================================================
# HOOK ADDITION
# ============================================================================

def add_hook_partitions(gamma: Partition, x: int) -> List[Partition]:
    """
    The x partitions of |gamma| + x with x-core gamma.

    Entry i carries a hook of shape (x - i, 1^i), so entry 0 is gamma + (x)
    and entry x - 1 is gamma with x extra rows of length one.

    Raises:
        InvalidInputError: if gamma has a hook of length x
    """
    if x < 1:
        raise InvalidInputError(f"Invalid hook length {x}: must be positive")
    if x > 1 and not is_core(gamma, x):
        raise InvalidInputError(f"{list(gamma)} is not a {x}-core")
    beta = beta_set_of_size(gamma, len(gamma) + x)
    members = set(beta)
    by_leg: Dict[int, Partition] = {}
    for y in beta:
        if y + x in members:
            continue
        leg = sum(1 for z in beta if y < z < y + x)
        by_leg[leg] = partition_of((members - {y}) | {y + x})
    if sorted(by_leg) != list(range(x)):
        raise ImplementationFault(f"Hook addition to {list(gamma)} produced legs {sorted(by_leg)}")
    return [by_leg[leg] for leg in range(x)]


def block_endpoints(gamma: Partition, m: int) -> Tuple[Partition, Partition]:
    """gamma + (m) and gamma with m extra unit rows: the two hook-extremal members."""
    first = (gamma[0] + m,) + gamma[1:] if gamma else (m,)
    last = gamma + (1,) * m
    return first, last


def clear_caches() -> None:
    _mn_value.cache_clear()
    _enumerate_p_prime.cache_clear()
    _block_members.cache_clear()
