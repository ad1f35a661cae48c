"""
Verification Suite

One runnable check per statement the bijection argument relies on: counting
identities, degree floors, inclusion results, set-size formulas and the
integer inequalities behind them. Every check returns a CheckResult; a
failing check always carries a witness.

Checks are registered in CHECKS by id. VerificationSuite runs a list of
CheckJobs inline or over a process pool, and returns results in job order
so reports are reproducible for a fixed seed.
"""

import inspect
import logging
import math
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy import primerange
from sympy.combinatorics.partitions import random_integer_partition
from sympy.functions.combinatorial.numbers import partition as partition_number
from tqdm import tqdm

from services.bijection_engine import (
    STRATEGIES,
    DegreeRelation,
    build_bijection,
    relation_match_exists,
    verify_bijection,
)
from services.exceptions import ImplementationFault, InvalidInputError, McKayError
from services.littlewood_richardson import nontrivial_constituent, skew_contents
from services.normalizer_chars import (
    FAMILIES,
    distinguished_subset,
    enum_norm_apk,
    enum_norm_n,
    family_closed_form,
    family_degree_bound,
    family_enumeration_size,
    max_degree_apk,
    max_degree_bound_n,
)
from services.partition_core import (
    Partition,
    all_partitions,
    contains,
    core_quotient,
    degree,
    hook_partition,
    in_box,
    is_core,
    make_partition,
    n_s_invariant,
    p_adic_digits,
    partitions_in_box,
    size,
)
from services.sylow_restriction import (
    DEFAULT_ENUMERATION_CAP,
    composite_threshold,
    group_order,
    m_star,
    omega_check,
    omega_star_check,
    star_product,
)
from services.sym_characters import (
    BRUTE_FORCE_N_MAX,
    add_hook_partitions,
    block_endpoints,
    delta_closed_forms,
    delta_sets,
    delta_sizes,
    enumerate_p_prime,
    p_prime_block,
    require_prime,
    validate_block,
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
SAMPLE_LISTING_LIMIT = 50_000


# ============================================================================
# RESULT TYPES
# ============================================================================

@dataclass
class CheckResult:
    """Outcome of one check. ``witness`` is required whenever status is fail."""
    check_id: str
    params: Dict[str, Any]
    status: str
    witness: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status == FAIL and not self.witness:
            raise ImplementationFault(f"Check {self.check_id} failed without a witness")

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            "check_id": self.check_id,
            "params": self.params,
            "status": self.status,
            "witness": self.witness,
            "details": self.details,
        }
        if include_timing:
            data["elapsed"] = round(self.elapsed, 6)
        return data


@dataclass(frozen=True)
class CheckJob:
    """
    One planned check run.

    ``of`` rejects parameters the check does not accept. Parameters it
    accepts but is not defined for are kept, with the rejection recorded in
    ``skip_reason``; such jobs are reported as skipped without running.
    """
    check_id: str
    params: Tuple[Tuple[str, Any], ...]
    skip_reason: Optional[str] = None

    @classmethod
    def of(cls, check_id: str, **params: Any) -> "CheckJob":
        if check_id not in CHECKS:
            raise InvalidInputError(f"Unknown check {check_id!r}")
        try:
            inspect.signature(CHECKS[check_id]).bind(**params)
        except TypeError as e:
            raise InvalidInputError(f"Invalid parameters for {check_id}: {e}") from e
        skip_reason = None
        try:
            PRECONDITIONS[check_id](**params)
        except InvalidInputError as e:
            skip_reason = str(e)
        return cls(check_id=check_id, params=tuple(sorted(params.items())), skip_reason=skip_reason)

    @property
    def kwargs(self) -> Dict[str, Any]:
        return dict(self.params)


def _result(check_id: str, params: Dict[str, Any], violations: List[Dict[str, Any]],
            details: Optional[Dict[str, Any]] = None) -> CheckResult:
    if violations:
        logger.error(f"Check {check_id} {params} failed: {violations[:3]}")
        return CheckResult(check_id, params, FAIL, witness={"violations": violations[:10],
                                                            "count": len(violations)},
                           details=details or {})
    return CheckResult(check_id, params, PASS, details=details or {})


def _rng(seed: int, check_id: str, params: Dict[str, Any]) -> random.Random:
    """A generator keyed on the run seed and the job, so each job replays alone."""
    return random.Random(f"{seed}:{check_id}:{sorted(params.items())}")


def _sample(rng: random.Random, items: Sequence[Partition], count: int) -> List[Partition]:
    if count >= len(items):
        return list(items)
    return sorted(rng.sample(list(items), count), reverse=True)


def _partition_sample(rng: random.Random, n: int, count: int) -> List[Partition]:
    """Seeded sample of P(n); above SAMPLE_LISTING_LIMIT partitions are drawn without listing P(n)."""
    if int(partition_number(n)) <= SAMPLE_LISTING_LIMIT:
        return _sample(rng, all_partitions(n), count)
    drawn = {make_partition(random_integer_partition(n, seed=rng.randrange(2 ** 32))) for _ in range(count)}
    return sorted(drawn, reverse=True)


# ============================================================================
# PRECONDITIONS
# ============================================================================
# One validator per check, taking the check's keyword arguments. A validator
# raises InvalidInputError when the check is not defined for its arguments.

def _require_digit(p: int, k: int, a: int) -> None:
    require_prime(p)
    if k < 1 or not 1 <= a <= p - 1:
        raise InvalidInputError(f"(k={k}, a={a}) is not a {p}-adic digit position")


def _require_within_cap(p: int, k: int, cap: int) -> None:
    if group_order(p, k) > cap:
        raise InvalidInputError(f"|P_{p ** k}| = {group_order(p, k)} exceeds the restriction cap {cap}")


def _require_nonnegative(**values: int) -> None:
    for name, value in values.items():
        if value < 0:
            raise InvalidInputError(f"Invalid {name}={value}: must be nonnegative")


def validate_rasala(n_min: int = 5, n_max: int = 25, **_: Any) -> None:
    if n_min < 5 or n_max > 40 or n_min > n_max:
        raise InvalidInputError(f"Rasala range [{n_min}, {n_max}] must lie in [5, 40]")


def validate_appendix(p_max: int = 97, k_min: int = 2, k_max: int = 12, **_: Any) -> None:
    if k_min < 2 or k_max < k_min or p_max < 5:
        raise InvalidInputError(f"Invalid inequality grid p_max={p_max}, k in [{k_min}, {k_max}]")


def validate_counting(n: int, p: int, **_: Any) -> None:
    require_prime(p)
    _require_nonnegative(n=n)


def validate_delta_sizes(p: int, k: int, a: int, gamma: Sequence[int] = (), **_: Any) -> None:
    _require_digit(p, k, a)
    gamma = make_partition(gamma)
    validate_block(a * p ** k + size(gamma), p, k, gamma)


def validate_digit(p: int, k: int, a: int, **_: Any) -> None:
    _require_digit(p, k, a)


def validate_coverage(p: int, k: int, a: int, **_: Any) -> None:
    _require_digit(p, k, a)
    if a < 2:
        raise InvalidInputError(f"No covering inequality applies at a={a}")


def validate_bess(gamma: Sequence[int], x: int, **_: Any) -> None:
    gamma = make_partition(gamma)
    if x < 1:
        raise InvalidInputError(f"Invalid hook length {x}: must be positive")
    if x > 1 and not is_core(gamma, x):
        raise InvalidInputError(f"{list(gamma)} is not a {x}-core")


def validate_gl3(p: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP, **_: Any) -> None:
    require_prime(p)
    if k < 1:
        raise InvalidInputError(f"Invalid level k={k}: must be at least 1")
    _require_within_cap(p, k, cap)


def validate_121_and_11(p: int, k: int, a: int = 1, a0: int = 0,
                        cap: int = DEFAULT_ENUMERATION_CAP, **_: Any) -> None:
    validate_gl3(p, k, cap)
    if not 1 <= a <= p - 1 or not 0 <= a0 <= p - 1:
        raise InvalidInputError(f"Invalid digits a={a}, a0={a0} for p={p}")


def validate_composite_gl3(n: int, p: int, cap: int = DEFAULT_ENUMERATION_CAP, **_: Any) -> None:
    require_prime(p)
    _require_nonnegative(n=n)
    label = star_product(n, p)
    if not label.factors:
        raise InvalidInputError(f"n={n} has no p-power part for p={p}")
    for coords in label.factors:
        _require_within_cap(p, len(coords), cap)


def validate_decisiva(n_max: int, s: int, **_: Any) -> None:
    _require_nonnegative(n_max=n_max)
    if s < 2:
        raise InvalidInputError(f"Invalid abacus size s={s}")


def validate_lr_witness(n_max: int = 10, **_: Any) -> None:
    _require_nonnegative(n_max=n_max)


def validate_lemma_a1(p: int, a: int, **_: Any) -> None:
    require_prime(p)
    if p < 11 or not 1 <= a <= p - 1:
        raise InvalidInputError(f"Boxed floor is stated for p >= 11 and 1 <= a <= p - 1 (got p={p}, a={a})")


def validate_bijection(n: int, p: int, strategy: str = "recursive", **_: Any) -> None:
    require_prime(p)
    _require_nonnegative(n=n)
    if strategy not in STRATEGIES:
        raise InvalidInputError(f"Unknown strategy {strategy!r}")


def validate_divisibility(n: int = 7, p: int = 3, **_: Any) -> None:
    require_prime(p)
    _require_nonnegative(n=n)


# ============================================================================
# MINIMAL DEGREES
# ============================================================================

def check_rasala(n_min: int = 5, n_max: int = 25) -> CheckResult:
    """
    Minimal-degree floors over all of P(n):
    nonlinear degrees are at least n - 1; on B_n(n-2) (n >= 9) at least
    n(n-3)/2; on B_n(n-3) (n >= 15) at least n(n-1)(n-5)/6.
    """
    params = {"n_min": n_min, "n_max": n_max}
    validate_rasala(n_min, n_max)
    violations = []
    minima: Dict[str, Dict[str, str]] = {}
    for n in range(n_min, n_max + 1):
        nonlinear, box2, box3 = None, None, None
        for partition in all_partitions(n):
            value = degree(partition)
            if value > 1:
                nonlinear = value if nonlinear is None else min(nonlinear, value)
            if n >= 9 and in_box(partition, n - 2):
                box2 = value if box2 is None else min(box2, value)
            if n >= 15 and in_box(partition, n - 3):
                box3 = value if box3 is None else min(box3, value)
        if nonlinear is not None and nonlinear < n - 1:
            violations.append({"n": n, "bound": "n-1", "minimum": str(nonlinear)})
        if box2 is not None and 2 * box2 < n * (n - 3):
            violations.append({"n": n, "bound": "n(n-3)/2", "minimum": str(box2)})
        if box3 is not None and 6 * box3 < n * (n - 1) * (n - 5):
            violations.append({"n": n, "bound": "n(n-1)(n-5)/6", "minimum": str(box3)})
        minima[str(n)] = {
            key: str(value)
            for key, value in (("nonlinear", nonlinear), ("box_n_minus_2", box2), ("box_n_minus_3", box3))
            if value is not None
        }
    return _result("rasala", params, violations, {"minima": minima})


# ============================================================================
# INTEGER INEQUALITIES
# ============================================================================

def hook_budget_gap(a: int, p: int, k: int) -> int:
    """a p^(k-1) - (a k + (a - 1) + (p - 2)); nonnegative for k >= 2, p >= 5, 1 <= a <= p - 1."""
    return a * p ** (k - 1) - (a * k + (a - 1) + (p - 2))


def union_margin(p: int, k: int) -> int:
    """(p-1)^(3k) + 3(p-1)^k - 2p^(2k) - 2p^k."""
    q = (p - 1) ** k
    return q ** 3 + 3 * q - 2 * p ** (2 * k) - 2 * p ** k


def union_margin_a3_scaled(p: int, k: int) -> int:
    """Six times (p-1)^(3k)/6 + 3(p-1)^(2k)/2 + 4(p-1)^k/3 - 2p^(2k) - p^k, kept integral."""
    q = (p - 1) ** k
    return q ** 3 + 9 * q ** 2 + 8 * q - 12 * p ** (2 * k) - 6 * p ** k


def check_appendix(p_max: int = 97, k_min: int = 2, k_max: int = 12) -> CheckResult:
    """
    The three integer inequalities on the lattice of primes 5 <= p <= p_max and
    k_min <= k <= k_max, plus the single expected failure of the a = 3 margin
    at (p, k) = (5, 2). Real-variable versions are not checked.
    """
    params = {"p_max": p_max, "k_min": k_min, "k_max": k_max}
    validate_appendix(p_max, k_min, k_max)
    violations = []
    points = 0
    for p in primerange(5, p_max + 1):
        for k in range(k_min, k_max + 1):
            for a in range(1, p):
                points += 1
                gap = hook_budget_gap(a, p, k)
                if gap < 0:
                    violations.append({"inequality": "hook_budget", "a": a, "p": p, "k": k, "value": str(gap)})
            margin = union_margin(p, k)
            if margin < 0:
                violations.append({"inequality": "union_margin", "p": p, "k": k, "value": str(margin)})
            if p >= 7 or k >= 3:
                scaled = union_margin_a3_scaled(p, k)
                if scaled < 0:
                    violations.append({"inequality": "union_margin_a3", "p": p, "k": k, "value": str(scaled)})
    exception = union_margin_a3_scaled(5, 2)
    if exception >= 0:
        violations.append({"inequality": "union_margin_a3", "p": 5, "k": 2, "value": str(exception),
                           "reason": "expected a negative value"})
    details = {
        "lattice_points": points,
        "union_margin_5_2": str(union_margin(5, 2)),
        "union_margin_a3_scaled_5_2": str(exception),
        "domain": "integer lattice only",
    }
    return _result("appendix", params, violations, details)


# ============================================================================
# COUNTING
# ============================================================================

def check_counting(n: int, p: int, brute_force_n_max: int = BRUTE_FORCE_N_MAX) -> CheckResult:
    """|Irr_p'(S_n)| = |Irr_p'(N_n)| from independent enumerations."""
    params = {"n": n, "p": p}
    validate_counting(n, p)
    global_count = len(enumerate_p_prime(n, p))
    local_count = len(enum_norm_n(n, p))
    digits, a0 = p_adic_digits(n, p)
    violations = []
    if global_count != local_count:
        violations.append({"global": global_count, "local": local_count})
    details: Dict[str, Any] = {"count": global_count, "digits": [[k, a] for k, a in digits], "a0": a0}
    if n <= brute_force_n_max:
        filtered = len(enumerate_p_prime(n, p, brute_force=True, brute_force_n_max=brute_force_n_max))
        details["brute_force"] = filtered
        if filtered != global_count:
            violations.append({"constructive": global_count, "brute_force": filtered})
    return _result("counting", params, violations, details)


def check_delta_sizes(p: int, k: int, a: int, gamma: Sequence[int] = (),
                      enumeration_cap: int = 200_000) -> CheckResult:
    """
    |Delta_x| three ways: members of the block P(n | gamma) split by N value
    (when the block is small enough), the generating-function count, and the
    closed forms for the top strata.
    """
    gamma = make_partition(gamma)
    params = {"p": p, "k": k, "a": a, "gamma": list(gamma)}
    validate_delta_sizes(p, k, a, gamma)
    counted = delta_sizes(p, k, a)
    violations = []
    details: Dict[str, Any] = {"sizes": {str(x): counted[x] for x in sorted(counted)}}
    for x, expected in delta_closed_forms(p, k, a).items():
        if counted[x] != expected:
            violations.append({"x": x, "counted": counted[x], "closed_form": expected})
    block_size = sum(counted.values())
    if block_size <= enumeration_cap:
        block = p_prime_block(a * p ** k + size(gamma), p, k, gamma)
        enumerated = {x: len(members) for x, members in delta_sets(block).items()}
        details["method"] = "enumeration"
        for x, count in enumerated.items():
            if count != counted[x]:
                violations.append({"x": x, "enumerated": count, "counted": counted[x]})
    else:
        details["method"] = "generating_function"
    return _result("delta_sizes", params, violations, details)


def check_subset_sizes(p: int, k: int, a: int, enumeration_cap: int = 2_000_000) -> CheckResult:
    """
    Every family defined at (p, k, a): generated size against the closed form
    (equal when exact, at least when a lower bound) and member degrees against
    the family's degree bound.
    """
    params = {"p": p, "k": k, "a": a}
    validate_digit(p, k, a)
    violations = []
    sizes: Dict[str, Any] = {}
    skipped = []
    for family in FAMILIES:
        try:
            expected, exact = family_closed_form(p, k, a, family)
        except InvalidInputError:
            continue
        if family_enumeration_size(p, k, a, family) > enumeration_cap:
            skipped.append(family)
            continue
        members = distinguished_subset(p, k, a, family)
        sizes[family] = {"generated": len(members), "formula": expected, "exact": exact}
        if (exact and len(members) != expected) or len(members) < expected:
            violations.append({"family": family, "generated": len(members), "formula": expected})
        bound = family_degree_bound(p, a, family)
        worst = max((member.degree for member in members), default=0)
        if worst > bound:
            violations.append({"family": family, "max_degree": str(worst), "bound": str(bound)})
    return _result("subset_sizes", params, violations, {"families": sizes, "not_enumerated": skipped})


def check_max_deg(p: int, k: int, a: int) -> CheckResult:
    """max degree over Irr_p'(N_{p^k} wr S_a) = (p-1)^(ak) d, with d the top degree of S_a."""
    params = {"p": p, "k": k, "a": a}
    validate_digit(p, k, a)
    observed = max(assignment.degree for assignment in enum_norm_apk(p, k, a))
    expected = max_degree_apk(p, k, a)
    violations = [] if observed == expected else [{"observed": str(observed), "expected": str(expected)}]
    details = {"max_degree": str(observed)}
    if p >= 5:
        bound = max_degree_bound_n(a * p ** k, p)
        details["digit_bound"] = str(bound)
        if observed > bound:
            violations.append({"observed": str(observed), "digit_bound": str(bound)})
    return _result("max_degree", params, violations, details)


def check_bess(gamma: Sequence[int], x: int) -> CheckResult:
    """
    With gamma an x-core, P(|gamma| + x | gamma) has exactly x members and
    member i has the hook (x - i, 1^i) against gamma in its restriction.
    """
    gamma = make_partition(gamma)
    params = {"gamma": list(gamma), "x": x}
    validate_bess(gamma, x)
    members = add_hook_partitions(gamma, x)
    n = size(gamma) + x
    expected = {partition for partition in all_partitions(n) if core_quotient(partition, x).core == gamma} \
        if x > 1 else set(all_partitions(n))
    violations = []
    if set(members) != expected or len(members) != x:
        violations.append({"generated": [list(m) for m in members], "expected": [list(m) for m in sorted(expected)]})
    for leg, member in enumerate(members):
        hook = hook_partition(x, leg)
        if skew_contents(member, gamma).get(hook, 0) == 0:
            violations.append({"lambda": list(member), "hook": list(hook), "reason": "hook constituent missing"})
    return _result("bess", params, violations, {"members": len(members)})


# ============================================================================
# SYLOW RESTRICTION
# ============================================================================

def check_gl3(p: int, k: int, sample_size: int = 100, seed: int = 0,
              cap: int = DEFAULT_ENUMERATION_CAP) -> CheckResult:
    """
    B_{p^k}(m*(k)) inside Omega(X*_k) with the degree floor (p-1)^(p^(k-1)).

    At k = 1 all of P(p) is checked; otherwise a seeded sample of the box
    plus a seeded sample from outside it.
    """
    params = {"p": p, "k": k, "sample_size": sample_size, "seed": seed}
    validate_gl3(p, k, cap)
    n = p ** k
    if k == 1:
        sample = all_partitions(n)
    else:
        rng = _rng(seed, "gl3", params)
        inside = partitions_in_box(n, m_star(p, k))
        outside = [partition for partition in all_partitions(n) if not in_box(partition, m_star(p, k))]
        sample = _sample(rng, inside, sample_size) + _sample(rng, outside, max(1, sample_size // 10))
    report = omega_star_check(p, k, sample, cap)
    return _result("gl3", params, report.violations, report.to_dict())


def check_121_and_11(p: int, k: int, a: int = 1, a0: int = 0, sample_size: int = 60, seed: int = 0,
                     cap: int = DEFAULT_ENUMERATION_CAP) -> CheckResult:
    """
    Degree floors above the star character.

    At n = p^k every lambda in Omega(X*_k) has degree at least (p-1)^(p^(k-1)).
    For k >= 2 and n = a p^k + a0, every lambda in Omega(X*_(n)) has degree
    at least (p-1)^(ak) a! (p-1)!. Samples of P(n) are seeded; once P(n) is
    too large to list they are drawn directly.
    """
    params = {"p": p, "k": k, "a": a, "a0": a0, "sample_size": sample_size, "seed": seed}
    validate_121_and_11(p, k, a, a0, cap)
    rng = _rng(seed, "121_and_11", params)
    n = p ** k
    population = all_partitions(n)
    sample = population if k == 1 else _sample(rng, population, sample_size)
    single = omega_star_check(p, k, sample, cap)
    violations = list(single.violations)
    details: Dict[str, Any] = {"power": single.to_dict()}
    if k >= 2:
        label = star_product(a * n + a0, p)
        floor = (p - 1) ** (a * k) * math.factorial(a) * math.factorial(p - 1)
        composite = omega_check(label, 0, _partition_sample(rng, label.n, sample_size), floor, cap)
        violations.extend(composite.violations)
        details["digit"] = composite.to_dict()
    return _result("121_and_11", params, violations, details)


def check_composite_gl3(n: int, p: int, sample_size: int = 80, seed: int = 0,
                        cap: int = DEFAULT_ENUMERATION_CAP) -> CheckResult:
    """B_n(T) inside Omega(X*_(n)), T the sum of m*(k) over the digits of n plus a0."""
    params = {"n": n, "p": p, "sample_size": sample_size, "seed": seed}
    validate_composite_gl3(n, p, cap)
    label = star_product(n, p)
    threshold = composite_threshold(n, p)
    rng = _rng(seed, "composite_gl3", params)
    sample = _sample(rng, partitions_in_box(n, threshold), sample_size)
    report = omega_check(label, threshold, sample, None, cap)
    return _result("composite_gl3", params, report.violations, report.to_dict())


# ============================================================================
# BOX BOUNDS AND LR
# ============================================================================

def check_decisiva(n_max: int, s: int) -> CheckResult:
    """
    For n = a s + r with r < s and |C_s(lambda)| = r, lambda fits in the box
    of side r + s N_s(lambda).
    """
    params = {"n_max": n_max, "s": s}
    validate_decisiva(n_max, s)
    violations = []
    checked = 0
    for n in range(1, n_max + 1):
        r = n % s
        for partition in all_partitions(n):
            if size(core_quotient(partition, s).core) != r:
                continue
            checked += 1
            side = r + s * n_s_invariant(partition, s)
            if not in_box(partition, side):
                violations.append({"lambda": list(partition), "box": side})
    return _result("decisiva", params, violations, {"checked": checked})


def check_lr_witness(n_max: int = 10) -> CheckResult:
    """
    For n = x + r with r < x: some LR(lambda; mu, gamma) is nonzero iff
    gamma is inside lambda; for x >= 3 a mu outside {(x), (1^x)} exists iff
    additionally lambda is not gamma + (x) or gamma with x unit rows added.
    """
    params = {"n_max": n_max}
    validate_lr_witness(n_max)
    violations = []
    checked = 0
    for n in range(1, n_max + 1):
        outers = all_partitions(n)
        for r in range(0, (n + 1) // 2):
            x = n - r
            for gamma in all_partitions(r):
                endpoints = set(block_endpoints(gamma, x))
                for outer in outers:
                    checked += 1
                    inside = contains(outer, gamma)
                    if bool(skew_contents(outer, gamma)) != inside:
                        violations.append({"lambda": list(outer), "gamma": list(gamma), "part": "containment"})
                    if x >= 3:
                        expected = inside and outer not in endpoints
                        found = nontrivial_constituent(outer, gamma) is not None
                        if found != expected:
                            violations.append({"lambda": list(outer), "gamma": list(gamma), "part": "nontrivial"})
    return _result("lr_witness", params, violations, {"checked": checked})


def check_lemma_a1(p: int, a: int) -> CheckResult:
    """mu in B_{ap}(ap - 3a) has degree at least (p-1)^a a!, which dominates every degree of N_{ap}."""
    params = {"p": p, "a": a}
    validate_lemma_a1(p, a)
    n = a * p
    floor = (p - 1) ** a * math.factorial(a)
    top_local = max_degree_apk(p, 1, a)
    violations = []
    minimum = None
    for mu in partitions_in_box(n, n - 3 * a):
        value = degree(mu)
        minimum = value if minimum is None else min(minimum, value)
        if value < floor or value < top_local:
            violations.append({"mu": list(mu), "degree": str(value), "floor": str(floor)})
    details = {"floor": str(floor), "max_local_degree": str(top_local),
               "minimum": None if minimum is None else str(minimum)}
    return _result("lemma_a1", params, violations, details)


# ============================================================================
# BIJECTIONS AND COVERAGE
# ============================================================================

def check_bijection(n: int, p: int, strategy: str = "recursive") -> CheckResult:
    """Build a bijection and re-verify it independently."""
    params = {"n": n, "p": p, "strategy": strategy}
    validate_bijection(n, p, strategy)
    record = build_bijection(n, p, strategy)
    report = verify_bijection(record)
    details = {"pairs": report.checked, "strategy_used": record.strategy, "notes": report.notes}
    return _result("bijection", params, report.failures, details)


def check_divisibility(n: int = 7, p: int = 3) -> CheckResult:
    """A dominance bijection exists while no divisibility-respecting one does."""
    params = {"n": n, "p": p}
    validate_divisibility(n, p)
    dominance = relation_match_exists(n, p, DegreeRelation.DOMINANCE)
    divisibility = relation_match_exists(n, p, DegreeRelation.DIVISIBILITY)
    violations = []
    if not dominance:
        violations.append({"relation": "dominance", "exists": False})
    if divisibility:
        violations.append({"relation": "divisibility", "exists": True, "reason": "expected no matching"})
    return _result("divisibility", params, violations,
                   {"dominance": dominance, "divisibility": divisibility})


def check_coverage(p: int, k: int, a: int) -> CheckResult:
    """
    Counting inequalities that let small local degrees cover the top strata.

    The a = 3 union X + Y + Z falls short of |Delta_3| + |Delta_2| exactly at
    (p, k) = (5, 2); adding the family A restores the inequality there.
    """
    params = {"p": p, "k": k, "a": a}
    validate_coverage(p, k, a)
    q = p ** k
    lin = (p - 1) ** k
    deltas = delta_closed_forms(p, k, a)
    inequalities: Dict[str, Dict[str, str]] = {}
    violations = []

    def record(name: str, left: int, right: int, expect: bool = True) -> None:
        holds = left >= right
        inequalities[name] = {"left": str(left), "right": str(right), "holds": str(holds).lower()}
        if holds != expect:
            violations.append({"inequality": name, "left": str(left), "right": str(right), "expected": expect})

    def family(name: str) -> int:
        return family_closed_form(p, k, a, name)[0]

    record("linear_and_y0_cover_top", family("X0") + family("Y0"), 2 * q)
    if a == 2 and k >= 2:
        record("two_linear_inductions", 2 * lin + math.comb(lin, 2), 2 * q + 2)
    if a >= 3 and k >= 2:
        top = deltas[a] + deltas[a - 1]
        shortfall = (p, k, a) == (5, 2, 3)
        record("x_y_z_cover_top_two", family("X") + family("Y") + family("Z"), top, expect=not shortfall)
        if shortfall:
            record("x_y_z_a_cover_top_two", family("X") + family("Y") + family("Z") + family("A"), top)
    if k == 1 and p >= 11:
        if a >= 6:
            record("w_v_cover_third", family("W") + family("V"), deltas[a - 2])
        if a >= 8:
            record("z5_covers_fourth", family("Z5"), deltas[a - 3])
    return _result("coverage", params, violations, {"inequalities": inequalities})


# ============================================================================
# REGISTRY
# ============================================================================

CHECKS: Dict[str, Callable[..., CheckResult]] = {
    "rasala": check_rasala,
    "appendix": check_appendix,
    "counting": check_counting,
    "delta_sizes": check_delta_sizes,
    "subset_sizes": check_subset_sizes,
    "max_degree": check_max_deg,
    "bess": check_bess,
    "gl3": check_gl3,
    "121_and_11": check_121_and_11,
    "decisiva": check_decisiva,
    "lr_witness": check_lr_witness,
    "lemma_a1": check_lemma_a1,
    "bijection": check_bijection,
    "divisibility": check_divisibility,
    "coverage": check_coverage,
    "composite_gl3": check_composite_gl3,
}

PRECONDITIONS: Dict[str, Callable[..., None]] = {
    "rasala": validate_rasala,
    "appendix": validate_appendix,
    "counting": validate_counting,
    "delta_sizes": validate_delta_sizes,
    "subset_sizes": validate_digit,
    "max_degree": validate_digit,
    "bess": validate_bess,
    "gl3": validate_gl3,
    "121_and_11": validate_121_and_11,
    "decisiva": validate_decisiva,
    "lr_witness": validate_lr_witness,
    "lemma_a1": validate_lemma_a1,
    "bijection": validate_bijection,
    "divisibility": validate_divisibility,
    "coverage": validate_coverage,
    "composite_gl3": validate_composite_gl3,
}

STATEMENTS: Dict[str, str] = {
    "rasala": "minimal nonlinear degrees and box floors n(n-3)/2, n(n-1)(n-5)/6",
    "appendix": "integer inequalities on the prime/exponent lattice",
    "counting": "|Irr_p'(S_n)| = |Irr_p'(N_n)|",
    "delta_sizes": "sizes of the N-value strata of a block",
    "subset_sizes": "sizes of the distinguished normalizer families",
    "max_degree": "largest degree of N_{p^k} wr S_a",
    "bess": "hook-extension blocks over an x-core",
    "gl3": "B_{p^k}(m*(k)) inside Omega(X*_k)",
    "121_and_11": "degree floors above the star character",
    "decisiva": "box bound r + s N_s(lambda)",
    "lr_witness": "nontrivial LR constituent away from the two endpoints",
    "lemma_a1": "degree floor on B_{ap}(ap - 3a)",
    "bijection": "degree-dominating McKay bijection",
    "divisibility": "no divisibility-respecting bijection for S_7 at p = 3",
    "coverage": "local family sizes cover the top global strata",
    "composite_gl3": "B_n(T) inside Omega(X*_(n))",
}


def run_job(job: CheckJob) -> CheckResult:
    """
    Run one job. A job rejected when it was planned comes back skipped; any
    McKayError raised while the check runs is a failure with the error as witness.
    """
    params = job.kwargs
    started = time.perf_counter()
    if job.skip_reason is not None:
        logger.warning(f"Check {job.check_id} {params} skipped: {job.skip_reason}")
        result = CheckResult(job.check_id, params, SKIPPED, details={"reason": job.skip_reason})
    else:
        try:
            result = CHECKS[job.check_id](**params)
        except McKayError as e:
            logger.error(f"Check {job.check_id} {params} raised {type(e).__name__}: {e}")
            result = CheckResult(job.check_id, params, FAIL, witness={"error": type(e).__name__, "message": str(e)})
    result.params = params
    result.elapsed = time.perf_counter() - started
    return result


# ============================================================================
# SUITE
# ============================================================================

@dataclass
class SuiteOptions:
    """Knobs for the default verification plan."""
    n_max: int = 40
    primes: Tuple[int, ...] = (2, 3, 5, 7, 11, 13)
    strategies: Tuple[str, ...] = ("recursive", "global")
    counting_n_max: int = 60
    bijection_n_max: int = 40
    brute_force_n_max: int = BRUTE_FORCE_N_MAX
    seed: int = 0
    gl3_sample_size: int = 100
    lemma11_sample_size: int = 60
    lemma11_digit_sample_size: int = 8
    restriction_cap: int = DEFAULT_ENUMERATION_CAP
    rasala_n_max: int = 25
    decisiva_n_max: int = 30
    lr_witness_n_max: int = 14
    delta_enumeration_cap: int = 200_000
    subset_enumeration_cap: int = 2_000_000
    appendix_p_max: int = 97
    appendix_k_max: int = 12


def default_plan(options: SuiteOptions) -> List[CheckJob]:
    """
    The full acceptance sweep, in a fixed order.

    Counting runs to counting_n_max independently of n_max, which bounds the
    bijection jobs only.
    """
    jobs: List[CheckJob] = []
    counting_top = options.counting_n_max
    bijection_top = min(options.n_max, options.bijection_n_max)
    for p in options.primes:
        for n in range(1, counting_top + 1):
            jobs.append(CheckJob.of("counting", n=n, p=p, brute_force_n_max=options.brute_force_n_max))
    for strategy in options.strategies:
        for p in options.primes:
            for n in range(1, bijection_top + 1):
                jobs.append(CheckJob.of("bijection", n=n, p=p, strategy=strategy))
    jobs.append(CheckJob.of("divisibility", n=7, p=3))

    cap = options.delta_enumeration_cap
    for p in (5, 7):
        for k in (1, 2):
            for a in range(2, p):
                if k == 2 and a > 6:
                    continue
                for gamma in ((), (1,), (2, 1)):
                    jobs.append(CheckJob.of("delta_sizes", p=p, k=k, a=a, gamma=gamma, enumeration_cap=cap))
                jobs.append(CheckJob.of("subset_sizes", p=p, k=k, a=a, enumeration_cap=options.subset_enumeration_cap))
                jobs.append(CheckJob.of("coverage", p=p, k=k, a=a))
    for p in (11, 13):
        for a in range(2, p):
            jobs.append(CheckJob.of("subset_sizes", p=p, k=1, a=a,
                                    enumeration_cap=options.subset_enumeration_cap))
            jobs.append(CheckJob.of("coverage", p=p, k=1, a=a))
    for a in range(1, 5):
        jobs.append(CheckJob.of("max_degree", p=5, k=1, a=a))

    jobs.append(CheckJob.of("rasala", n_min=5, n_max=options.rasala_n_max))
    jobs.append(CheckJob.of("appendix", p_max=options.appendix_p_max, k_min=2, k_max=options.appendix_k_max))
    for gamma, x in (((1,), 5), ((), 6), ((2, 1), 4), ((3, 1), 7)):
        jobs.append(CheckJob.of("bess", gamma=gamma, x=x))
    for k in (1, 2):
        jobs.append(CheckJob.of("gl3", p=5, k=k, sample_size=options.gl3_sample_size, seed=options.seed,
                                cap=options.restriction_cap))
        jobs.append(CheckJob.of("121_and_11", p=5, k=k, a=1, a0=0, sample_size=options.lemma11_sample_size,
                                seed=options.seed, cap=options.restriction_cap))
    for a in (2, 3, 4):
        for a0 in (0, 1):
            jobs.append(CheckJob.of("121_and_11", p=5, k=2, a=a, a0=a0, sample_size=options.lemma11_digit_sample_size,
                                    seed=options.seed, cap=options.restriction_cap))
    for s in (2, 3, 5, 7):
        jobs.append(CheckJob.of("decisiva", n_max=options.decisiva_n_max, s=s))
    jobs.append(CheckJob.of("lr_witness", n_max=options.lr_witness_n_max))
    for a in (1, 2, 3):
        jobs.append(CheckJob.of("lemma_a1", p=11, a=a))
    for n in (10, 11, 12, 13, 14, 30, 31):
        jobs.append(CheckJob.of("composite_gl3", n=n, p=5, sample_size=options.gl3_sample_size,
                                seed=options.seed, cap=options.restriction_cap))
    skipped = sum(1 for job in jobs if job.skip_reason is not None)
    logger.info(f"Planned {len(jobs)} verification jobs ({skipped} rejected up front)")
    return jobs


class VerificationSuite:
    """Runs CheckJobs inline or over a process pool; results come back in job order."""

    def __init__(self, workers: int = 1, progress: bool = True):
        self.workers = max(1, workers)
        self.progress = progress
        self.logger = logging.getLogger(__name__)

    def run(self, jobs: Sequence[CheckJob]) -> List[CheckResult]:
        results: List[Optional[CheckResult]] = [None] * len(jobs)
        bar = tqdm(total=len(jobs), desc="verify", unit="check", file=sys.stderr, disable=not self.progress)
        try:
            if self.workers == 1:
                for index, job in enumerate(jobs):
                    results[index] = run_job(job)
                    bar.update(1)
            else:
                with ProcessPoolExecutor(max_workers=self.workers) as executor:
                    futures = {executor.submit(run_job, job): index for index, job in enumerate(jobs)}
                    for future in as_completed(futures):
                        results[futures[future]] = future.result()
                        bar.update(1)
        finally:
            bar.close()
        final = [result for result in results if result is not None]
        failed = sum(1 for result in final if result.status == FAIL)
        self.logger.info(f"Ran {len(final)} checks with {self.workers} worker(s): {failed} failed")
        return final

    @staticmethod
    def summarize(results: Sequence[CheckResult]) -> Dict[str, Any]:
        """Counts by status. ``ok`` needs at least one pass and no failure."""
        counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for result in results:
            counts[result.status] += 1
        return {
            "total": len(results),
            "passed": counts[PASS],
            "failed": counts[FAIL],
            "skipped": counts[SKIPPED],
            "failed_checks": sorted({result.check_id for result in results if result.status == FAIL}),
            "ok": counts[FAIL] == 0 and counts[PASS] > 0,
        }
