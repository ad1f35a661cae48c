"""
Bijection Engine

Degree-dominating bijections Irr_{p'}(S_n) -> Irr_{p'}(N_n).

Two strategies:
    recursive  peel off the leading digit n = a p^k + r, build eps_r, then
               for every p'-partition gamma of r match the block
               P(n | gamma) against {theta x eps_r(gamma)}; the two
               hook-extremal members gamma + (a p^k) and gamma with a p^k
               extra unit rows take the two smallest labels of the block
    global     one dominance matching over the full degree multisets

A block with no dominance matching raises BlockInfeasibleError; the engine
then falls back to the global strategy and records the anomaly.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from services.exceptions import BlockInfeasibleError, InvalidInputError
from services.matching import HopcroftKarp, has_perfect_matching
from services.normalizer_chars import NormalizerCharLabel, enum_norm_apk, enum_norm_n, sort_key
from services.partition_core import Partition, core_quotient, degree, format_partition
from services.sym_characters import block_endpoints, enumerate_p_prime, p_prime_block, require_prime, top_digit

logger = logging.getLogger(__name__)

STRATEGIES = ("recursive", "global")


class DegreeRelation(str, Enum):
    """How a local degree must relate to the global degree it is paired with."""
    DOMINANCE = "dominance"
    DIVISIBILITY = "divisibility"

    def holds(self, local: int, global_: int) -> bool:
        if self is DegreeRelation.DOMINANCE:
            return local <= global_
        return global_ % local == 0


# ============================================================================
# DATA CLASSES
# ============================================================================

@dataclass(frozen=True)
class BijectionPair:
    partition: Partition
    label: NormalizerCharLabel
    global_degree: int
    local_degree: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda": list(self.partition),
            "label": self.label.to_dict(),
            "dS": str(self.global_degree),
            "dN": str(self.local_degree),
        }


@dataclass
class BlockTrace:
    """Provenance of one block of the recursive strategy."""
    gamma: Partition
    size: int
    pinned: Tuple[Partition, Partition]
    base_degree: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": list(self.gamma),
            "size": self.size,
            "pinned": [list(self.pinned[0]), list(self.pinned[1])],
            "base_degree": str(self.base_degree),
        }


@dataclass
class BijectionRecord:
    """A bijection with per-pair degree witnesses."""
    n: int
    p: int
    strategy: str
    pairs: List[BijectionPair]
    block_trace: List[BlockTrace] = field(default_factory=list)
    anomalies: List[Dict[str, Any]] = field(default_factory=list)

    def to_lines(self) -> List[Dict[str, Any]]:
        return [pair.to_dict() for pair in self.pairs]

    def csv_rows(self) -> List[List[str]]:
        """(n, p, side, label, degree) rows, one per side of every pair."""
        rows = []
        for pair in self.pairs:
            rows.append([str(self.n), str(self.p), "S", format_partition(pair.partition), str(pair.global_degree)])
            rows.append([str(self.n), str(self.p), "N", label_text(pair.label), str(pair.local_degree)])
        return rows

    def summary(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "p": self.p,
            "strategy": self.strategy,
            "pairs": len(self.pairs),
            "blocks": [trace.to_dict() for trace in self.block_trace],
            "anomalies": self.anomalies,
        }


@dataclass
class VerificationReport:
    passed: bool
    checked: int
    failures: List[Dict[str, Any]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


@dataclass
class MatchResult:
    """Outcome of a dominance matching; ``pairs`` maps global index to local index."""
    feasible: bool
    pairs: List[Tuple[int, int]] = field(default_factory=list)
    global_sorted: List[int] = field(default_factory=list)
    local_sorted: List[int] = field(default_factory=list)


def label_text(label: NormalizerCharLabel) -> str:
    parts = []
    for k, a, assignment in label.digits:
        inner = " ".join(
            f"[{','.join(map(str, theta.zset))}|{','.join(map(str, theta.twist))}]{format_partition(mu)}"
            for theta, mu in assignment.pairs
        )
        parts.append(f"k{k}a{a}:{inner}")
    parts.append(f"tail:{format_partition(label.tail)}")
    return " ".join(parts)


# ============================================================================
# MATCHING
# ============================================================================

def dominance_match(global_degrees: Sequence[int], local_degrees: Sequence[int]) -> MatchResult:
    """
    Pair both multisets in descending order; feasible iff local_i <= global_i pointwise.

    Ties keep the input order on both sides, so callers control tie-breaking
    by how they order their items.

    Raises:
        InvalidInputError: if the multisets have different sizes
    """
    if len(global_degrees) != len(local_degrees):
        raise InvalidInputError(f"Cannot match {len(global_degrees)} global against {len(local_degrees)} local degrees")
    global_order = sorted(range(len(global_degrees)), key=lambda i: -global_degrees[i])
    local_order = sorted(range(len(local_degrees)), key=lambda i: -local_degrees[i])
    result = MatchResult(
        feasible=True,
        global_sorted=[global_degrees[i] for i in global_order],
        local_sorted=[local_degrees[i] for i in local_order],
    )
    for g, l in zip(global_order, local_order):
        if local_degrees[l] > global_degrees[g]:
            result.feasible = False
            result.pairs = []
            return result
        result.pairs.append((g, l))
    return result


def relation_graph(global_degrees: Sequence[int], local_degrees: Sequence[int],
                   relation: DegreeRelation) -> List[List[int]]:
    return [
        [j for j, local in enumerate(local_degrees) if relation.holds(local, global_)]
        for global_ in global_degrees
    ]


def matching_feasible(global_degrees: Sequence[int], local_degrees: Sequence[int],
                      relation: DegreeRelation = DegreeRelation.DOMINANCE) -> bool:
    """Perfect-matching existence on the compatibility graph (augmenting paths)."""
    if len(global_degrees) != len(local_degrees):
        return False
    return has_perfect_matching(relation_graph(global_degrees, local_degrees, relation), len(local_degrees))


def relation_match_exists(n: int, p: int, relation: DegreeRelation) -> bool:
    """Whether some bijection Irr_{p'}(S_n) -> Irr_{p'}(N_n) respects ``relation``."""
    require_prime(p)
    if n < p:
        return True
    global_degrees = [degree(partition) for partition in enumerate_p_prime(n, p)]
    local_degrees = [label.degree for label in enum_norm_n(n, p)]
    adjacency = relation_graph(global_degrees, local_degrees, relation)
    matcher = HopcroftKarp(adjacency)
    size = matcher.run()
    logger.info(f"{relation.value} matching for n={n}, p={p}: {size} of {len(global_degrees)}")
    return size == len(global_degrees) == len(local_degrees)


# ============================================================================
# CONSTRUCTION
# ============================================================================

def _identity_pairs(n: int, p: int) -> List[BijectionPair]:
    pairs = []
    for partition in enumerate_p_prime(n, p):
        label = NormalizerCharLabel(digits=(), tail=partition)
        pairs.append(BijectionPair(partition, label, degree(partition), degree(partition)))
    return pairs


def _global_pairs(n: int, p: int) -> List[BijectionPair]:
    partitions = enumerate_p_prime(n, p)
    labels = sorted(enum_norm_n(n, p))
    globals_ = [degree(partition) for partition in partitions]
    locals_ = [label.degree for label in labels]
    match = dominance_match(globals_, locals_)
    if not match.feasible:
        raise BlockInfeasibleError((), globals_, locals_, detail=f"global strategy, n={n}, p={p}")
    by_partition = dict(match.pairs)
    return [
        BijectionPair(partitions[i], labels[by_partition[i]], globals_[i], locals_[by_partition[i]])
        for i in range(len(partitions))
    ]


@lru_cache(maxsize=None)
def _recursive_pairs(n: int, p: int) -> Tuple[Tuple[BijectionPair, ...], Tuple[BlockTrace, ...]]:
    if n < p:
        return tuple(_identity_pairs(n, p)), ()
    k, a, r = top_digit(n, p)
    lower_pairs, _ = _recursive_pairs(r, p)
    thetas = enum_norm_apk(p, k, a)
    pairs: List[BijectionPair] = []
    traces: List[BlockTrace] = []
    for lower in lower_pairs:
        gamma, base_label = lower.partition, lower.label
        block = p_prime_block(n, p, k, gamma)
        locals_ = sorted(
            (base_label.prepend(k, a, theta) for theta in thetas),
            key=sort_key,
        )
        first, last = block_endpoints(gamma, a * p ** k)
        pinned = {first: locals_[0], last: locals_[1]}
        for partition, label in pinned.items():
            if label.degree > degree(partition):
                raise BlockInfeasibleError(gamma, [degree(partition)], [label.degree], detail="pinned endpoint")
        members = [member for member in block.members if member not in pinned]
        rest = locals_[2:]
        rest.sort(key=lambda label: (-label.degree, label))
        global_degrees = [degree(member) for member in members]
        local_degrees = [label.degree for label in rest]
        match = dominance_match(global_degrees, local_degrees)
        if not match.feasible:
            logger.error(f"No dominance matching in block gamma={list(gamma)} for n={n}, p={p}")
            raise BlockInfeasibleError(gamma, global_degrees, local_degrees, detail=f"n={n}, p={p}")
        matched = dict(match.pairs)
        for member in block.members:
            if member in pinned:
                label = pinned[member]
            else:
                index = members.index(member)
                label = rest[matched[index]]
            pairs.append(BijectionPair(member, label, degree(member), label.degree))
        traces.append(BlockTrace(gamma=gamma, size=len(block.members), pinned=(first, last),
                                 base_degree=base_label.degree))
    return tuple(pairs), tuple(traces)


def build_bijection(n: int, p: int, strategy: str = "recursive") -> BijectionRecord:
    """
    Build a degree-dominating bijection for S_n at the prime p.

    Raises:
        InvalidInputError: for an unknown strategy or a non-prime p
        BlockInfeasibleError: if even the global strategy fails
    """
    require_prime(p)
    if strategy not in STRATEGIES:
        raise InvalidInputError(f"Unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    if n < 0:
        raise InvalidInputError(f"Invalid n={n}: must be nonnegative")
    if n < p:
        return BijectionRecord(n=n, p=p, strategy=strategy, pairs=_identity_pairs(n, p))
    if strategy == "global":
        return BijectionRecord(n=n, p=p, strategy="global", pairs=_global_pairs(n, p))
    try:
        pairs, traces = _recursive_pairs(n, p)
        return BijectionRecord(n=n, p=p, strategy="recursive", pairs=list(pairs), block_trace=list(traces))
    except BlockInfeasibleError as e:
        logger.warning(f"Recursive strategy failed for n={n}, p={p}; falling back to global: {e}")
        anomaly = dict(e.witness, n=n, p=p, detail=str(e))
        return BijectionRecord(n=n, p=p, strategy="global", pairs=_global_pairs(n, p), anomalies=[anomaly])


def record_anomalies(record: BijectionRecord) -> Tuple[List[Dict[str, Any]], List[str]]:
    """
    Split fallbacks into failures and notes.

    For p >= 5 a fallback is a failure; for p in {2, 3} it is only noted.
    """
    if not record.anomalies:
        return [], []
    if record.p >= 5:
        return list(record.anomalies), []
    notes = [f"recursive strategy fell back to global at n={a['n']}, p={a['p']}" for a in record.anomalies]
    return [], notes


# ============================================================================
# VERIFICATION
# ============================================================================

def verify_bijection(record: BijectionRecord, expected_strategy: Optional[str] = None) -> VerificationReport:
    """Re-check bijectivity, degrees, dominance and, for recursive records, block consistency."""
    n, p = record.n, record.p
    failures: List[Dict[str, Any]] = []
    expected_partitions = set(enumerate_p_prime(n, p))
    expected_labels = set(enum_norm_n(n, p))
    seen_partitions = [pair.partition for pair in record.pairs]
    seen_labels = [pair.label for pair in record.pairs]

    if len(set(seen_partitions)) != len(seen_partitions) or set(seen_partitions) != expected_partitions:
        failures.append({"reason": "partition side is not a bijection onto Irr_p'(S_n)"})
    if len(set(seen_labels)) != len(seen_labels) or set(seen_labels) != expected_labels:
        failures.append({"reason": "label side is not a bijection onto Irr_p'(N_n)"})

    for pair in record.pairs:
        global_ = degree(pair.partition)
        local = pair.label.degree
        if global_ != pair.global_degree or local != pair.local_degree:
            failures.append({"reason": "recorded degree mismatch", "lambda": list(pair.partition)})
        if local > global_:
            failures.append({
                "reason": "dominance violated",
                "lambda": list(pair.partition),
                "label": pair.label.to_dict(),
                "dS": str(global_),
                "dN": str(local),
            })

    if record.strategy == "recursive" and n >= p:
        failures.extend(_block_consistency(record))

    anomaly_failures, notes = record_anomalies(record)
    failures.extend({"reason": "recursive block infeasible", **anomaly} for anomaly in anomaly_failures)
    if expected_strategy and record.strategy != expected_strategy and not notes:
        failures.append({"reason": f"expected strategy {expected_strategy}, got {record.strategy}"})

    if failures:
        logger.error(f"Bijection n={n}, p={p} failed verification: {failures[:3]}")
    return VerificationReport(passed=not failures, checked=len(record.pairs), failures=failures, notes=notes)


def _block_consistency(record: BijectionRecord) -> List[Dict[str, Any]]:
    n, p = record.n, record.p
    k, a, r = top_digit(n, p)
    lower = {pair.partition: pair.label for pair in build_bijection(r, p, "recursive").pairs}
    failures = []
    for pair in record.pairs:
        gamma = core_quotient(pair.partition, p ** k).core if pair.partition else ()
        label = pair.label
        if not label.digits or label.digits[0][:2] != (k, a):
            failures.append({"reason": "label lacks the leading digit", "lambda": list(pair.partition)})
            continue
        remainder = NormalizerCharLabel(digits=label.digits[1:], tail=label.tail)
        if lower.get(gamma) != remainder:
            failures.append({"reason": "label does not extend eps_r(gamma)", "lambda": list(pair.partition),
                             "gamma": list(gamma)})
        elif pair.partition in block_endpoints(gamma, a * p ** k) and label.degree != remainder.degree:
            failures.append({"reason": "endpoint not pinned to a minimal label", "lambda": list(pair.partition)})
    return failures


def clear_caches() -> None:
    _recursive_pairs.cache_clear()
