"""
Cyclotomic Integers

Exact arithmetic in Z[omega] for a primitive p-th root of unity omega.
Elements are stored in the basis 1, omega, ..., omega^(p-2); the relation
1 + omega + ... + omega^(p-1) = 0 reduces the top power. Equality is exact.
"""

from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

from sympy import isprime

from services.exceptions import ImplementationFault, InvalidInputError

Scalar = Union[int, "CycloInt"]

_is_prime = lru_cache(maxsize=None)(isprime)


class CycloInt:
    """An element of Z[omega], omega = exp(2 pi i / p)."""

    __slots__ = ("_p", "_coef")

    def __init__(self, p: int, coefficients: Iterable[int] = ()):
        if not _is_prime(p):
            raise InvalidInputError(f"{p} is not prime")
        coef = list(coefficients)
        if len(coef) > p:
            raise InvalidInputError(f"Too many coefficients ({len(coef)}) for p={p}")
        coef += [0] * (p - len(coef))
        self._p = p
        self._coef: Tuple[int, ...] = _reduce(coef)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, value: int) -> "CycloInt":
        return cls(p, [value])

    @classmethod
    def from_power(cls, p: int, exponent: int) -> "CycloInt":
        """omega^exponent."""
        coef = [0] * p
        coef[exponent % p] = 1
        return cls(p, coef)

    @classmethod
    def from_exponent_counts(cls, p: int, counts: Dict[int, int]) -> "CycloInt":
        """sum of count * omega^e over the mapping e -> count."""
        coef = [0] * p
        for exponent, count in counts.items():
            coef[exponent % p] += count
        return cls(p, coef)

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def p(self) -> int:
        return self._p

    @property
    def coefficients(self) -> Tuple[int, ...]:
        return self._coef

    def is_rational(self) -> bool:
        return all(c == 0 for c in self._coef[1:])

    def to_int(self) -> int:
        if not self.is_rational():
            raise ImplementationFault(f"{self} is not a rational integer")
        return self._coef[0]

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other: Scalar) -> "CycloInt":
        if isinstance(other, CycloInt):
            if other.p != self._p:
                raise InvalidInputError(f"Cannot combine Z[omega_{self._p}] with Z[omega_{other.p}]")
            return other
        if isinstance(other, int):
            return CycloInt.from_int(self._p, other)
        raise TypeError(f"Unsupported operand {other!r}")

    def __add__(self, other: Scalar) -> "CycloInt":
        other = self._coerce(other)
        return CycloInt(self._p, [a + b for a, b in zip(self._coef, other.coefficients)])

    __radd__ = __add__

    def __neg__(self) -> "CycloInt":
        return CycloInt(self._p, [-a for a in self._coef])

    def __sub__(self, other: Scalar) -> "CycloInt":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "CycloInt":
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> "CycloInt":
        other = self._coerce(other)
        p = self._p
        product = [0] * p
        for i, a in enumerate(self._coef):
            if a:
                for j, b in enumerate(other.coefficients):
                    if b:
                        product[(i + j) % p] += a * b
        return CycloInt(p, product)

    __rmul__ = __mul__

    def conj(self) -> "CycloInt":
        """Complex conjugation: omega^i -> omega^(-i)."""
        p = self._p
        coef = [0] * p
        for i, a in enumerate(self._coef):
            coef[(-i) % p] += a
        return CycloInt(p, coef)

    def exact_div(self, divisor: int) -> "CycloInt":
        """Divide every coefficient by an integer; a remainder is a fault."""
        if divisor == 0:
            raise ZeroDivisionError("division of a cyclotomic integer by zero")
        if any(c % divisor for c in self._coef):
            raise ImplementationFault(f"{self} is not divisible by {divisor}")
        return CycloInt(self._p, [c // divisor for c in self._coef])

    # ------------------------------------------------------------------
    # Comparison and display
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.is_rational() and self._coef[0] == other
        if isinstance(other, CycloInt):
            return self._p == other.p and self._coef == other.coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._p, self._coef))

    def __repr__(self) -> str:
        return f"CycloInt({self._p}, {list(self._coef)})"

    def __str__(self) -> str:
        terms = [f"{c}" if i == 0 else f"{c}*w^{i}" for i, c in enumerate(self._coef) if c]
        return " + ".join(terms) if terms else "0"


def _reduce(coef: Iterable[int]) -> Tuple[int, ...]:
    """Eliminate omega^(p-1) and return the p-1 basis coefficients."""
    values = list(coef)
    top = values[-1]
    return tuple(c - top for c in values[:-1])
