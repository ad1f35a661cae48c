"""
Exception hierarchy for the McKay degree toolkit.

Input problems subclass ValueError so callers that already catch ValueError
keep working; exact-arithmetic faults subclass RuntimeError and are never
swallowed.
"""

from typing import Any, Dict, List, Optional


class McKayError(Exception):
    """Base class for every error raised by the library."""


class InvalidInputError(McKayError, ValueError):
    """A precondition on the caller's input was violated."""


class EnumerationCapError(InvalidInputError):
    """A request would enumerate more group elements than the configured cap."""

    def __init__(self, requested: int, cap: int, what: str = "elements"):
        self.requested = requested
        self.cap = cap
        super().__init__(f"Refusing to enumerate {requested} {what}: cap is {cap}")


class ImplementationFault(McKayError, RuntimeError):
    """An exact invariant failed. This is a bug, never a tolerance issue."""


class BlockInfeasibleError(McKayError):
    """No degree-dominating matching exists for one block of the recursive strategy."""

    def __init__(self, gamma: tuple, global_degrees: List[int], local_degrees: List[int],
                 detail: Optional[str] = None):
        self.gamma = gamma
        self.global_degrees = global_degrees
        self.local_degrees = local_degrees
        message = f"Block gamma={list(gamma)} has no dominance matching"
        if detail:
            message += f" ({detail})"
        super().__init__(message)

    @property
    def witness(self) -> Dict[str, Any]:
        return {
            "gamma": list(self.gamma),
            "global_sorted": [str(d) for d in sorted(self.global_degrees, reverse=True)],
            "local_sorted": [str(d) for d in sorted(self.local_degrees, reverse=True)],
        }
