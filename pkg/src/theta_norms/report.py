from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

DEFAULT_REL_TOL = 1e-9


def tightness_ratio(lhs: float, rhs: float) -> float:
    if rhs == 0.0:
        return 0.0 if lhs == 0.0 else math.inf
    return lhs / rhs


@dataclass(frozen=True)
class InequalityReport:
    """Verdict for one evaluated inequality ``lhs <= rhs``.

    ``holds`` is ``lhs <= rhs * (1 + tol) + tail_error`` where ``tail_error``
    bounds whatever truncation or quadrature error the two sides carry.
    """

    check: str
    lhs: float
    rhs: float
    holds: bool
    ratio: float
    tol: float = DEFAULT_REL_TOL
    tail_error: float = 0.0
    extras: dict = field(default_factory=dict, compare=False)

    @classmethod
    def evaluate(
        cls,
        check: str,
        lhs: float,
        rhs: float,
        tol: float = DEFAULT_REL_TOL,
        tail_error: float = 0.0,
        **extras,
    ) -> "InequalityReport":
        lhs = float(lhs)
        rhs = float(rhs)
        holds = bool(lhs <= rhs * (1.0 + tol) + tail_error)
        return cls(check, lhs, rhs, holds, tightness_ratio(lhs, rhs), tol, float(tail_error), extras)

    def rescaled(self, rhs_scale: float) -> "InequalityReport":
        """Re-judge with the right-hand constant multiplied by ``rhs_scale``."""
        rhs = self.rhs * rhs_scale
        return replace(
            self,
            rhs=rhs,
            holds=bool(self.lhs <= rhs * (1.0 + self.tol) + self.tail_error),
            ratio=tightness_ratio(self.lhs, rhs),
        )

    def __bool__(self) -> bool:
        return self.holds
