"""Generalized exponents theta(p) = Lambda(p) ** Psi(p) and conjugation.

An exponent value is either a finite float ``e >= 1`` or the sentinel
:data:`INF`.  ``INF`` is never encoded as a large float.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .errors import ArgError, DomainError, RangeError

EPS_MIN = 1e-9


class _Inf(enum.Enum):
    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = _Inf.INF

ExponentValue = Union[float, _Inf]


def is_inf(e: ExponentValue) -> bool:
    return e is INF


def as_exponent(e, *, allow_one: bool = True) -> ExponentValue:
    """Coerce ``e`` (float, int, "inf" or INF) to a checked exponent value."""
    if e is INF:
        return INF
    if isinstance(e, str):
        if e.strip().lower() in ("inf", "infinity", "∞"):
            return INF
        e = float(e)
    e = float(e)
    if math.isinf(e) and e > 0:
        # callers that pass float('inf') mean the sup norm
        return INF
    if not math.isfinite(e):
        raise RangeError(f"exponent must be finite or INF, got {e!r}")
    if e < 1.0:
        raise RangeError(f"exponent must be >= 1, got {e!r}")
    if not allow_one and e <= 1.0 + EPS_MIN:
        raise RangeError(f"exponent must exceed 1 + {EPS_MIN}, got {e!r}")
    return e


def exponent_str(e: ExponentValue) -> str:
    return "inf" if e is INF else repr(float(e))


def conjugate_exponent(e: ExponentValue, eps_min: float = EPS_MIN) -> ExponentValue:
    """Return q with 1/e + 1/q = 1.  The conjugate of INF is 1."""
    if e is INF:
        return 1.0
    e = float(e)
    if not e > 1.0 + eps_min:
        raise RangeError(
            f"conjugate of {e!r} undefined or unrepresentable (need e > 1 + {eps_min:g})"
        )
    return e / (e - 1.0)


@dataclass(frozen=True)
class ThetaExponent:
    lambda_fn: Callable[[float], float]
    psi_fn: Callable[[float], float]
    domain: tuple[float, float]
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        lo, hi = self.domain
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise DomainError(f"bad domain {self.domain!r}")

    def __call__(self, p: float) -> float:
        return theta_eval(self, p)


def _raw_theta(theta: ThetaExponent, p: float) -> float:
    try:
        value = float(theta.lambda_fn(p)) ** float(theta.psi_fn(p))
    except (OverflowError, ZeroDivisionError, ValueError):
        return math.nan
    # negative base with a fractional power comes back complex
    return math.nan if isinstance(value, complex) else value


def theta_eval(theta: ThetaExponent, p: float) -> float:
    lo, hi = theta.domain
    if not lo <= p <= hi:
        raise DomainError(f"p={p!r} outside domain [{lo}, {hi}]")
    value = _raw_theta(theta, p)
    if not math.isfinite(value) or value <= 1.0:
        raise RangeError(f"theta({p!r}) = {value!r} is not a finite value > 1")
    return value


@dataclass
class ThetaValidation:
    passed: bool
    grid: np.ndarray
    values: np.ndarray
    non_monotone: list[tuple[float, float]]
    not_above_one: list[float]

    def summary(self) -> str:
        if self.passed:
            return f"ok ({len(self.grid)} samples)"
        parts = []
        if self.not_above_one:
            parts.append(f"{len(self.not_above_one)} samples with theta <= 1 or non-finite")
        if self.non_monotone:
            parts.append(f"{len(self.non_monotone)} non-increasing adjacent pairs")
        return "; ".join(parts)


def validate_theta(theta: ThetaExponent, grid_size: int = 100) -> ThetaValidation:
    """Sample the domain uniformly and report every hypothesis violation."""
    if grid_size < 2:
        raise ArgError("grid_size must be >= 2")
    lo, hi = theta.domain
    grid = np.linspace(lo, hi, grid_size)
    values = np.array([_raw_theta(theta, float(p)) for p in grid], dtype=float)
    bad = [float(p) for p, v in zip(grid, values) if not (math.isfinite(v) and v > 1.0)]
    non_mono = [
        (float(grid[i]), float(grid[i + 1]))
        for i in range(grid_size - 1)
        if not values[i + 1] > values[i]
    ]
    return ThetaValidation(
        passed=not bad and not non_mono,
        grid=grid,
        values=values,
        non_monotone=non_mono,
        not_above_one=bad,
    )


# -- preset grammar -----------------------------------------------------------
#   identity            Lambda(p) = p,         Psi(p) = 1
#   power:k             Lambda(p) = p,         Psi(p) = k
#   affine-power:a,b,c  Lambda(p) = a + b*p,   Psi(p) = c

DEFAULT_DOMAIN = (1.0 + 1e-6, 1e6)


def parse_theta(spec: str, domain: tuple[float, float] | None = None) -> ThetaExponent:
    spec = spec.strip()
    dom = domain or DEFAULT_DOMAIN
    if spec == "identity":
        return ThetaExponent(lambda p: p, lambda p: 1.0, dom, name=spec)
    kind, sep, args = spec.partition(":")
    if not sep:
        raise ArgError(f"unknown theta preset {spec!r}")
    try:
        nums = [float(a) for a in args.split(",")]
    except ValueError:
        raise ArgError(f"bad numeric arguments in theta preset {spec!r}") from None
    if kind == "power" and len(nums) == 1:
        k = nums[0]
        return ThetaExponent(lambda p: p, lambda p: k, dom, name=spec)
    if kind == "affine-power" and len(nums) == 3:
        a, b, c = nums
        return ThetaExponent(lambda p: a + b * p, lambda p: c, dom, name=spec)
    raise ArgError(f"unknown theta preset {spec!r}")


def parse_exponent_preset(spec: str) -> ExponentValue:
    """Resolve ``"<theta>@<p>"``, a bare number, or ``"inf"`` to an exponent."""
    spec = spec.strip()
    if "@" in spec:
        theta_spec, _, p = spec.rpartition("@")
        theta = parse_theta(theta_spec)
        try:
            p_val = float(p)
        except ValueError:
            raise ArgError(f"bad evaluation point in {spec!r}") from None
        return theta_eval(theta, p_val)
    try:
        return as_exponent(spec)
    except ValueError:
        raise ArgError(f"bad exponent preset {spec!r}") from None
