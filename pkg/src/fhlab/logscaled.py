"""Complex numbers kept as (log-modulus, unwrapped phase).

Determinants of size a few hundred easily leave the double range, and the
asymptotic formulas carry oscillating factors whose phase grows linearly in
n.  Storing ``log|z|`` and an unreduced phase keeps both under control.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

ZERO_SUM_RTOL = 1e-12


@dataclass(frozen=True)
class LogScaled:
    """``exp(log_modulus + i*phase)``, or exactly zero when ``is_zero`` is set."""

    log_modulus: float = 0.0
    phase: float = 0.0
    is_zero: bool = False

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> "LogScaled":
        return cls(-math.inf, 0.0, True)

    @classmethod
    def one(cls) -> "LogScaled":
        return cls(0.0, 0.0)

    @classmethod
    def from_complex(cls, z: complex) -> "LogScaled":
        z = complex(z)
        if z == 0:
            return cls.zero()
        return cls(math.log(abs(z)), cmath.phase(z))

    @classmethod
    def from_log(cls, logz: complex) -> "LogScaled":
        """From a complex logarithm; the imaginary part is kept unreduced."""
        logz = complex(logz)
        return cls(logz.real, logz.imag)

    # -- views ------------------------------------------------------------
    @property
    def log(self) -> complex:
        if self.is_zero:
            raise ValueError("log of exact zero")
        return complex(self.log_modulus, self.phase)

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.exp(self.log)

    def __complex__(self) -> complex:
        return self.to_complex()

    @property
    def principal_phase(self) -> float:
        return math.remainder(self.phase, 2 * math.pi)

    # -- arithmetic -------------------------------------------------------
    def __mul__(self, other) -> "LogScaled":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return LogScaled.zero()
        return LogScaled(self.log_modulus + other.log_modulus, self.phase + other.phase)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogScaled":
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by exact zero")
        if self.is_zero:
            return LogScaled.zero()
        return LogScaled(self.log_modulus - other.log_modulus, self.phase - other.phase)

    def __rtruediv__(self, other) -> "LogScaled":
        return _coerce(other) / self

    def __pow__(self, p: float) -> "LogScaled":
        if self.is_zero:
            if p > 0:
                return LogScaled.zero()
            raise ZeroDivisionError("non-positive power of zero")
        return LogScaled(p * self.log_modulus, p * self.phase)

    def conj(self) -> "LogScaled":
        return self if self.is_zero else LogScaled(self.log_modulus, -self.phase)

    def ratio_minus_one(self, other: "LogScaled") -> complex:
        """``self/other - 1`` computed without leaving log space first."""
        if self.is_zero and other.is_zero:
            return 0j
        if other.is_zero or self.is_zero:
            return complex(math.inf)
        q = self / other
        if q.log_modulus > 700:
            return complex(math.inf)
        return cmath.exp(q.log) - 1.0

    def relative_difference(self, other: "LogScaled") -> float:
        """``|self/other - 1|`` with phases compared modulo 2 pi."""
        if self.is_zero and other.is_zero:
            return 0.0
        if self.is_zero or other.is_zero:
            return math.inf
        q = self / other
        if q.log_modulus > 700:
            return math.inf
        return abs(cmath.exp(complex(q.log_modulus, math.remainder(q.phase, 2 * math.pi))) - 1.0)

    def __repr__(self) -> str:
        if self.is_zero:
            return "LogScaled(ZERO)"
        return f"LogScaled(log_modulus={self.log_modulus!r}, phase={self.phase!r})"


def _coerce(x) -> LogScaled:
    if isinstance(x, LogScaled):
        return x
    return LogScaled.from_complex(complex(x))


def product(values: Iterable[LogScaled]) -> LogScaled:
    out = LogScaled.one()
    for v in values:
        out = out * v
    return out


def lsum(values: Iterable[LogScaled], rtol: float = ZERO_SUM_RTOL) -> LogScaled:
    """Sum of LogScaled values; cancellation down to ``rtol`` of the largest term is ZERO.

    The phase of the result is placed on the branch nearest the largest term,
    so a sum dominated by one term keeps that term's unwrapped phase.
    """
    vals = [v for v in values if not v.is_zero]
    if not vals:
        return LogScaled.zero()
    ref = max(vals, key=lambda v: v.log_modulus)
    acc = 0j
    for v in vals:
        q = v / ref
        acc += cmath.exp(q.log)
    if abs(acc) <= rtol * max(1.0, max(abs(cmath.exp((v / ref).log)) for v in vals)):
        return LogScaled.zero()
    return LogScaled(ref.log_modulus + math.log(abs(acc)), ref.phase + cmath.phase(acc))
