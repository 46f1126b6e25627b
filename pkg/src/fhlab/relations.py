"""Exact identities linking Toeplitz, Hankel and Toeplitz+Hankel determinants.

Each checker evaluates both sides through independent numerical routes and
returns an :class:`IdentityReport` with the relative residual.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import chebyshev, polynomial

from .exactdet import (ConditioningWarning, OPData, TPHVariant, cd_residual, hankel_logdet,
                       szego_recursion, toeplitz_logdet, tph_logdet)
from .logscaled import LogScaled
from .specialfn import (CoveringPoint, ParametrixInput, RAY_ANGLES, RAY_SIDES, jump_matrix,
                        parametrix_det, parametrix_matrix)
from .symbol import (Coefficients, FHSymbol, HankelWeight, circle_symbol_of_weight,
                     fourier_coeffs, half_range_moments, hankel_moments)

DEFAULT_TOL = 1e-8
SIGN_ANCHOR_N = 6
LN2 = math.log(2.0)
LN_PI = math.log(math.pi)

TPH_WEIGHTS = {
    TPHVariant.PLUS: "one",
    TPHVariant.MINUS2: "sin2",
    TPHVariant.PLUS1: "one_plus_cos",
    TPHVariant.MINUS1: "one_minus_cos",
}


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check; ``status`` is ``"pass"`` or ``"fail"``."""

    name: str
    n: int
    lhs: LogScaled
    rhs: LogScaled
    relative_residual: float
    status: str
    tolerance: float = DEFAULT_TOL
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def relative_residual(lhs: LogScaled, rhs: LogScaled) -> float:
    """``|lhs/rhs - 1|``; two exact zeros agree, one exact zero does not."""
    if lhs.is_zero and rhs.is_zero:
        return 0.0
    if lhs.is_zero or rhs.is_zero:
        return math.inf
    return lhs.relative_difference(rhs)


def _report(name: str, n: int, lhs: LogScaled, rhs: LogScaled, tol: float, **detail) -> IdentityReport:
    res = relative_residual(lhs, rhs)
    return IdentityReport(name, n, lhs, rhs, res, "pass" if res <= tol else "fail", tol, detail)


def _coefficients(f: FHSymbol | Coefficients, jmax: int) -> Coefficients:
    if isinstance(f, Coefficients):
        if f.jmax < jmax:
            raise ValueError(f"need Fourier coefficients up to |j| = {jmax}")
        return f
    return fourier_coeffs(f, jmax)


# ---------------------------------------------------------------------------
# Multiplication by z^l
# ---------------------------------------------------------------------------

def _derivative_matrix(op: OPData, k: int, ell: int) -> np.ndarray:
    """``F[i, p] = d^i/dz^i Phi_{k+p}(0)`` (hat polynomials for negative ``ell``)."""
    size = abs(ell)
    polys = op.monic if ell > 0 else op.hat_monic
    out = np.zeros((size, size), dtype=complex)
    for p in range(size):
        coef = polys[k + p]
        for i in range(size):
            if i < len(coef):
                out[i, p] = math.factorial(i) * coef[i]
    return out


def check_shift_identity(f: FHSymbol | Coefficients, ell: int, n: int, *,
                         tol: float = DEFAULT_TOL) -> IdentityReport:
    """``D_n(z^l f) = (-1)^{|l| n} F_n / prod_{j<|l|} j! * D_n(f)``.

    The left side is a dense LU of the shifted Toeplitz matrix; the right
    side uses the recursion's monic polynomials and their Taylor
    coefficients at zero.  ``detail["hypothesis_ok"]`` records whether
    every ``F_k``, ``k < n``, is nonzero.
    """
    ell = int(ell)
    if not 1 <= abs(ell) <= 3:
        raise ValueError("|ell| must be 1, 2 or 3")
    if n < 1:
        raise ValueError("n must be positive")
    size = abs(ell)
    c = _coefficients(f, n + size)
    lhs = toeplitz_logdet(c, n, shift=ell)
    op = szego_recursion(c, n + size - 1)
    big_f = np.linalg.det(_derivative_matrix(op, n, ell))
    norm = math.prod(math.factorial(j) for j in range(1, size))
    rhs = LogScaled.from_complex((-1) ** (size * n) * big_f / norm) * op.logdet(n)
    fk = [abs(np.linalg.det(_derivative_matrix(op, k, ell))) for k in range(n)]
    return _report(f"shift[{ell:+d}]", n, lhs, rhs, tol, hypothesis_ok=bool(min(fk) > 1e-14),
                   min_abs_F=float(min(fk)))


# ---------------------------------------------------------------------------
# Hankel <-> Toeplitz
# ---------------------------------------------------------------------------

def _ht_square(op: OPData, n: int) -> LogScaled:
    """Right side of the Hankel-Toeplitz relation for ``D_n(w)^2``."""
    k = 2 * n
    pref = LogScaled(2 * n * LN_PI - 2 * (n - 1) ** 2 * LN2, 0.0)
    one_plus = LogScaled.from_complex(1 + op.monic[k][0]) ** 2
    ends = LogScaled.from_complex(op.Phi(k, 1.0)) * LogScaled.from_complex(op.Phi(k, -1.0))
    return pref * one_plus * op.logdet(k) / ends


def _circle_recursion(w: HankelWeight, n: int) -> OPData:
    f, _ = circle_symbol_of_weight(w)
    return szego_recursion(fourier_coeffs(f, 2 * n), 2 * n)


def check_hankel_toeplitz(w: HankelWeight, n: int, *, tol: float = DEFAULT_TOL) -> IdentityReport:
    """``D_n(w)^2 = pi^{2n} 4^{-(n-1)^2} (1+Phi_{2n}(0))^2 D_{2n}(f) / (Phi_{2n}(1) Phi_{2n}(-1))``."""
    if n < 1:
        raise ValueError("n must be positive")
    moments = hankel_moments(w, 2 * n - 2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        direct = hankel_logdet(moments, n, warn=False)
    lhs = direct ** 2
    rhs = _ht_square(_circle_recursion(w, n), n)
    return _report("hankel_toeplitz", n, lhs, rhs, tol)


def route_hankel_sequence(w: HankelWeight, nmax: int, *, anchor_n: int = SIGN_ANCHOR_N) -> list[LogScaled]:
    """``D_k(w)`` for ``k = 0..nmax`` from the Toeplitz side, with square-root signs fixed by continuity.

    For ``k <= anchor_n`` the root nearest the direct LU value is taken.
    Beyond that the root whose phase is closest to the linear extrapolation
    of the previous two phases is chosen.
    """
    if nmax < 0:
        raise ValueError("n must be non-negative")
    out = [LogScaled.one()]
    if nmax == 0:
        return out
    op = _circle_recursion(w, nmax)
    m_anchor = min(nmax, anchor_n)
    moments = hankel_moments(w, 2 * m_anchor - 2)
    phases = [0.0]
    for k in range(1, nmax + 1):
        sq = _ht_square(op, k)
        half = 0.5 * sq.phase
        if k <= m_anchor:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ConditioningWarning)
                target = hankel_logdet(moments, k, warn=False).phase
        elif k >= 2:
            target = 2 * phases[-1] - phases[-2]
        else:
            target = phases[-1]
        phase = half + math.pi * round((target - half) / math.pi)
        phases.append(phase)
        out.append(LogScaled(0.5 * sq.log_modulus, phase))
    return out


def route_hankel_via_toeplitz(w: HankelWeight, n: int, *, anchor_n: int = SIGN_ANCHOR_N) -> LogScaled:
    """``D_n(w)`` through the Toeplitz determinant of the associated even circle symbol."""
    return route_hankel_sequence(w, n, anchor_n=anchor_n)[n]


# ---------------------------------------------------------------------------
# Toeplitz+Hankel <-> Hankel
# ---------------------------------------------------------------------------

def tph_prefactor(n: int, variant) -> LogScaled:
    variant = TPHVariant.parse(variant)
    exp2 = {TPHVariant.PLUS: n * n - 2 * n + 2, TPHVariant.MINUS2: n * n,
            TPHVariant.PLUS1: n * n - n, TPHVariant.MINUS1: n * n - n}[variant]
    return LogScaled(exp2 * LN2 - n * LN_PI, 0.0)


def check_tph_reduction(f: FHSymbol, n: int, variant, *, tol: float = DEFAULT_TOL,
                        coeffs: Coefficients | None = None) -> IdentityReport:
    """Toeplitz+Hankel determinant against the matching Hankel determinant on ``[-1, 1]``.

    The Hankel moments are computed as angular integrals of ``f`` against
    ``cos^k theta`` times the variant's half-range weight.
    """
    variant = TPHVariant.parse(variant)
    if not f.is_even():
        raise ValueError("Toeplitz+Hankel reductions need an even symbol")
    c = coeffs if coeffs is not None else fourier_coeffs(f, 2 * n + 1)
    lhs = tph_logdet(c, n, variant)
    moments = half_range_moments(f, 2 * n - 2, TPH_WEIGHTS[variant])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditioningWarning)
        rhs = tph_prefactor(n, variant) * hankel_logdet(moments, n, warn=False)
    return _report(f"tph[{variant.value}]", n, lhs, rhs, tol)


# ---------------------------------------------------------------------------
# Circle polynomials -> interval polynomials
# ---------------------------------------------------------------------------

def interval_monic(op: OPData, n: int) -> np.ndarray:
    """Power-basis coefficients of ``P_n(x)`` built from ``Phi_{2n}``.

    ``z^{-n} Phi_{2n}(z) + z^n Phi_{2n}(1/z) = sum_k c_k 2 T_{|k-n|}(x)``
    with ``x = (z + 1/z)/2``; dividing by ``2^n (1 - a_{2n-1})`` makes it monic.
    """
    c = op.monic[2 * n]
    cheb = np.zeros(n + 1, dtype=complex)
    for k, ck in enumerate(c):
        cheb[abs(k - n)] += 2 * ck
    one_minus_a = 1 + op.monic[2 * n][0]  # a_{2n-1} = -Phi_{2n}(0)
    return chebyshev.cheb2poly(cheb) / (2 ** n * one_minus_a)


def kappa_sq(op: OPData, n: int) -> complex:
    """``kappa_n^2 = 4^n chi_{2n}^2 (1 - a_{2n-1}) / (2 pi)``."""
    return 4 ** n * op.chi_sq[2 * n] * (1 + op.monic[2 * n][0]) / (2 * math.pi)


def check_szego_map(f: FHSymbol, n: int, *, tol: float = DEFAULT_TOL) -> IdentityReport:
    """Orthogonality and normalisation of the interval polynomials, plus the a-coefficient relation.

    With ``M_k = int_0^pi cos^k theta f d theta`` the integral of
    ``P_n(x) x^m w(x)`` over ``[-1, 1]`` equals ``sum_i P_i M_{i+m}``.  The
    report compares ``kappa_n^2 int P_n x^n w`` with one; the detail holds
    the orthogonality residual, the a-coefficient relation residual and the
    evenness residual ``max |Phi_k - hat-Phi_k|``.
    """
    if not f.is_even():
        raise ValueError("the Szego map needs an even symbol")
    if n < 1:
        raise ValueError("n must be positive")
    c = fourier_coeffs(f, 2 * n)
    op = szego_recursion(c, 2 * n)
    moments = half_range_moments(f, 2 * n, "one")
    p = interval_monic(op, n)
    ints = np.array([np.dot(p, moments[m:m + n + 1]) for m in range(n + 1)])
    scale = np.array([np.dot(np.abs(p), np.abs(moments[m:m + n + 1])) for m in range(n + 1)])
    ortho = float(np.max(np.abs(ints[:n])) / np.max(scale)) if n else 0.0
    lhs = LogScaled.from_complex(kappa_sq(op, n) * ints[n])
    # (1 - a_{2k-1})^2 = -4 (chi_{2k+1}/chi_{2k})^2 P_{k+1}(1) P_{k+1}(-1) / (P_k(1) P_k(-1))
    ap = 0.0
    for k in range(1, n):
        pk = interval_monic(op, k)
        pk1 = interval_monic(op, k + 1)
        left = (1 + op.monic[2 * k][0]) ** 2
        ratio = op.h[2 * k] / op.h[2 * k + 1]
        right = (-4 * ratio * polynomial.polyval(1.0, pk1) * polynomial.polyval(-1.0, pk1)
                 / (polynomial.polyval(1.0, pk) * polynomial.polyval(-1.0, pk)))
        ap = max(ap, abs(left - right) / max(abs(left), abs(right)))
    even = max(float(np.max(np.abs(a - b))) for a, b in zip(op.monic, op.hat_monic))
    report = _report("szego_map", n, lhs, LogScaled.one(), tol, orthogonality=ortho,
                     a_relation=ap, evenness=even)
    worst = max(report.relative_residual, ortho, ap, even)
    status = "pass" if worst <= tol else "fail"
    return IdentityReport(report.name, n, lhs, LogScaled.one(), worst, status, tol, report.detail)


# ---------------------------------------------------------------------------
# Christoffel-Darboux and the parametrix
# ---------------------------------------------------------------------------

def check_christoffel_darboux(f: FHSymbol | Coefficients, n: int, points: Sequence[tuple[complex, complex]],
                              *, tol: float = DEFAULT_TOL) -> IdentityReport:
    """Both Christoffel-Darboux forms at each ``(z, a)`` pair; the worst residual is reported."""
    c = _coefficients(f, n + 1)
    op = szego_recursion(c, n)
    worst = max(cd_residual(op, n, z, a) for z, a in points)
    one = LogScaled.one()
    return IdentityReport("christoffel_darboux", n, one, one, worst,
                          "pass" if worst <= tol else "fail", tol, {"points": len(points)})


def check_parametrix_jumps(alpha: complex, beta: complex, radii: Sequence[float], *,
                           tol: float = 1e-9) -> IdentityReport:
    """``Psi_+ = Psi_- J_k`` on all eight rays and ``det Psi = exp(-i pi (alpha - beta))``.

    On the ray at angle 0 the minus side is approached with argument
    ``2 pi``.  The residual is ``||Psi_+ - Psi_- J_k|| / ||Psi_-||``.
    """
    worst = 0.0
    det_worst = 0.0
    expected = parametrix_det(ParametrixInput(alpha, beta))
    for k in range(1, 9):
        plus, minus = RAY_SIDES[k]
        ang = RAY_ANGLES[k]
        for r in radii:
            zp = CoveringPoint.from_polar(r, ang)
            zm = CoveringPoint.from_polar(r, 2 * math.pi if k == 7 else ang)
            pp = parametrix_matrix(ParametrixInput(alpha, beta, plus), zp)
            pm = parametrix_matrix(ParametrixInput(alpha, beta, minus), zm)
            res = np.linalg.norm(pp - pm @ jump_matrix(k, alpha, beta)) / np.linalg.norm(pm)
            worst = max(worst, float(res))
            det_worst = max(det_worst, abs(np.linalg.det(pp) / expected - 1))
    one = LogScaled.one()
    total = max(worst, det_worst)
    return IdentityReport("parametrix", 0, one, one, total, "pass" if total <= tol else "fail", tol,
                          {"jump": worst, "det": det_worst, "alpha": complex(alpha), "beta": complex(beta)})


__all__ = [
    "IdentityReport", "relative_residual", "check_shift_identity", "check_hankel_toeplitz",
    "route_hankel_via_toeplitz", "route_hankel_sequence", "check_tph_reduction", "check_szego_map",
    "check_christoffel_darboux", "check_parametrix_jumps", "interval_monic", "kappa_sq",
    "tph_prefactor", "TPH_WEIGHTS", "DEFAULT_TOL",
]
