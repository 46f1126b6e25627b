"""Complex special functions used by the local parametrix.

Contents: log-Gamma, log-Barnes-G, the Tricomi confluent hypergeometric
function ``psi(a, c, zeta)`` continued to any sheet of the punctured plane,
and the 2x2 confluent-hypergeometric parametrix with its eight sectors.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sc

from .quadrature import exp_sinh_integrate

ZETA_PRIME_MINUS_ONE = -0.16542114370045092921
LN_2PI = math.log(2.0 * math.pi)
_INT_TOL = 1e-12


class PoleError(ValueError):
    """Argument sits on a pole of Gamma or a zero of Barnes G."""


class DegenerateParameterError(ValueError):
    """Parameter combination for which the requested branch is undefined."""


def _nonpositive_integer(z: complex) -> int | None:
    z = complex(z)
    if abs(z.imag) < _INT_TOL and z.real < 0.5:
        k = round(z.real)
        if abs(z.real - k) < _INT_TOL and k <= 0:
            return int(k)
    return None


# ---------------------------------------------------------------------------
# Gamma and Barnes G
# ---------------------------------------------------------------------------

def ln_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z) (continuous off the negative axis)."""
    if _nonpositive_integer(z) is not None:
        raise PoleError(f"Gamma has a pole at z = {z}")
    return complex(sc.loggamma(complex(z)))


def rgamma(z: complex) -> complex:
    """1/Gamma(z); entire, exactly zero at the poles of Gamma."""
    return complex(sc.rgamma(complex(z)))


def digamma(z: complex) -> complex:
    return complex(sc.psi(complex(z)))


# Bernoulli numbers B_4 .. B_16 for the Barnes G Stirling series
_BERNOULLI = {4: -1 / 30, 6: 1 / 42, 8: -1 / 30, 10: 5 / 66, 12: -691 / 2730,
              14: 7 / 6, 16: -3617 / 510}
_G_SHIFT_TARGET = 18.0


def _ln_barnes_g_large(z: complex) -> complex:
    w = z - 1.0
    lw = cmath.log(w)
    s = (0.5 * w * w - 1.0 / 12.0) * lw - 0.75 * w * w + 0.5 * w * LN_2PI + ZETA_PRIME_MINUS_ONE
    wk = w * w
    for k in range(1, 8):
        s += _BERNOULLI[2 * k + 2] / (4.0 * k * (k + 1) * wk)
        wk *= w * w
    return s


def ln_barnes_g(z: complex) -> complex:
    """A branch of log G(z), analytic off the real half-line (-inf, 0].

    The argument is shifted to the right with ``G(z+1) = Gamma(z) G(z)`` and
    the Stirling-type expansion is applied there.
    """
    z = complex(z)
    if _nonpositive_integer(z) is not None:
        raise PoleError(f"Barnes G vanishes at z = {z}")
    n_shift = max(0, math.ceil(_G_SHIFT_TARGET - z.real))
    acc = _ln_barnes_g_large(z + n_shift)
    for k in range(n_shift):
        acc -= complex(sc.loggamma(z + k))
    return acc


# ---------------------------------------------------------------------------
# Tricomi psi on the universal covering
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoveringPoint:
    """A point ``exp(log_modulus + i*argument)`` of the punctured plane's cover."""

    log_modulus: float
    argument: float

    @classmethod
    def from_polar(cls, r: float, argument: float) -> "CoveringPoint":
        if not r > 0:
            raise ValueError("covering points must have positive modulus")
        return cls(math.log(r), float(argument))

    @property
    def modulus(self) -> float:
        return math.exp(self.log_modulus)

    @property
    def log(self) -> complex:
        return complex(self.log_modulus, self.argument)

    @property
    def value(self) -> complex:
        return cmath.exp(self.log)

    def power(self, p: complex) -> complex:
        """``zeta**p`` on this sheet."""
        return cmath.exp(p * self.log)

    def rotate(self, angle: float) -> "CoveringPoint":
        """Multiply by ``exp(i*angle)`` on the cover (sheet changes are kept)."""
        return CoveringPoint(self.log_modulus, self.argument + angle)


SERIES_RADIUS = 1.5
ASYMPTOTIC_RADIUS = 40.0
_NEAR_INTEGER_C = 1e-3
_SERIES_MAX_TERMS = 400


def _poch(x: complex, k: int) -> complex:
    out = 1.0 + 0.0j
    for i in range(k):
        out *= x + i
    return out


def _psi_polynomial(m: int, c: complex, z: CoveringPoint) -> complex:
    # psi(-m, c, x) = (-1)^m sum_s binom(m, s) (c+s)_{m-s} (-x)^s
    x = z.value
    total = 0.0 + 0.0j
    for s in range(m + 1):
        total += math.comb(m, s) * _poch(c + s, m - s) * (-x) ** s
    return (-1) ** m * total


def _kummer_m(a: complex, c: complex, x: complex) -> complex:
    """Kummer M(a, c, x) by its power series, Kummer-transformed when Re x < 0."""
    if x.real < 0:
        return cmath.exp(x) * _kummer_m(c - a, c, -x)
    term = 1.0 + 0.0j
    total = term
    for k in range(_SERIES_MAX_TERMS):
        term *= (a + k) * x / ((c + k) * (k + 1))
        total += term
        if abs(term) < 1e-17 * abs(total) and k > abs(x):
            return total
    raise ArithmeticError("Kummer series did not converge")


def _psi_series(a: complex, c: complex, z: CoveringPoint) -> complex:
    """Two-term connection of psi to Kummer M; c must stay away from integers."""
    x = z.value
    t1 = 0.0j
    g1 = rgamma(a - c + 1)
    if g1 != 0:
        t1 = complex(sc.gamma(1 - c)) * g1 * _kummer_m(a, c, x)
    t2 = 0.0j
    g2 = rgamma(a)
    if g2 != 0:
        t2 = complex(sc.gamma(c - 1)) * g2 * z.power(1 - c) * _kummer_m(a - c + 1, 2 - c, x)
    return t1 + t2


def _psi_log_series(a: complex, n: int, z: CoveringPoint) -> complex:
    """Integer ``c = n + 1 >= 1``: logarithmic series, ln evaluated on the cover."""
    x = z.value
    lx = z.log
    head = (-1) ** (n + 1) * rgamma(a - n) / math.factorial(n)
    total = 0.0j
    if head != 0:
        coef = 1.0 + 0.0j
        for k in range(_SERIES_MAX_TERMS):
            bracket = lx + digamma(a + k) - digamma(1 + k) - digamma(n + k + 1)
            term = coef * bracket
            total += term
            if k > abs(x) and abs(term) < 1e-17 * max(abs(total), 1e-300):
                break
            coef *= (a + k) * x / ((n + 1 + k) * (k + 1))
        else:
            raise ArithmeticError("logarithmic psi series did not converge")
        total *= head
    tail = 0.0j
    ra = rgamma(a)
    if n > 0 and ra != 0:
        for k in range(1, n + 1):
            tail += math.factorial(k - 1) * _poch(1 - a + k, n - k) / math.factorial(n - k) * x ** (-k)
        tail *= ra
    return total + tail


def _psi_asymptotic(a: complex, c: complex, z: CoveringPoint) -> complex:
    x = z.value
    term = 1.0 + 0.0j
    total = term
    best = abs(term)
    for k in range(200):
        nxt = -term * (a + k) * (a - c + 1 + k) / ((k + 1) * x)
        if nxt == 0:
            break
        if abs(nxt) > best:
            break
        term = nxt
        best = abs(term)
        total += term
        if best < 1e-17 * abs(total):
            break
    return z.power(-a) * total


def _psi_laplace_core(a: complex, c: complex, z: CoveringPoint) -> complex:
    """Laplace integral for Re a >= 1 and |arg| <= pi, on a rotated ray."""
    theta = z.argument
    r = z.modulus
    phi = -max(-0.7 * math.pi, min(0.7 * math.pi, theta))
    omega = cmath.exp(1j * (theta + phi))
    rot = cmath.exp(1j * phi)
    e = c - a - 1

    def integrand(u):
        s = u / r
        return np.exp(-omega * u + (a - 1) * np.log(s) + e * np.log(1.0 + s * rot))

    val = exp_sinh_integrate(integrand, h=1.0 / 64)
    return val * cmath.exp(1j * phi * a) * rgamma(a) / r


def _psi_laplace(a: complex, c: complex, z: CoveringPoint) -> complex:
    n_up = max(0, math.ceil(1.0 - a.real))
    if n_up == 0:
        return _psi_laplace_core(a, c, z)
    x = z.value
    hi = _psi_laplace_core(a + n_up + 1, c, z)
    mid = _psi_laplace_core(a + n_up, c, z)
    # U(a-1) = -(c - 2a - x) U(a) - a (a - c + 1) U(a+1), run downward
    for k in range(n_up, 0, -1):
        ak = a + k
        lo = -(c - 2 * ak - x) * mid - ak * (ak - c + 1) * hi
        hi, mid = mid, lo
    return mid


def _psi_principal(a: complex, c: complex, z: CoveringPoint) -> complex:
    if z.modulus >= ASYMPTOTIC_RADIUS:
        return _psi_asymptotic(a, c, z)
    return _psi_laplace(a, c, z)


def _psi_reduced(a: complex, c: complex, z: CoveringPoint, depth: int = 0) -> complex:
    """Bring the argument into (-pi, pi] with the monodromy relation."""
    theta = z.argument
    if -math.pi < theta <= math.pi:
        return _psi_principal(a, c, z)
    if depth > 64:
        raise ArithmeticError("sheet reduction did not terminate")
    k = 2j * math.pi * rgamma(a) * rgamma(a - c + 1) * cmath.exp(1j * math.pi * a)
    if theta > math.pi:
        # psi(z) = e^{-2 pi i a} [psi(e^{-2 pi i} z) + k e^z psi(c - a, c, e^{-i pi} z)]
        inner = _psi_reduced(a, c, z.rotate(-2 * math.pi), depth + 1)
        if k != 0:
            inner += k * cmath.exp(z.value) * _psi_reduced(c - a, c, z.rotate(-math.pi), depth + 1)
        return cmath.exp(-2j * math.pi * a) * inner
    # theta <= -pi:  psi(z) = e^{2 pi i a} psi(e^{2 pi i} z) - k e^z psi(c - a, c, e^{i pi} z)
    out = cmath.exp(2j * math.pi * a) * _psi_reduced(a, c, z.rotate(2 * math.pi), depth + 1)
    if k != 0:
        out -= k * cmath.exp(z.value) * _psi_reduced(c - a, c, z.rotate(math.pi), depth + 1)
    return out


def psi_chf(a: complex, c: complex, zeta: CoveringPoint) -> complex:
    """Tricomi confluent hypergeometric function psi(a, c, zeta) on the cover.

    Small ``|zeta|`` uses Kummer series (the logarithmic form for integer
    ``c``), larger arguments are first brought to the principal sheet and then
    evaluated by a Laplace integral or, for ``|zeta| >= 40``, by the
    asymptotic series.
    """
    a = complex(a)
    c = complex(c)
    m = _nonpositive_integer(a)
    if m is not None:
        return _psi_polynomial(-m, c, zeta)
    m = _nonpositive_integer(a - c + 1)
    if m is not None:
        # psi(a, c, x) = x^{1-c} psi(a - c + 1, 2 - c, x), a polynomial
        return zeta.power(1 - c) * _psi_polynomial(-m, 2 - c, zeta)
    if zeta.modulus <= SERIES_RADIUS:
        n = round(c.real)
        if abs(c.imag) < _INT_TOL and abs(c.real - n) < _INT_TOL:
            if n >= 1:
                return _psi_log_series(a, n - 1, zeta)
            # psi(a, c, x) = x^{1-c} psi(a - c + 1, 2 - c, x) moves c to 2 - c >= 2
            return zeta.power(1 - c) * _psi_log_series(a - c + 1, 1 - n, zeta)
        if abs(c - n) >= _NEAR_INTEGER_C:
            return _psi_series(a, c, zeta)
    return _psi_reduced(a, c, zeta)


# ---------------------------------------------------------------------------
# Parametrix
# ---------------------------------------------------------------------------

class Sector(enum.IntEnum):
    I = 1
    II = 2
    III = 3
    IV = 4
    V = 5
    VI = 6
    VII = 7
    VIII = 8


# ray Gamma_k sits at RAY_ANGLES[k]; sector boundaries follow from these
RAY_ANGLES = {1: math.pi / 2, 2: 3 * math.pi / 4, 3: math.pi, 4: 5 * math.pi / 4,
              5: 3 * math.pi / 2, 6: 7 * math.pi / 4, 7: 0.0, 8: math.pi / 4}
SECTOR_RANGES = {
    Sector.VII: (0.0, math.pi / 4), Sector.VIII: (math.pi / 4, math.pi / 2),
    Sector.I: (math.pi / 2, 3 * math.pi / 4), Sector.II: (3 * math.pi / 4, math.pi),
    Sector.III: (math.pi, 5 * math.pi / 4), Sector.IV: (5 * math.pi / 4, 3 * math.pi / 2),
    Sector.V: (3 * math.pi / 2, 7 * math.pi / 4), Sector.VI: (7 * math.pi / 4, 2 * math.pi),
}
# (plus side, minus side) of each ray
RAY_SIDES = {1: (Sector.I, Sector.VIII), 2: (Sector.II, Sector.I), 3: (Sector.III, Sector.II),
             4: (Sector.III, Sector.IV), 5: (Sector.IV, Sector.V), 6: (Sector.V, Sector.VI),
             7: (Sector.VII, Sector.VI), 8: (Sector.VIII, Sector.VII)}


@dataclass(frozen=True)
class ParametrixInput:
    alpha: complex
    beta: complex
    sector: Sector = Sector.I

    def __post_init__(self):
        if not complex(self.alpha).real > -0.5:
            raise ValueError("parametrix requires Re alpha > -1/2")
        for s in (self.alpha + self.beta, self.alpha - self.beta):
            m = _nonpositive_integer(s)
            if m is not None and m < 0:
                raise DegenerateParameterError(f"alpha +- beta = {s} is a negative integer")


def sector_of(argument: float) -> Sector:
    """Sector containing a direction with argument in (0, 2*pi)."""
    for sec, (lo, hi) in SECTOR_RANGES.items():
        if lo < argument <= hi:
            return sec
    raise ValueError(f"argument {argument} outside (0, 2*pi]")


def jump_matrix(k: int, alpha: complex, beta: complex) -> np.ndarray:
    """Constant jump ``J_k`` on ray ``Gamma_k``: ``Psi_+ = Psi_- J_k``."""
    e = cmath.exp
    ipi = 1j * math.pi
    if k == 1:
        return np.array([[0, e(-ipi * beta)], [-e(ipi * beta), 0]], dtype=complex)
    if k == 5:
        return np.array([[0, e(ipi * beta)], [-e(-ipi * beta), 0]], dtype=complex)
    if k in (3, 7):
        return np.diag([e(ipi * alpha), e(-ipi * alpha)]).astype(complex)
    if k == 2:
        return np.array([[1, 0], [e(ipi * (beta - 2 * alpha)), 1]], dtype=complex)
    if k == 4:
        return np.array([[1, 0], [e(-ipi * (beta - 2 * alpha)), 1]], dtype=complex)
    if k == 8:
        return np.array([[1, 0], [e(ipi * (beta + 2 * alpha)), 1]], dtype=complex)
    if k == 6:
        return np.array([[1, 0], [e(-ipi * (beta + 2 * alpha)), 1]], dtype=complex)
    raise ValueError(f"no ray Gamma_{k}")


def _gamma_ratio(num: complex, den: complex) -> complex:
    """Gamma(num)/Gamma(den), zero when den is a pole."""
    return complex(sc.gamma(num)) * rgamma(den)


def _psi_first_sector(alpha: complex, beta: complex, z: CoveringPoint) -> np.ndarray:
    ipi = 1j * math.pi
    x = z.value
    zp, zm = z.power(alpha), z.power(-alpha)
    em, ep = cmath.exp(-x / 2), cmath.exp(x / 2)
    zr = z.rotate(-math.pi)
    out = np.empty((2, 2), dtype=complex)
    out[0, 0] = zp * psi_chf(alpha + beta, 1 + 2 * alpha, z) * cmath.exp(ipi * (2 * beta + alpha)) * em
    out[1, 0] = (-zm * psi_chf(1 - alpha + beta, 1 - 2 * alpha, z) * cmath.exp(ipi * (beta - 3 * alpha))
                 * em * _gamma_ratio(1 + alpha + beta, alpha - beta))
    out[0, 1] = (-zp * psi_chf(1 + alpha - beta, 1 + 2 * alpha, zr) * cmath.exp(ipi * (beta + alpha))
                 * ep * _gamma_ratio(1 + alpha - beta, alpha + beta))
    out[1, 1] = zm * psi_chf(-alpha - beta, 1 - 2 * alpha, zr) * cmath.exp(-ipi * alpha) * ep
    return out


def _psi_fourth_sector(alpha: complex, beta: complex, z: CoveringPoint) -> np.ndarray:
    ipi = 1j * math.pi
    x = z.value
    em = cmath.exp(-x / 2)
    z2 = z.rotate(-2 * math.pi)
    out = _psi_first_sector(alpha, beta, z) * cmath.exp(-ipi * alpha)
    out[0, 0] = z.power(alpha) * psi_chf(alpha + beta, 1 + 2 * alpha, z2) * em
    out[1, 0] = (-z.power(-alpha) * psi_chf(1 - alpha + beta, 1 - 2 * alpha, z2)
                 * cmath.exp(-ipi * beta) * em * _gamma_ratio(1 + alpha + beta, alpha - beta))
    return out


def parametrix_matrix(p: ParametrixInput, zeta: CoveringPoint) -> np.ndarray:
    """The confluent-hypergeometric parametrix in sector ``p.sector``.

    ``zeta.argument`` is used as given, so the sector formula may be
    evaluated by analytic continuation outside its nominal range (this is how
    jump conditions across the rays are checked).
    """
    a, b = complex(p.alpha), complex(p.beta)
    J = lambda k: jump_matrix(k, a, b)  # noqa: E731
    inv = np.linalg.inv
    sec = Sector(p.sector)
    if sec == Sector.I:
        return _psi_first_sector(a, b, zeta)
    if sec == Sector.II:
        return _psi_first_sector(a, b, zeta) @ J(2)
    if sec == Sector.III:
        return _psi_first_sector(a, b, zeta) @ J(2) @ J(3)
    if sec == Sector.IV:
        return _psi_fourth_sector(a, b, zeta)
    if sec == Sector.V:
        return _psi_fourth_sector(a, b, zeta) @ inv(J(5))
    if sec == Sector.VI:
        return _psi_fourth_sector(a, b, zeta) @ inv(J(5)) @ inv(J(6))
    # sectors VII and VIII continue sector VI across Gamma_7 (arg 2*pi == arg 0)
    base = _psi_fourth_sector(a, b, zeta.rotate(2 * math.pi)) @ inv(J(5)) @ inv(J(6)) @ J(7)
    if sec == Sector.VII:
        return base
    return base @ J(8)


def parametrix_asymptotic_matrix(p: ParametrixInput, zeta: CoveringPoint) -> np.ndarray:
    """Leading large-zeta behaviour in sectors I and II, without the 1/zeta correction."""
    a, b = complex(p.alpha), complex(p.beta)
    ipi = 1j * math.pi
    x = zeta.value
    return np.diag([
        zeta.power(-b) * cmath.exp(-x / 2) * cmath.exp(ipi * (2 * b + a)),
        zeta.power(b) * cmath.exp(x / 2) * cmath.exp(-ipi * (b + 2 * a)),
    ])


def parametrix_first_correction(p: ParametrixInput) -> np.ndarray:
    """Coefficient ``M`` of ``1/zeta`` in ``Psi * A^{-1} = I + M/zeta + ...``."""
    a, b = complex(p.alpha), complex(p.beta)
    ipi = 1j * math.pi
    d = a * a - b * b
    return np.array([
        [d, _gamma_ratio(1 + a - b, a + b) * cmath.exp(ipi * (b + 4 * a))],
        [-_gamma_ratio(1 + a + b, a - b) * cmath.exp(-ipi * (b + 4 * a)), -d],
    ])


def parametrix_det(p: ParametrixInput) -> complex:
    return cmath.exp(-1j * math.pi * (complex(p.alpha) - complex(p.beta)))
