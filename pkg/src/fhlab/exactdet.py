"""Exact finite-n determinants and orthogonal polynomials on the unit circle.

Dense LU log-determinants for Toeplitz, Hankel and Toeplitz+Hankel matrices,
and the two coupled Szego recurrences for the monic polynomials Phi_k and
hat-Phi_k of a (generally non-Hermitian) symbol.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .logscaled import LogScaled
from .symbol import Coefficients

PIVOT_FLOOR = 1e-280
BREAKDOWN_FLOOR = 1e-10
HANKEL_WARN_LEVEL = 1e-6
MOMENT_RELATIVE_ACCURACY = 1e-15

__all__ = [
    "LogScaled", "TPHVariant", "OPData", "RecursionBreakdown", "ConditioningWarning",
    "toeplitz_matrix", "hankel_matrix", "tph_matrix", "dense_logdet", "toeplitz_logdet",
    "hankel_logdet", "hankel_error_estimate", "tph_logdet", "szego_recursion", "cd_residual",
    "ef1_brute_force",
]


class RecursionBreakdown(ArithmeticError):
    """A Toeplitz minor (nearly) vanishes; the recurrence cannot be continued."""

    def __init__(self, k: int, value: float):
        super().__init__(f"recursion breakdown at degree {k} (|1 - r r^| or |D| = {value:.3e}); "
                         "fall back to LU determinants")
        self.k = k
        self.value = value


class ConditioningWarning(UserWarning):
    """A dense determinant whose estimated relative error is large."""


class TPHVariant(enum.Enum):
    PLUS = "plus"      # f_{j-k} + f_{j+k}
    MINUS2 = "minus2"  # f_{j-k} - f_{j+k+2}
    PLUS1 = "plus1"    # f_{j-k} + f_{j+k+1}
    MINUS1 = "minus1"  # f_{j-k} - f_{j+k+1}

    @classmethod
    def parse(cls, name) -> "TPHVariant":
        if isinstance(name, cls):
            return name
        return cls(str(name).lower())


# ---------------------------------------------------------------------------
# Matrices and the dense LU engine
# ---------------------------------------------------------------------------

def toeplitz_matrix(c: Coefficients, n: int, shift: int = 0) -> np.ndarray:
    """``(c_{j-k-shift})_{j,k<n}``; ``shift = l`` gives the matrix of ``z^l f``."""
    idx = np.subtract.outer(np.arange(n), np.arange(n)) - shift
    need = int(np.max(np.abs(idx))) if n else 0
    if need > c.jmax:
        raise ValueError(f"need Fourier coefficients up to |j| = {need}, have {c.jmax}")
    return c.values[idx + c.jmax] if n else np.zeros((0, 0), dtype=complex)


def hankel_matrix(moments, n: int) -> np.ndarray:
    m = np.asarray(moments, dtype=complex)
    if n and len(m) < 2 * n - 1:
        raise ValueError(f"need moments m_0..m_{2 * n - 2}")
    idx = np.add.outer(np.arange(n), np.arange(n))
    return m[idx] if n else np.zeros((0, 0), dtype=complex)


def tph_matrix(c: Coefficients, n: int, variant) -> np.ndarray:
    variant = TPHVariant.parse(variant)
    jj, kk = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    extra = {TPHVariant.PLUS: 0, TPHVariant.MINUS2: 2, TPHVariant.PLUS1: 1, TPHVariant.MINUS1: 1}[variant]
    sign = 1.0 if variant in (TPHVariant.PLUS, TPHVariant.PLUS1) else -1.0
    if n and 2 * n - 2 + extra > c.jmax:
        raise ValueError(f"need Fourier coefficients up to j = {2 * n - 2 + extra}")
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    return c.values[jj - kk + c.jmax] + sign * c.values[jj + kk + extra + c.jmax]


def dense_logdet(a: np.ndarray, pivot_floor: float = PIVOT_FLOOR) -> LogScaled:
    """log det by LU with partial pivoting; the phase is summed pivot by pivot.

    Returns the ZERO variant if a pivot falls below ``pivot_floor`` times the
    largest entry.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return LogScaled.one()
    scale = float(np.max(np.abs(a)))
    if scale == 0.0:
        return LogScaled.zero()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    diag = np.diag(lu)
    if np.any(np.abs(diag) < pivot_floor * scale) or not np.all(np.isfinite(diag)):
        return LogScaled.zero()
    swaps = int(np.count_nonzero(piv != np.arange(n)))
    log_mod = float(np.sum(np.log(np.abs(diag))))
    phase = float(np.sum(np.angle(diag))) + math.pi * swaps
    return LogScaled(log_mod, phase)


def toeplitz_logdet(c: Coefficients, n: int, shift: int = 0, pivot_floor: float = PIVOT_FLOOR) -> LogScaled:
    """``D_n`` of the symbol whose coefficients are ``c`` (of ``z^shift f`` if shift != 0)."""
    if n == 0:
        return LogScaled.one()
    return dense_logdet(toeplitz_matrix(c, n, shift), pivot_floor)


def hankel_error_estimate(moments, n: int, rel_accuracy: float = MOMENT_RELATIVE_ACCURACY) -> float:
    """First-order relative error of det under entrywise relative perturbations.

    ``sum_{jk} |(H^{-1})_{kj}| |H_{jk}|`` times the moment accuracy.
    """
    if n == 0:
        return 0.0
    h = hankel_matrix(moments, n)
    try:
        hinv = np.linalg.inv(h)
    except np.linalg.LinAlgError:
        return math.inf
    return float(np.sum(np.abs(hinv.T) * np.abs(h))) * rel_accuracy


def hankel_logdet(moments, n: int, pivot_floor: float = PIVOT_FLOOR, warn: bool = True) -> LogScaled:
    """``det(m_{j+k})_{j,k<n}`` by dense LU.

    Moment matrices are badly conditioned; in double precision this is
    trustworthy for n up to about 12 on [-1, 1].  A ConditioningWarning is
    issued when the estimated relative error exceeds 1e-6.
    """
    if n == 0:
        return LogScaled.one()
    out = dense_logdet(hankel_matrix(moments, n), pivot_floor)
    if warn:
        est = hankel_error_estimate(moments, n)
        if est > HANKEL_WARN_LEVEL:
            warnings.warn(f"Hankel determinant of size {n}: estimated relative error {est:.2e}",
                          ConditioningWarning, stacklevel=2)
    return out


def tph_logdet(c: Coefficients, n: int, variant, pivot_floor: float = PIVOT_FLOOR) -> LogScaled:
    if n == 0:
        return LogScaled.one()
    return dense_logdet(tph_matrix(c, n, variant), pivot_floor)


# ---------------------------------------------------------------------------
# Szego recursion
# ---------------------------------------------------------------------------

@dataclass
class OPData:
    """Monic orthogonal polynomials ``Phi_k``, ``hat-Phi_k`` for ``k <= nmax``.

    ``h[k] = D_{k+1}/D_k = chi_k^{-2}``.  Coefficient vectors are stored in
    increasing powers of z.
    """

    nmax: int
    h: np.ndarray
    monic: list = field(repr=False)
    hat_monic: list = field(repr=False)

    @property
    def chi_sq(self) -> np.ndarray:
        return 1.0 / self.h

    def chi(self, k: int) -> complex:
        """Principal square root of chi_k^2."""
        return complex(np.sqrt(complex(self.chi_sq[k])))

    @property
    def Phi0(self) -> np.ndarray:
        return np.array([c[0] for c in self.monic])

    @property
    def hatPhi0(self) -> np.ndarray:
        return np.array([c[0] for c in self.hat_monic])

    @property
    def phi0(self) -> np.ndarray:
        """``phi_k(0) = chi_k Phi_k(0)`` with the principal root for chi_k."""
        return np.array([self.chi(k) * self.monic[k][0] for k in range(self.nmax + 1)])

    @property
    def hatphi0(self) -> np.ndarray:
        return np.array([self.chi(k) * self.hat_monic[k][0] for k in range(self.nmax + 1)])

    def Phi(self, k: int, z):
        return np.polynomial.polynomial.polyval(z, self.monic[k])

    def hatPhi(self, k: int, z):
        return np.polynomial.polynomial.polyval(z, self.hat_monic[k])

    def dPhi(self, k: int, z, order: int = 1):
        return np.polynomial.polynomial.polyval(z, np.polynomial.polynomial.polyder(self.monic[k], order))

    def dhatPhi(self, k: int, z, order: int = 1):
        return np.polynomial.polynomial.polyval(z, np.polynomial.polynomial.polyder(self.hat_monic[k], order))

    def logdet(self, n: int) -> LogScaled:
        """``D_n = prod_{k<n} h_k`` with the phase summed term by term."""
        if n > self.nmax + 1:
            raise ValueError(f"recursion only reaches D_{self.nmax + 1}")
        out = LogScaled.one()
        for k in range(n):
            out = out * LogScaled.from_complex(self.h[k])
        return out

    def rr3_residual(self, k: int) -> float:
        """``chi_{k+1}^2 - chi_k^2 - phi_{k+1}(0) hat-phi_{k+1}(0)``, relative to chi_{k+1}^2."""
        cs = self.chi_sq
        prod = cs[k + 1] * self.monic[k + 1][0] * self.hat_monic[k + 1][0]
        return float(abs(cs[k + 1] - cs[k] - prod) / max(abs(cs[k + 1]), abs(cs[k])))


def szego_recursion(c: Coefficients, nmax: int, breakdown_floor: float = BREAKDOWN_FLOOR) -> OPData:
    """Run the coupled recurrences up to degree ``nmax``.

    With ``<P, z^j> = sum_i p_i f_{j-i}`` the step is
    ``Phi_{k+1} = z Phi_k + r hat-Phi_k^*`` and
    ``hat-Phi_{k+1} = z hat-Phi_k + r^ Phi_k^*`` where ``P^*(z) = z^k P(1/z)``,
    ``r = -<z Phi_k, 1>/h_k``, ``r^ = -(sum_i hat-c_i f_{1+i})/h_k`` and
    ``h_{k+1} = h_k (1 - r r^)``.
    """
    if nmax > c.jmax:
        raise ValueError(f"need Fourier coefficients up to |j| = {nmax}")
    f = c.values
    off = c.jmax
    scale = float(np.max(np.abs(f[off - nmax: off + nmax + 1]))) if nmax else abs(f[off])
    h = np.empty(nmax + 1, dtype=complex)
    h[0] = f[off]
    if abs(h[0]) < breakdown_floor * max(scale, 1e-300):
        raise RecursionBreakdown(0, abs(h[0]))
    monic = [np.array([1.0 + 0j])]
    hat = [np.array([1.0 + 0j])]
    for k in range(nmax):
        p, q = monic[k], hat[k]
        i = np.arange(k + 1)
        r = -np.dot(p, f[off - 1 - i]) / h[k]
        rh = -np.dot(q, f[off + 1 + i]) / h[k]
        step = 1.0 - r * rh
        if abs(step) < breakdown_floor:
            raise RecursionBreakdown(k + 1, abs(step))
        new_p = np.zeros(k + 2, dtype=complex)
        new_q = np.zeros(k + 2, dtype=complex)
        new_p[1:] = p
        new_p[:k + 1] += r * q[::-1]
        new_q[1:] = q
        new_q[:k + 1] += rh * p[::-1]
        monic.append(new_p)
        hat.append(new_q)
        h[k + 1] = h[k] * step
    return OPData(nmax, h, monic, hat)


def cd_residual(op: OPData, n: int, z: complex, a: complex) -> float:
    """Largest relative residual of the two Christoffel-Darboux identities.

    Products ``phi_k hat-phi_k = chi_k^2 Phi_k hat-Phi_k`` do not depend on
    the sign chosen for chi_k, so everything is assembled from monic data.
    """
    if n < 1 or n > op.nmax:
        raise ValueError("need 1 <= n <= nmax")
    cs = op.chi_sq
    # first identity, general a
    lhs1 = (1 - z / a) * sum(cs[k] * op.hatPhi(k, 1 / a) * op.Phi(k, z) for k in range(n))
    rhs1 = cs[n] * (a ** (-n) * op.Phi(n, a) * z ** n * op.hatPhi(n, 1 / z)
                    - op.hatPhi(n, 1 / a) * op.Phi(n, z))
    r1 = abs(lhs1 - rhs1) / max(abs(lhs1), abs(rhs1), 1e-300)
    if abs(1 - z / a) < 1e-8:
        r1 = 0.0  # the general form degenerates to 0 = 0; the confluent form covers it
    # confluent form a -> z
    lhs2 = sum(cs[k] * op.hatPhi(k, 1 / z) * op.Phi(k, z) for k in range(n))
    ph, hp = op.Phi(n, z), op.hatPhi(n, 1 / z)
    d_hat_inv = -op.dhatPhi(n, 1 / z) / z ** 2  # d/dz hat-Phi_n(1/z)
    rhs2 = cs[n] * (-n * ph * hp + z * (hp * op.dPhi(n, z) - ph * d_hat_inv))
    r2 = abs(lhs2 - rhs2) / max(abs(lhs2), abs(rhs2), 1e-300)
    return float(max(r1, r2))


def ef1_brute_force(c: Coefficients, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Monic ``Phi_k`` and ``hat-Phi_k`` from the bordered-determinant formulas.

    Expanding the determinant along its last row (resp. column) gives the
    coefficient of ``z^i`` as a signed minor divided by ``D_k``.
    """
    t = toeplitz_matrix(c, k + 1)  # t[s, u] = f_{s-u}
    dk = np.linalg.det(t[:k, :k]) if k else 1.0
    phi = np.empty(k + 1, dtype=complex)
    hat = np.empty(k + 1, dtype=complex)
    top = t[:k, :]
    left = t[:, :k]
    for i in range(k + 1):
        minor = np.delete(top, i, axis=1)
        phi[i] = (-1) ** (k + i) * (np.linalg.det(minor) if k else 1.0) / dk
        minor = np.delete(left, i, axis=0)
        hat[i] = (-1) ** (k + i) * (np.linalg.det(minor) if k else 1.0) / dk
    return phi, hat
