"""Fisher-Hartwig symbols on the unit circle and Hankel weights on [-1, 1].

A symbol is ``exp(V(z)) * z**sum(beta) * prod_j |z - z_j|**(2 alpha_j) g_j(z) z_j**(-beta_j)``
with ``z = exp(i theta)`` and ``g_j = exp(+i pi beta_j)`` for ``0 <= theta < theta_j``,
``exp(-i pi beta_j)`` for ``theta_j <= theta < 2 pi``.  A weight is
``exp(U(x)) * prod_j |x - lambda_j|**(2 alpha_j) omega_j(x)`` with
``omega_j = exp(+i pi beta_j)`` for ``x <= lambda_j`` and ``exp(-i pi beta_j)`` above.
"""

from __future__ import annotations

import ast
import cmath
import math
import operator
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from numpy.polynomial import chebyshev

from .quadrature import QuadratureError, panel_integrate

TWO_PI = 2.0 * math.pi
DEFAULT_TOL = 1e-13


class SingularPointError(ValueError):
    """Symbol or weight evaluated where it is unbounded."""


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmoothPart:
    """Trigonometric polynomial ``V(z) = sum_{|k| <= K} V_k z**k``."""

    coefficients: tuple[complex, ...] = (0j,)

    def __post_init__(self):
        c = tuple(complex(v) for v in self.coefficients)
        if len(c) % 2 == 0:
            raise ValueError("coefficient tuple must have odd length 2K+1")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def from_mapping(cls, coeffs: Mapping[int, complex]) -> "SmoothPart":
        if not coeffs:
            return cls()
        big_k = max(abs(int(k)) for k in coeffs)
        arr = [0j] * (2 * big_k + 1)
        for k, v in coeffs.items():
            arr[int(k) + big_k] += complex(v)
        return cls(tuple(arr))

    @classmethod
    def zero(cls) -> "SmoothPart":
        return cls()

    @property
    def K(self) -> int:
        return (len(self.coefficients) - 1) // 2

    def coeff(self, k: int) -> complex:
        if abs(k) > self.K:
            return 0j
        return self.coefficients[k + self.K]

    @property
    def is_even(self) -> bool:
        return all(self.coeff(k) == self.coeff(-k) for k in range(1, self.K + 1))

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coefficients)

    def __call__(self, theta):
        """``V(exp(i theta))``, vectorized over ``theta``."""
        theta = np.asarray(theta, dtype=float)
        out = np.full(theta.shape, self.coeff(0), dtype=complex)
        for k in range(1, self.K + 1):
            out = out + self.coeff(k) * np.exp(1j * k * theta) + self.coeff(-k) * np.exp(-1j * k * theta)
        return out

    def at(self, z: complex) -> complex:
        """``V(z)`` at an arbitrary nonzero complex point."""
        return sum(self.coeff(k) * z ** k for k in range(-self.K, self.K + 1))

    def with_constant(self, v0: complex) -> "SmoothPart":
        arr = list(self.coefficients)
        arr[self.K] = complex(v0)
        return SmoothPart(tuple(arr))


@dataclass(frozen=True)
class Singularity:
    theta: float
    alpha: complex = 0j
    beta: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if not 0.0 <= self.theta < TWO_PI:
            raise ValueError(f"singularity angle {self.theta} outside [0, 2 pi)")
        if not self.alpha.real > -0.5:
            raise ValueError(f"Re alpha must exceed -1/2 (got {self.alpha})")


@dataclass(frozen=True)
class FHSymbol:
    """Smooth part plus singularities ordered by angle; ``theta = 0`` is always present."""

    smooth: SmoothPart = field(default_factory=SmoothPart)
    singularities: tuple[Singularity, ...] = ()

    def __post_init__(self):
        sings = sorted(self.singularities, key=lambda s: s.theta)
        if not sings or sings[0].theta != 0.0:
            sings.insert(0, Singularity(0.0))
        for a, b in zip(sings, sings[1:]):
            if not b.theta > a.theta:
                raise ValueError("singularity angles must be distinct")
        object.__setattr__(self, "singularities", tuple(sings))

    @property
    def m(self) -> int:
        return len(self.singularities) - 1

    @property
    def thetas(self) -> np.ndarray:
        return np.array([s.theta for s in self.singularities])

    @property
    def alphas(self) -> np.ndarray:
        return np.array([s.alpha for s in self.singularities])

    @property
    def betas(self) -> np.ndarray:
        return np.array([s.beta for s in self.singularities])

    @property
    def is_pure_smooth(self) -> bool:
        return all(s.alpha == 0 and s.beta == 0 for s in self.singularities)

    def is_even(self, tol: float = 1e-12) -> bool:
        """``f(e^{i theta}) == f(e^{-i theta})`` structurally."""
        if not self.smooth.is_even:
            return False
        sings = {round(s.theta, 12): s for s in self.singularities}
        for s in self.singularities:
            if s.theta == 0.0 or abs(s.theta - math.pi) < tol:
                if abs(s.beta) > tol:
                    return False
                continue
            mirror = sings.get(round(TWO_PI - s.theta, 12))
            if mirror is None:
                return False
            if abs(mirror.alpha - s.alpha) > tol or abs(mirror.beta + s.beta) > tol:
                return False
        return True

    def with_betas(self, betas: Sequence[complex]) -> "FHSymbol":
        sings = tuple(Singularity(s.theta, s.alpha, b) for s, b in zip(self.singularities, betas))
        return FHSymbol(self.smooth, sings)

    def with_smooth(self, smooth: SmoothPart) -> "FHSymbol":
        return FHSymbol(smooth, self.singularities)


@dataclass(frozen=True)
class Node:
    lam: float
    alpha: complex = 0j
    beta: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "lam", float(self.lam))
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if not -1.0 < self.lam < 1.0:
            raise ValueError("interior nodes must lie in (-1, 1)")
        if not self.alpha.real > -0.5:
            raise ValueError("Re alpha must exceed -1/2")
        if not -0.5 < self.beta.real <= 0.5:
            raise ValueError("Re beta must lie in (-1/2, 1/2]")


@dataclass(frozen=True)
class HankelWeight:
    """Weight on [-1, 1]; ``smooth`` holds the even V with ``V(e^{i theta}) = U(cos theta)``."""

    smooth: SmoothPart = field(default_factory=SmoothPart)
    nodes: tuple[Node, ...] = ()
    alpha_plus: complex = 0j   # exponent at x = +1
    alpha_minus: complex = 0j  # exponent at x = -1

    def __post_init__(self):
        if not self.smooth.is_even:
            raise ValueError("the smooth part of a weight must be even in theta")
        nodes = tuple(sorted(self.nodes, key=lambda nd: -nd.lam))
        for a, b in zip(nodes, nodes[1:]):
            if not a.lam > b.lam:
                raise ValueError("node positions must be distinct")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "alpha_plus", complex(self.alpha_plus))
        object.__setattr__(self, "alpha_minus", complex(self.alpha_minus))
        for a in (self.alpha_plus, self.alpha_minus):
            if not a.real > -0.5:
                raise ValueError("endpoint exponents need Re alpha > -1/2")

    @property
    def r(self) -> int:
        return len(self.nodes)

    @property
    def all_lambdas(self) -> np.ndarray:
        """``1 = lambda_0 > lambda_1 > ... > lambda_{r+1} = -1``."""
        return np.array([1.0] + [nd.lam for nd in self.nodes] + [-1.0])

    @property
    def all_alphas(self) -> np.ndarray:
        return np.array([self.alpha_plus] + [nd.alpha for nd in self.nodes] + [self.alpha_minus])

    @property
    def all_betas(self) -> np.ndarray:
        return np.array([0j] + [nd.beta for nd in self.nodes] + [0j])

    def U(self, x):
        """``U(x) = V_0 + 2 sum_k V_k T_k(x)``."""
        v = self.smooth
        c = [v.coeff(0)] + [2 * v.coeff(k) for k in range(1, v.K + 1)]
        return chebyshev.chebval(np.asarray(x, dtype=float), np.array(c, dtype=complex))


# ---------------------------------------------------------------------------
# Pointwise evaluation
# ---------------------------------------------------------------------------

def _log_abs_2sin_half(delta):
    return np.log(np.abs(2.0 * np.sin(0.5 * np.asarray(delta))))


def _alpha_term(alpha: complex, delta):
    if alpha == 0:
        return np.zeros(np.shape(delta), dtype=complex)
    with np.errstate(divide="ignore"):
        return 2.0 * alpha * _log_abs_2sin_half(delta)


def _symbol_log(f: FHSymbol, theta, deltas, panel):
    """log f at points of one angular panel.

    ``deltas[k]`` is ``theta - theta_k`` (any 2 pi representative, computed
    accurately near the panel ends) and ``panel`` is the index p with
    ``theta_p <= theta < theta_{p+1}``, which fixes the jump factors.
    """
    sb = complex(np.sum(f.betas))
    out = f.smooth(theta) + 1j * sb * theta
    for k, s in enumerate(f.singularities):
        jump = 1j * math.pi * s.beta if k > panel else -1j * math.pi * s.beta
        out = out + _alpha_term(s.alpha, deltas[k]) + (jump - 1j * s.theta * s.beta)
    return out


def eval_symbol(f: FHSymbol, theta):
    """``f(e^{i theta})``; theta is reduced to [0, 2 pi)."""
    scalar = np.ndim(theta) == 0
    th = np.mod(np.atleast_1d(np.asarray(theta, dtype=float)), TWO_PI)
    out = np.empty(th.shape, dtype=complex)
    thetas = f.thetas
    panels = np.searchsorted(thetas, th, side="right") - 1
    zero = np.zeros(th.shape, dtype=bool)
    for k, s in enumerate(f.singularities):
        hit = th == s.theta
        if np.any(hit) and s.alpha.real < 0:
            raise SingularPointError(f"symbol is unbounded at theta = {s.theta}")
        if s.alpha != 0:
            zero |= hit
    for p in np.unique(panels):
        sel = panels == p
        deltas = [th[sel] - t for t in thetas]
        with np.errstate(divide="ignore", invalid="ignore"):
            out[sel] = np.exp(_symbol_log(f, th[sel], deltas, int(p)))
    out[zero] = 0.0  # root factors with Re alpha >= 0 vanish at their own point
    return complex(out[0]) if scalar else out


def eval_weight(w: HankelWeight, x):
    """``w(x)`` on [-1, 1]."""
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    lams = w.all_lambdas
    alphas = w.all_alphas
    betas = w.all_betas
    logw = w.U(xs).astype(complex)
    zero = np.zeros(xs.shape, dtype=bool)
    for lam, a, b in zip(lams, alphas, betas):
        if a != 0:
            d = np.abs(xs - lam)
            if np.any(d == 0) and a.real < 0:
                raise SingularPointError(f"weight is unbounded at x = {lam}")
            zero |= d == 0
            with np.errstate(divide="ignore", invalid="ignore"):
                logw = logw + 2 * a * np.log(d)
        if b != 0:
            logw = logw + np.where(xs <= lam, 1j * math.pi * b, -1j * math.pi * b)
    with np.errstate(invalid="ignore"):
        out = np.exp(logw)
    out[zero] = 0.0
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# Wiener-Hopf data
# ---------------------------------------------------------------------------

def wiener_hopf(v: SmoothPart) -> tuple[SmoothPart, complex, SmoothPart]:
    """Split V into its positive-frequency part, V_0 and negative-frequency part.

    ``b_+(z) = exp(sum_{k>0} V_k z^k)`` and ``b_-(z) = exp(sum_{k<0} V_k z^k)``
    are represented by the returned truncated series.
    """
    plus = SmoothPart.from_mapping({k: v.coeff(k) for k in range(1, v.K + 1) if v.coeff(k) != 0})
    minus = SmoothPart.from_mapping({-k: v.coeff(-k) for k in range(1, v.K + 1) if v.coeff(-k) != 0})
    return plus, v.coeff(0), minus


def log_b_plus(v: SmoothPart, z: complex) -> complex:
    """``sum_{k>=1} V_k z^k``, the exponent of ``b_+(z)``."""
    return sum(v.coeff(k) * z ** k for k in range(1, v.K + 1))


def log_b_minus(v: SmoothPart, z: complex) -> complex:
    """``sum_{k>=1} V_{-k} z^{-k}``, the exponent of ``b_-(z)``."""
    return sum(v.coeff(-k) * z ** (-k) for k in range(1, v.K + 1))


# ---------------------------------------------------------------------------
# Quadrature: Fourier coefficients and moments
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Coefficients:
    """Two-sided sequence ``c_j`` for ``|j| <= jmax``."""

    values: np.ndarray
    jmax: int

    def __getitem__(self, j: int) -> complex:
        if abs(j) > self.jmax:
            raise IndexError(f"coefficient {j} outside |j| <= {self.jmax}")
        return complex(self.values[j + self.jmax])

    def get(self, j: int, default: complex = 0j) -> complex:
        return self[j] if abs(j) <= self.jmax else default

    def as_dict(self) -> dict[int, complex]:
        return {j: self[j] for j in range(-self.jmax, self.jmax + 1)}

    @classmethod
    def from_function(cls, fn, jmax: int) -> "Coefficients":
        return cls(np.array([complex(fn(j)) for j in range(-jmax, jmax + 1)]), jmax)


def _split(lo: float, hi: float, pieces: int):
    edges = np.linspace(lo, hi, pieces + 1)
    edges[0], edges[-1] = lo, hi
    return list(zip(edges[:-1], edges[1:]))


def _angular_integral(f: FHSymbol, lo: float, hi: float, kernel, *, subdivide: int = 1,
                      tol: float = DEFAULT_TOL, max_level: int = 12) -> np.ndarray:
    """``int_lo^hi f(e^{i theta}) kernel(theta) d theta`` for 0 <= lo < hi <= 2 pi.

    ``kernel`` maps a 1-d array of angles to an array whose first axis runs
    over the angles.  Panels break at every singularity inside [lo, hi].
    """
    thetas = f.thetas
    breaks = sorted({lo, hi} | {float(t) for t in thetas if lo < t < hi})
    total = None
    for a0, b0 in zip(breaks[:-1], breaks[1:]):
        panel = int(np.searchsorted(thetas, 0.5 * (a0 + b0), side="right") - 1)
        for a, b in _split(a0, b0, subdivide):
            # offsets of both sub-panel ends from each theta_k, reduced mod 2 pi so
            # that a singularity sitting on an end gives an exactly zero offset
            offs = [(math.remainder(a - t, TWO_PI), math.remainder(b - t, TWO_PI)) for t in thetas]

            def integrand(x, dl, dr, offs=offs, panel=panel):
                left = dl <= dr
                deltas = [np.where(left, oa + dl, ob - dr) for oa, ob in offs]
                vals = np.exp(_symbol_log(f, x, deltas, panel))
                kv = kernel(x)
                return vals.reshape((-1,) + (1,) * (kv.ndim - 1)) * kv

            try:
                part = panel_integrate(integrand, a, b, tol=tol, max_level=max_level)
            except QuadratureError as exc:
                raise QuadratureError(
                    "symbol quadrature did not converge; exponents with Re alpha near -1/2 "
                    "are at the limit of double precision", interval=exc.interval,
                    level=exc.level, last_change=exc.last_change) from exc
            total = part if total is None else total + part
    return total


def fourier_coeffs(f: FHSymbol, jmax: int, *, subdivide: int = 1, tol: float = DEFAULT_TOL) -> Coefficients:
    """``f_j = (1/2 pi) int_0^{2 pi} f(e^{i theta}) e^{-i j theta} d theta`` for ``|j| <= jmax``."""
    js = np.arange(-jmax, jmax + 1)

    def kernel(x):
        return np.exp(-1j * np.outer(x, js))

    vals = _angular_integral(f, 0.0, TWO_PI, kernel, subdivide=subdivide, tol=tol) / TWO_PI
    return Coefficients(np.asarray(vals, dtype=complex), jmax)


HALF_RANGE_WEIGHTS = {
    "one": lambda x: np.ones_like(x),
    "sin2": lambda x: np.sin(x) ** 2,
    "one_plus_cos": lambda x: 1.0 + np.cos(x),
    "one_minus_cos": lambda x: 1.0 - np.cos(x),
}


def half_range_moments(f: FHSymbol, kmax: int, weight: str = "one", *, subdivide: int = 1,
                       tol: float = DEFAULT_TOL) -> np.ndarray:
    """``int_0^pi cos(theta)^k f(e^{i theta}) W(theta) d theta`` for ``k = 0..kmax``.

    With ``x = cos theta`` these are moments of ``f`` against
    ``1/sqrt(1-x^2)``, ``sqrt(1-x^2)``, ``sqrt((1+x)/(1-x))`` or
    ``sqrt((1-x)/(1+x))`` for the four weight names.
    """
    wfn = HALF_RANGE_WEIGHTS[weight]
    ks = np.arange(kmax + 1)

    def kernel(x):
        c = np.cos(x)
        return (c[:, None] ** ks[None, :]) * wfn(x)[:, None]

    return np.asarray(_angular_integral(f, 0.0, math.pi, kernel, subdivide=subdivide, tol=tol), dtype=complex)


def hankel_moments(w: HankelWeight, kmax: int, *, subdivide: int = 1, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``m_k = int_{-1}^1 x^k w(x) dx`` for ``k = 0..kmax``."""
    lams = w.all_lambdas[::-1]  # ascending: -1, ..., 1
    alphas = w.all_alphas[::-1]
    betas = w.all_betas[::-1]
    ks = np.arange(kmax + 1)
    total = np.zeros(kmax + 1, dtype=complex)
    for p in range(len(lams) - 1):
        for a, b in _split(float(lams[p]), float(lams[p + 1]), subdivide):

            def integrand(x, dl, dr, a=a, b=b, p=p):
                left = dl <= dr
                logw = w.U(x).astype(complex)
                for k, (lam, al, be) in enumerate(zip(lams, alphas, betas)):
                    if al != 0:
                        d = np.where(left, (a - lam) + dl, (b - lam) - dr)
                        logw = logw + 2 * al * np.log(np.abs(d))
                    if be != 0:
                        # points of panel p lie strictly between lams[p] and lams[p+1]
                        logw = logw + (1j * math.pi * be if k > p else -1j * math.pi * be)
                return np.exp(logw)[:, None] * (x[:, None] ** ks[None, :])

            try:
                total += panel_integrate(integrand, a, b, tol=tol, max_level=12)
            except QuadratureError as exc:
                raise QuadratureError("weight quadrature did not converge", interval=exc.interval,
                                      level=exc.level, last_change=exc.last_change) from exc
    return total


# ---------------------------------------------------------------------------
# Weight -> even circle symbol
# ---------------------------------------------------------------------------

def circle_symbol_of_weight(w: HankelWeight) -> tuple[FHSymbol, complex]:
    """Even symbol ``f`` with ``f(e^{i theta}) = w(cos theta) |sin theta|`` and the constant C.

    ``f = C * f_tilde`` where ``f_tilde`` carries the smooth part V and the
    mirrored singularities; ``log C`` is absorbed into ``V_0`` of the returned
    symbol so that it evaluates to ``w |sin|`` exactly.
    """
    big_a = complex(np.sum(w.all_alphas))
    phase = 2j * sum(nd.beta * math.asin(nd.lam) for nd in w.nodes)
    c_const = cmath.exp(-(2 * big_a + 1) * math.log(2.0) + phase)
    sings = [Singularity(0.0, 2 * w.alpha_plus + 0.5, 0)]
    mirrored = []
    for nd in w.nodes:
        th = math.acos(nd.lam)
        sings.append(Singularity(th, nd.alpha, -nd.beta))
        mirrored.append(Singularity(TWO_PI - th, nd.alpha, nd.beta))
    sings.append(Singularity(math.pi, 2 * w.alpha_minus + 0.5, 0))
    sings.extend(mirrored)
    smooth = w.smooth.with_constant(w.smooth.coeff(0) + cmath.log(c_const))
    return FHSymbol(smooth, tuple(sings)), c_const


# ---------------------------------------------------------------------------
# Standard examples
# ---------------------------------------------------------------------------

def basor_tracy_symbol() -> FHSymbol:
    """``-i`` on the upper half circle, ``+i`` on the lower half."""
    return FHSymbol(SmoothPart(), (Singularity(0.0, 0, 0.5), Singularity(math.pi, 0, -0.5)))


def basor_tracy_coefficients(jmax: int) -> Coefficients:
    """Exact Fourier coefficients of the symbol above: ``-2/(pi j)`` for odd j."""
    return Coefficients.from_function(lambda j: -2.0 / (math.pi * j) if j % 2 else 0.0, jmax)


def pure_root_coefficients(alpha: float, jmax: int) -> Coefficients:
    """Exact coefficients of ``|z - 1|^{2 alpha}`` (real alpha > -1/2).

    ``f_j = (-1)^j Gamma(1+2a) / (Gamma(1+a+j) Gamma(1+a-j))``, generated by
    the ratio ``f_{j+1}/f_j = (j - a)/(1 + a + j)`` to avoid Gamma overflow.
    """
    f0 = math.gamma(1 + 2 * alpha) / math.gamma(1 + alpha) ** 2
    j = np.arange(jmax)
    pos = f0 * np.concatenate([[1.0], np.cumprod((j - alpha) / (1 + alpha + j))])
    return Coefficients.from_function(lambda k: pos[abs(k)], jmax)


# ---------------------------------------------------------------------------
# Description files
# ---------------------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_NAMES = {"pi": math.pi, "e": math.e}
_FUNCS = {"sqrt": math.sqrt, "cos": math.cos, "sin": math.sin, "acos": math.acos, "asin": math.asin}


def _eval_number(text: str) -> float:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(f"unsupported expression: {text!r}")

    return ev(ast.parse(text.strip(), mode="eval"))


def parse_value(text: str) -> complex:
    """``"re"`` or ``"re, im"``; each part may use pi and simple arithmetic."""
    parts = [p for p in text.split(",")]
    if len(parts) == 1:
        return complex(_eval_number(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(_eval_number(parts[0]), _eval_number(parts[1]))
    raise ValueError(f"expected 're' or 're, im', got {text!r}")


def _read_blocks(text: str):
    top: dict[str, str] = {}
    blocks: list[tuple[str, dict[str, str]]] = []
    current = top
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().lower()
            if name not in ("singularity", "node"):
                raise ValueError(f"line {lineno}: unknown section [{name}]")
            current = {}
            blocks.append((name, current))
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        if key in current:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        current[key] = val
    return top, blocks


def _smooth_from_keys(top: Mapping[str, str]) -> dict[int, complex]:
    coeffs = {}
    for key, val in top.items():
        if key.startswith("V."):
            coeffs[int(key[2:])] = parse_value(val)
    return coeffs


def parse_symbol_text(text: str) -> FHSymbol:
    top, blocks = _read_blocks(text)
    unknown = [k for k in top if not k.startswith("V.")]
    if unknown:
        raise ValueError(f"unknown top-level keys for a symbol: {unknown}")
    sings = []
    for name, blk in blocks:
        if name != "singularity":
            raise ValueError("symbol files only accept [singularity] blocks")
        sings.append(Singularity(parse_value(blk["theta"]).real,
                                 parse_value(blk.get("alpha", "0")), parse_value(blk.get("beta", "0"))))
    return FHSymbol(SmoothPart.from_mapping(_smooth_from_keys(top)), tuple(sings))


def parse_weight_text(text: str) -> HankelWeight:
    top, blocks = _read_blocks(text)
    coeffs = _smooth_from_keys(top)
    if any(k < 0 for k in coeffs):
        raise ValueError("weight files list V.k for k >= 0 only (V is even)")
    full = dict(coeffs)
    full.update({-k: v for k, v in coeffs.items() if k > 0})
    unknown = [k for k in top if not k.startswith("V.") and k not in ("alpha_plus", "alpha_minus")]
    if unknown:
        raise ValueError(f"unknown top-level keys for a weight: {unknown}")
    nodes = []
    for name, blk in blocks:
        if name != "node":
            raise ValueError("weight files only accept [node] blocks")
        nodes.append(Node(parse_value(blk["lambda"]).real, parse_value(blk.get("alpha", "0")),
                          parse_value(blk.get("beta", "0"))))
    return HankelWeight(SmoothPart.from_mapping(full), tuple(nodes),
                        parse_value(top.get("alpha_plus", "0")), parse_value(top.get("alpha_minus", "0")))


def load_symbol(path: str | Path) -> FHSymbol:
    return parse_symbol_text(Path(path).read_text())


def load_weight(path: str | Path) -> HankelWeight:
    return parse_weight_text(Path(path).read_text())


def _fmt(z: complex) -> str:
    return f"{z.real!r}, {z.imag!r}"


def format_symbol(f: FHSymbol) -> str:
    lines = [f"V.{k} = {_fmt(f.smooth.coeff(k))}" for k in range(-f.smooth.K, f.smooth.K + 1)
             if f.smooth.coeff(k) != 0]
    for s in f.singularities:
        lines += ["[singularity]", f"theta = {s.theta!r}", f"alpha = {_fmt(s.alpha)}", f"beta = {_fmt(s.beta)}"]
    return "\n".join(lines) + "\n"


def format_weight(w: HankelWeight) -> str:
    lines = [f"V.{k} = {_fmt(w.smooth.coeff(k))}" for k in range(0, w.smooth.K + 1) if w.smooth.coeff(k) != 0]
    lines += [f"alpha_plus = {_fmt(w.alpha_plus)}", f"alpha_minus = {_fmt(w.alpha_minus)}"]
    for nd in w.nodes:
        lines += ["[node]", f"lambda = {nd.lam!r}", f"alpha = {_fmt(nd.alpha)}", f"beta = {_fmt(nd.beta)}"]
    return "\n".join(lines) + "\n"


def iter_singular_points(f: FHSymbol) -> Iterable[complex]:
    for s in f.singularities:
        yield cmath.exp(1j * s.theta)
