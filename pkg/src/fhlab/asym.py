"""Closed-form large-n predictors for Toeplitz, Hankel and Toeplitz+Hankel determinants.

Every predictor returns an :class:`AsymptoticResult` whose ``value`` is the
product of its named ``terms``; all arithmetic happens on logarithms so the
phases of oscillating factors stay unwrapped and nothing overflows.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exactdet import TPHVariant
from .fhrep import BetaVector, FHRep, is_degenerate, minimize_reps
from .logscaled import LogScaled, lsum
from .specialfn import PoleError, ln_barnes_g, ln_gamma, rgamma
from .symbol import FHSymbol, HankelWeight, Singularity, SmoothPart, log_b_minus, log_b_plus

LN2 = math.log(2.0)
LN_PI = math.log(math.pi)
DN1_EXACT_LIMIT = 200
SEMINORM_TOL = 1e-12


class HypothesisError(ValueError):
    """Input outside the parameter region where a predictor applies."""


class DegenerateRepresentationError(HypothesisError):
    """A Barnes G factor of the leading term vanishes."""


@dataclass(frozen=True)
class AsymptoticResult:
    """Predicted value with its factorisation into named pieces.

    ``delta_scale`` is ``max_{j,k} n^{2 Re(beta_j - beta_k - 1)}`` over the
    singular points (zero when there are none) and ``error_order`` names
    the expected size of the relative correction; neither carries a constant.
    """

    value: LogScaled
    terms: tuple[tuple[str, LogScaled], ...]
    n: int
    delta_scale: float = 0.0
    error_order: str = ""
    components: tuple["AsymptoticResult", ...] = field(default=(), repr=False)

    def term(self, name: str) -> LogScaled:
        for k, v in self.terms:
            if k == name:
                return v
        raise KeyError(name)

    def to_complex(self) -> complex:
        return self.value.to_complex()


def _assemble(logs: Sequence[tuple[str, complex]], n: int, delta: float, order: str) -> AsymptoticResult:
    terms = tuple((name, LogScaled.from_log(x)) for name, x in logs)
    total = sum((x for _, x in logs), 0j)
    return AsymptoticResult(LogScaled.from_log(total), terms, n, delta, order)


def _lnG(z: complex) -> complex:
    try:
        return ln_barnes_g(z)
    except PoleError as exc:
        raise DegenerateRepresentationError(str(exc)) from None


def _barnes_ratio(alpha: complex, beta: complex) -> complex:
    """``log[G(1+a+b) G(1+a-b) / G(1+2a)]``."""
    return _lnG(1 + alpha + beta) + _lnG(1 + alpha - beta) - _lnG(1 + 2 * alpha)


def _check_n(n: int) -> int:
    n = int(n)
    if n < 1:
        raise ValueError("n must be a positive integer")
    return n


def _szego_exponent(v: SmoothPart) -> complex:
    return sum(k * v.coeff(k) * v.coeff(-k) for k in range(1, v.K + 1))


def singular_indices(f: FHSymbol) -> list[int]:
    """Indices of genuine singular points (``theta = 0`` only if nontrivial)."""
    return [j for j, s in enumerate(f.singularities) if s.alpha != 0 or s.beta != 0]


def delta_scale(betas: Sequence[complex], n: int) -> float:
    """``max_{j,k} n^{2 Re(beta_j - beta_k - 1)}``."""
    if len(betas) == 0:
        return 0.0
    re = np.array([complex(b).real for b in betas])
    return float(n ** (2 * (re.max() - re.min() - 1)))


# ---------------------------------------------------------------------------
# Toeplitz: smooth and Fisher-Hartwig symbols
# ---------------------------------------------------------------------------

def szego_asym(v: SmoothPart, n: int) -> AsymptoticResult:
    """``exp(n V_0 + sum_{k>=1} k V_k V_{-k})``."""
    n = _check_n(n)
    return _assemble([("szego", n * v.coeff(0) + _szego_exponent(v))], n, 0.0,
                     "faster than any power for analytic V")


def _asd_logs(f: FHSymbol, n: int) -> list[tuple[str, complex]]:
    """Logarithms of the factors in the Fisher-Hartwig product formula."""
    v = f.smooth
    sings = f.singularities
    zs = [cmath.exp(1j * s.theta) for s in sings]
    wh = 0j
    sigma = 0j
    barnes = 0j
    for s, z in zip(sings, zs):
        a, b = s.alpha, s.beta
        if a == 0 and b == 0:
            continue
        wh += (-a + b) * log_b_plus(v, z) + (-a - b) * log_b_minus(v, z)
        sigma += a * a - b * b
        barnes += _barnes_ratio(a, b)
    pair = 0j
    osc = 0j
    for j in range(len(sings)):
        for k in range(j + 1, len(sings)):
            sj, sk = sings[j], sings[k]
            pair += 2 * (sj.beta * sk.beta - sj.alpha * sk.alpha) * math.log(abs(zs[j] - zs[k]))
            osc += 1j * (sk.theta - sj.theta - math.pi) * (sj.alpha * sk.beta - sk.alpha * sj.beta)
    return [
        ("szego", n * v.coeff(0) + _szego_exponent(v)),
        ("wiener_hopf", wh),
        ("power", sigma * math.log(n)),
        ("pairwise", pair),
        ("oscillatory", osc),
        ("barnes", barnes),
    ]


def _check_fh(f: FHSymbol) -> None:
    idx = singular_indices(f)
    for a in idx:
        for b in idx:
            d = abs(f.singularities[a].beta.real - f.singularities[b].beta.real)
            if d >= 1 - SEMINORM_TOL:
                raise HypothesisError(
                    f"|Re beta_{a} - Re beta_{b}| = {d:.6g} is not below 1; "
                    "use basor_tracy_asym for this symbol")
    for j in idx:
        s = f.singularities[j]
        rep = FHRep(BetaVector((s.beta,)), (0,))
        if is_degenerate(rep, [s.alpha]):
            raise DegenerateRepresentationError(
                f"alpha_{j} +/- beta_{j} is a negative integer at singularity {j}")


def ehrhardt_asym(f: FHSymbol, n: int) -> AsymptoticResult:
    """Fisher-Hartwig product formula for ``D_n(f)`` when ``|||beta||| < 1``.

    Branches: ``b_+(z_j)^{-a+b} = exp((-a+b) sum V_k z_j^k)`` and likewise
    for ``b_-``; the pair factor ``(z_k / (z_j e^{i pi}))^{a_j b_k - a_k b_j}``
    is ``exp(i (theta_k - theta_j - pi)(a_j b_k - a_k b_j))``; the rest are
    principal.
    """
    n = _check_n(n)
    _check_fh(f)
    idx = singular_indices(f)
    betas = [f.singularities[j].beta for j in idx]
    order = "O(log n / n)" if len(idx) <= 1 or all(b == 0 for b in betas) else "delta-controlled"
    return _assemble(_asd_logs(f, n), n, delta_scale(betas, n), order)


def _shifted_symbol(f: FHSymbol, idx: Sequence[int], shifts: Sequence[int]) -> FHSymbol:
    betas = list(f.betas)
    for j, k in zip(idx, shifts):
        betas[j] = betas[j] + k
    return f.with_betas(betas)


def basor_tracy_asym(f: FHSymbol, n: int) -> AsymptoticResult:
    """Sum over the minimising FH-representations of the product formula.

    ``f = prod_j z_j^{n_j} f(z; n_0, ..., n_m)``, so each representation
    contributes ``exp(i n sum_j n_j theta_j)`` times the product formula of
    the shifted symbol.  Exact cancellation between contributions (for
    example odd n for the half-circle jump symbol) gives an exact zero.
    """
    n = _check_n(n)
    idx = singular_indices(f)
    if not idx:
        return ehrhardt_asym(f, n)
    alphas = [f.singularities[j].alpha for j in idx]
    thetas = [f.singularities[j].theta for j in idx]
    reps = minimize_reps(BetaVector(tuple(f.singularities[j].beta for j in idx)))
    for rep in reps:
        if is_degenerate(rep, alphas):
            raise DegenerateRepresentationError(
                f"minimising representation with shifts {rep.shifts} is degenerate")
    components = []
    for rep in reps:
        g = _shifted_symbol(f, idx, rep.shifts)
        logs = _asd_logs(g, n)
        logs.append(("representation", 1j * n * sum(k * t for k, t in zip(rep.shifts, thetas))))
        components.append(_assemble(logs, n, delta_scale(rep.betas, n), ""))
    if len(components) == 1:
        c = components[0]
        return AsymptoticResult(c.value, c.terms, n, c.delta_scale, "delta-controlled", tuple(components))
    total = lsum([c.value for c in components])
    tilde = _tilde_betas(reps[0])
    terms = tuple((f"representation{i}", c.value) for i, c in enumerate(components))
    if total.is_zero:
        terms = (("cancellation", LogScaled.zero()),)
    return AsymptoticResult(total, terms, n, delta_scale(tilde, n), "delta-controlled", tuple(components))


def _tilde_betas(rep: FHRep) -> list[complex]:
    """Subtract one from every beta with maximal real part."""
    b = list(rep.betas)
    top = max(x.real for x in b)
    return [x - 1 if abs(x.real - top) < 1e-9 else x for x in b]


def bt1_asym(f: FHSymbol, j0: int, sign: int, n: int) -> AsymptoticResult:
    """Prediction for ``D_n(f^+)`` (``sign=+1``) or ``D_n(f^-)`` (``sign=-1``).

    ``f^{+/-}`` is ``f`` with ``beta_{j0}`` replaced by ``beta_{j0} +/- 1``.
    The sum runs over the singular points whose ``Re beta`` is extremal
    (minimal for ``+``, maximal for ``-``).
    """
    n = _check_n(n)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    idx = singular_indices(f)
    if len(idx) < 2:
        raise HypothesisError("at least two singular points are required")
    if j0 not in idx:
        raise HypothesisError(f"index {j0} is not a singular point")
    for j in idx:
        s = f.singularities[j]
        if not -0.5 < s.beta.real <= 0.5:
            raise HypothesisError(f"Re beta_{j} must lie in (-1/2, 1/2]")
        if s.alpha + s.beta == 0 or s.alpha - s.beta == 0:
            raise HypothesisError(f"alpha_{j} +/- beta_{j} vanishes at singularity {j}")
    re = {j: f.singularities[j].beta.real for j in idx}
    ext = min(re.values()) if sign > 0 else max(re.values())
    chosen = [j for j in idx if abs(re[j] - ext) < 1e-12]
    theta0 = f.singularities[j0].theta
    components = []
    for jp in chosen:
        betas = list(f.betas)
        betas[jp] = betas[jp] + sign
        logs = _asd_logs(f.with_betas(betas), n)
        logs.append(("representation", 1j * n * sign * (f.singularities[jp].theta - theta0)))
        components.append(_assemble(logs, n, 0.0, ""))
    total = lsum([c.value for c in components])
    if len(components) == 1:
        c = components[0]
        return AsymptoticResult(c.value, c.terms, n, 0.0, "", tuple(components))
    terms = tuple((f"index{jp}", c.value) for jp, c in zip(chosen, components))
    if total.is_zero:
        terms = (("cancellation", LogScaled.zero()),)
    return AsymptoticResult(total, terms, n, 0.0, "", tuple(components))


# ---------------------------------------------------------------------------
# Orthogonal polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NuFactor:
    """``nu_j`` for each point of a symbol, with the branch ``(z_j/z_p)^a = exp(i a (theta_j - theta_p))``."""

    nu: tuple[complex, ...]

    def __post_init__(self):
        if any(x == 0 for x in self.nu):
            raise ValueError("nu factors never vanish")


def nu_factors(f: FHSymbol) -> NuFactor:
    sings = f.singularities
    out = []
    for j, sj in enumerate(sings):
        before = sum((s.alpha for s in sings[:j]), 0j)
        after = sum((s.alpha for s in sings[j + 1:]), 0j)
        lg = -1j * math.pi * (before - after)
        for p, sp in enumerate(sings):
            if p == j:
                continue
            lg += 1j * sp.alpha * (sj.theta - sp.theta)
            lg += 2 * sp.beta * math.log(abs(cmath.exp(1j * sj.theta) - cmath.exp(1j * sp.theta)))
        out.append(cmath.exp(lg))
    return NuFactor(tuple(out))


@dataclass(frozen=True)
class PolyAsymptotics:
    """Leading behaviour of ``chi_{n-1}^2``, ``phi_n(0)`` and ``hat-phi_n(0)``.

    ``Phi0`` and ``hatPhi0`` are the monic values ``phi_n(0)/chi_n`` and
    ``hat-phi_n(0)/chi_n``; ``phi0``/``hatphi0`` multiply them by the
    principal root of the predicted ``chi_n^2``.  ``*_error`` are the
    orders of the omitted corrections.
    """

    n: int
    chi_sq: complex
    Phi0: complex
    hatPhi0: complex
    chi_sq_next: complex
    delta: float
    chi_sq_error: float
    Phi0_error: float
    hatPhi0_error: float

    @property
    def phi0(self) -> complex:
        return cmath.sqrt(self.chi_sq_next) * self.Phi0

    @property
    def hatphi0(self) -> complex:
        return cmath.sqrt(self.chi_sq_next) * self.hatPhi0


def _check_poly(f: FHSymbol) -> None:
    _check_fh(f)


def _chi_sq_main(f: FHSymbol, n: int, nu: NuFactor) -> complex:
    v = f.smooth
    sings = f.singularities
    zs = [cmath.exp(1j * s.theta) for s in sings]
    sigma = sum((s.alpha ** 2 - s.beta ** 2 for s in sings), 0j)
    acc = 1 - sigma / n
    for j, sj in enumerate(sings):
        for k, sk in enumerate(sings):
            if k == j:
                continue
            g = (cmath.exp(ln_gamma(1 + sj.alpha + sj.beta) + ln_gamma(1 + sk.alpha - sk.beta))
                 * rgamma(sj.alpha - sj.beta) * rgamma(sk.alpha + sk.beta))
            if g == 0:
                continue
            lg = (1j * n * (sj.theta - sk.theta) + 2 * (sk.beta - sj.beta - 1) * math.log(n)
                  + log_b_plus(v, zs[j]) - log_b_minus(v, zs[j])
                  + log_b_minus(v, zs[k]) - log_b_plus(v, zs[k]))
            acc += zs[k] / (zs[j] - zs[k]) * nu.nu[j] / nu.nu[k] * g * cmath.exp(lg)
    return cmath.exp(-v.coeff(0)) * acc


def poly_asym(f: FHSymbol, n: int) -> PolyAsymptotics:
    """Main terms for the orthonormal polynomial data at the origin.

    Terms whose Gamma prefactor has ``1/Gamma(0)`` drop out, which is how
    ``alpha_j = +/- beta_j`` points are handled.
    """
    n = _check_n(n)
    _check_poly(f)
    v = f.smooth
    nu = nu_factors(f)
    idx = singular_indices(f)
    betas = [f.singularities[j].beta for j in idx]
    delta = delta_scale(betas, n)
    ln_n = math.log(n)
    Phi0 = 0j
    hatPhi0 = 0j
    for j, s in enumerate(f.singularities):
        z = cmath.exp(1j * s.theta)
        lb = log_b_plus(v, z) - log_b_minus(v, z)
        g = rgamma(s.alpha - s.beta)
        if g != 0:
            Phi0 += (cmath.exp((-2 * s.beta - 1) * ln_n + 1j * n * s.theta + lb
                               + ln_gamma(1 + s.alpha + s.beta)) * nu.nu[j] * g)
        g = rgamma(s.alpha + s.beta)
        if g != 0:
            hatPhi0 += (cmath.exp((2 * s.beta - 1) * ln_n - 1j * n * s.theta - lb
                                  + ln_gamma(1 + s.alpha - s.beta)) / nu.nu[j] * g)
    re = [b.real for b in betas] or [0.0]
    return PolyAsymptotics(
        n=n,
        chi_sq=_chi_sq_main(f, n, nu),
        Phi0=Phi0,
        hatPhi0=hatPhi0,
        chi_sq_next=_chi_sq_main(f, n + 1, nu),
        delta=delta,
        chi_sq_error=delta ** 2 + delta / n,
        Phi0_error=(delta + 1 / n) * n ** (-2 * min(re)) / n,
        hatPhi0_error=(delta + 1 / n) * n ** (2 * max(re)) / n,
    )


# ---------------------------------------------------------------------------
# Hankel
# ---------------------------------------------------------------------------

def log_dn_one(n: int) -> float:
    """``log D_n(1)`` for the Legendre weight.

    The exact product ``2^{n^2} prod_{k<n} k!^3/(n+k)!`` is used up to
    ``n = 200``; beyond that its large-n form
    ``pi^{n+1/2} G(1/2)^2 / (2^{n(n-1)} n^{1/4})``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0.0
    if n <= DN1_EXACT_LIMIT:
        return n * n * LN2 + math.fsum(3 * math.lgamma(k + 1) - math.lgamma(n + k + 1) for k in range(n))
    return float((n + 0.5) * LN_PI + 2 * ln_barnes_g(0.5).real - n * (n - 1) * LN2 - 0.25 * math.log(n))


def hankel_asym(w: HankelWeight, n: int) -> AsymptoticResult:
    """Large-n form of the Hankel determinant with weight ``w`` on ``[-1, 1]``."""
    n = _check_n(n)
    for j, nd in enumerate(w.nodes, start=1):
        if abs(nd.beta.real - 0.5) < 1e-12:
            raise HypothesisError(
                f"node {j} has Re beta = 1/2; that boundary case needs the multi-representation sum")
        if not -0.5 < nd.beta.real < 0.5:
            raise HypothesisError(f"node {j} needs Re beta in (-1/2, 1/2)")
    v = w.smooth
    lam = w.all_lambdas
    al = w.all_alphas
    be = w.all_betas
    r = w.r
    big_a = complex(np.sum(al))
    a0, ar = al[0], al[r + 1]
    v_plus1 = v.at(1.0)
    v_minus1 = v.at(-1.0)
    szego = ((n + a0 + ar) * v.coeff(0) - a0 * v_plus1 - ar * v_minus1
             + 0.5 * sum(k * v.coeff(k) ** 2 for k in range(1, v.K + 1)))
    wh = 0j
    asin_sum = 0j
    interior_barnes = 0j
    edge = 0j
    for nd in w.nodes:
        z = cmath.exp(1j * math.acos(nd.lam))
        wh += (-nd.alpha - nd.beta) * log_b_plus(v, z) + (-nd.alpha + nd.beta) * log_b_minus(v, z)
        asin_sum += nd.beta * math.asin(nd.lam)
        interior_barnes += _barnes_ratio(nd.alpha, nd.beta)
        edge += -(nd.alpha ** 2 + nd.beta ** 2) / 2 * math.log(1 - nd.lam ** 2)
    cross_alpha = 0j
    cross_ab = 0j
    pair = 0j
    for j in range(r + 2):
        for k in range(j + 1, r + 2):
            cross_alpha += al[j] * al[k]
            cross_ab += al[j] * be[k] - al[k] * be[j]
            pair += -2 * (al[j] * al[k] + be[j] * be[k]) * math.log(abs(lam[j] - lam[k]))
            if be[j] * be[k] != 0:
                t = lam[j] * lam[k] - 1 + math.sqrt((1 - lam[j] ** 2) * (1 - lam[k] ** 2))
                pair += 2 * be[j] * be[k] * math.log(abs(t))
    beta_sq = sum((nd.beta ** 2 for nd in w.nodes), 0j)
    osc = 2j * (n + big_a) * asin_sum + 1j * math.pi * cross_ab
    four = -2 * LN2 * (big_a * n + a0 ** 2 + ar ** 2 + cross_alpha + beta_sq)
    sigma = 2 * (a0 ** 2 + ar ** 2) + sum((nd.alpha ** 2 - nd.beta ** 2 for nd in w.nodes), 0j)
    barnes = interior_barnes - _lnG(1 + 2 * a0) - _lnG(1 + 2 * ar)
    logs = [
        ("legendre", log_dn_one(n)),
        ("szego", szego),
        ("wiener_hopf", wh),
        ("oscillatory", osc),
        ("two_power", four + (a0 + ar) * math.log(2 * math.pi)),
        ("power", sigma * math.log(n)),
        ("pairwise", pair + edge),
        ("barnes", barnes),
    ]
    betas = [0j] + [-nd.beta for nd in w.nodes] + [0j] + [nd.beta for nd in w.nodes]
    return _assemble(logs, n, delta_scale(betas, 2 * n), "delta-controlled")


# ---------------------------------------------------------------------------
# Toeplitz + Hankel
# ---------------------------------------------------------------------------

TPH_PARAMETERS = {
    TPHVariant.PLUS: (lambda n: -2 * n + 2, -0.5, -0.5),
    TPHVariant.MINUS2: (lambda n: 0, 0.5, 0.5),
    TPHVariant.PLUS1: (lambda n: -n, -0.5, 0.5),
    TPHVariant.MINUS1: (lambda n: -n, 0.5, -0.5),
}


def _even_structure(f: FHSymbol) -> tuple[complex, complex, list[Singularity]]:
    if not f.is_even():
        raise HypothesisError("Toeplitz+Hankel asymptotics need an even symbol")
    a0 = 0j
    ar = 0j
    upper = []
    for s in f.singularities:
        if s.theta == 0.0:
            a0 = s.alpha
        elif abs(s.theta - math.pi) < 1e-12:
            ar = s.alpha
        elif s.theta < math.pi:
            upper.append(s)
    for j, s in enumerate(upper, start=1):
        if not -0.5 < s.beta.real < 0.5:
            raise HypothesisError(f"interior point {j} needs Re beta in (-1/2, 1/2)")
    return a0, ar, upper


def tph_asym(f: FHSymbol, n: int, variant) -> AsymptoticResult:
    """Large-n form of the four Toeplitz+Hankel determinants of an even symbol.

    ``variant`` selects ``(p, s, t)``: plus ``(-2n+2, -1/2, -1/2)``, minus2
    ``(0, 1/2, 1/2)``, plus1 ``(-n, -1/2, 1/2)``, minus1 ``(-n, 1/2, -1/2)``.
    Interior points are those with ``0 < theta < pi``.
    """
    n = _check_n(n)
    variant = TPHVariant.parse(variant)
    p_of, s, t = TPH_PARAMETERS[variant]
    p = p_of(n)
    a0, ar, upper = _even_structure(f)
    v = f.smooth
    big_s = a0 + ar + s + t
    alpha_sum = sum((u.alpha for u in upper), 0j)
    beta_sum = sum((u.beta for u in upper), 0j)
    a_tilde = 0.5 * big_s + alpha_sum
    szego = n * v.coeff(0) + 0.5 * (big_s * v.coeff(0) - (a0 + s) * v.at(1.0) - (ar + t) * v.at(-1.0)
                                    + sum(k * v.coeff(k) ** 2 for k in range(1, v.K + 1)))
    zs = [cmath.exp(1j * u.theta) for u in upper]
    wh = sum(((-u.alpha + u.beta) * log_b_plus(v, z) + (-u.alpha - u.beta) * log_b_minus(v, z)
              for u, z in zip(upper, zs)), 0j)
    cross = 0j
    pair = 0j
    for j in range(len(upper)):
        for k in range(j + 1, len(upper)):
            uj, uk = upper[j], upper[k]
            cross += uj.alpha * uk.beta - uk.alpha * uj.beta
            pair += -2 * (uj.alpha * uk.alpha - uj.beta * uk.beta) * math.log(abs(zs[j] - zs[k]))
            pair += -2 * (uj.alpha * uk.alpha + uj.beta * uk.beta) * math.log(abs(zs[j] - 1 / zs[k]))
    osc = -1j * math.pi * ((a0 + s + alpha_sum) * beta_sum + cross)
    single = 0j
    barnes = 2 * ln_barnes_g(0.5) - _lnG(1 + a0 + s) - _lnG(1 + ar + t)
    sig_int = 0j
    for u, z in zip(upper, zs):
        osc += 2j * a_tilde * u.beta * u.theta
        single += (-(u.alpha ** 2 + u.beta ** 2) * math.log(abs(1 - z * z))
                   - 2 * u.alpha * (a0 + s) * math.log(abs(1 - z))
                   - 2 * u.alpha * (ar + t) * math.log(abs(1 + z)))
        barnes += _barnes_ratio(u.alpha, u.beta)
        sig_int += u.alpha ** 2 - u.beta ** 2
    two = LN2 * ((1 - s - t) * n + p + sig_int - 0.5 * big_s ** 2 + 0.5 * big_s)
    power = (0.5 * (a0 ** 2 + ar ** 2) + a0 * s + ar * t + sig_int) * math.log(n)
    logs = [
        ("szego", szego),
        ("wiener_hopf", wh),
        ("oscillatory", osc),
        ("two_power", two + 0.5 * (big_s + 1) * LN_PI),
        ("power", power),
        ("pairwise", pair + single),
        ("barnes", barnes),
    ]
    betas = [u.beta for u in upper] + [-u.beta for u in upper] + [0j]
    return _assemble(logs, n, delta_scale(betas, 2 * n), "delta-controlled")


__all__ = [
    "AsymptoticResult", "NuFactor", "PolyAsymptotics", "HypothesisError",
    "DegenerateRepresentationError", "szego_asym", "ehrhardt_asym", "basor_tracy_asym",
    "bt1_asym", "poly_asym", "nu_factors", "hankel_asym", "tph_asym", "log_dn_one",
    "delta_scale", "singular_indices", "TPH_PARAMETERS",
]
