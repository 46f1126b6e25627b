"""Seeded random inputs for the identity checkers.

Parameters are drawn away from the edges of their admissible ranges
(``Re alpha`` well above ``-1/2``, ``|Re beta|`` below ``1/2``) so that every
case satisfies the hypotheses of the identity being checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .relations import (IdentityReport, check_christoffel_darboux, check_hankel_toeplitz,
                        check_parametrix_jumps, check_shift_identity, check_szego_map,
                        check_tph_reduction)
from .symbol import FHSymbol, HankelWeight, Node, Singularity, SmoothPart

IDENTITIES = ("shift", "ht", "hth", "szegomap", "parametrix", "cd")
PARAMETRIX_RADII = tuple(np.geomspace(0.05, 30.0, 20))


def _complex(rng: np.random.Generator, re: tuple[float, float], im: float) -> complex:
    return complex(rng.uniform(*re), rng.uniform(-im, im) if im else 0.0)


def random_smooth(rng: np.random.Generator, even: bool = False, size: float = 0.3) -> SmoothPart:
    k = int(rng.integers(0, 3))
    coeffs = {0: _complex(rng, (-0.2, 0.2), 0.0)}
    for j in range(1, k + 1):
        v = _complex(rng, (-size, size), 0.5 * size)
        coeffs[j] = v
        coeffs[-j] = v if even else _complex(rng, (-size, size), 0.5 * size)
    return SmoothPart.from_mapping(coeffs)


def random_symbol(rng: np.random.Generator, m: int | None = None) -> FHSymbol:
    """Symbol with ``m`` singular points (plus possibly a nontrivial one at angle 0)."""
    m = int(rng.integers(1, 4)) if m is None else m
    thetas = np.sort(rng.uniform(0.3, 2 * math.pi - 0.3, m))
    while m > 1 and np.min(np.diff(thetas)) < 0.3:
        thetas = np.sort(rng.uniform(0.3, 2 * math.pi - 0.3, m))
    sings = [Singularity(float(t), _complex(rng, (-0.3, 0.8), 0.2), _complex(rng, (-0.4, 0.4), 0.2))
             for t in thetas]
    if rng.random() < 0.5:
        sings.append(Singularity(0.0, _complex(rng, (-0.3, 0.8), 0.0), _complex(rng, (-0.4, 0.4), 0.0)))
    return FHSymbol(random_smooth(rng), tuple(sings))


def random_even_symbol(rng: np.random.Generator, r: int | None = None) -> FHSymbol:
    """Even symbol: root singularities at 0 and pi and ``r`` mirrored interior pairs."""
    r = int(rng.integers(0, 3)) if r is None else r
    thetas = np.sort(rng.uniform(0.3, math.pi - 0.3, r))
    while r > 1 and np.min(np.diff(thetas)) < 0.3:
        thetas = np.sort(rng.uniform(0.3, math.pi - 0.3, r))
    sings = [Singularity(0.0, rng.uniform(-0.3, 0.8), 0), Singularity(math.pi, rng.uniform(-0.3, 0.8), 0)]
    for t in thetas:
        a = _complex(rng, (-0.3, 0.8), 0.0)
        b = _complex(rng, (-0.4, 0.4), 0.0)
        sings.append(Singularity(float(t), a, b))
        sings.append(Singularity(float(2 * math.pi - t), a, -b))
    return FHSymbol(random_smooth(rng, even=True), tuple(sings))


def random_weight(rng: np.random.Generator, r: int | None = None) -> HankelWeight:
    r = int(rng.integers(0, 3)) if r is None else r
    lams = np.sort(rng.uniform(-0.8, 0.8, r))[::-1]
    while r > 1 and np.min(-np.diff(lams)) < 0.2:
        lams = np.sort(rng.uniform(-0.8, 0.8, r))[::-1]
    nodes = tuple(Node(float(x), rng.uniform(-0.2, 0.8), _complex(rng, (-0.4, 0.4), 0.0)) for x in lams)
    return HankelWeight(random_smooth(rng, even=True, size=0.2), nodes,
                        rng.uniform(-0.35, 0.8), rng.uniform(-0.35, 0.8))


@dataclass(frozen=True)
class Case:
    label: str
    run: Callable[[], IdentityReport]


def _points(rng: np.random.Generator) -> list[tuple[complex, complex]]:
    out = []
    for _ in range(3):
        z = complex(rng.uniform(0.5, 1.5) * np.exp(1j * rng.uniform(0, 2 * math.pi)))
        a = complex(rng.uniform(0.5, 1.5) * np.exp(1j * rng.uniform(0, 2 * math.pi)))
        out.append((z, a))
    out.append((out[0][0], out[0][0]))
    return out


def builtin_cases(identity: str, count: int = 50, seed: int = 0, nmax: int = 10,
                  tol: float = 1e-8) -> list[Case]:
    """Deterministic list of ``count`` hypothesis-satisfying cases for ``identity``."""
    if identity not in IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}; choose from {IDENTITIES}")
    rng = np.random.default_rng(seed)
    cases = []
    for i in range(count):
        n = int(rng.integers(1, nmax + 1))
        if identity == "shift":
            f = random_symbol(rng)
            ell = int(rng.choice([1, -1, 2, -2]))
            cases.append(Case(f"shift ell={ell} n={n} #{i}",
                              lambda f=f, ell=ell, n=n: check_shift_identity(f, ell, n, tol=tol)))
        elif identity == "ht":
            w = random_weight(rng)
            cases.append(Case(f"ht n={n} #{i}", lambda w=w, n=n: check_hankel_toeplitz(w, n, tol=tol)))
        elif identity == "hth":
            f = random_even_symbol(rng)
            variant = ("plus", "minus2", "plus1", "minus1")[i % 4]
            cases.append(Case(f"hth {variant} n={n} #{i}",
                              lambda f=f, n=n, v=variant: check_tph_reduction(f, n, v, tol=tol)))
        elif identity == "szegomap":
            f = random_even_symbol(rng)
            cases.append(Case(f"szegomap n={n} #{i}", lambda f=f, n=n: check_szego_map(f, n, tol=tol)))
        elif identity == "cd":
            f = random_symbol(rng)
            pts = _points(rng)
            cases.append(Case(f"cd n={n} #{i}",
                              lambda f=f, n=n, pts=pts: check_christoffel_darboux(f, n, pts, tol=tol)))
        else:
            alpha = _complex(rng, (-0.4, 1.0), 0.3)
            beta = _complex(rng, (-0.45, 0.45), 0.3)
            cases.append(Case(f"parametrix #{i}",
                              lambda a=alpha, b=beta: check_parametrix_jumps(a, b, PARAMETRIX_RADII,
                                                                             tol=max(tol, 1e-9))))
    return cases


__all__ = ["IDENTITIES", "Case", "builtin_cases", "random_symbol", "random_even_symbol",
           "random_weight", "random_smooth", "PARAMETRIX_RADII"]
