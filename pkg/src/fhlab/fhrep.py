"""FH-representations: integer re-labellings of the beta parameters.

Replacing ``beta_j`` by ``beta_j + n_j`` with ``sum n_j = 0`` changes a
Fisher-Hartwig symbol only by a constant factor.  Among all such shifts the
asymptotics of the Toeplitz determinant are governed by those minimising
``sum_j (Re beta_j + n_j)**2``; this module finds that set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

TIE_TOL = 1e-9
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class BetaVector:
    """Beta parameters, one per singular point, in angular order."""

    betas: tuple[complex, ...]

    def __post_init__(self):
        b = tuple(complex(x) for x in self.betas)
        if not b:
            raise ValueError("a beta vector needs at least one entry")
        object.__setattr__(self, "betas", b)

    def __len__(self) -> int:
        return len(self.betas)

    @property
    def real_parts(self) -> np.ndarray:
        return np.array([b.real for b in self.betas])


@dataclass(frozen=True)
class FHRep:
    """The representation obtained from ``base`` by the integer ``shifts``."""

    base: BetaVector
    shifts: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(k) for k in self.shifts)
        if len(s) != len(self.base):
            raise ValueError("one shift per beta is required")
        if sum(s) != 0:
            raise ValueError(f"shifts must sum to zero (got {s})")
        object.__setattr__(self, "shifts", s)

    @property
    def betas(self) -> tuple[complex, ...]:
        return tuple(b + k for b, k in zip(self.base.betas, self.shifts))

    @property
    def vector(self) -> BetaVector:
        return BetaVector(self.betas)

    @property
    def square_sum(self) -> float:
        return float(sum(b.real ** 2 for b in self.betas))


def seminorm(b: BetaVector | Sequence[complex]) -> float:
    """``max_{j,k} |Re beta_j - Re beta_k|``."""
    re = BetaVector(tuple(b)).real_parts if not isinstance(b, BetaVector) else b.real_parts
    return float(re.max() - re.min())


def _extremal_indices(re: np.ndarray) -> tuple[list[int], list[int]]:
    lo, hi = re.min(), re.max()
    mins = [j for j, x in enumerate(re) if x - lo <= TIE_TOL]
    maxs = [j for j, x in enumerate(re) if hi - x <= TIE_TOL]
    return mins, maxs


def _reduce(b: BetaVector) -> list[int]:
    """Apply the min-up / max-down move until the spread is at most one.

    Each move with spread ``d > 1`` lowers the square sum by ``2(d - 1)``,
    so the loop terminates.  A bulk pre-shift by rounded real parts keeps
    the number of moves small for large inputs.
    """
    re = b.real_parts
    shifts = [-int(round(x)) for x in re]
    excess = sum(shifts)
    # restore sum zero by nudging the entries that are cheapest to move
    order = sorted(range(len(re)), key=lambda j: re[j] + shifts[j], reverse=excess > 0)
    i = 0
    while excess != 0:
        j = order[i % len(order)]
        step = -1 if excess > 0 else 1
        shifts[j] += step
        excess += step
        i += 1
    while True:
        cur = re + np.array(shifts)
        if cur.max() - cur.min() <= 1.0 + TIE_TOL:
            return shifts
        s = int(np.argmin(cur))
        t = int(np.argmax(cur))
        shifts[s] += 1
        shifts[t] -= 1


def minimize_reps(b: BetaVector | Sequence[complex]) -> list[FHRep]:
    """The set of FH-representations minimising ``sum (Re beta_j + n_j)**2``.

    When the reduced spread is below one the minimiser is unique.  When it
    equals one, every representation reachable by moving a smallest entry up
    and a largest entry down is a minimiser; all tied choices are explored.
    The result is sorted by shift vector for reproducibility.
    """
    if not isinstance(b, BetaVector):
        b = BetaVector(tuple(b))
    start = tuple(_reduce(b))
    re = b.real_parts
    spread = seminorm(re + np.array(start))
    if spread < 1.0 - TIE_TOL:
        return [FHRep(b, start)]
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        mins, maxs = _extremal_indices(re + np.array(cur))
        for s in mins:
            for t in maxs:
                if s == t:
                    continue
                nxt = list(cur)
                nxt[s] += 1
                nxt[t] -= 1
                key = tuple(nxt)
                if key not in seen:
                    seen.add(key)
                    queue.append(key)
    return [FHRep(b, s) for s in sorted(seen)]


def _is_negative_integer(x: complex, tol: float = DEGENERACY_TOL) -> bool:
    if abs(x.imag) > tol:
        return False
    k = round(x.real)
    return k <= -1 and abs(x.real - k) <= tol


def is_degenerate(rep: FHRep, alphas: Sequence[complex]) -> bool:
    """True when some ``alpha_j +/- (beta_j + n_j)`` is a negative integer."""
    alphas = [complex(a) for a in alphas]
    if len(alphas) != len(rep.shifts):
        raise ValueError("one alpha per beta is required")
    return any(_is_negative_integer(a + b) or _is_negative_integer(a - b)
               for a, b in zip(alphas, rep.betas))


def brute_force_minimizers(b: BetaVector | Sequence[complex], bound: int = 4,
                           rtol: float = 1e-9) -> list[tuple[int, ...]]:
    """All shift vectors in ``[-bound, bound]^len`` with zero sum attaining the minimal square sum.

    Exhaustive reference used for testing; exponential in the length.
    """
    if not isinstance(b, BetaVector):
        b = BetaVector(tuple(b))
    re = b.real_parts
    m = len(re)
    grids = np.array(np.meshgrid(*[np.arange(-bound, bound + 1)] * m, indexing="ij")).reshape(m, -1).T
    grids = grids[grids.sum(axis=1) == 0]
    vals = ((re[None, :] + grids) ** 2).sum(axis=1)
    best = vals.min()
    keep = grids[vals <= best + rtol * max(1.0, best)]
    return sorted(tuple(int(x) for x in row) for row in keep)


def describe(reps: Sequence[FHRep], alphas: Sequence[complex] | None = None) -> list[dict]:
    """Plain-data summary of a representation set, one dict per member."""
    out = []
    for rep in reps:
        row = {
            "shifts": list(rep.shifts),
            "betas": [complex(x) for x in rep.betas],
            "seminorm": seminorm(rep.vector),
            "square_sum": rep.square_sum,
        }
        if alphas is not None:
            row["degenerate"] = is_degenerate(rep, alphas)
        out.append(row)
    return out


__all__ = [
    "BetaVector", "FHRep", "seminorm", "minimize_reps", "is_degenerate",
    "brute_force_minimizers", "describe", "TIE_TOL", "DEGENERACY_TOL",
]
