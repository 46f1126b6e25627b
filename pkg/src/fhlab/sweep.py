"""Convergence sweeps: exact values against predictors over a grid of n.

A sweep evaluates one exact quantity (a determinant or an orthogonal
polynomial coefficient) and one predictor at every ``n`` of a grid, records
both in log form and fits the decay rate of ``|ratio - 1|``.
"""

from __future__ import annotations

import csv
import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Callable, Sequence

import numpy as np

from . import asym
from .exactdet import TPHVariant, szego_recursion, toeplitz_logdet, tph_logdet
from .logscaled import LogScaled
from .relations import relative_residual, route_hankel_sequence
from .symbol import FHSymbol, HankelWeight, fourier_coeffs

CSV_HEADER = ("n", "exact_logmod", "exact_phase", "pred_logmod", "pred_phase", "ratio_minus_1", "status")
THREADS_ENV = "FHLAB_THREADS"


class Target(enum.Enum):
    TOEPLITZ = "toeplitz"
    HANKEL = "hankel"
    TPH = "tph"
    CHI = "chi"
    PHI0 = "phi0"


# largest n each exact engine is trusted to in double precision
TRUST_LIMIT = {Target.TOEPLITZ: 512, Target.HANKEL: 200, Target.TPH: 256, Target.CHI: 512, Target.PHI0: 512}

PREDICTORS = {
    Target.TOEPLITZ: ("basor_tracy", "ehrhardt", "szego"),
    Target.HANKEL: ("hankel",),
    Target.TPH: ("tph",),
    Target.CHI: ("poly",),
    Target.PHI0: ("poly",),
}


@dataclass(frozen=True)
class SweepSpec:
    target: Target
    n_grid: tuple[int, ...]
    predictor: str = ""
    variant: TPHVariant = TPHVariant.PLUS
    out: str | None = None
    svg: str | None = None
    fit_fraction: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "target", Target(self.target))
        grid = tuple(int(n) for n in self.n_grid)
        if not grid:
            raise ValueError("the n grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("the n grid must be strictly increasing")
        if grid[0] < 1:
            raise ValueError("grid values must be positive")
        if grid[-1] > TRUST_LIMIT[self.target]:
            raise ValueError(f"n = {grid[-1]} exceeds the trusted range "
                             f"n <= {TRUST_LIMIT[self.target]} for target {self.target.value}")
        object.__setattr__(self, "n_grid", grid)
        pred = self.predictor or PREDICTORS[self.target][0]
        if pred not in PREDICTORS[self.target]:
            raise ValueError(f"predictor {pred!r} does not apply to target {self.target.value}")
        object.__setattr__(self, "predictor", pred)
        object.__setattr__(self, "variant", TPHVariant.parse(self.variant))
        if not 0 < self.fit_fraction <= 1:
            raise ValueError("fit fraction must lie in (0, 1]")


@dataclass(frozen=True)
class SweepRow:
    n: int
    exact_logmod: float
    exact_phase: float
    pred_logmod: float
    pred_phase: float
    ratio_minus_1: float
    status: str = "ok"


@dataclass
class SweepTable:
    rows: list[SweepRow] = field(default_factory=list)
    slope: float = math.nan
    fit_fraction: float = 0.5

    @property
    def ok(self) -> bool:
        return all(r.status == "ok" for r in self.rows)


def parse_grid(text: str) -> tuple[int, ...]:
    """``a:b:step`` (inclusive of b when reached) or a comma list."""
    text = text.strip()
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) == 2:
            parts.append(1)
        if len(parts) != 3 or parts[2] <= 0:
            raise ValueError(f"bad grid {text!r}; expected a:b:step")
        a, b, step = parts
        return tuple(range(a, b + 1, step))
    return tuple(int(p) for p in text.split(",") if p.strip())


def thread_count() -> int:
    """Worker threads for a sweep: ``FHLAB_THREADS`` if set, else ``min(4, cpu count)``."""
    raw = os.environ.get(THREADS_ENV) or str(min(4, os.cpu_count() or 1))
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer (got {raw!r})") from None


def _logscaled_pair(exact: LogScaled, pred: LogScaled) -> tuple[float, float, float, float, float]:
    def parts(v: LogScaled):
        return (-math.inf, 0.0) if v.is_zero else (v.log_modulus, v.phase)

    el, ep = parts(exact)
    pl, pp = parts(pred)
    if not (exact.is_zero or pred.is_zero):
        # the exact phase is only known modulo 2 pi; report it on the predictor's branch
        ep += 2 * math.pi * round((pp - ep) / (2 * math.pi))
    return el, ep, pl, pp, relative_residual(exact, pred)


def _evaluators(spec: SweepSpec, data) -> Callable[[int], tuple[LogScaled, LogScaled]]:
    nmax = spec.n_grid[-1]
    t = spec.target
    if t is Target.HANKEL:
        if not isinstance(data, HankelWeight):
            raise TypeError("the hankel target needs a weight")
        seq = route_hankel_sequence(data, nmax)
        return lambda n: (seq[n], asym.hankel_asym(data, n).value)
    if not isinstance(data, FHSymbol):
        raise TypeError(f"target {t.value} needs a symbol")
    if t is Target.TOEPLITZ:
        c = fourier_coeffs(data, nmax)
        pred = {"basor_tracy": lambda n: asym.basor_tracy_asym(data, n),
                "ehrhardt": lambda n: asym.ehrhardt_asym(data, n),
                "szego": lambda n: asym.szego_asym(data.smooth, n)}[spec.predictor]
        return lambda n: (toeplitz_logdet(c, n), pred(n).value)
    if t is Target.TPH:
        c = fourier_coeffs(data, 2 * nmax + 1)
        return lambda n: (tph_logdet(c, n, spec.variant), asym.tph_asym(data, n, spec.variant).value)
    c = fourier_coeffs(data, nmax + 1)
    op = szego_recursion(c, nmax + 1)
    if t is Target.CHI:
        return lambda n: (LogScaled.from_complex(op.chi_sq[n - 1]),
                          LogScaled.from_complex(asym.poly_asym(data, n).chi_sq))
    return lambda n: (LogScaled.from_complex(op.monic[n][0]),
                      LogScaled.from_complex(asym.poly_asym(data, n).Phi0))


def fit_slope(rows: Sequence[SweepRow], fit_fraction: float = 0.5) -> float:
    """Least-squares slope of ``log|ratio - 1|`` against ``log n`` over the top of the grid."""
    usable = [r for r in rows if r.status == "ok" and 0 < r.ratio_minus_1 < math.inf]
    if not usable:
        return math.nan
    k = max(2, int(math.ceil(fit_fraction * len(usable))))
    top = usable[-k:]
    if len(top) < 2:
        return math.nan
    x = np.log([r.n for r in top])
    y = np.log([r.ratio_minus_1 for r in top])
    return float(np.polyfit(x, y, 1)[0])


def run_sweep(spec: SweepSpec, data: FHSymbol | HankelWeight, threads: int | None = None) -> SweepTable:
    """Evaluate every grid point; engine failures become rows with an error status."""
    evaluate = _evaluators(spec, data)

    def one(n: int) -> SweepRow:
        try:
            exact, pred = evaluate(n)
        except Exception as exc:  # reported per row, the sweep continues
            return SweepRow(n, math.nan, math.nan, math.nan, math.nan, math.nan,
                            f"error:{type(exc).__name__}")
        return SweepRow(n, *_logscaled_pair(exact, pred), "ok")

    workers = threads if threads is not None else thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, spec.n_grid))
    else:
        rows = [one(n) for n in spec.n_grid]
    return SweepTable(rows, fit_slope(rows, spec.fit_fraction), spec.fit_fraction)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(table: SweepTable, fh: IO[str]) -> None:
    writer = csv.writer(fh)
    writer.writerow(CSV_HEADER)
    for r in table.rows:
        writer.writerow([r.n, _fmt(r.exact_logmod), _fmt(r.exact_phase), _fmt(r.pred_logmod),
                         _fmt(r.pred_phase), _fmt(r.ratio_minus_1), r.status])


def emit_csv(table: SweepTable, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        write_csv(table, fh)


def parse_csv(path: str | Path) -> SweepTable:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"unexpected header {header}")
        rows = [SweepRow(int(r[0]), float(r[1]), float(r[2]), float(r[3]), float(r[4]), float(r[5]), r[6])
                for r in reader if r]
    return SweepTable(rows)


_SVG_W, _SVG_H, _PAD = 480, 360, 60


def _ticks(lo: float, hi: float) -> list[float]:
    return [float(10.0 ** k) for k in range(math.floor(lo), math.ceil(hi) + 1)]


def emit_svg(table: SweepTable, path: str | Path, title: str = "") -> None:
    """Log-log scatter of ``|ratio - 1|`` against n with the fitted slope in the caption."""
    pts = [(r.n, r.ratio_minus_1) for r in table.rows
           if r.status == "ok" and 0 < r.ratio_minus_1 < math.inf]
    if pts:
        lx = [math.log10(n) for n, _ in pts]
        ly = [math.log10(v) for _, v in pts]
        x0, x1 = min(lx), max(lx)
        y0, y1 = math.floor(min(ly)), math.ceil(max(ly))
    else:
        x0, x1, y0, y1 = 0.0, 1.0, -1.0, 0.0
    if x1 - x0 < 1e-9:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-9:
        y0, y1 = y0 - 1, y1 + 1
    w, h = _SVG_W - 2 * _PAD, _SVG_H - 2 * _PAD

    def sx(v):
        return _PAD + (v - x0) / (x1 - x0) * w

    def sy(v):
        return _SVG_H - _PAD - (v - y0) / (y1 - y0) * h

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
           f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<line class="axis" x1="{_PAD}" y1="{_SVG_H - _PAD}" x2="{_SVG_W - _PAD}" '
           f'y2="{_SVG_H - _PAD}" stroke="black"/>',
           f'<line class="axis" x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" y2="{_SVG_H - _PAD}" stroke="black"/>',
           f'<text x="{_SVG_W / 2}" y="{_SVG_H - 15}" text-anchor="middle" font-size="12">n</text>',
           f'<text x="15" y="{_SVG_H / 2}" text-anchor="middle" font-size="12" '
           f'transform="rotate(-90 15 {_SVG_H / 2})">|ratio - 1|</text>']
    for k in range(int(y0), int(y1) + 1):
        y = sy(k)
        out.append(f'<text x="{_PAD - 5}" y="{y + 4:.1f}" text-anchor="end" font-size="10">1e{k}</text>')
    if pts:
        for v in sorted({n for n, _ in pts})[:: max(1, len(pts) // 6)]:
            out.append(f'<text x="{sx(math.log10(v)):.1f}" y="{_SVG_H - _PAD + 15}" '
                       f'text-anchor="middle" font-size="10">{v}</text>')
    for n, v in pts:
        cx, cy = sx(math.log10(n)), sy(math.log10(v))
        out.append(f'<circle class="marker" cx="{cx:.2f}" cy="{cy:.2f}" r="3" fill="steelblue"/>')
    slope = "n/a" if math.isnan(table.slope) else f"{table.slope:.3f}"
    caption = f"fitted slope {slope} (top {table.fit_fraction:.0%} of grid)"
    if title:
        caption = f"{title}: {caption}"
    out.append(f'<text x="{_SVG_W / 2}" y="{_PAD / 2}" text-anchor="middle" font-size="12">{caption}</text>')
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")


__all__ = ["Target", "SweepSpec", "SweepRow", "SweepTable", "run_sweep", "emit_csv", "emit_svg",
           "write_csv", "parse_csv", "parse_grid", "fit_slope", "CSV_HEADER", "TRUST_LIMIT", "PREDICTORS",
           "THREADS_ENV", "thread_count"]
