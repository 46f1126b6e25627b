"""Command-line front end.

Exit status: 0 when everything evaluated and every check passed, 1 when a
sweep row failed, an identity check failed or an engine raised, 2 for bad
input (unreadable files, malformed values, parameters outside a formula's
range).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import warnings
from pathlib import Path
from typing import Sequence

import numpy as np

from . import asym
from .corpus import IDENTITIES, builtin_cases, Case, PARAMETRIX_RADII
from .exactdet import ConditioningWarning, TPHVariant, hankel_logdet, toeplitz_logdet, tph_logdet
from .fhrep import BetaVector, describe, minimize_reps
from .logscaled import LogScaled
from .relations import (check_christoffel_darboux, check_hankel_toeplitz, check_parametrix_jumps,
                        check_shift_identity, check_szego_map, check_tph_reduction,
                        route_hankel_via_toeplitz)
from .sweep import PREDICTORS, SweepSpec, Target, emit_csv, emit_svg, parse_grid, run_sweep, write_csv
from .symbol import (FHSymbol, HankelWeight, Singularity, SmoothPart, basor_tracy_symbol, eval_symbol,
                     eval_weight, fourier_coeffs, hankel_moments, load_symbol, load_weight, parse_value)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

BUILTIN_SYMBOLS = {
    "basor-tracy": basor_tracy_symbol,
    "one": FHSymbol,
    "szego": lambda: FHSymbol(SmoothPart.from_mapping({1: 0.5, -1: 0.5})),
    "root-half": lambda: FHSymbol(SmoothPart(), (Singularity(0.0, 0.5, 0.0),)),
    "jump-half": lambda: FHSymbol(SmoothPart(), (Singularity(0.0, 0.0, 0.5),)),
}
BUILTIN_WEIGHTS = {
    "legendre": HankelWeight,
    "chebyshev": lambda: HankelWeight(alpha_plus=-0.25, alpha_minus=-0.25),
}


class InputError(ValueError):
    """Problem with command-line input; maps to exit status 2."""


def _symbol(arg: str | None) -> FHSymbol:
    if arg is None:
        raise InputError("--symbol is required")
    if arg.startswith("builtin:"):
        name = arg.split(":", 1)[1]
        if name not in BUILTIN_SYMBOLS:
            raise InputError(f"unknown builtin symbol {name!r}; choose from {sorted(BUILTIN_SYMBOLS)}")
        return BUILTIN_SYMBOLS[name]()
    try:
        return load_symbol(arg)
    except OSError as exc:
        raise InputError(f"cannot read symbol file: {exc}") from None


def _weight(arg: str | None) -> HankelWeight:
    if arg is None:
        raise InputError("--weight is required")
    if arg.startswith("builtin:"):
        name = arg.split(":", 1)[1]
        if name not in BUILTIN_WEIGHTS:
            raise InputError(f"unknown builtin weight {name!r}; choose from {sorted(BUILTIN_WEIGHTS)}")
        return BUILTIN_WEIGHTS[name]()
    try:
        return load_weight(arg)
    except OSError as exc:
        raise InputError(f"cannot read weight file: {exc}") from None


def _values(text: str) -> list[float]:
    return [parse_value(t).real for t in text.split(";") if t.strip()]


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _writer(out: str | None):
    if out:
        fh = open(out, "w", newline="")
        return fh, csv.writer(fh)
    return None, csv.writer(sys.stdout)


def _logscaled_fields(v: LogScaled) -> list[str]:
    if v.is_zero:
        return ["-inf", "0", "0", "0"]
    z = v.to_complex() if v.log_modulus < 700 else complex(math.inf)
    return [_fmt(v.log_modulus), _fmt(v.phase), _fmt(z.real), _fmt(z.imag)]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    fh, w = _writer(args.out)
    if args.weight:
        weight = _weight(args.weight)
        xs = _values(args.x or "0")
        w.writerow(["x", "re", "im"])
        for x in xs:
            v = eval_weight(weight, x)
            w.writerow([_fmt(x), _fmt(v.real), _fmt(v.imag)])
    else:
        f = _symbol(args.symbol)
        thetas = _values(args.theta or "0.5")
        w.writerow(["theta", "re", "im"])
        for t in thetas:
            v = complex(eval_symbol(f, t))
            w.writerow([_fmt(t), _fmt(v.real), _fmt(v.imag)])
    if fh:
        fh.close()
    return EXIT_OK


def cmd_coeffs(args) -> int:
    f = _symbol(args.symbol)
    c = fourier_coeffs(f, args.jmax)
    fh, w = _writer(args.out)
    w.writerow(["j", "re", "im"])
    for j in range(-args.jmax, args.jmax + 1):
        w.writerow([j, _fmt(c[j].real), _fmt(c[j].imag)])
    if fh:
        fh.close()
    return EXIT_OK


def cmd_moments(args) -> int:
    wt = _weight(args.weight)
    m = hankel_moments(wt, args.kmax)
    fh, w = _writer(args.out)
    w.writerow(["k", "re", "im"])
    for k, v in enumerate(m):
        w.writerow([k, _fmt(v.real), _fmt(v.imag)])
    if fh:
        fh.close()
    return EXIT_OK


def cmd_det(args) -> int:
    n = _require_n(args)
    if args.weight:
        wt = _weight(args.weight)
        if args.method == "direct":
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always", ConditioningWarning)
                v = hankel_logdet(hankel_moments(wt, 2 * n - 2), n)
            for c in caught:
                print(f"warning: {c.message}", file=sys.stderr)
            kind = "hankel-direct"
        else:
            v = route_hankel_via_toeplitz(wt, n)
            kind = "hankel-route"
    else:
        f = _symbol(args.symbol)
        if args.variant:
            v = tph_logdet(fourier_coeffs(f, 2 * n + 1), n, args.variant)
            kind = f"tph-{TPHVariant.parse(args.variant).value}"
        else:
            v = toeplitz_logdet(fourier_coeffs(f, n + abs(args.shift)), n, shift=args.shift)
            kind = "toeplitz" if args.shift == 0 else f"toeplitz-shift{args.shift:+d}"
    w = csv.writer(sys.stdout)
    w.writerow(["kind", "n", "logmod", "phase", "re", "im"])
    w.writerow([kind, n] + _logscaled_fields(v))
    return EXIT_OK


def _require_n(args) -> int:
    if args.n is None or args.n < 1:
        raise InputError("--n must be a positive integer")
    return args.n


def _predict(args, n: int) -> asym.AsymptoticResult:
    pred = args.predictor
    if args.weight:
        if pred not in ("auto", "hankel"):
            raise InputError("weights only support the hankel predictor")
        return asym.hankel_asym(_weight(args.weight), n)
    f = _symbol(args.symbol)
    if pred == "auto":
        pred = "tph" if args.variant else "basor_tracy"
    if pred == "szego":
        return asym.szego_asym(f.smooth, n)
    if pred == "ehrhardt":
        return asym.ehrhardt_asym(f, n)
    if pred == "basor_tracy":
        return asym.basor_tracy_asym(f, n)
    if pred == "bt1":
        return asym.bt1_asym(f, args.j0, args.sign, n)
    if pred == "tph":
        return asym.tph_asym(f, n, args.variant or "plus")
    raise InputError(f"predictor {pred!r} is not available here")


def cmd_asym(args) -> int:
    n = _require_n(args)
    if args.predictor == "poly":
        pa = asym.poly_asym(_symbol(args.symbol), n)
        rows = [("chi_sq[n-1]", pa.chi_sq, pa.chi_sq_error), ("Phi_n(0)", pa.Phi0, pa.Phi0_error),
                ("hatPhi_n(0)", pa.hatPhi0, pa.hatPhi0_error), ("phi_n(0)", pa.phi0, pa.Phi0_error),
                ("hatphi_n(0)", pa.hatphi0, pa.hatPhi0_error)]
        w = csv.writer(sys.stdout)
        w.writerow(["quantity", "re", "im", "error_order"])
        for name, v, e in rows:
            w.writerow([name, _fmt(v.real), _fmt(v.imag), _fmt(e)])
        return EXIT_OK
    res = _predict(args, n)
    v = res.value
    if args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["n", "logmod", "phase", "re", "im", "abs", "arg", "delta_scale"]
                   + [f"term:{k}" for k, _ in res.terms])
        absval = 0.0 if v.is_zero else math.exp(v.log_modulus) if v.log_modulus < 700 else math.inf
        arg = 0.0 if v.is_zero else v.principal_phase
        w.writerow([n] + _logscaled_fields(v) + [_fmt(absval), _fmt(arg), _fmt(res.delta_scale)]
                   + [_fmt(t.log_modulus) + ("" if t.phase == 0 else f"{t.phase:+.17g}i") for _, t in res.terms])
    else:
        print(f"n = {n}")
        if v.is_zero:
            print("value = 0 (exact cancellation)")
        else:
            print(f"log|value| = {_fmt(v.log_modulus)}")
            print(f"phase = {_fmt(v.phase)}  (principal {_fmt(v.principal_phase)})")
            if v.log_modulus < 700:
                z = v.to_complex()
                sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
                print(f"value = {_fmt(z.real)} {sign} {_fmt(abs(z.imag))}i   |value| = {_fmt(abs(z))}")
        print(f"delta scale = {_fmt(res.delta_scale)}")
        if res.error_order:
            print(f"error order = {res.error_order}")
        print("terms (log-modulus, phase):")
        for name, t in res.terms:
            if t.is_zero:
                print(f"  {name:16s} zero")
            else:
                print(f"  {name:16s} {_fmt(t.log_modulus):>24s} {_fmt(t.phase):>24s}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not args.n_grid:
        raise InputError("--n-grid is required")
    target = Target(args.target)
    predictor = "" if args.predictor == "auto" else args.predictor
    spec = SweepSpec(target, parse_grid(args.n_grid), predictor, args.variant or "plus",
                     args.out, args.svg, args.fit_fraction)
    data = _weight(args.weight) if target is Target.HANKEL else _symbol(args.symbol)
    table = run_sweep(spec, data)
    if args.out:
        emit_csv(table, args.out)
    else:
        write_csv(table, sys.stdout)
    if args.svg:
        emit_svg(table, args.svg, title=f"{target.value} / {spec.predictor}")
    slope = "nan" if math.isnan(table.slope) else f"{table.slope:.4f}"
    print(f"fitted slope of log|ratio-1| vs log n: {slope}", file=sys.stderr)
    return EXIT_OK if table.ok else EXIT_FAIL


def _corpus_file_cases(identity: str, path: str, tol: float) -> list[Case]:
    """Read ``path``: one case per line, ``<file> <n> [extra]``.

    ``extra`` is the shift l for ``shift``, the variant for ``hth``; files
    are symbol files except for ``ht`` (weight files).  For ``parametrix``
    a line holds ``<alpha> <beta>`` written as ``re`` or ``re,im``.
    """
    base = Path(path).parent
    cases = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        label = f"{Path(path).name}:{lineno}"
        if identity == "parametrix":
            a, b = parse_value(parts[0]), parse_value(parts[1])
            cases.append(Case(label, lambda a=a, b=b: check_parametrix_jumps(a, b, PARAMETRIX_RADII,
                                                                           tol=max(tol, 1e-9))))
            continue
        target = base / parts[0]
        n = int(parts[1])
        extra = parts[2] if len(parts) > 2 else None
        if identity == "ht":
            wt = load_weight(target)
            cases.append(Case(label, lambda wt=wt, n=n: check_hankel_toeplitz(wt, n, tol=tol)))
            continue
        f = load_symbol(target)
        if identity == "shift":
            ell = int(extra or 1)
            cases.append(Case(label, lambda f=f, n=n, ell=ell: check_shift_identity(f, ell, n, tol=tol)))
        elif identity == "hth":
            v = extra or "plus"
            cases.append(Case(label, lambda f=f, n=n, v=v: check_tph_reduction(f, n, v, tol=tol)))
        elif identity == "szegomap":
            cases.append(Case(label, lambda f=f, n=n: check_szego_map(f, n, tol=tol)))
        else:
            pts = [(0.7 + 0.2j, 1.1 - 0.4j), (np.exp(1j), np.exp(2j)), (0.9j, 0.9j)]
            cases.append(Case(label, lambda f=f, n=n, pts=pts: check_christoffel_darboux(f, n, pts, tol=tol)))
    return cases


def cmd_verify(args) -> int:
    tol = args.tol if args.tol is not None else 1e-8
    if args.corpus == "builtin":
        cases = builtin_cases(args.identity, count=args.count, seed=args.seed, tol=tol)
    else:
        try:
            cases = _corpus_file_cases(args.identity, args.corpus, tol)
        except OSError as exc:
            raise InputError(f"cannot read corpus: {exc}") from None
    fh, w = _writer(args.out)
    w.writerow(["identity", "case", "n", "lhs_logmod", "lhs_phase", "rhs_logmod", "rhs_phase",
                "relative_residual", "status"])
    failures = 0
    for case in cases:
        try:
            r = case.run()
        except Exception as exc:  # an engine failure is a failed check, reported in its row
            failures += 1
            w.writerow([args.identity, case.label, "", "", "", "", "", "nan", f"error:{type(exc).__name__}"])
            continue
        if not r.passed:
            failures += 1
        lhs = _logscaled_fields(r.lhs)[:2]
        rhs = _logscaled_fields(r.rhs)[:2]
        w.writerow([args.identity, case.label, r.n] + lhs + rhs + [_fmt(r.relative_residual), r.status])
    if fh:
        fh.close()
    print(f"{len(cases) - failures}/{len(cases)} passed", file=sys.stderr)
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _complex_json(z: complex):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def cmd_fhrep(args) -> int:
    if args.betas:
        betas = [parse_value(t) for t in args.betas.split(";") if t.strip()]
        alphas = [parse_value(t) for t in args.alphas.split(";")] if args.alphas else None
        if alphas is not None and len(alphas) != len(betas):
            raise InputError("--alphas and --betas need the same length")
    else:
        f = _symbol(args.symbol)
        idx = asym.singular_indices(f)
        if not idx:
            print(json.dumps({"singular_points": 0, "representations": []}, indent=2))
            return EXIT_OK
        betas = [f.singularities[j].beta for j in idx]
        alphas = [f.singularities[j].alpha for j in idx]
    reps = minimize_reps(BetaVector(tuple(betas)))
    rows = describe(reps, alphas)
    for row in rows:
        row["betas"] = [_complex_json(b) for b in row["betas"]]
    print(json.dumps({"input_betas": [_complex_json(b) for b in betas],
                      "count": len(rows), "representations": rows}, indent=2))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fhlab", description="Toeplitz, Hankel and Toeplitz+Hankel "
                                "determinants with Fisher-Hartwig singularities.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, symbol=True, weight=True):
        if symbol:
            sp.add_argument("--symbol", help="symbol description file or builtin:NAME")
        if weight:
            sp.add_argument("--weight", help="weight description file or builtin:NAME")
        sp.add_argument("--out", help="write CSV here instead of stdout")

    sp = sub.add_parser("eval", help="evaluate a symbol at angles or a weight at points")
    common(sp)
    sp.add_argument("--theta", help="semicolon-separated angles (expressions like pi/3 allowed)")
    sp.add_argument("--x", help="semicolon-separated points in [-1, 1]")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("coeffs", help="Fourier coefficients f_j, |j| <= jmax")
    common(sp, weight=False)
    sp.add_argument("--jmax", type=int, default=10)
    sp.set_defaults(func=cmd_coeffs)

    sp = sub.add_parser("moments", help="moments of a weight on [-1, 1]")
    common(sp, symbol=False)
    sp.add_argument("--kmax", type=int, default=10)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("det", help="exact determinant (log-modulus and unwrapped phase)")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--variant", choices=[v.value for v in TPHVariant],
                    help="Toeplitz+Hankel variant (symbol input)")
    sp.add_argument("--shift", type=int, default=0, help="determinant of z^shift f")
    sp.add_argument("--method", choices=["route", "direct"], default="route",
                    help="Hankel: through the Toeplitz side (default) or direct LU on moments")
    sp.set_defaults(func=cmd_det)

    sp = sub.add_parser("asym", help="asymptotic prediction with its factor breakdown")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--predictor", default="auto",
                    choices=["auto", "szego", "ehrhardt", "basor_tracy", "bt1", "poly", "hankel", "tph"])
    sp.add_argument("--variant", choices=[v.value for v in TPHVariant])
    sp.add_argument("--j0", type=int, default=0, help="bt1: index of the shifted singularity")
    sp.add_argument("--sign", type=int, choices=[1, -1], default=1, help="bt1: shift direction")
    sp.add_argument("--format", choices=["text", "csv"], default="text")
    sp.set_defaults(func=cmd_asym)

    sp = sub.add_parser("sweep", help="exact vs predicted over an n grid")
    common(sp)
    sp.add_argument("--target", choices=[t.value for t in Target], default="toeplitz")
    sp.add_argument("--n-grid", help="a:b:step or a comma list")
    sp.add_argument("--predictor", default="auto",
                    choices=["auto"] + sorted({p for v in PREDICTORS.values() for p in v}))
    sp.add_argument("--variant", choices=[v.value for v in TPHVariant])
    sp.add_argument("--svg", help="write a log-log plot of |ratio-1| here")
    sp.add_argument("--fit-fraction", type=float, default=0.5,
                    help="fraction of the grid (largest n) used for the slope fit")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run an identity check over a corpus")
    sp.add_argument("--identity", choices=IDENTITIES, required=True)
    sp.add_argument("--corpus", default="builtin", help="'builtin' or a corpus file")
    sp.add_argument("--count", type=int, default=50, help="builtin corpus size")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol", type=float)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("fhrep", help="minimising FH-representations")
    sp.add_argument("--symbol")
    sp.add_argument("--betas", help="semicolon-separated betas, each 're' or 're,im'")
    sp.add_argument("--alphas", help="matching alphas for the degeneracy flags")
    sp.set_defaults(func=cmd_fhrep)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, asym.HypothesisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # engine failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
