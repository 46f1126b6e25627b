import io
import json
import math
import re
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from fhlab.symbol import FHSymbol, HankelWeight, Singularity, SmoothPart, basor_tracy_symbol
from fhlab.sweep import (CSV_HEADER, TRUST_LIMIT, SweepRow, SweepSpec, SweepTable, emit_csv, emit_svg, fit_slope,
                         parse_csv, parse_grid, run_sweep, thread_count, write_csv)

GOLDEN = json.loads(Path(__file__).with_name("golden.json").read_text())
finite = st.floats(allow_nan=False, allow_infinity=False)


def markers(path: Path) -> int:
    return len(re.findall(r'class="marker"', path.read_text()))


# -- grids and specs --------------------------------------------------------------

def test_parse_grid():
    assert parse_grid("10:60:10") == (10, 20, 30, 40, 50, 60)
    assert parse_grid("3:5") == (3, 4, 5)
    assert parse_grid("8, 16,32") == (8, 16, 32)
    with pytest.raises(ValueError):
        parse_grid("1:5:0")


@pytest.mark.parametrize("grid", [(), (5, 5), (10, 8), (0, 4)])
def test_spec_rejects_bad_grids(grid):
    with pytest.raises(ValueError):
        SweepSpec("toeplitz", grid)


def test_spec_trust_limits_and_predictors():
    for target, limit in TRUST_LIMIT.items():
        SweepSpec(target, (limit,))
        with pytest.raises(ValueError, match="trusted range"):
            SweepSpec(target, (limit + 1,))
    with pytest.raises(ValueError):
        SweepSpec("hankel", (4,), predictor="szego")
    assert SweepSpec("toeplitz", (4,)).predictor == "basor_tracy"
    with pytest.raises(ValueError):
        SweepSpec("toeplitz", (4,), fit_fraction=0)


def test_thread_count_from_environment(monkeypatch):
    monkeypatch.setenv("FHLAB_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("FHLAB_THREADS", "many")
    with pytest.raises(ValueError):
        thread_count()


# -- CSV and SVG output --------------------------------------------------------------------

@settings(max_examples=100)
@given(st.integers(1, 10 ** 6), finite, finite, finite, finite, st.floats(0, 1e300))
def test_csv_round_trip_is_bit_exact(n, a, b, c, d, r):
    table = SweepTable([SweepRow(n, a, b, c, d, r)])
    buf = io.StringIO()
    write_csv(table, buf)
    lines = buf.getvalue().splitlines()
    assert tuple(lines[0].split(",")) == CSV_HEADER
    values = [float(x) for x in lines[1].split(",")[1:6]]
    assert values == [a, b, c, d, r]


def test_csv_file_round_trip(tmp_path):
    table = SweepTable([SweepRow(4, -1.25, 0.1 + 1e-17, 0.3, -math.inf, 1 / 3, "ok"),
                        SweepRow(5, math.nan, math.nan, math.nan, math.nan, math.nan, "error:ValueError")])
    emit_csv(table, tmp_path / "t.csv")
    back = parse_csv(tmp_path / "t.csv")
    assert back.rows[0] == table.rows[0]
    assert back.rows[1].status == "error:ValueError" and math.isnan(back.rows[1].exact_logmod)


def test_empty_table(tmp_path):
    emit_csv(SweepTable(), tmp_path / "e.csv")
    assert (tmp_path / "e.csv").read_text().strip() == ",".join(CSV_HEADER)
    emit_svg(SweepTable(), tmp_path / "e.svg")
    text = (tmp_path / "e.svg").read_text()
    assert text.count('class="axis"') == 2 and markers(tmp_path / "e.svg") == 0


def test_svg_has_one_marker_per_row(tmp_path):
    rows = [SweepRow(n, 0, 0, 0, 0, 1.0 / n) for n in range(1, 21)]
    table = SweepTable(rows, fit_slope(rows, 1.0), 1.0)
    emit_svg(table, tmp_path / "p.svg", title="test")
    assert markers(tmp_path / "p.svg") == 20
    assert "fitted slope -1.000" in (tmp_path / "p.svg").read_text()


def test_fit_slope():
    rows = [SweepRow(n, 0, 0, 0, 0, 3.0 * n ** -1.5) for n in (8, 16, 32, 64)]
    assert abs(fit_slope(rows, 0.5) + 1.5) < 1e-12
    assert math.isnan(fit_slope([]))


# -- sweeps ----------------------------------------------------------------------------------

def test_basor_tracy_sweep():
    table = run_sweep(SweepSpec("toeplitz", parse_grid("10:60:10")), basor_tracy_symbol())
    assert table.ok
    errs = [r.ratio_minus_1 for r in table.rows]
    assert all(b < a for a, b in zip(errs, errs[1:])) and errs[-1] < 0.05
    for r in table.rows:
        assert abs(r.exact_logmod - GOLDEN["basor_tracy_logdet"][str(r.n)]) < 1e-10


def test_szego_sweep():
    f = FHSymbol(SmoothPart.from_mapping({1: 0.5, -1: 0.5}))
    table = run_sweep(SweepSpec("toeplitz", (8, 16, 32), predictor="szego"), f)
    assert table.rows[-1].ratio_minus_1 < 1e-6


def test_unit_symbol_tph_is_exact():
    table = run_sweep(SweepSpec("tph", (4, 16, 32), variant="minus1"), FHSymbol())
    assert all(r.ratio_minus_1 < 1e-10 for r in table.rows)


def test_errors_become_rows():
    f = FHSymbol(SmoothPart(), (Singularity(0.0, 0, 0.6), Singularity(2.0, 0, -0.5)))
    table = run_sweep(SweepSpec("toeplitz", (4, 8), predictor="ehrhardt"), f)
    assert not table.ok
    assert all(r.status == "error:HypothesisError" for r in table.rows)


def test_hankel_sweep_with_threads_is_deterministic():
    w = HankelWeight(alpha_plus=-0.25, alpha_minus=-0.25)
    spec = SweepSpec("hankel", (8, 16, 24, 32))
    one = run_sweep(spec, w, threads=1)
    many = run_sweep(spec, w, threads=4)
    assert one.rows == many.rows
    for r in one.rows:
        assert abs(r.exact_logmod - GOLDEN["chebyshev_logdet"][str(r.n)]) < 1e-8


def test_wrong_data_type():
    with pytest.raises(TypeError):
        run_sweep(SweepSpec("hankel", (4,)), FHSymbol())
