import cmath
import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fhlab.asym import (DegenerateRepresentationError, HypothesisError, basor_tracy_asym, bt1_asym, delta_scale,
                        ehrhardt_asym, hankel_asym, log_dn_one, nu_factors, poly_asym, szego_asym, tph_asym)
from fhlab.exactdet import szego_recursion, toeplitz_logdet, tph_logdet
from fhlab.logscaled import lsum
from fhlab.relations import route_hankel_sequence
from fhlab.specialfn import ln_barnes_g
from fhlab.symbol import (FHSymbol, HankelWeight, Node, Singularity, SmoothPart, basor_tracy_coefficients,
                          basor_tracy_symbol, fourier_coeffs)

GOLDEN = json.loads(Path(__file__).with_name("golden.json").read_text())
seeds = st.integers(0, 2 ** 32 - 1)
# G(1/2)^2 G(3/2)^2 with G(3/2) = G(1/2) Gamma(1/2)
BT_CONSTANT = GOLDEN["barnes_g_half"] ** 4 * math.pi


def log_sum_of_terms(res) -> complex:
    return sum((t.log for _, t in res.terms), 0j)


# -- Szego and the product formula ----------------------------------------------

def test_szego_examples():
    assert szego_asym(SmoothPart(), 7).value.to_complex() == 1
    t = 0.35
    for n in (1, 10, 100):
        v = szego_asym(SmoothPart.from_mapping({1: t, -1: t}), n).value
        assert abs(v.log_modulus - t * t) < 1e-15
    assert szego_asym(SmoothPart.from_mapping({1: 0.4}), 5).value.to_complex() == 1


def test_product_formula_without_singularities_is_szego():
    f = FHSymbol(SmoothPart.from_mapping({1: 0.3, -1: 0.2, 0: 0.1}), (Singularity(1.0, 0, 0),))
    for n in (1, 10, 57):
        assert ehrhardt_asym(f, n).value == szego_asym(f.smooth, n).value


def test_single_root_singularity():
    f = FHSymbol(SmoothPart(), (Singularity(0.0, 0.5),))
    n = 64
    res = ehrhardt_asym(f, n)
    expected = 0.25 * math.log(n) + 2 * ln_barnes_g(1.5) - ln_barnes_g(2)
    assert abs(res.value.log - expected) < 1e-13
    exact = GOLDEN["root_half_logdet"][str(n)]
    assert abs(math.exp(res.value.log_modulus - exact) - 1) < 0.05


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_terms_multiply_back(seed):
    rng = np.random.default_rng(seed)
    sings = (Singularity(0.0, rng.uniform(-0.3, 0.8), complex(rng.uniform(-0.4, 0.4), 0.1)),
             Singularity(rng.uniform(1, 5), rng.uniform(-0.3, 0.8), rng.uniform(-0.4, 0.4)))
    f = FHSymbol(SmoothPart.from_mapping({1: rng.uniform(-0.3, 0.3), -2: rng.uniform(-0.3, 0.3)}), sings)
    n = int(rng.integers(1, 200))
    for res in (ehrhardt_asym(f, n), szego_asym(f.smooth, n)):
        assert res.value.log == log_sum_of_terms(res)


def test_precondition_errors():
    wide = FHSymbol(SmoothPart(), (Singularity(0.0, 0, 0.6), Singularity(2.0, 0, -0.5)))
    with pytest.raises(HypothesisError, match="beta_0 - Re beta_1"):
        ehrhardt_asym(wide, 10)
    degenerate = FHSymbol(SmoothPart(), (Singularity(0.0, -0.4, 0.6), Singularity(2.0, 0, 0.1)))
    with pytest.raises(DegenerateRepresentationError):
        ehrhardt_asym(degenerate, 10)


def test_delta_scale_definition():
    assert delta_scale([0.3, -0.1], 10) == 10 ** (2 * (0.4 - 1))
    assert delta_scale([], 10) == 0.0


# -- Basor-Tracy -------------------------------------------------------------------

def test_basor_tracy_even_and_odd():
    f = basor_tracy_symbol()
    for n in (10, 40, 60):
        v = basor_tracy_asym(f, n).value.to_complex()
        assert abs(v.imag) < 1e-12 * abs(v)
        assert abs(v.real / (math.sqrt(2 / n) * BT_CONSTANT) - 1) < 1e-12
    for n in (9, 41):
        assert basor_tracy_asym(f, n).value.is_zero


def test_basor_tracy_components():
    n = 30
    res = basor_tracy_asym(basor_tracy_symbol(), n)
    assert len(res.components) == 2
    for comp in res.components:
        assert abs(math.exp(comp.value.log_modulus) / ((2 * n) ** -0.5 * BT_CONSTANT) - 1) < 1e-12
        assert comp.value.log == log_sum_of_terms(comp)
    assert lsum([c.value for c in res.components]) == res.value


def test_basor_tracy_singleton_equals_product_formula():
    f = FHSymbol(SmoothPart.from_mapping({1: 0.1}), (Singularity(0.0, 0.2, 0.3), Singularity(2.0, 0.1, -0.1)))
    for n in (5, 50):
        assert basor_tracy_asym(f, n).value == ehrhardt_asym(f, n).value


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_basor_tracy_orbit_invariance(seed):
    rng = np.random.default_rng(seed)
    thetas = (0.0, float(rng.uniform(1, 2.5)), float(rng.uniform(3.5, 5.5)))
    base = [complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.1, 0.1)) for _ in thetas]
    if rng.random() < 0.5:
        base[1] = base[0] - 1  # a seminorm-one case with several representations
    alphas = [rng.uniform(0.0, 0.6) for _ in thetas]
    f = FHSymbol(SmoothPart(), tuple(Singularity(t, a, b) for t, a, b in zip(thetas, alphas, base)))
    k = [int(x) for x in rng.integers(-2, 3, size=2)]
    k.append(-sum(k))
    g = f.with_betas([b + s for b, s in zip(base, k)])
    n = int(rng.integers(2, 80))
    # f = prod_j z_j^{k_j} g up to the relabelling, so D_n(f) = e^{i n sum k_j theta_j} D_n(g)
    lhs = basor_tracy_asym(f, n).value
    rhs = basor_tracy_asym(g, n).value
    factor = cmath.exp(1j * n * sum(s * t for s, t in zip(k, thetas)))
    if lhs.is_zero or rhs.is_zero:
        assert lhs.is_zero and rhs.is_zero
        return
    assert abs(lhs.to_complex() / (factor * rhs.to_complex()) - 1) < 1e-12


# -- shifted extremal beta (bt1) ---------------------------------------------------------------------

def test_bt1_reproduces_basor_tracy():
    half = FHSymbol(SmoothPart(), (Singularity(0.0, 0, 0.5), Singularity(math.pi, 0, 0.5)))
    f = basor_tracy_symbol()
    for n in (10, 11, 40):
        a = bt1_asym(half, 1, -1, n).value
        b = basor_tracy_asym(f, n).value
        if b.is_zero:
            assert a.is_zero
        else:
            assert a.relative_difference(b) < 1e-12


def test_bt1_single_extremal_index():
    f = FHSymbol(SmoothPart.from_mapping({1: 0.2}), (Singularity(0.0, 0.25, 0.3), Singularity(2.0, 0.2, -0.1)))
    n = 20
    res = bt1_asym(f, 0, +1, n)
    shifted = f.with_betas([0.3, 0.9])
    expected = ehrhardt_asym(shifted, n).value.log + 1j * n * (2.0 - 0.0)
    assert abs(res.value.log - expected) < 1e-12


def test_bt1_against_exact_determinant():
    f = FHSymbol(SmoothPart(), (Singularity(0.0, 0.25, 0.3), Singularity(2.0, 0.2, -0.1)))
    n = 48
    plus = f.with_betas([1.3, -0.1])
    exact = toeplitz_logdet(fourier_coeffs(plus, n), n)
    assert bt1_asym(f, 0, +1, n).value.relative_difference(exact) < 0.10


def test_bt1_hypotheses():
    one = FHSymbol(SmoothPart(), (Singularity(0.0, 0.3, 0.2),))
    with pytest.raises(HypothesisError):
        bt1_asym(one, 0, 1, 10)
    vanishing = FHSymbol(SmoothPart(), (Singularity(0.0, 0.2, 0.2), Singularity(2.0, 0.1, 0.1)))
    with pytest.raises(HypothesisError):
        bt1_asym(vanishing, 0, 1, 10)


# -- orthogonal polynomials ------------------------------------------------------------------

def test_poly_without_singularities():
    f = FHSymbol(SmoothPart.from_mapping({0: 0.3, 1: 0.2, -1: 0.1}))
    p = poly_asym(f, 20)
    assert abs(p.chi_sq - math.exp(-0.3)) < 1e-15
    assert p.Phi0 == 0 and p.hatPhi0 == 0


def test_poly_single_jump_against_golden():
    f = FHSymbol(SmoothPart(), (Singularity(0.0, 0, 0.5),))
    for n in (32, 64):
        p = poly_asym(f, n)
        ref = GOLDEN["jump_half_poly"][str(n)]
        assert abs(p.chi_sq - ref["chi_sq_prev"]) < 3 / n ** 2
        assert abs(p.chi_sq - (1 + 1 / (4 * n))) < 1 / n ** 2
        assert abs(p.Phi0 / complex(*ref["Phi0"]) - 1) < 0.1
        assert abs(p.hatPhi0 / complex(*ref["hatPhi0"]) - 1) < 0.1


def test_poly_two_singularities_within_delta_scale():
    f = FHSymbol(SmoothPart(), (Singularity(0.0, 0.2, 0.3), Singularity(2.5, 0.1, -0.3)))
    op = szego_recursion(fourier_coeffs(f, 129), 128)
    for n in (32, 64, 128):
        p = poly_asym(f, n)
        assert abs(p.hatPhi0 / op.hat_monic[n][0] - 1) < p.delta
        assert abs(p.Phi0 / op.monic[n][0] - 1) < p.delta
        # the recurrence chi_n^2 - chi_{n-1}^2 = phi_n(0) hat-phi_n(0) holds for the predicted terms
        rr3 = (p.chi_sq_next - p.chi_sq) - p.chi_sq_next * p.Phi0 * p.hatPhi0
        assert abs(rr3) < p.chi_sq_error


def test_nu_factors_nonzero():
    f = FHSymbol(SmoothPart(), (Singularity(0.0, 0.2, 0.3), Singularity(2.5, 0.1, -0.3)))
    assert all(abs(x) > 0 for x in nu_factors(f).nu)


# -- Hankel ------------------------------------------------------------------------------------

def test_dn_one():
    for n, ref in GOLDEN["legendre_logdet"].items():
        assert abs(log_dn_one(int(n)) - ref) < 1e-11 * max(1.0, abs(ref))
    # beyond the exact product the large-n form takes over
    n = 201
    exact = n * n * math.log(2) + sum(3 * math.lgamma(k + 1) - math.lgamma(n + k + 1) for k in range(n))
    assert abs(log_dn_one(n) - exact) < 1e-5


def test_hankel_unit_weight_is_dn_one():
    for n in (3, 17):
        res = hankel_asym(HankelWeight(), n)
        assert abs(res.value.log_modulus - log_dn_one(n)) < 1e-12


def test_hankel_chebyshev():
    w = HankelWeight(alpha_plus=-0.25, alpha_minus=-0.25)
    errs = []
    for n in (8, 16, 24, 32):
        pred = hankel_asym(w, n).value.log_modulus
        errs.append(abs(math.exp(pred - GOLDEN["chebyshev_logdet"][str(n)]) - 1))
    assert errs[-1] < 0.10
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_hankel_node_at_origin():
    w = HankelWeight(nodes=(Node(0.0, 0, 0.2),))
    seq = route_hankel_sequence(w, 48)
    errs = []
    for n in (8, 16, 32, 48):
        res = hankel_asym(w, n)
        assert res.term("oscillatory").log == 0
        errs.append(res.value.relative_difference(seq[n]))
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_hankel_boundary_beta_unsupported():
    with pytest.raises(HypothesisError):
        hankel_asym(HankelWeight(nodes=(Node(0.1, 0, 0.5),)), 10)


# -- Toeplitz + Hankel ----------------------------------------------------------------------------

@pytest.mark.parametrize("variant, exact", [("plus", 2.0), ("minus2", 1.0), ("plus1", 1.0), ("minus1", 1.0)])
def test_tph_unit_symbol(variant, exact):
    c = fourier_coeffs(FHSymbol(), 70)
    for n in (4, 32):
        pred = tph_asym(FHSymbol(), n, variant).value
        det = tph_logdet(c, n, variant)
        assert abs(det.to_complex() - exact) < 1e-12
        assert pred.relative_difference(det) < 0.10


def test_tph_general_even_symbol_trend():
    f = FHSymbol(SmoothPart.from_mapping({1: 0.2, -1: 0.2}),
                 (Singularity(0.0, 0.3), Singularity(1.2, 0.2, 0.15), Singularity(2 * math.pi - 1.2, 0.2, -0.15),
                  Singularity(math.pi, 0.1)))
    c = fourier_coeffs(f, 2 * 48 + 2)
    for variant in ("plus", "minus1"):
        errs = [tph_asym(f, n, variant).value.relative_difference(tph_logdet(c, n, variant)) for n in (12, 24, 48)]
        assert errs[-1] < errs[0] and errs[-1] < 0.1


def test_tph_rejects_odd_symbol():
    with pytest.raises(HypothesisError):
        tph_asym(FHSymbol(SmoothPart.from_mapping({1: 0.3})), 10, "plus")


def test_basor_tracy_exact_matches_prediction_trend():
    c = basor_tracy_coefficients(60)
    f = basor_tracy_symbol()
    errs = [basor_tracy_asym(f, n).value.relative_difference(toeplitz_logdet(c, n)) for n in (10, 30, 60)]
    assert errs[0] > errs[1] > errs[2]
