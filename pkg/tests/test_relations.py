import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial import chebyshev

import oracles as O
from fhlab.asym import log_dn_one
from fhlab.corpus import IDENTITIES, builtin_cases, random_even_symbol, random_symbol, random_weight
from fhlab.exactdet import hankel_logdet, szego_recursion
from fhlab.logscaled import LogScaled
from fhlab.relations import (check_christoffel_darboux, check_hankel_toeplitz, check_parametrix_jumps,
                             check_shift_identity, check_szego_map, check_tph_reduction, interval_monic,
                             relative_residual, route_hankel_sequence, route_hankel_via_toeplitz)
from fhlab.symbol import FHSymbol, HankelWeight, Node, Singularity, SmoothPart, fourier_coeffs, hankel_moments

seeds = st.integers(0, 2 ** 32 - 1)


def test_relative_residual_zero_handling():
    z = LogScaled.zero()
    assert relative_residual(z, z) == 0.0
    assert relative_residual(z, LogScaled.one()) == math.inf


# -- shifted symbols ------------------------------------------------------------

@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from([1, -1, 2, -2, 3]), st.integers(1, 8))
def test_shift_identity(seed, ell, n):
    f = random_symbol(np.random.default_rng(seed))
    rep = check_shift_identity(f, ell, n)
    assert rep.passed, rep
    # the left side is an ordinary Toeplitz determinant of the shifted coefficients
    c = fourier_coeffs(f, n + abs(ell))
    ref = complex(O.toeplitz_det(lambda j: mp.mpc(c[j - ell]), n))
    assert abs(rep.lhs.to_complex() / ref - 1) < 1e-9


def test_shift_rejects_large_shift():
    with pytest.raises(ValueError):
        check_shift_identity(FHSymbol(), 4, 3)


# -- Hankel and Toeplitz --------------------------------------------------------------

@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 10))
def test_hankel_toeplitz_identity(seed, n):
    rep = check_hankel_toeplitz(random_weight(np.random.default_rng(seed)), n)
    assert rep.passed, rep


def test_route_reproduces_legendre_closed_form():
    seq = route_hankel_sequence(HankelWeight(), 20)
    for n in range(1, 21):
        assert abs(seq[n].log_modulus - log_dn_one(n)) < 1e-8 * max(1.0, abs(log_dn_one(n)))
        assert abs(math.remainder(seq[n].phase, 2 * math.pi)) < 1e-8


def test_route_sign_through_complex_weight():
    w = HankelWeight(nodes=(Node(0.1, 0.2, 0.15 + 0.05j),))
    seq = route_hankel_sequence(w, 10)
    for n in (1, 4, 10):
        direct = check_hankel_toeplitz(w, n)
        assert direct.passed
        assert route_hankel_via_toeplitz(w, n).relative_difference(seq[n]) < 1e-14
    # the direct LU and the route agree including the sign at every order
    m = hankel_moments(w, 18)
    for n in range(1, 11):
        assert hankel_logdet(m, n, warn=False).relative_difference(seq[n]) < 1e-8


# -- Toeplitz+Hankel -------------------------------------------------------------------

@pytest.mark.parametrize("variant", ["plus", "minus2", "plus1", "minus1"])
def test_tph_reduction(variant):
    rng = np.random.default_rng(7)
    for n in (1, 3, 8):
        rep = check_tph_reduction(random_even_symbol(rng), n, variant)
        assert rep.passed, rep
    one = check_tph_reduction(FHSymbol(), 6, variant)
    assert one.passed
    assert abs(one.lhs.to_complex() - (2 if variant == "plus" else 1)) < 1e-12


def test_tph_reduction_requires_even_symbol():
    with pytest.raises(ValueError):
        check_tph_reduction(FHSymbol(SmoothPart.from_mapping({1: 0.2})), 3, "plus")


# -- interval polynomials ----------------------------------------------------------------

def test_interval_polynomials_of_unit_symbol_are_chebyshev():
    op = szego_recursion(fourier_coeffs(FHSymbol(), 12), 12)
    for n in range(1, 7):
        t = np.zeros(n + 1)
        t[n] = 1
        expected = chebyshev.cheb2poly(t) / 2 ** (n - 1)
        assert np.allclose(interval_monic(op, n), expected, atol=1e-12)


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 8))
def test_szego_map(seed, n):
    rep = check_szego_map(random_even_symbol(np.random.default_rng(seed)), n)
    assert rep.passed, rep


def test_szego_map_with_singularities():
    f = FHSymbol(SmoothPart.from_mapping({1: 0.1, -1: 0.1}),
                 (Singularity(0.0, 0.25), Singularity(1.1, 0.1, 0.2), Singularity(2 * math.pi - 1.1, 0.1, -0.2)))
    rep = check_szego_map(f, 6)
    assert rep.passed, rep


# -- Christoffel-Darboux and the parametrix -------------------------------------------------

@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(1, 10))
def test_christoffel_darboux(seed, n):
    rng = np.random.default_rng(seed)
    pts = [(0.8 * np.exp(0.3j), 1.3 * np.exp(2.1j)), (np.exp(1.7j), np.exp(1.7j))]
    rep = check_christoffel_darboux(random_symbol(rng), n, pts)
    assert rep.passed, rep


@settings(max_examples=5, deadline=None)
@given(st.floats(-0.4, 1.0), st.floats(-0.45, 0.45), st.floats(-0.3, 0.3))
def test_parametrix_jumps(alpha, beta_re, beta_im):
    rep = check_parametrix_jumps(alpha, complex(beta_re, beta_im), np.geomspace(0.05, 30, 8))
    assert rep.passed, rep


def test_mismatched_sides_fail():
    rng = np.random.default_rng(1)
    f = random_even_symbol(rng)
    g = random_even_symbol(rng)
    rep = check_tph_reduction(f, 5, "plus", coeffs=fourier_coeffs(g, 11))
    assert not rep.passed and rep.relative_residual > 1e-4


@pytest.mark.parametrize("identity", IDENTITIES)
def test_builtin_corpus_small(identity):
    cases = builtin_cases(identity, count=8, seed=11)
    assert len(cases) == 8
    assert all(c.run().passed for c in cases)
