from __future__ import annotations

import warnings
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lefschetz.invariants import InvariantReport, compute_report, t_effect
from lefschetz.moduli import (
    CHOW,
    DivisorClass,
    NormalizationWarning,
    SphereData,
    bn_constant,
    brill_noether_class,
    covering_closed_form,
    covering_divisor,
    covering_sequence_term,
    covering_term,
    hyperelliptic_class,
    pair,
    printed_closed_form,
    t_pairing_delta,
    weierstrass_class,
)
from lefschetz.words import TwistCensus

F = Fraction


def coeffs(c: DivisorClass):
    return (c.coeff_lambda, c.coeff_delta, c.coeff_psi, c.coeff_omega_rd)


def test_hyperelliptic_and_bn():
    assert coeffs(hyperelliptic_class()) == (9, (-1, -3), (), 0)
    assert coeffs(hyperelliptic_class(CHOW)) == (18, (-2, -3), (), 0)
    doubled = hyperelliptic_class().scale(2)
    assert doubled.coeff_lambda == 18 and doubled.coeff_delta[0] == -2 and doubled.coeff_delta[1] == -6
    assert bn_constant(2) == F(3, 2)
    assert bn_constant(3) == 1
    assert coeffs(brill_noether_class(3)) == coeffs(hyperelliptic_class())
    assert coeffs(brill_noether_class(5)) == (8, (-1, -4, -6), (), 0)
    with pytest.raises(ValueError):
        brill_noether_class(4)
    with pytest.raises(ValueError):
        hyperelliptic_class("other")


def test_covering_divisor():
    d = covering_divisor(3, 4)
    assert d.coeff_lambda == 6 and d.coeff_delta[0] == F(-2, 3) and d.coeff_psi == (-1,) * 4
    d5 = covering_divisor(5, 9)
    assert d5.coeff_lambda == 8 and d5.coeff_delta == (-1, -4, -6) and len(d5.coeff_psi) == 9
    sphere = SphereData(3, 4, F(5, 2), (7, 0), (0, 0, 0, 0))
    bare = SphereData(3, 0, F(5, 2), (7, 0))
    assert pair(d, sphere) == pair(brill_noether_class(3), bare) / bn_constant(2)
    with pytest.raises(ValueError):
        covering_divisor(4, 1)


def test_pairings_on_corpus(corpus):
    hor = SphereData.from_report(compute_report(corpus["horikawa_g3"].fibration_data()))
    w = SphereData.from_report(compute_report(corpus["fuller_W"].fibration_data(corpus)))
    assert (w.lambda_value, w.delta_values) == (8, (74, 0))
    assert pair(hyperelliptic_class(), w) == -2
    assert pair(hyperelliptic_class(), hor) == -3
    assert pair(DivisorClass(3), w) == 0
    assert pair(hyperelliptic_class(), hor) - t_pairing_delta(9, 1) == pair(hyperelliptic_class(), w)


def test_weierstrass(corpus):
    c = weierstrass_class()
    assert coeffs(c) == (-1, (0, -1), (0,), 3)
    sphere = SphereData(2, 1, F(7, 4), (5, 0), (1,), 1)
    assert pair(c, sphere) == 3 - F(7, 4)
    rep = compute_report(corpus["g2_word3"].fibration_data())
    s = SphereData.from_report(rep)
    assert s.omega_rd_value == 1 and s.psi_values == (1,)
    assert pair(c, s) == 3 - rep.lam


def test_t_pairing_delta():
    assert t_pairing_delta(9, 1) == -1
    assert t_pairing_delta(10, 1) == 0
    assert t_pairing_delta(0, 0) == 0


@given(st.fractions(max_denominator=6), st.fractions(max_denominator=6), st.integers(0, 100), st.integers(-60, 0))
def test_t_effect_shifts_pairing_linearly(a, b, n, sigma):
    cls = DivisorClass(3, 0, a, (-b,))
    rep = InvariantReport.from_counts(3, n - 8, sigma, TwistCensus(n))
    before = pair(cls, SphereData.from_report(rep))
    after = pair(cls, SphereData.from_report(t_effect(rep)))
    assert after - before == -(10 * b - a)


@given(st.integers(-200, 0), st.integers(0, 200))
def test_hyperelliptic_pairing_identity(sigma, delta0):
    s = SphereData.from_counts(3, sigma, (delta0, 0))
    e = delta0 - 8
    assert 4 * pair(hyperelliptic_class(), s) == 9 * sigma + 5 * e + 40


def test_chow_warning_and_mismatch():
    s = SphereData(3, 0, 1, (4, 1))
    with pytest.warns(NormalizationWarning):
        pair(hyperelliptic_class(CHOW), s)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        pair(hyperelliptic_class(CHOW), SphereData(3, 0, 1, (4, 0)))
        pair(hyperelliptic_class(), s)
    with pytest.raises(ValueError):
        pair(hyperelliptic_class(), SphereData(2, 0, 1, (4,)))
    with pytest.raises(ValueError):
        hyperelliptic_class() + hyperelliptic_class(CHOW)


def test_class_arithmetic():
    h = hyperelliptic_class()
    assert (h - h).is_zero()
    assert str(DivisorClass(2)) == "0"
    assert "lambda" in str(h)
    with pytest.raises(ValueError):
        DivisorClass(3, 0, 1, (1, 2, 3))
    with pytest.raises(ValueError):
        DivisorClass(3, 2, coeff_omega_rd=1)


def test_closed_form_symbolically():
    Kw, c1, c2, g = sympy.symbols("Kw c1 c2 g")
    k = (g + 1) / 2
    gp = (k * Kw + k**2 + 2) / 2  # omega^2 = 1
    b = k**2
    sigma = (c1 - 2 * c2) / 3
    delta0 = c2 + b + 4 * gp - 4
    lam = (sigma - b + delta0) / 4
    pipeline = (g + 3) * lam - (g + 1) / 6 * delta0 - b
    closed = (g + 1) * (g + 7) / 12 * Kw + (g + 3) / 12 * c1 + (1 - g) / 12 * c2
    assert sympy.simplify(pipeline - closed) == 0
    printed = closed - (g + 11) / 12 * c2 - (1 - g) / 12 * c2
    assert sympy.simplify(closed - printed - c2) == 0


def test_pipeline_equals_closed_form_grid():
    for Kw in (0, 1, 2):
        for c1 in (-1, 2, 5):
            for c2 in (1, 4, 7):
                if (c1 - 2 * c2) % 3:
                    continue
                for k in (2, 4, 6, 8):
                    value = covering_sequence_term(Kw, 1, c1, c2, k)
                    assert value == covering_closed_form(Kw, c1, c2, k)
                    assert value - printed_closed_form(Kw, c1, c2, k) == c2


def test_covering_examples():
    assert covering_sequence_term(0, 1, 0, 0, 2) == 0
    t = covering_term(0, 1, 0, 3, 4)
    assert t.value == F(1 - 7, 12) * 3
    assert t.divisor_genus == 7 and t.base_points == 16
    values = [covering_sequence_term(1, 1, 2, 1, k) for k in (2, 4, 6, 8)]
    assert values == sorted(values) and len(set(values)) == 4
    assert covering_term(1, 1, 2, 1, 2).notes  # pencil genus 4 is even
    with pytest.raises(ValueError):
        covering_sequence_term(0, 1, 0, 0, 3)
