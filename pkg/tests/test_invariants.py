from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lefschetz.errors import NonIntegral
from lefschetz.formats import parse_word
from lefschetz.invariants import (
    FibrationData,
    InvariantReport,
    UserSupplied,
    adjunction_genus,
    chern_numbers,
    compute_report,
    euler_char,
    fibre_sum_invariants,
    first_homology,
    hodge_lambda,
    signature_genus2,
    signature_genus3_hyperelliptic,
    t_effect,
)
from lefschetz.surface import standard_alphabet
from lefschetz.words import TwistCensus, TwistWord


def test_euler_char():
    assert euler_char(3, 74) == 66
    assert euler_char(2, 30, 2) == 24
    assert euler_char(4, 0) == -12
    with pytest.raises(ValueError):
        euler_char(2, -1)


def test_hyperelliptic_signature():
    assert signature_genus3_hyperelliptic(84, 0) == -48
    assert signature_genus3_hyperelliptic(0, 0) == 0
    with pytest.raises(NonIntegral):
        signature_genus3_hyperelliptic(74, 0)


def test_genus2_signature():
    assert signature_genus2(30, 0, 2) == -16
    assert signature_genus2(6, 2) == -4
    assert signature_genus2(0, 0) == 0
    with pytest.raises(NonIntegral):
        signature_genus2(1, 0)


def test_lambda_and_chern():
    assert hodge_lambda(-48, TwistCensus(84)) == 9
    assert hodge_lambda(-42, 74) == 8
    assert hodge_lambda(0, 0) == 0
    assert chern_numbers(24, -16) == (0, 24)
    assert chern_numbers(66, -42) == (6, 66)


def test_adjunction():
    assert adjunction_genus(0, 2, 1) == 2
    assert adjunction_genus(1, 1, 1) == 2
    assert adjunction_genus(0, 2, 2) == 5
    with pytest.raises(NonIntegral):
        adjunction_genus(1, 0, 1)
    with pytest.raises(ValueError):
        adjunction_genus(-9, 1, 1)


def test_first_homology():
    g3 = standard_alphabet(3)
    assert first_homology(parse_word("(a1 b1 a2 b2 a3 b3)^14", g3)) == []
    assert first_homology(TwistWord(g3)) == [0] * 6
    assert first_homology(parse_word("a1", standard_alphabet(1))) == [0]


def test_horikawa_and_w(corpus):
    hor = compute_report(corpus["horikawa_g3"].fibration_data())
    assert (hor.e, hor.sigma, hor.c1_sq, hor.lam) == (76, -48, 8, 9)
    w = compute_report(corpus["fuller_W"].fibration_data(corpus))
    assert (w.census.total, w.e, w.sigma, w.c1_sq, w.lam) == (74, 66, -42, 6, 8)
    assert t_effect(hor, "backward") == InvariantReport.from_counts(3, 66, -42, TwistCensus(74), notes=hor.notes)


def test_t_effect():
    zero = InvariantReport.from_counts(3, 0, 0, TwistCensus(0))
    fwd = t_effect(zero)
    assert (fwd.e, fwd.sigma, fwd.c1_sq) == (10, -6, 2)
    assert t_effect(fwd, "backward") == zero
    with pytest.raises(ValueError):
        t_effect(zero, "up")


def z_report(r: int) -> InvariantReport:
    return InvariantReport.from_counts(3, 7 * r - 8, -4 * r, TwistCensus(7 * r))


def test_fibre_sum_invariants(corpus):
    w = compute_report(corpus["fuller_W"].fibration_data(corpus))
    ww = fibre_sum_invariants(w, w, 3)
    assert (ww.e, ww.sigma) == (140, -84)
    assert ww.noether_functional() == -16
    trivial = InvariantReport.from_counts(3, 2 * (2 - 6), 0, TwistCensus(0))
    same = fibre_sum_invariants(w, trivial)
    assert (same.e, same.sigma) == (w.e, w.sigma)
    for r in range(1, 6):
        assert fibre_sum_invariants(z_report(r), w).noether_functional() == w.noether_functional() - r
    with pytest.raises(ValueError):
        fibre_sum_invariants(w, InvariantReport.from_counts(2, 0, 0, TwistCensus(0)))


@given(st.integers(0, 50), st.integers(-40, 0), st.integers(0, 50), st.integers(-40, 0), st.sampled_from([0, 1]))
def test_t_commutes_with_fibre_sum(n1, s1, n2, s2, which):
    r1 = InvariantReport.from_counts(3, n1 - 8, s1, TwistCensus(n1))
    r2 = InvariantReport.from_counts(3, n2 - 8, s2, TwistCensus(n2))
    if which:
        lhs = fibre_sum_invariants(t_effect(r1), r2)
    else:
        lhs = fibre_sum_invariants(r1, t_effect(r2))
    assert lhs == t_effect(fibre_sum_invariants(r1, r2))


def test_corpus_report_properties(corpus):
    for entry in corpus.fibrations():
        rep = compute_report(entry.fibration_data(corpus))
        assert rep.c1_sq == 2 * rep.e + 3 * rep.sigma
        assert rep.lam == Fraction(rep.sigma_fib + rep.census.total, 4)
        assert (4 * rep.lam).denominator == 1
        assert rep.lam > 0
        assert rep.h1 == ()


def test_genus2_sign_note(corpus):
    rep = compute_report(corpus["g2_word2"].fibration_data())
    assert rep.sigma == -16 and rep.notes


def test_fibration_data_validation():
    g3 = standard_alphabet(3)
    with pytest.raises(ValueError):
        FibrationData(2, parse_word("a1", g3))
    with pytest.raises(ValueError):
        FibrationData(3, parse_word("a1^-1", g3))
    with pytest.raises(ValueError):
        FibrationData(2, parse_word("a1", standard_alphabet(2)))
    rep = compute_report(FibrationData(3, parse_word("a1 b1", g3), 0, UserSupplied(-1)))
    assert rep.sigma == -1 and rep.e == -6
