from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from lefschetz.errors import IllegalMove
from lefschetz.formats import parse_word
from lefschetz.surface import Curve, identity_matrix, standard_alphabet
from lefschetz.words import (
    CHAIN3,
    Relation,
    RewriteMove,
    Trace,
    TwistCensus,
    TwistWord,
    abelianized_residue,
    apply_move,
    apply_t,
    apply_t_inverse,
    check_embedding,
    check_trace,
    classify_twists,
    cyclically_equal,
    fibre_sum,
    homology_image,
    legal_moves,
    verify_relation_homology,
)

from oracles import image

G3 = standard_alphabet(3)
G2 = standard_alphabet(2, closing_curve=True)
CHAIN_EMB = {"U": "a1", "V": "b1", "W": "a2", "D1": "d2", "D2": "e2"}


def w3(text: str) -> TwistWord:
    return parse_word(text, G3)


def test_word_validation():
    with pytest.raises(KeyError):
        TwistWord(G3, ("zz",))
    with pytest.raises(ValueError):
        TwistWord(G3, (("a1", 2),))
    w = w3("a1 b1^-1")
    assert w.inverse() == w3("b1 a1^-1")
    assert not w.is_positive
    assert (w * 2) == w + w
    assert w.rotate(1) == w3("b1^-1 a1")


@settings(max_examples=25)
@given(st.lists(st.tuples(st.sampled_from(G3.ids), st.sampled_from([1, -1])), max_size=8))
def test_homology_image_matches_oracle(letters):
    w = TwistWord(G3, tuple(letters))
    assert homology_image(w) == tuple(tuple(int(x) for x in row) for row in image(w, G3).tolist())


def test_word_times_inverse_is_identity():
    w = w3("a1 b2 d2 a3^-1 b1")
    assert homology_image(w + w.inverse()) == identity_matrix(6)


def test_chain_relation_holds_in_homology():
    rel = Relation(w3("(a1 b1 a2)^4"), w3("d2 e2"))
    assert verify_relation_homology(rel)
    assert not verify_relation_homology(Relation(w3("(a1 b1 a2)^4"), w3("d2 b3")))


# -- individual moves -------------------------------------------------------

def test_braid():
    assert apply_move(w3("a1 b1 a1"), RewriteMove("braid", 0)) == w3("b1 a1 b1")
    assert apply_move(w3("a1^-1 b1^-1 a1^-1"), RewriteMove("braid", 0)) == w3("b1^-1 a1^-1 b1^-1")
    with pytest.raises(IllegalMove, match="intersection"):
        apply_move(w3("a1 a2 a1"), RewriteMove("braid", 0))
    with pytest.raises(IllegalMove, match="pattern"):
        apply_move(w3("a1 b1 b1"), RewriteMove("braid", 0))
    with pytest.raises(IllegalMove):
        apply_move(w3("a1 b1"), RewriteMove("braid", 0))


def test_commute():
    assert apply_move(w3("a1 a2"), RewriteMove("commute", 0)) == w3("a2 a1")
    assert apply_move(w3("d2 e2"), RewriteMove("commute", 0)) == w3("e2 d2")
    with pytest.raises(IllegalMove, match="intersection"):
        apply_move(w3("a1 b1"), RewriteMove("commute", 0))
    # d2 is disjoint from b1 in this alphabet, but not from b2
    apply_move(w3("d2 b1"), RewriteMove("commute", 0))
    with pytest.raises(IllegalMove):
        apply_move(w3("d2 b2"), RewriteMove("commute", 0))


def test_cyclic_only_on_identity_relations():
    w = w3("a1 b1 a2")
    assert apply_move(w, RewriteMove("cyclic_shift", 1), to_identity=True) == w3("b1 a2 a1")
    with pytest.raises(IllegalMove, match="identity"):
        apply_move(w, RewriteMove("cyclic_shift", 1))


def test_cancel():
    assert apply_move(w3("a1 b1 b1^-1"), RewriteMove("cancel_pair", 1)) == w3("a1")
    with pytest.raises(IllegalMove):
        apply_move(w3("a1 b1"), RewriteMove("cancel_pair", 0))


def test_substitution_both_directions():
    w = w3("a3 d2 e2 b3")
    fwd = apply_move(w, RewriteMove("axiom_substitute", 1, "chain3", CHAIN_EMB, "forward"))
    assert fwd == w3("a3 (a1 b1 a2)^4 b3")
    back = apply_move(fwd, RewriteMove("axiom_substitute", 1, "chain3", CHAIN_EMB, "backward"))
    assert back == w


def test_template_mismatch_is_rejected():
    with pytest.raises(IllegalMove, match="needs i"):
        check_embedding(G3, CHAIN3, {"U": "a1", "V": "a2", "W": "b2", "D1": "d2", "D2": "e2"})


def test_template_legal_but_homology_false_is_rejected():
    roles = dict(CHAIN_EMB, D2="b3")
    with pytest.raises(IllegalMove, match="homology"):
        check_embedding(G3, CHAIN3, roles)
    w = w3("d2 b3")
    with pytest.raises(IllegalMove):
        apply_move(w, RewriteMove("axiom_substitute", 0, "chain3", roles, "forward"))


def test_bad_embeddings():
    with pytest.raises(IllegalMove, match="roles"):
        check_embedding(G3, CHAIN3, {"U": "a1"})
    with pytest.raises(IllegalMove, match="distinct"):
        check_embedding(G3, CHAIN3, dict(CHAIN_EMB, D2="d2"))
    with pytest.raises(IllegalMove, match="unknown"):
        apply_move(w3("d2 e2"), RewriteMove("axiom_substitute", 0, "nope", CHAIN_EMB))
    with pytest.raises(IllegalMove, match="pattern"):
        apply_move(w3("e2 d2"), RewriteMove("axiom_substitute", 0, "chain3", CHAIN_EMB))


def test_move_validation():
    with pytest.raises(ValueError):
        RewriteMove("teleport", 0)
    with pytest.raises(ValueError):
        RewriteMove("axiom_substitute", 0)
    with pytest.raises(ValueError):
        RewriteMove("axiom_substitute", 0, "chain3", CHAIN_EMB, "sideways")


# -- traces --------------------------------------------------------------------

def test_corpus_trace_checks(corpus):
    entry = corpus["fuller_W"]
    trace = entry.trace()
    result = check_trace(trace)
    assert result and result.end == entry.word()
    kinds = {m.kind for m in trace.moves}
    assert kinds <= {"braid", "commute", "cyclic_shift", "axiom_substitute"}


def test_corrupted_trace_reports_index(corpus):
    trace = corpus["fuller_W"].trace()
    moves = list(trace.moves)
    k = next(i for i, m in enumerate(moves) if m.kind == "braid")
    moves[k] = RewriteMove("braid", moves[k].position + 1)
    bad = Trace(trace.start, moves, trace.claimed_end)
    result = check_trace(bad)
    assert not result
    assert result.failed_at is not None and result.failed_at <= k


def test_wrong_claimed_end(corpus):
    trace = corpus["fuller_W"].trace()
    bad = Trace(trace.start, trace.moves, trace.start)
    result = check_trace(bad)
    assert not result and result.failed_at == len(trace.moves)


# -- T operation, fibre sum, census -------------------------------------------

def test_t_changes_length_by_ten():
    w = w3("b3 d2 e2 a3")
    longer = apply_t(w, 1, CHAIN_EMB)
    assert len(longer) == len(w) + 10
    assert apply_t_inverse(longer, 1, CHAIN_EMB) == w
    assert homology_image(longer) == homology_image(w)


def test_fibre_sum_and_residue(corpus):
    r1, r2 = corpus["g2_word1"].relation(), corpus["g2_word2"].relation()
    total = fibre_sum(r1, r2)
    assert len(total.lhs) == 50
    assert homology_image(total.lhs) == identity_matrix(4)
    assert abelianized_residue(total.lhs) == 0
    with pytest.raises(ValueError):
        fibre_sum(r1, corpus["horikawa_g3"].relation())


def test_census():
    sep = Curve("s", (0, 0, 0, 0, 0, 0), separating=True, split_genus=1)
    alph = G3.extended([sep], {("s", c): 0 for c in ("a1", "a3", "b3")})
    w = TwistWord(alph, ("a1", "s", "s", "a3"))
    c = classify_twists(w)
    assert (c.n, c.s, c.total, c.delta(0), c.delta(1), c.separating(1)) == (2, 2, 4, 2, 2, 2)
    assert c + TwistCensus(1) == TwistCensus(3, {1: 2})
    with pytest.raises(ValueError):
        classify_twists(w3("a1^-1"))
    with pytest.raises(ValueError):
        abelianized_residue(w)


def test_cyclically_equal():
    assert cyclically_equal(w3("a1 b1 a2"), w3("a2 a1 b1"))
    assert not cyclically_equal(w3("a1 b1 a2"), w3("a2 b1 a1"))


# -- random walks ----------------------------------------------------------------

def test_legal_moves_all_apply(corpus):
    w = corpus["fuller_W"].word()
    moves = legal_moves(w, to_identity=True)
    assert {"commute", "cyclic_shift", "axiom_substitute"} <= {m.kind for m in moves}
    for m in moves:
        apply_move(w, m, to_identity=True)
    small = w3("a1 b1 a1 a1^-1 d2 e2")
    kinds = {m.kind for m in legal_moves(small)}
    assert {"braid", "commute", "cancel_pair", "axiom_substitute"} <= kinds
    assert "cyclic_shift" not in kinds


@settings(max_examples=20)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["horikawa_g3", "g2_word1", "g2_word2", "fuller_W"]))
def test_random_walk_preserves_image(seed, entry_id):
    from lefschetz.corpus import load_corpus

    rng = random.Random(seed)
    w = load_corpus()[entry_id].word()
    start = homology_image(w)
    for _ in range(15):
        moves = legal_moves(w, to_identity=True)
        w = apply_move(w, rng.choice(moves), to_identity=True)
    assert homology_image(w) == start
