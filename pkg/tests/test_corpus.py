from __future__ import annotations

import shutil

import pytest

from lefschetz.corpus import ENV_VAR, corpus_dir, data_dir, expected_matches, load_corpus, resolve_alphabet
from lefschetz.invariants import compute_report
from lefschetz.surface import identity_matrix
from lefschetz.words import homology_image, verify_relation_homology


def test_ids(corpus):
    assert set(corpus.ids) == {"horikawa_g3", "fuller_W", "g2_word1", "g2_word2", "g2_word3", "chain3"}
    assert "chain3" not in {e.id for e in corpus.fibrations()}
    with pytest.raises(LookupError):
        corpus["missing"]
    with pytest.raises(ValueError):
        corpus["chain3"].fibration_data()


def test_expected_reports_match(corpus):
    for entry in corpus.fibrations():
        rep = compute_report(entry.fibration_data(corpus))
        assert expected_matches(entry, rep) == [], entry.id


def test_powered_form_equals_expanded(corpus):
    for entry in corpus:
        assert entry.powered_word() == entry.word(), entry.id


def test_relations_hold_in_homology(corpus):
    for entry in corpus:
        rel = entry.relation()
        assert verify_relation_homology(rel), entry.id
        if rel.to_identity:
            assert homology_image(rel.lhs) == identity_matrix(2 * entry.genus)


def test_env_override(tmp_path, monkeypatch):
    target = tmp_path / "mine"
    shutil.copytree(data_dir() / "corpus", target)
    monkeypatch.setenv(ENV_VAR, str(target))
    assert corpus_dir() == target
    (target / "g2_word1.word").write_text("a1 a1^-1\n")
    entry = load_corpus()["g2_word1"]
    assert entry.directory == target
    assert len(entry.word()) == 2


def test_alphabet_lookup_failure():
    with pytest.raises(LookupError):
        resolve_alphabet("not_an_alphabet")
