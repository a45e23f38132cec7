"""Bundled relations and alphabets.

The corpus directory holds ``corpus.json`` (the index), one expanded
``<id>.word`` file per entry and optional ``.trace`` files.  Setting the
``LEFSCHETZ_CORPUS`` environment variable points lookups at another
directory with the same layout.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .formats import parse_alphabet, parse_relation, parse_trace, parse_word, read_text
from .invariants import EndoG3, FibrationData, Genus2Formula, InvariantReport, TRoute, UserSupplied
from .surface import CurveAlphabet, standard_alphabet
from .words import Relation, Trace, TwistWord

ENV_VAR = "LEFSCHETZ_CORPUS"


def data_dir() -> Path:
    return Path(str(resources.files("lefschetz") / "data"))


def corpus_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else data_dir() / "corpus"


@lru_cache(maxsize=None)
def _alphabet_from_file(path: str) -> CurveAlphabet:
    return parse_alphabet(read_text(path), source=path)


def resolve_alphabet(name: str, base: Path | None = None) -> CurveAlphabet:
    """Alphabet by bundled name (``g2``, ``g3``), ``g<N>`` for the plain chain, or file path."""
    for d in filter(None, (base, corpus_dir(), data_dir())):
        candidate = Path(d) / f"{name}.alphabet"
        if candidate.is_file():
            return _alphabet_from_file(str(candidate))
    m = re.fullmatch(r"g(\d+)", name)
    if m:
        return standard_alphabet(int(m[1]))
    path = Path(name) if base is None or Path(name).is_absolute() else base / name
    if path.is_file():
        return _alphabet_from_file(str(path))
    raise LookupError(f"no alphabet named {name!r}")


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    kind: str
    genus: int
    alphabet: str
    word_file: str
    powered: str
    base_points: int = 0
    provenance: str = ""
    signature_source: dict = field(default_factory=dict)
    expected: dict | None = None
    trace_file: str | None = None
    directory: Path = field(default_factory=corpus_dir, compare=False)

    @property
    def is_fibration(self) -> bool:
        return self.kind == "fibration"

    def load_alphabet(self) -> CurveAlphabet:
        return resolve_alphabet(self.alphabet, self.directory)

    def relation(self) -> Relation:
        path = self.directory / self.word_file
        return parse_relation(read_text(path), self.load_alphabet(), source=str(path))

    def word(self) -> TwistWord:
        return self.relation().lhs

    def powered_word(self) -> TwistWord:
        return parse_word(self.powered, self.load_alphabet(), source=f"{self.id} (powered form)")

    def trace(self) -> Trace | None:
        if not self.trace_file:
            return None
        path = self.directory / self.trace_file
        return parse_trace(read_text(path), lambda n: resolve_alphabet(n, self.directory), source=str(path))

    def fibration_data(self, corpus: Corpus | None = None) -> FibrationData:
        if not self.is_fibration:
            raise ValueError(f"corpus entry {self.id!r} is a relation, not a fibration")
        return FibrationData(self.genus, self.word(), self.base_points, self._source(corpus))

    def _source(self, corpus: Corpus | None):
        src = self.signature_source or {"kind": "user", "sigma": None}
        kind = src.get("kind")
        if kind == "endo_g3":
            return EndoG3()
        if kind == "genus2_formula":
            return Genus2Formula()
        if kind == "user":
            return UserSupplied(int(src["sigma"]))
        if kind == "t_route":
            corpus = corpus or load_corpus(self.directory)
            parent = corpus[src["parent"]].fibration_data(corpus)
            return TRoute(parent, tuple(src.get("steps", ("backward",))))
        raise ValueError(f"corpus entry {self.id!r}: unknown signature source {kind!r}")


def report_summary(rep: InvariantReport) -> dict:
    """The fields stored as ``expected`` in the corpus index."""
    return {
        "c1_sq": rep.c1_sq,
        "c2": rep.c2,
        "e": rep.e,
        "h1": list(rep.h1 or ()),
        "lambda": str(rep.lam),
        "n": rep.census.n,
        "s": rep.census.s,
        "sigma": rep.sigma,
    }


def expected_matches(entry: CorpusEntry, rep: InvariantReport) -> list[str]:
    """Differences between an entry's expected values and a recomputed report."""
    if entry.expected is None:
        return []
    got = report_summary(rep)
    diffs = []
    for key, want in sorted(entry.expected.items()):
        have = got.get(key)
        if key == "lambda":
            same = Fraction(str(want)) == Fraction(have)
        else:
            same = want == have
        if not same:
            diffs.append(f"{key}: expected {want}, got {have}")
    return diffs


class Corpus:
    """The entries of a corpus directory, keyed by id in index order."""

    def __init__(self, entries: list[CorpusEntry], directory: Path):
        self.directory = directory
        self._entries = {e.id: e for e in entries}

    def __getitem__(self, entry_id: str) -> CorpusEntry:
        try:
            return self._entries[entry_id]
        except KeyError:
            raise LookupError(f"no corpus entry {entry_id!r} (known: {', '.join(self._entries)})") from None

    def __contains__(self, entry_id) -> bool:
        return entry_id in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self):
        return len(self._entries)

    @property
    def ids(self) -> list[str]:
        return list(self._entries)

    def fibrations(self) -> list[CorpusEntry]:
        return [e for e in self if e.is_fibration]


def load_corpus(directory: Path | str | None = None) -> Corpus:
    directory = Path(directory) if directory is not None else corpus_dir()
    index = json.loads(read_text(directory / "corpus.json"))
    entries = [CorpusEntry(directory=directory, **item) for item in index["entries"]]
    return Corpus(entries, directory)
