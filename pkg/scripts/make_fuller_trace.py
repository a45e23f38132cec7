"""Generate the bundled derivation of Fuller's relation W from the Horikawa relation.

The first 24 letters of ``(a1 b1 a2 b2 a3 b3)^14`` are brought into the form
``(a1 b1 a2)^4 b2 a2 b1 a1 a3 b2 a2 b1 b3 a3 b2 a2`` by braid and commutation
moves, then ``(a1 b1 a2)^4`` is replaced by ``d2 e2`` with the chain3 axiom.

Braid moves are found by left-divisor extraction in the positive monoid: to
bring letter ``s`` to position ``i``, pull it left past the letter ``t``
there, commuting if ``s`` and ``t`` are disjoint and braiding ``t s t`` into
``s t s`` if they meet once.  This is a one-off construction aid; the
library only replays traces.

Usage: python scripts/make_fuller_trace.py [output-path]
"""

from __future__ import annotations

import sys
from pathlib import Path

from lefschetz.corpus import corpus_dir, resolve_alphabet
from lefschetz.formats import format_trace, parse_word
from lefschetz.words import BACKWARD, BRAID, COMMUTE, SUBSTITUTE, RewriteMove, Trace, check_trace

START = "(a1 b1 a2 b2 a3 b3)^14"
PREFIX_TARGET = "(a1 b1 a2)^4 b2 a2 b1 a1 a3 b2 a2 b1 b3 a3 b2 a2"
END = "d2 e2 b2 a2 b1 a1 a3 b2 a2 b1 b3 a3 b2 a2 (a1 b1 a2 b2 a3 b3)^10"


def extraction_moves(word: list[str], target: list[str], geometric) -> list[RewriteMove]:
    moves: list[RewriteMove] = []

    def extract(i: int, s: str):
        t = word[i]
        if t == s:
            return
        if geometric(s, t) == 0:
            extract(i + 1, s)
            word[i], word[i + 1] = word[i + 1], word[i]
            moves.append(RewriteMove(COMMUTE, i))
        else:
            extract(i + 1, s)
            extract(i + 2, t)
            assert word[i:i + 3] == [t, s, t]
            word[i:i + 3] = [s, t, s]
            moves.append(RewriteMove(BRAID, i))

    for i, s in enumerate(target):
        extract(i, s)
    return moves


def build() -> tuple[Trace, int]:
    alphabet = resolve_alphabet("g3")
    start = parse_word(START, alphabet)
    target = parse_word(PREFIX_TARGET, alphabet)
    letters = list(start.ids)
    moves = extraction_moves(letters, list(target.ids), alphabet.geometric)
    braid_count = len(moves)
    roles = (("U", "a1"), ("V", "b1"), ("W", "a2"), ("D1", "d2"), ("D2", "e2"))
    moves.append(RewriteMove(SUBSTITUTE, 0, "chain3", roles, BACKWARD))
    trace = Trace(start, tuple(moves), parse_word(END, alphabet))
    result = check_trace(trace)
    if not result:
        raise SystemExit(f"generated trace does not replay: move {result.failed_at}: {result.reason}")
    return trace, braid_count


def main(argv: list[str]) -> int:
    out = Path(argv[1]) if len(argv) > 1 else corpus_dir() / "fuller_W.trace"
    trace, braid_count = build()
    comments = (
        "Fuller's relation W from the Horikawa relation.",
        f"{braid_count} braid/commute moves rewrite the first 24 letters, then chain3 replaces (a1 b1 a2)^4 by d2 e2.",
    )
    out.write_text(format_trace(trace, "g3", START, comments, END), encoding="utf-8")
    print(f"wrote {out} ({len(trace.moves)} moves)")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
