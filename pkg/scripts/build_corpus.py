"""Regenerate the bundled alphabet files and the expanded corpus word files.

Each ``<id>.word`` file is the expansion of the entry's ``powered`` form in
``corpus.json``, preceded by that form as a comment.

Usage: python scripts/build_corpus.py
"""

from __future__ import annotations

import json
import sys

from lefschetz.corpus import corpus_dir, data_dir, resolve_alphabet
from lefschetz.formats import format_alphabet, format_expanded, parse_word
from lefschetz.surface import standard_alphabet

ALPHABETS = {
    "g2": (standard_alphabet(2, closing_curve=True), "genus 2 chain a1 b1 a2 b2 a3 (a3 closes the chain)"),
    "g3": (standard_alphabet(3), "genus 3 chain a1 .. b3 with boundary curves d2, e2 of a1 u b1 u a2"),
}


def main() -> int:
    for name, (alphabet, comment) in ALPHABETS.items():
        path = data_dir() / f"{name}.alphabet"
        path.write_text(f"# {comment}\n" + format_alphabet(alphabet), encoding="utf-8")
        print(f"wrote {path}")
    directory = corpus_dir()
    index = json.loads((directory / "corpus.json").read_text(encoding="utf-8"))
    for entry in index["entries"]:
        word = parse_word(entry["powered"], resolve_alphabet(entry["alphabet"], directory))
        tail = " = 1" if entry["kind"] == "fibration" or "^-1" in entry["powered"] else ""
        text = f"# {entry['id']}: {entry['powered']}{tail}\n" + format_expanded(word)
        (directory / entry["word_file"]).write_text(text, encoding="utf-8")
        print(f"wrote {directory / entry['word_file']} ({len(word)} letters)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
