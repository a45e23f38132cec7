"""Plain-text formats: words, relations, alphabets, traces and reports.

Word syntax
    Letters are curve ids separated by whitespace; ``id^-1`` is an inverse
    twist.  Parentheses group, and ``(...)^k`` repeats a group ``k`` times
    (``k < 0`` repeats the inverse).  A lone ``1`` is the empty word and
    ``#`` starts a comment.  A relation is ``lhs = rhs``; a word with no
    ``=`` is a relation to the identity.

Alphabet files
    One curve per line, ``id h=<2g comma-separated ints> sep=<0|1>[,h=<k>]``,
    then lines ``i(u,v)=n`` for non-zero geometric intersections.

Trace files
    Header lines ``alphabet: <name or file>``, ``start: <word>``,
    ``end: <word>`` and optionally ``mode: identity|relation``, then one move
    per line: ``braid@i``, ``commute@i``, ``cyc@k``, ``cancel@i`` or
    ``sub axiom=<name> dir=<f|b> @i map=role:curve,...``.

Reports
    Text reports start with the line ``# lefschetz report v1`` followed by
    ``[section]`` blocks of ``key = value`` lines, sections and keys sorted.
    Integers print plainly, rationals always as ``p/q`` in lowest terms,
    booleans as ``true``/``false`` and strings or lists as JSON.  The
    structured form is JSON::

        {"schema": "lefschetz-report/1", "sections": {...}}

    with rationals encoded as ``{"rational": "p/q"}``.  Both forms are
    byte-deterministic and parse back to the same sections.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterator, Mapping

from .errors import ParseError
from .surface import Curve, CurveAlphabet
from .words import (
    BACKWARD,
    BRAID,
    CANCEL,
    COMMUTE,
    CYCLIC,
    FORWARD,
    SUBSTITUTE,
    Letter,
    Relation,
    RewriteMove,
    Trace,
    TwistWord,
)

# -- words ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[()^=])")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    column: int


def _tokens(text: str, source: str | None) -> list[_Tok]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, source)
        kind = m.lastgroup
        if kind:
            out.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    return out


class _WordParser:
    def __init__(self, toks: list[_Tok], source: str | None, end_line: int, end_col: int):
        self.toks = toks
        self.i = 0
        self.source = source
        self.end = (end_line, end_col)

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg: str, tok: _Tok | None = None):
        line, col = (tok.line, tok.column) if tok else self.end
        raise ParseError(msg, line, col, self.source)

    def take(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        self.i += 1
        return tok

    def power(self) -> int:
        tok = self.peek()
        if tok is None or tok.text != "^":
            return 1
        self.take()
        num = self.peek()
        if num is None or num.kind != "int":
            self.error("expected an integer exponent after '^'", num)
        self.take()
        return int(num.text)

    def sequence(self, closing: bool) -> list[Letter]:
        letters: list[Letter] = []
        while True:
            tok = self.peek()
            if tok is None or tok.text == "=":
                if closing:
                    self.error("unclosed '('", tok)
                return letters
            if tok.text == ")":
                if not closing:
                    self.error("unmatched ')'", tok)
                return letters
            letters.extend(self.item())

    def item(self) -> list[Letter]:
        tok = self.take()
        if tok.kind == "id":
            k = self.power()
            if k not in (1, -1):
                self.error(f"letter exponent must be 1 or -1, got {k} (use parentheses for powers)", tok)
            return [(tok.text, k)]
        if tok.kind == "int":
            if tok.text != "1":
                self.error(f"unexpected number {tok.text}", tok)
            return []
        if tok.text == "(":
            inner = self.sequence(closing=True)
            self.take()
            k = self.power()
            if k < 0:
                inner = [(c, -e) for c, e in reversed(inner)]
            return inner * abs(k)
        self.error(f"unexpected {tok.text!r}", tok)


def _end_position(text: str) -> tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def parse_letters(text: str, source: str | None = None) -> list[Letter]:
    """Expand a word in the grouped syntax into its letters."""
    p = _WordParser(_tokens(text, source), source, *_end_position(text))
    letters = p.sequence(closing=False)
    if p.peek() is not None:
        p.error(f"unexpected {p.peek().text!r}", p.peek())
    return letters


def parse_word(text: str, alphabet: CurveAlphabet, source: str | None = None) -> TwistWord:
    letters = parse_letters(text, source)
    return _checked_word(letters, alphabet, text, source)


def _checked_word(letters: list[Letter], alphabet: CurveAlphabet, text: str, source: str | None) -> TwistWord:
    for curve_id, _ in letters:
        if curve_id not in alphabet:
            line, col = _locate(text, curve_id)
            raise ParseError(f"unknown curve {curve_id!r} for the genus-{alphabet.genus} alphabet", line, col, source)
    return TwistWord(alphabet, tuple(letters))


def _locate(text: str, word: str) -> tuple[int, int]:
    m = re.search(rf"(?<![A-Za-z0-9_]){re.escape(word)}(?![A-Za-z0-9_])", text)
    if not m:
        return 1, 1
    before = text[: m.start()]
    return before.count("\n") + 1, m.start() - (before.rfind("\n") + 1) + 1


def parse_relation(text: str, alphabet: CurveAlphabet, source: str | None = None) -> Relation:
    toks = _tokens(text, source)
    p = _WordParser(toks, source, *_end_position(text))
    lhs = p.sequence(closing=False)
    rhs: list[Letter] = []
    tok = p.peek()
    if tok is not None and tok.text == "=":
        p.take()
        rhs = p.sequence(closing=False)
        if p.peek() is not None:
            p.error(f"unexpected {p.peek().text!r}", p.peek())
    return Relation(_checked_word(lhs, alphabet, text, source), _checked_word(rhs, alphabet, text, source))


def format_word(w: TwistWord) -> str:
    return str(w) if len(w) else "1"


def format_expanded(w: TwistWord, per_line: int = 12) -> str:
    """Word text with ``per_line`` letters per line, for corpus files."""
    items = str(w).split()
    lines = [" ".join(items[k:k + per_line]) for k in range(0, len(items), per_line)]
    return "\n".join(lines) + "\n"


def group_lengths(text: str) -> int:
    """Expected expansion length computed directly from the grouping structure."""
    def walk(toks: list[_Tok], i: int) -> tuple[int, int]:
        total = 0
        while i < len(toks) and toks[i].text != ")":
            t = toks[i]
            if t.kind == "id":
                total += 1
                i += 1
                if i < len(toks) and toks[i].text == "^":
                    i += 2
            elif t.text == "(":
                inner, i = walk(toks, i + 1)
                i += 1
                k = 1
                if i < len(toks) and toks[i].text == "^":
                    k = int(toks[i + 1].text)
                    i += 2
                total += inner * abs(k)
            else:
                i += 1
        return total, i

    return walk(_tokens(text, None), 0)[0]


# -- alphabets -------------------------------------------------------------------

_CURVE_LINE = re.compile(r"^(?P<id>[A-Za-z_][A-Za-z0-9_]*)\s+h=(?P<h>[-\d,\s]+?)\s+sep=(?P<sep>[01])(?:,h=(?P<split>\d+))?\s*$")
_INTER_LINE = re.compile(r"^i\(\s*(?P<u>[A-Za-z_][A-Za-z0-9_]*)\s*,\s*(?P<v>[A-Za-z_][A-Za-z0-9_]*)\s*\)\s*=\s*(?P<n>\d+)\s*$")


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for k, raw in enumerate(text.split("\n"), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield k, line


def parse_alphabet(text: str, source: str | None = None) -> CurveAlphabet:
    curves: list[Curve] = []
    inter: dict[tuple[str, str], int] = {}
    for k, line in _content_lines(text):
        m = _INTER_LINE.match(line)
        if m:
            inter[(m["u"], m["v"])] = int(m["n"])
            continue
        m = _CURVE_LINE.match(line)
        if not m:
            raise ParseError(f"cannot read alphabet line {line!r}", k, 1, source)
        if inter:
            raise ParseError("curve lines must come before the intersection block", k, 1, source)
        try:
            h = tuple(int(x) for x in m["h"].replace(" ", "").split(","))
            split = int(m["split"]) if m["split"] else None
            curves.append(Curve(m["id"], h, m["sep"] == "1", split))
        except ValueError as exc:
            raise ParseError(str(exc), k, 1, source) from None
    if not curves:
        raise ParseError("alphabet has no curves", 1, 1, source)
    try:
        return CurveAlphabet(curves[0].genus, tuple(curves), tuple(inter.items()))
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc), 1, 1, source) from None


def format_alphabet(alphabet: CurveAlphabet) -> str:
    lines = []
    for c in alphabet:
        sep = "1" if c.separating else "0"
        if c.separating:
            sep += f",h={c.split_genus}"
        lines.append(f"{c.id} h={','.join(map(str, c.homology))} sep={sep}")
    for (u, v), n in alphabet.geom_intersections:
        lines.append(f"i({u},{v})={n}")
    return "\n".join(lines) + "\n"


# -- traces ----------------------------------------------------------------------

_SIMPLE_MOVE = re.compile(r"^(?P<kind>braid|commute|cyc|cancel)@(?P<pos>-?\d+)$")
_SUB_MOVE = re.compile(r"^sub\s+axiom=(?P<axiom>\S+)\s+dir=(?P<dir>[fb])\s+@(?P<pos>\d+)\s+map=(?P<map>\S+)$")
_KINDS = {"braid": BRAID, "commute": COMMUTE, "cyc": CYCLIC, "cancel": CANCEL}


def parse_move(line: str, lineno: int = 1, source: str | None = None) -> RewriteMove:
    m = _SIMPLE_MOVE.match(line)
    if m:
        return RewriteMove(_KINDS[m["kind"]], int(m["pos"]))
    m = _SUB_MOVE.match(line)
    if m:
        pairs = []
        for item in m["map"].split(","):
            role, sep, curve = item.partition(":")
            if not sep or not role or not curve:
                col = line.index(m["map"]) + 1
                raise ParseError(f"bad role mapping {item!r}, expected role:curve", lineno, col, source)
            pairs.append((role, curve))
        return RewriteMove(SUBSTITUTE, int(m["pos"]), m["axiom"], tuple(pairs), FORWARD if m["dir"] == "f" else BACKWARD)
    raise ParseError(f"cannot read move {line!r}", lineno, 1, source)


def parse_trace(
    text: str,
    resolve_alphabet: Callable[[str], CurveAlphabet],
    source: str | None = None,
) -> Trace:
    """Read a trace file; ``resolve_alphabet`` turns the ``alphabet:`` header into an alphabet."""
    headers: dict[str, tuple[int, str]] = {}
    moves: list[RewriteMove] = []
    for k, line in _content_lines(text):
        key, sep, value = line.partition(":")
        if sep and key.strip() in ("alphabet", "start", "end", "mode") and not moves:
            headers[key.strip()] = (k, value.strip())
            continue
        moves.append(parse_move(line, k, source))
    for needed in ("alphabet", "start", "end"):
        if needed not in headers:
            raise ParseError(f"trace is missing the '{needed}:' header", 1, 1, source)
    try:
        alphabet = resolve_alphabet(headers["alphabet"][1])
    except (LookupError, OSError, ValueError) as exc:
        raise ParseError(f"cannot resolve alphabet: {exc}", headers["alphabet"][0], 1, source) from None

    def word(name: str) -> TwistWord:
        line, value = headers[name]
        try:
            return parse_word(value, alphabet, source)
        except ParseError as exc:
            raise ParseError(exc.message, line, exc.column + len(name) + 2, source) from None

    mode = headers.get("mode", (0, "identity"))[1]
    if mode not in ("identity", "relation"):
        raise ParseError(f"mode must be identity or relation, got {mode!r}", headers["mode"][0], 1, source)
    return Trace(word("start"), tuple(moves), word("end"), mode == "identity")


def format_trace(
    trace: Trace,
    alphabet_name: str,
    start_text: str | None = None,
    comments: tuple[str, ...] = (),
    end_text: str | None = None,
) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"alphabet: {alphabet_name}")
    lines.append(f"start: {start_text or format_word(trace.start)}")
    lines.append(f"end: {end_text or format_word(trace.claimed_end)}")
    lines.append(f"mode: {'identity' if trace.to_identity else 'relation'}")
    lines.extend(str(m) for m in trace.moves)
    return "\n".join(lines) + "\n"


# -- reports ---------------------------------------------------------------------

REPORT_HEADER = "# lefschetz report v1"
SCHEMA = "lefschetz-report/1"

Sections = Mapping[str, Mapping[str, object]]


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (str, list, tuple)) or v is None:
        return json.dumps(list(v) if isinstance(v, tuple) else v, ensure_ascii=True)
    raise TypeError(f"cannot emit value of type {type(v).__name__}")


def _check_name(name: str, what: str):
    if not re.fullmatch(r"[A-Za-z0-9_.\-]+", name):
        raise ValueError(f"{what} name {name!r} must be a plain identifier")


def _sections(report) -> Sections:
    return report.as_sections() if hasattr(report, "as_sections") else report


def emit_text(report) -> str:
    lines = [REPORT_HEADER]
    for name in sorted(_sections(report)):
        _check_name(name, "section")
        lines.append(f"[{name}]")
        body = _sections(report)[name]
        for key in sorted(body):
            _check_name(key, "key")
            lines.append(f"{key} = {_text_value(body[key])}")
    return "\n".join(lines) + "\n"


def _json_value(v):
    if isinstance(v, Fraction):
        return {"rational": f"{v.numerator}/{v.denominator}"}
    if isinstance(v, tuple):
        return [_json_value(x) for x in v]
    if isinstance(v, list):
        return [_json_value(x) for x in v]
    return v


def emit_structured(report) -> str:
    sections = {name: {k: _json_value(v) for k, v in body.items()} for name, body in _sections(report).items()}
    return json.dumps({"schema": SCHEMA, "sections": sections}, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def emit_report(report, fmt: str = "text") -> bytes:
    if fmt == "text":
        return emit_text(report).encode("ascii")
    if fmt == "structured":
        return emit_structured(report).encode("ascii")
    raise ValueError(f"format must be 'text' or 'structured', not {fmt!r}")


_RATIONAL = re.compile(r"^-?\d+/\d+$")


def _parse_text_value(raw: str, line: int, source: str | None):
    if raw in ("true", "false"):
        return raw == "true"
    if re.fullmatch(r"-?\d+", raw):
        return int(raw)
    if _RATIONAL.match(raw):
        return Fraction(raw)
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        raise ParseError(f"cannot read value {raw!r}", line, 1, source) from None


def parse_text_report(text: str, source: str | None = None) -> dict[str, dict[str, object]]:
    lines = text.split("\n")
    if not lines or lines[0].strip() != REPORT_HEADER:
        raise ParseError(f"report must start with {REPORT_HEADER!r}", 1, 1, source)
    out: dict[str, dict[str, object]] = {}
    current = None
    for k, raw in enumerate(lines[1:], 2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = out.setdefault(line[1:-1], {})
            continue
        key, sep, value = line.partition(" = ")
        if not sep or current is None:
            raise ParseError(f"expected 'key = value' inside a section, got {line!r}", k, 1, source)
        current[key] = _parse_text_value(value, k, source)
    return out


def _from_json(v):
    if isinstance(v, dict) and set(v) == {"rational"}:
        return Fraction(v["rational"])
    if isinstance(v, list):
        return [_from_json(x) for x in v]
    return v


def parse_structured_report(text: str, source: str | None = None) -> dict[str, dict[str, object]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno, source) from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise ParseError(f"structured report must carry schema {SCHEMA!r}", 1, 1, source)
    return {name: {k: _from_json(v) for k, v in body.items()} for name, body in doc["sections"].items()}


def parse_report(text: str, source: str | None = None) -> dict[str, dict[str, object]]:
    """Parse either report form."""
    if text.lstrip().startswith("{"):
        return parse_structured_report(text, source)
    return parse_text_report(text, source)


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")
