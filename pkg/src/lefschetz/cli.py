"""Command line interface.

Exit codes: 0 when a result or verdict was computed (even a negative one),
1 when a verification failed, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .corpus import CorpusEntry, expected_matches, load_corpus, resolve_alphabet
from .errors import IllegalMove, LefschetzError, ParseError, RefusesVerdict
from .formats import emit_report, format_word, parse_relation, parse_report, parse_trace, read_text
from .invariants import EndoG3, FibrationData, Genus2Formula, UserSupplied, compute_report
from .moduli import (
    CHOW,
    FUNCTOR,
    PRINTED_C2_NOTE,
    DivisorClass,
    NormalizationWarning,
    SphereData,
    brill_noether_class,
    covering_divisor,
    hyperelliptic_class,
    pair,
    printed_closed_form,
    weierstrass_class,
)
from .obstructions import covering_boundedness, genus2_geography, genus3_obstruction, section_bound
from .words import TwistCensus, Trace, apply_t, apply_t_inverse, check_trace, classify_twists, verify_relation_homology

OK, FAILED, INPUT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class Outcome:
    code: int
    sections: dict

    def render(self, fmt: str) -> str:
        return emit_report(self.sections, fmt).decode("ascii")


class InputError(Exception):
    """Bad command line input that is not a parse error of a file."""


# -- helpers -----------------------------------------------------------------------

def _corpus_ids(values: Sequence[str] | None) -> list[str]:
    ids = []
    for v in values or ():
        ids.extend(x for x in v.split(",") if x)
    return ids


def _role_map(text: str) -> dict[str, str]:
    out = {}
    for item in text.split(","):
        role, sep, curve = item.partition(":")
        if not sep:
            raise InputError(f"bad role mapping {item!r}, expected role:curve")
        out[role] = curve
    return out


def _run_batch(fn: Callable[[str], Outcome], ids: list[str], jobs: int) -> list[Outcome]:
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, ids))
    return [fn(i) for i in ids]


_HANDLED = (ParseError, InputError, LookupError, ValueError, OSError, LefschetzError)


def _error_outcome(exc: Exception) -> Outcome:
    body: dict = {"message": str(exc)}
    if isinstance(exc, ParseError):
        body.update(line=exc.line, column=exc.column)
    return Outcome(INPUT_ERROR, {"error": body})


def _guarded(fn: Callable[..., Outcome], *args) -> Outcome:
    try:
        return fn(*args)
    except _HANDLED as exc:
        return _error_outcome(exc)


# -- verify / trace ------------------------------------------------------------------

def _verify_entry(entry_id: str, mode: str) -> Outcome:
    entry = load_corpus()[entry_id]
    rel = entry.relation()
    body: dict = {"id": entry_id, "mode": mode, "length": len(rel.lhs)}
    if mode == "homology":
        ok = verify_relation_homology(rel)
        body["ok"] = ok
        return Outcome(OK if ok else FAILED, {"verify": body})
    trace = entry.trace()
    if trace is None:
        raise InputError(f"corpus entry {entry_id!r} ships no derivation; use --mode homology")
    return _trace_outcome(trace, body, expect_end=rel.lhs)


def _trace_outcome(trace: Trace, body: dict, expect_end=None) -> Outcome:
    result = check_trace(trace)
    body["moves"] = len(trace.moves)
    body["premise"] = f"{format_word(trace.start)} = 1" if trace.to_identity else format_word(trace.start)
    ok = bool(result)
    if ok and expect_end is not None and trace.claimed_end != expect_end:
        ok = False
        body["reason"] = "derivation does not end on the relation being verified"
    elif not ok:
        body["failed_at"] = result.failed_at
        body["reason"] = result.reason
    body["ok"] = ok
    return Outcome(OK if ok else FAILED, {"verify": body})


def _verify_worker(args: tuple[str, str]) -> Outcome:
    return _guarded(_verify_entry, *args)


def cmd_verify(ns) -> list[Outcome]:
    ids = _corpus_ids(ns.corpus)
    if ids:
        return _run_batch(_verify_worker, [(i, ns.mode) for i in ids], ns.jobs)
    if not ns.relation:
        raise InputError("verify needs --corpus or --relation")
    alphabet = resolve_alphabet(ns.alphabet)
    rel = parse_relation(read_text(ns.relation), alphabet, source=ns.relation)
    body = {"id": ns.relation, "mode": ns.mode, "length": len(rel.lhs)}
    if ns.mode == "homology":
        ok = verify_relation_homology(rel)
        body["ok"] = ok
        return [Outcome(OK if ok else FAILED, {"verify": body})]
    if not ns.trace:
        raise InputError("--mode trace needs --trace FILE for a relation file")
    trace = _load_trace(ns.trace)
    return [_trace_outcome(trace, body, expect_end=rel.lhs)]


def _load_trace(path: str) -> Trace:
    base = Path(path).parent
    return parse_trace(read_text(path), lambda n: resolve_alphabet(n, base), source=path)


def cmd_trace(ns) -> list[Outcome]:
    trace = _load_trace(ns.file)
    body: dict = {"file": ns.file}
    out = _trace_outcome(trace, body)
    return [Outcome(out.code, {"trace": out.sections["verify"]})]


# -- invariants ------------------------------------------------------------------------

def _report_sections(rep, entry: CorpusEntry | None = None) -> tuple[int, dict]:
    sections = rep.as_sections()
    code = OK
    if entry is not None:
        sections["entry"] = {"id": entry.id, "provenance": entry.provenance}
        if entry.expected is not None:
            diffs = expected_matches(entry, rep)
            sections["regression"] = {"matches_expected": not diffs, "differences": diffs}
            code = OK if not diffs else FAILED
    return code, sections


def _invariants_entry(entry_id: str) -> Outcome:
    corpus = load_corpus()
    entry = corpus[entry_id]
    rep = compute_report(entry.fibration_data(corpus))
    return Outcome(*_report_sections(rep, entry))


def _invariants_worker(entry_id: str) -> Outcome:
    return _guarded(_invariants_entry, entry_id)


def _signature_source(ns):
    if ns.sigma_source == "endo_g3":
        return EndoG3()
    if ns.sigma_source == "genus2_formula":
        return Genus2Formula()
    if ns.sigma is None:
        raise InputError("--sigma-source user needs --sigma")
    return UserSupplied(ns.sigma)


def cmd_invariants(ns) -> list[Outcome]:
    ids = _corpus_ids(ns.corpus)
    if ids:
        return _run_batch(_invariants_worker, ids, ns.jobs)
    if not ns.relation or ns.genus is None:
        raise InputError("invariants needs --corpus, or --relation with --genus")
    alphabet = resolve_alphabet(ns.alphabet or f"g{ns.genus}")
    if alphabet.genus != ns.genus:
        raise InputError(f"alphabet {ns.alphabet!r} has genus {alphabet.genus}, not {ns.genus}")
    rel = parse_relation(read_text(ns.relation), alphabet, source=ns.relation)
    if not rel.to_identity:
        raise InputError("a fibration needs a relation to the identity")
    default = "endo_g3" if ns.genus == 3 else "genus2_formula" if ns.genus == 2 else "user"
    ns.sigma_source = ns.sigma_source or default
    data = FibrationData(ns.genus, rel.lhs, ns.base_points, _signature_source(ns))
    return [Outcome(*_report_sections(compute_report(data)))]


# -- pairing ---------------------------------------------------------------------------

def _named_class(name: str) -> DivisorClass:
    if name in ("hyperelliptic", "hyperelliptic_functor"):
        return hyperelliptic_class(FUNCTOR)
    if name == "hyperelliptic_chow":
        return hyperelliptic_class(CHOW)
    if name == "weierstrass":
        return weierstrass_class()
    kind, _, rest = name.partition(":")
    if kind == "brill_noether" and rest:
        return brill_noether_class(int(rest))
    if kind == "covering" and rest:
        g, _, h = rest.partition(",")
        return covering_divisor(int(g), int(h))
    path = Path(name)
    if path.is_file():
        return class_from_sections(parse_report(read_text(path), source=name))
    raise InputError(
        f"unknown class {name!r}: use hyperelliptic, hyperelliptic_chow, weierstrass, "
        "brill_noether:<g>, covering:<g>,<h> or a class file"
    )


def class_from_sections(sections: dict) -> DivisorClass:
    """Read a ``[class]`` section: ``g``, ``h``, ``lambda``, ``delta_i``, ``psi_j``, ``omega_rd``."""
    body = sections.get("class")
    if body is None:
        raise InputError("class file needs a [class] section")
    g, h = int(body["g"]), int(body.get("h", 0))
    delta = [Fraction(body.get(f"delta_{i}", 0)) for i in range(g // 2 + 1)]
    psi = [Fraction(body.get(f"psi_{j}", 0)) for j in range(1, h + 1)]
    return DivisorClass(
        g, h, Fraction(body.get("lambda", 0)), tuple(delta), tuple(psi),
        Fraction(body.get("omega_rd", 0)), str(body.get("normalization", FUNCTOR)),
    )


def sphere_from_sections(sections: dict, extra_squares: Sequence[int] = ()) -> SphereData:
    """Sphere of the fibration described by an invariants report."""
    fib, inv, census = sections["fibration"], sections["invariants"], sections["census"]
    g, b = int(fib["genus"]), int(fib["base_points"])
    counts = TwistCensus(int(census["n"]), {int(k[2:]): int(v) for k, v in census.items() if k.startswith("s_")})
    squares = [-1] * b + list(extra_squares)
    delta = [counts.delta(i) for i in range(g // 2 + 1)]
    h = len(squares)
    omega = -squares[0] if h == 1 else 0
    return SphereData(g, h, Fraction(inv["lambda"]), tuple(delta), tuple(-s for s in squares), omega)


def cmd_pair(ns) -> list[Outcome]:
    cls = _named_class(ns.cls)
    if ns.sphere:
        sections = parse_report(read_text(ns.sphere), source=ns.sphere)
    elif ns.corpus:
        corpus = load_corpus()
        sections = compute_report(corpus[ns.corpus].fibration_data(corpus)).as_sections()
    else:
        raise InputError("pair needs --sphere REPORT or --corpus ID")
    sphere = sphere_from_sections(sections, ns.section_square or ())
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NormalizationWarning)
        value = pair(cls, sphere)
    body = {"class": str(cls), "normalization": cls.normalization, "value": value, "negative": value < 0}
    for k, w in enumerate(caught):
        body[f"warning_{k}"] = str(w.message)
    return [Outcome(OK, {"pairing": body, "sphere": {"g": sphere.g, "h": sphere.h, "lambda": sphere.lambda_value}})]


# -- covering / obstructions -------------------------------------------------------------

def cmd_covering(ns) -> list[Outcome]:
    v = covering_boundedness(ns.K_dot_omega, ns.w2, ns.c1_sq, ns.c2, ns.kmax)
    body: dict = {f"k_{k}": value for k, value in v.terms}
    body["verdict"] = v.verdict
    notes = list(v.notes) + [PRINTED_C2_NOTE]
    if ns.c2:
        printed = [printed_closed_form(ns.K_dot_omega, ns.c1_sq, ns.c2, k) for k, _ in v.terms]
        notes.append("printed closed form values: " + ", ".join(f"{p.numerator}/{p.denominator}" for p in printed))
    if v.threshold is not None:
        body["growth_threshold"] = v.threshold
    body["notes"] = notes
    return [Outcome(OK, {"covering": body})]


def _render_covering(out: Outcome) -> str:
    body = out.sections["covering"]
    lines = []
    for key in sorted((k for k in body if k.startswith("k_")), key=lambda k: int(k[2:])):
        q = body[key]
        lines.append(f"{key[2:]}: {q.numerator}/{q.denominator}")
    lines.append(f"verdict: {body['verdict']}")
    if "growth_threshold" in body:
        lines.append(f"growth_threshold: {body['growth_threshold']}")
    lines.extend(f"note: {n}" for n in body["notes"])
    return "\n".join(lines) + "\n"


def cmd_obstruct(ns) -> list[Outcome]:
    try:
        v = genus3_obstruction(ns.e, ns.sigma, ns.reducible, ns.mod14)
    except RefusesVerdict as exc:
        raise InputError(str(exc)) from None
    body = {
        "hyperelliptic_possible": v.hyperelliptic_possible,
        "non_holomorphic": v.non_holomorphic,
        "pairing_value": v.pairing_value,
        "reasons": list(v.reasons),
    }
    return [Outcome(OK, {"obstruction": body})]


GEOGRAPHY_COLUMNS = ("branch", "n", "s", "b1", "omega_sq", "e", "sigma", "c1_sq", "homeo_word", "note")


def cmd_geography(ns) -> list[Outcome]:
    cases = genus2_geography()
    rows = [[getattr(c, col) for col in GEOGRAPHY_COLUMNS] for c in cases]
    body = {
        "columns": list(GEOGRAPHY_COLUMNS),
        "rows": rows,
        "count": len(rows),
        "max_e": max(c.e for c in cases),
    }
    return [Outcome(OK, {"geography": body})]


def _render_geography(out: Outcome) -> str:
    body = out.sections["geography"]
    table = [list(body["columns"])] + [["-" if x is None or x == "" else str(x) for x in r] for r in body["rows"]]
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
    lines.append(f"cases: {body['count']}, max e: {body['max_e']}")
    return "\n".join(lines) + "\n"


def cmd_section_bound(ns) -> list[Outcome]:
    sb = section_bound(ns.d0, ns.d1, ns.ss)
    body = {
        "verdict": sb.verdict,
        "m": sb.m,
        "three_abs_ss": sb.lhs_case1,
        "four_abs_ss": sb.lhs_case2,
        "m_plus_delta1": sb.rhs,
        "assumption": sb.assumption,
    }
    return [Outcome(OK, {"section_bound": body})]


def cmd_transform(ns) -> list[Outcome]:
    if ns.corpus:
        word = load_corpus()[ns.corpus].word()
    elif ns.relation:
        word = parse_relation(read_text(ns.relation), resolve_alphabet(ns.alphabet), source=ns.relation).lhs
    else:
        raise InputError("transform needs --corpus or --relation")
    roles = _role_map(ns.map)
    try:
        new = (apply_t if ns.op == "t" else apply_t_inverse)(word, ns.position, roles)
    except IllegalMove as exc:
        raise InputError(f"illegal T-operation: {exc.reason}") from None
    body: dict = {"op": ns.op, "length_before": len(word), "length_after": len(new), "word": format_word(new)}
    if new.is_positive:
        body["fibre_count"] = classify_twists(new).total
    return [Outcome(OK, {"transform": body})]


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for batches of corpus entries")

    p = argparse.ArgumentParser(prog="lefschetz", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check a relation in homology or by derivation")
    s.add_argument("--corpus", action="append", help="corpus id (repeatable or comma separated)")
    s.add_argument("--relation", help="relation file")
    s.add_argument("--alphabet", default="g3")
    s.add_argument("--mode", choices=("homology", "trace"), default="homology")
    s.add_argument("--trace", help="derivation file for --mode trace with --relation")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("trace", parents=[common], help="replay a derivation file")
    s.add_argument("--file", required=True)
    s.set_defaults(func=cmd_trace)

    s = sub.add_parser("invariants", parents=[common], help="invariants of a fibration or pencil")
    s.add_argument("--corpus", action="append")
    s.add_argument("--relation")
    s.add_argument("--alphabet")
    s.add_argument("--genus", type=int)
    s.add_argument("--base-points", type=int, default=0)
    s.add_argument("--sigma-source", choices=("endo_g3", "genus2_formula", "user"))
    s.add_argument("--sigma", type=int)
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("pair", parents=[common], help="pair a divisor class with a fibration sphere")
    s.add_argument("--class", dest="cls", required=True)
    s.add_argument("--sphere", help="report file from the invariants command")
    s.add_argument("--corpus", help="use a corpus fibration instead of a report file")
    s.add_argument("--section-square", type=int, action="append", help="square of an extra section")
    s.set_defaults(func=cmd_pair)

    s = sub.add_parser("covering", parents=[common], help="covering sequence and its growth")
    s.add_argument("--K.w", dest="K_dot_omega", type=int, required=True)
    s.add_argument("--w2", type=int, required=True)
    s.add_argument("--c1-sq", type=int, required=True)
    s.add_argument("--c2", type=int, required=True)
    s.add_argument("--kmax", type=int, default=8)
    s.set_defaults(func=cmd_covering, render=_render_covering)

    s = sub.add_parser("obstruct", parents=[common], help="genus-three non-holomorphicity test")
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--sigma", type=int, required=True)
    s.add_argument("--reducible", action="store_true")
    s.add_argument("--mod14", action="store_true")
    s.set_defaults(func=cmd_obstruct)

    s = sub.add_parser("geography", parents=[common], help="genus-two pencil geography")
    s.set_defaults(func=cmd_geography, render=_render_geography)

    s = sub.add_parser("section-bound", parents=[common], help="genus-two section square bound")
    s.add_argument("--d0", type=int, required=True)
    s.add_argument("--d1", type=int, required=True)
    s.add_argument("--ss", type=int, required=True)
    s.set_defaults(func=cmd_section_bound)

    s = sub.add_parser("transform", parents=[common], help="apply the T-operation or its inverse")
    s.add_argument("--corpus")
    s.add_argument("--relation")
    s.add_argument("--alphabet", default="g3")
    s.add_argument("--op", choices=("t", "tinv"), required=True)
    s.add_argument("--position", type=int, required=True)
    s.add_argument("--map", required=True, help="role:curve pairs, e.g. U:a1,V:b1,W:a2,D1:d2,D2:e2")
    s.set_defaults(func=cmd_transform)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    if ns.jobs < 1:
        print("lefschetz: error: --jobs must be at least 1", file=err)
        return INPUT_ERROR
    try:
        outcomes = ns.func(ns)
    except _HANDLED as exc:
        outcomes = [_error_outcome(exc)]
    code = OK
    for o in outcomes:
        if "error" in o.sections:
            print(f"lefschetz: error: {o.sections['error']['message']}", file=err)
        elif ns.format == "text" and getattr(ns, "render", None):
            out.write(ns.render(o))
        else:
            out.write(o.render(ns.format))
        code = max(code, o.code)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
