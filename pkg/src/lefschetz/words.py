"""Dehn twist words, relation checking and the rewriting moves used in traces.

A word is read left to right and its homology image is the ordered product of
the letters' transvection matrices.  Two tiers of verification exist:

* homology mode compares images in ``Sp(2g, Z)``.  It is fast and only a
  necessary condition, since the mapping class group surjects onto the
  symplectic group with the Torelli group as kernel;
* trace mode replays an explicit derivation made of braid, commutation,
  cyclic-shift, cancellation and axiom-substitution moves.  Each move is
  legal only if the declared geometric intersections allow it, so a replayed
  trace proves the relation in the mapping class group (given the axioms).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import IllegalMove
from .surface import CurveAlphabet, IntMatrix, identity_matrix

Letter = tuple[str, int]

BRAID = "braid"
COMMUTE = "commute"
CYCLIC = "cyclic_shift"
CANCEL = "cancel_pair"
SUBSTITUTE = "axiom_substitute"
MOVE_KINDS = (BRAID, COMMUTE, CYCLIC, CANCEL, SUBSTITUTE)

FORWARD = "forward"
BACKWARD = "backward"


def _letter(item) -> Letter:
    if isinstance(item, str):
        return (item, 1)
    curve_id, exponent = item
    return (str(curve_id), int(exponent))


@dataclass(frozen=True)
class TwistWord:
    """A sequence of signed Dehn twists on a fixed alphabet."""

    alphabet: CurveAlphabet
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple(_letter(x) for x in self.letters)
        for curve_id, exponent in letters:
            if curve_id not in self.alphabet:
                raise KeyError(f"curve {curve_id!r} not in the genus-{self.genus} alphabet")
            if exponent not in (1, -1):
                raise ValueError(f"exponent of {curve_id} must be +1 or -1, got {exponent}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_ids(cls, alphabet: CurveAlphabet, ids: Iterable[str | Letter]) -> TwistWord:
        return cls(alphabet, tuple(ids))

    @property
    def genus(self) -> int:
        return self.alphabet.genus

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return TwistWord(self.alphabet, self.letters[index])
        return self.letters[index]

    def _same_alphabet(self, other: TwistWord):
        if other.alphabet != self.alphabet:
            raise ValueError(
                f"words live on different alphabets (genus {self.genus} and {other.genus})"
            )

    def __add__(self, other: TwistWord) -> TwistWord:
        self._same_alphabet(other)
        return TwistWord(self.alphabet, self.letters + other.letters)

    def __mul__(self, power: int) -> TwistWord:
        if power < 0:
            return self.inverse() * (-power)
        return TwistWord(self.alphabet, self.letters * power)

    __rmul__ = __mul__

    def inverse(self) -> TwistWord:
        return TwistWord(self.alphabet, tuple((c, -e) for c, e in reversed(self.letters)))

    def rotate(self, k: int) -> TwistWord:
        if not self.letters:
            return self
        k %= len(self.letters)
        return TwistWord(self.alphabet, self.letters[k:] + self.letters[:k])

    @property
    def is_positive(self) -> bool:
        return all(e == 1 for _, e in self.letters)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c for c, _ in self.letters)

    def __str__(self):
        return " ".join(c if e == 1 else f"{c}^-1" for c, e in self.letters)

    def __repr__(self):
        return f"TwistWord(genus={self.genus}, {str(self)!r})"


@dataclass(frozen=True)
class Relation:
    """An asserted equality ``lhs = rhs`` in the mapping class group."""

    lhs: TwistWord
    rhs: TwistWord | None = None

    def __post_init__(self):
        if self.rhs is None:
            object.__setattr__(self, "rhs", TwistWord(self.lhs.alphabet))
        self.lhs._same_alphabet(self.rhs)

    @property
    def genus(self) -> int:
        return self.lhs.genus

    @property
    def alphabet(self) -> CurveAlphabet:
        return self.lhs.alphabet

    @property
    def to_identity(self) -> bool:
        return len(self.rhs) == 0

    def __str__(self):
        return f"{self.lhs} = {self.rhs if self.rhs.letters else '1'}"


@dataclass(frozen=True)
class Axiom:
    """A relation between positive words in role letters, with its curve template.

    The forward direction replaces ``source`` by ``target``.  Roles in
    ``meets_once`` must be embedded on curves meeting once geometrically;
    every other pair of roles must go to disjoint curves.
    """

    name: str
    roles: tuple[str, ...]
    source: tuple[Letter, ...]
    target: tuple[Letter, ...]
    meets_once: frozenset[frozenset[str]] = frozenset()

    def required_intersection(self, r1: str, r2: str) -> int:
        return int(frozenset((r1, r2)) in self.meets_once)


def _roles(text: str) -> tuple[Letter, ...]:
    return tuple((r, 1) for r in text.split())


CHAIN3 = Axiom(
    "chain3",
    ("U", "V", "W", "D1", "D2"),
    source=_roles("D1 D2"),
    target=_roles("U V W") * 4,
    meets_once=frozenset({frozenset("UV"), frozenset("VW")}),
)
"""Two-holed torus relation ``(t_U t_V t_W)^4 = t_D1 t_D2``."""

CHAIN2 = Axiom(
    "chain2",
    ("A", "B", "D"),
    source=_roles("D"),
    target=_roles("A B") * 6,
    meets_once=frozenset({frozenset("AB")}),
)
"""One-holed torus relation ``(t_A t_B)^6 = t_D``."""

DEFAULT_AXIOMS: Mapping[str, Axiom] = {a.name: a for a in (CHAIN2, CHAIN3)}


@dataclass(frozen=True)
class RewriteMove:
    kind: str
    position: int
    axiom: str | None = None
    embedding: tuple[tuple[str, str], ...] = ()
    direction: str = FORWARD

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if self.kind == SUBSTITUTE:
            if self.axiom is None:
                raise ValueError("axiom_substitute needs an axiom name")
            if self.direction not in (FORWARD, BACKWARD):
                raise ValueError(f"direction must be forward or backward, got {self.direction!r}")
        embedding = self.embedding.items() if isinstance(self.embedding, Mapping) else self.embedding
        object.__setattr__(self, "embedding", tuple(embedding))
        object.__setattr__(self, "position", int(self.position))

    @property
    def role_map(self) -> dict[str, str]:
        return dict(self.embedding)

    def __str__(self):
        short = {BRAID: "braid", COMMUTE: "commute", CYCLIC: "cyc", CANCEL: "cancel"}
        if self.kind != SUBSTITUTE:
            return f"{short[self.kind]}@{self.position}"
        mapping = ",".join(f"{r}:{c}" for r, c in self.embedding)
        return f"sub axiom={self.axiom} dir={self.direction[0]} @{self.position} map={mapping}"


@dataclass(frozen=True)
class Trace:
    """A derivation: moves replayed from ``start`` must land on ``claimed_end``.

    Traces rewrite relations to the identity by default, which is what makes
    cyclic shifts legal.
    """

    start: TwistWord
    moves: tuple[RewriteMove, ...]
    claimed_end: TwistWord
    to_identity: bool = True

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))


@dataclass(frozen=True)
class TwistCensus:
    """Counts of non-separating letters and separating letters by split genus."""

    n: int = 0
    s_by_genus: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        items = self.s_by_genus.items() if isinstance(self.s_by_genus, Mapping) else self.s_by_genus
        clean = tuple(sorted((int(h), int(k)) for h, k in items if k))
        if self.n < 0 or any(k < 0 for _, k in clean):
            raise ValueError("census counts must be non-negative")
        object.__setattr__(self, "s_by_genus", clean)

    @property
    def s(self) -> int:
        return sum(k for _, k in self.s_by_genus)

    @property
    def total(self) -> int:
        return self.n + self.s

    def separating(self, h: int) -> int:
        return dict(self.s_by_genus).get(h, 0)

    def delta(self, i: int) -> int:
        """Fibre count in the boundary divisor ``Delta_i``."""
        return self.n if i == 0 else self.separating(i)

    def __add__(self, other: TwistCensus) -> TwistCensus:
        counts = dict(self.s_by_genus)
        for h, k in other.s_by_genus:
            counts[h] = counts.get(h, 0) + k
        return TwistCensus(self.n + other.n, counts)


# -- homology mode ---------------------------------------------------------

def homology_image(w: TwistWord) -> IntMatrix:
    """Ordered product of the letters' transvection matrices.

    Each factor is ``I + e h k^T`` with ``k_j = <e_j, h>``, so right
    multiplication is a rank-one update rather than a full product.
    """
    n = 2 * w.genus
    m = [list(row) for row in identity_matrix(n)]
    for curve_id, exponent in w:
        h = w.alphabet[curve_id].homology
        if not any(h):
            continue
        coeff = [h[j + 1] if j % 2 == 0 else -h[j - 1] for j in range(n)]
        for row in m:
            mh = exponent * sum(x * y for x, y in zip(row, h))
            if mh:
                for j in range(n):
                    row[j] += mh * coeff[j]
    return tuple(tuple(row) for row in m)


def verify_relation_homology(r: Relation) -> bool:
    return homology_image(r.lhs) == homology_image(r.rhs)


# -- moves -----------------------------------------------------------------

def _instantiate(pattern: Sequence[Letter], roles: Mapping[str, str]) -> tuple[Letter, ...]:
    return tuple((roles[r], e) for r, e in pattern)


def check_embedding(alphabet: CurveAlphabet, axiom: Axiom, roles: Mapping[str, str]) -> None:
    """Raise :class:`IllegalMove` unless ``roles`` places ``axiom`` legally.

    Besides the intersection template, the instance must hold in homology.
    The template alone cannot tell a genuine boundary curve from any disjoint
    curve, and a substitution that changes the homology image is never valid.
    """
    if set(roles) != set(axiom.roles):
        raise IllegalMove(
            f"bad embedding: {axiom.name} needs roles {sorted(axiom.roles)}, got {sorted(roles)}"
        )
    curves = [roles[r] for r in axiom.roles]
    if len(set(curves)) != len(curves):
        raise IllegalMove(f"bad embedding: roles of {axiom.name} must go to distinct curves")
    for c in curves:
        if c not in alphabet:
            raise IllegalMove(f"bad embedding: unknown curve {c!r}")
    for r1, r2 in itertools.combinations(axiom.roles, 2):
        need = axiom.required_intersection(r1, r2)
        have = alphabet.geometric(roles[r1], roles[r2])
        if need != have:
            raise IllegalMove(
                f"bad embedding: {axiom.name} needs i({r1},{r2}) = {need} but "
                f"i({roles[r1]},{roles[r2]}) = {have}"
            )
    source = TwistWord(alphabet, _instantiate(axiom.source, roles))
    target = TwistWord(alphabet, _instantiate(axiom.target, roles))
    if homology_image(source) != homology_image(target):
        raise IllegalMove(f"bad embedding: this instance of {axiom.name} fails in homology")


def _expect_window(w: TwistWord, i: int, size: int):
    if i < 0 or i + size > len(w):
        raise IllegalMove(f"position {i} leaves no room for {size} letters in a word of length {len(w)}")


def apply_move(
    w: TwistWord,
    m: RewriteMove,
    *,
    to_identity: bool = False,
    axioms: Mapping[str, Axiom] | None = None,
) -> TwistWord:
    """Apply one rewrite move, raising :class:`IllegalMove` if it does not apply."""
    letters = list(w.letters)
    i = m.position
    if m.kind == BRAID:
        _expect_window(w, i, 3)
        (x, e1), (y, e2), (z, e3) = letters[i:i + 3]
        if not (x == z and e1 == e2 == e3):
            raise IllegalMove(f"pattern mismatch: braid needs x y x at {i}, found {w[i:i + 3]}")
        if w.alphabet.geometric(x, y) != 1:
            raise IllegalMove(f"wrong intersection number: i({x},{y}) = {w.alphabet.geometric(x, y)}, braid needs 1")
        letters[i:i + 3] = [(y, e1), (x, e1), (y, e1)]
    elif m.kind == COMMUTE:
        _expect_window(w, i, 2)
        (x, _), (y, _) = letters[i:i + 2]
        if w.alphabet.geometric(x, y) != 0:
            raise IllegalMove(f"wrong intersection number: i({x},{y}) = {w.alphabet.geometric(x, y)}, commute needs 0")
        letters[i], letters[i + 1] = letters[i + 1], letters[i]
    elif m.kind == CYCLIC:
        if not to_identity:
            raise IllegalMove("cyclic shifts are only legal on relations to the identity")
        if not letters:
            return w
        return w.rotate(i)
    elif m.kind == CANCEL:
        _expect_window(w, i, 2)
        (x, e1), (y, e2) = letters[i:i + 2]
        if x != y or e1 != -e2:
            raise IllegalMove(f"pattern mismatch: cancel needs c c^-1 at {i}, found {w[i:i + 2]}")
        del letters[i:i + 2]
    else:
        axioms = DEFAULT_AXIOMS if axioms is None else axioms
        if m.axiom not in axioms:
            raise IllegalMove(f"unknown axiom {m.axiom!r}")
        axiom = axioms[m.axiom]
        roles = m.role_map
        check_embedding(w.alphabet, axiom, roles)
        old, new = (axiom.source, axiom.target) if m.direction == FORWARD else (axiom.target, axiom.source)
        old_letters = list(_instantiate(old, roles))
        _expect_window(w, i, len(old_letters))
        if letters[i:i + len(old_letters)] != old_letters:
            found = TwistWord(w.alphabet, letters[i:i + len(old_letters)])
            want = TwistWord(w.alphabet, old_letters)
            raise IllegalMove(f"pattern mismatch: {m.axiom} {m.direction} needs '{want}' at {i}, found '{found}'")
        letters[i:i + len(old_letters)] = _instantiate(new, roles)
    return TwistWord(w.alphabet, tuple(letters))


@dataclass(frozen=True)
class TraceCheck:
    """Outcome of replaying a trace.  Truthy iff the trace is valid."""

    ok: bool
    end: TwistWord | None = None
    failed_at: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def replay(trace: Trace, axioms: Mapping[str, Axiom] | None = None) -> TwistWord:
    """Replay all moves; raises :class:`IllegalMove` carrying the failing index."""
    w = trace.start
    for k, m in enumerate(trace.moves):
        try:
            w = apply_move(w, m, to_identity=trace.to_identity, axioms=axioms)
        except IllegalMove as exc:
            raise IllegalMove(exc.reason, index=k) from None
    return w


def check_trace(trace: Trace, axioms: Mapping[str, Axiom] | None = None) -> TraceCheck:
    try:
        end = replay(trace, axioms)
    except IllegalMove as exc:
        return TraceCheck(False, None, exc.index, exc.reason)
    if end != trace.claimed_end:
        return TraceCheck(False, end, len(trace.moves), "replay does not end at the claimed word")
    return TraceCheck(True, end)


# -- T operation and fibre sums -------------------------------------------

def _chain3_move(position: int, embedding: Mapping[str, str], direction: str) -> RewriteMove:
    return RewriteMove(SUBSTITUTE, position, CHAIN3.name, tuple(embedding.items()), direction)


def apply_t(w: TwistWord, position: int, embedding: Mapping[str, str]) -> TwistWord:
    """Replace ``t_D1 t_D2`` at ``position`` by ``(t_U t_V t_W)^4``."""
    return apply_move(w, _chain3_move(position, embedding, FORWARD))


def apply_t_inverse(w: TwistWord, position: int, embedding: Mapping[str, str]) -> TwistWord:
    """Replace ``(t_U t_V t_W)^4`` at ``position`` by ``t_D1 t_D2``."""
    return apply_move(w, _chain3_move(position, embedding, BACKWARD))


def fibre_sum(r1: Relation, r2: Relation) -> Relation:
    """Concatenate two relations to the identity of the same genus."""
    if r1.genus != r2.genus:
        raise ValueError(f"genus mismatch: {r1.genus} and {r2.genus}")
    if not (r1.to_identity and r2.to_identity):
        raise ValueError("fibre sums are defined for relations to the identity")
    return Relation(r1.lhs + r2.lhs)


def cyclically_equal(u: TwistWord, v: TwistWord) -> bool:
    if len(u) != len(v) or u.alphabet != v.alphabet:
        return False
    return any(u.rotate(k) == v for k in range(max(len(u), 1)))


# -- counting ----------------------------------------------------------------

def classify_twists(w: TwistWord) -> TwistCensus:
    if not w.is_positive:
        raise ValueError("census needs a positive word")
    n = 0
    s: dict[int, int] = {}
    for curve_id, _ in w:
        c = w.alphabet[curve_id]
        if c.separating:
            s[c.split_genus] = s.get(c.split_genus, 0) + 1
        else:
            n += 1
    return TwistCensus(n, s)


def abelianized_residue(w: TwistWord) -> int:
    """``(n + 2s) mod 10``: the image of a positive genus-two word in ``Z/10``."""
    if w.genus != 2:
        raise ValueError(f"abelianization residue is only implemented for genus 2, not {w.genus}")
    census = classify_twists(w)
    return (census.n + 2 * census.s) % 10


# -- enumerating legal moves ---------------------------------------------------

@functools.lru_cache(maxsize=4096)
def _embeddings(alphabet: CurveAlphabet, axiom: Axiom, fixed: tuple[tuple[str, str], ...]) -> tuple[tuple[tuple[str, str], ...], ...]:
    fixed_map = dict(fixed)
    free = [r for r in axiom.roles if r not in fixed_map]
    found = []
    for choice in itertools.permutations(alphabet.ids, len(free)):
        roles = dict(fixed_map, **dict(zip(free, choice)))
        try:
            check_embedding(alphabet, axiom, roles)
        except IllegalMove:
            continue
        found.append(tuple((r, roles[r]) for r in axiom.roles))
    return tuple(found)


def _pattern_roles(pattern: Sequence[Letter], window: Sequence[Letter]) -> dict[str, str] | None:
    roles: dict[str, str] = {}
    for (r, e), (c, f) in zip(pattern, window):
        if e != f or roles.setdefault(r, c) != c:
            return None
    return roles


def legal_moves(
    w: TwistWord,
    *,
    to_identity: bool = False,
    axioms: Mapping[str, Axiom] | None = None,
) -> list[RewriteMove]:
    """All moves that apply to ``w``, for random walks and exploration.

    Axiom substitutions are listed for every placement whose pattern letters
    are in the word; free roles are filled by searching the alphabet.
    """
    axioms = DEFAULT_AXIOMS if axioms is None else axioms
    geo = w.alphabet.geometric
    letters = w.letters
    moves = []
    for i in range(len(letters) - 1):
        (x, e), (y, f) = letters[i], letters[i + 1]
        if geo(x, y) == 0 and x != y:
            moves.append(RewriteMove(COMMUTE, i))
        if x == y and e == -f:
            moves.append(RewriteMove(CANCEL, i))
        if i + 2 < len(letters) and letters[i + 2] == letters[i] and e == f and geo(x, y) == 1:
            moves.append(RewriteMove(BRAID, i))
    if to_identity:
        moves.extend(RewriteMove(CYCLIC, k) for k in range(1, len(letters)))
    for axiom in axioms.values():
        for direction, pattern in ((FORWARD, axiom.source), (BACKWARD, axiom.target)):
            for i in range(len(letters) - len(pattern) + 1):
                fixed = _pattern_roles(pattern, letters[i:i + len(pattern)])
                if fixed is None:
                    continue
                for roles in _embeddings(w.alphabet, axiom, tuple(sorted(fixed.items()))):
                    moves.append(RewriteMove(SUBSTITUTE, i, axiom.name, roles, direction))
    return moves
