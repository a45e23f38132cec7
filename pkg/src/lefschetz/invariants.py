"""Topological invariants of Lefschetz fibrations and pencils from positive relations.

Reports are kept at pencil level: a relation with ``b`` base-points describes
the fibration ``X # b CP^2-bar`` and the pencil ``X``, related by
``e_fib = e + b`` and ``sigma_fib = sigma - b``.  Everything is exact; a
division by 5 or 7 that does not come out even raises :class:`NonIntegral`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NonIntegral
from .smith import cokernel
from .words import TwistCensus, TwistWord, classify_twists

GENUS2_SIGN_NOTE = (
    "genus-2 signature uses sigma = -(3n + s)/5 + b; the printed form "
    "3n/5 - s/5 + 2 has the wrong sign and contradicts n + 7s = 30 and sigma(K3) = -16"
)


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise NonIntegral(f"{what}: {num}/{den} is not an integer")
    return q


def euler_char(g: int, delta: int, b: int = 0) -> int:
    """Euler characteristic ``4 - 4g + delta - b`` of the pencil's total space."""
    if delta < 0:
        raise ValueError("critical fibre count must be non-negative")
    return 4 - 4 * g + delta - b


def signature_genus3_hyperelliptic(i: int, r: int) -> int:
    """Signature of a genus-three hyperelliptic fibration, ``(-4i + r)/7``.

    A :class:`NonIntegral` here certifies that no hyperelliptic fibration has
    these fibre counts.
    """
    return _exact_div(-4 * i + r, 7, f"hyperelliptic genus-3 signature with i={i}, r={r}")


def signature_genus2(n: int, s: int, b: int = 0) -> int:
    """Pencil signature ``-(3n + s)/5 + b`` for genus two."""
    return _exact_div(-(3 * n + s), 5, f"genus-2 signature with n={n}, s={s}") + b


def hodge_lambda(sigma_fib: int, census: TwistCensus | int) -> Fraction:
    """Value of the Hodge class on the fibration sphere, ``(sigma + delta)/4``."""
    total = census.total if isinstance(census, TwistCensus) else int(census)
    return Fraction(sigma_fib + total, 4)


def chern_numbers(e: int, sigma: int) -> tuple[int, int]:
    return 2 * e + 3 * sigma, e


def adjunction_genus(K_dot_omega: int, omega_sq: int, k: int = 1) -> int:
    """Genus of curves dual to ``k[omega]`` from ``2g - 2 = k K.w + k^2 w^2``."""
    if k < 1:
        raise ValueError("k must be positive")
    twice = k * K_dot_omega + k * k * omega_sq
    g = _exact_div(twice + 2, 2, "adjunction genus")
    if g < 0:
        raise ValueError(f"adjunction gives negative genus {g}")
    return g


def first_homology(w: TwistWord, g: int | None = None) -> list[int]:
    """Invariant factors of ``Z^{2g}`` modulo the classes of the word's curves.

    This is ``H_1`` of the total space: the abelianization of the fibre group
    modulo the vanishing cycles.  ``0`` denotes a free ``Z`` summand.
    """
    g = w.genus if g is None else g
    rows = sorted({w.alphabet[c].homology for c, _ in w})
    return cokernel(rows, 2 * g)


@dataclass(frozen=True)
class EndoG3:
    """Signature from the genus-three hyperelliptic formula."""


@dataclass(frozen=True)
class Genus2Formula:
    """Signature from the genus-two fibre count formula."""


@dataclass(frozen=True)
class UserSupplied:
    """Signature supplied from outside (pencil level)."""

    sigma: int


@dataclass(frozen=True)
class TRoute:
    """Signature inherited from ``parent`` through a chain of T-operations.

    ``steps`` holds ``'forward'`` / ``'backward'`` entries applied in order.
    """

    parent: "FibrationData"
    steps: tuple[str, ...] = ("backward",)


SignatureSource = EndoG3 | Genus2Formula | UserSupplied | TRoute


@dataclass(frozen=True)
class FibrationData:
    genus: int
    word: TwistWord
    base_points: int = 0
    signature_source: SignatureSource = field(default_factory=EndoG3)

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        if self.word.genus != self.genus:
            raise ValueError(f"word lives in genus {self.word.genus}, not {self.genus}")
        if self.base_points < 0:
            raise ValueError("base_points must be non-negative")
        if not self.word.is_positive:
            raise ValueError("a fibration needs a positive word")
        src = self.signature_source
        if isinstance(src, EndoG3) and self.genus != 3:
            raise ValueError("the hyperelliptic signature formula needs genus 3")
        if isinstance(src, Genus2Formula) and self.genus != 2:
            raise ValueError("the genus-2 signature formula needs genus 2")


@dataclass(frozen=True)
class InvariantReport:
    """Invariants of a pencil with ``base_points`` base-points (0: a fibration)."""

    genus: int
    base_points: int
    e: int
    sigma: int
    c1_sq: int
    c2: int
    lam: Fraction
    census: TwistCensus
    h1: tuple[int, ...] | None = None
    notes: tuple[str, ...] = ()

    @property
    def sigma_fib(self) -> int:
        return self.sigma - self.base_points

    @property
    def e_fib(self) -> int:
        return self.e + self.base_points

    def noether_functional(self) -> int:
        """``9 sigma + 5e + 40`` at fibration level (four times the hyperelliptic pairing)."""
        return 9 * self.sigma_fib + 5 * self.e_fib + 40

    @classmethod
    def from_counts(cls, genus: int, e: int, sigma: int, census: TwistCensus, base_points: int = 0, **kw) -> InvariantReport:
        c1_sq, c2 = chern_numbers(e, sigma)
        lam = hodge_lambda(sigma - base_points, census)
        return cls(genus, base_points, e, sigma, c1_sq, c2, lam, census, **kw)

    def as_sections(self) -> dict:
        inv = {
            "c1_sq": self.c1_sq,
            "c2": self.c2,
            "e": self.e,
            "lambda": self.lam,
            "sigma": self.sigma,
        }
        census = {"n": self.census.n, "total": self.census.total}
        for h, k in self.census.s_by_genus:
            census[f"s_{h}"] = k
        out = {
            "census": census,
            "fibration": {"base_points": self.base_points, "genus": self.genus},
            "invariants": inv,
        }
        if self.h1 is not None:
            out["homology"] = {"h1": list(self.h1)}
        if self.notes:
            out["notes"] = {f"note_{i}": n for i, n in enumerate(self.notes)}
        return out


def compute_report(data: FibrationData) -> InvariantReport:
    census = classify_twists(data.word)
    g, b = data.genus, data.base_points
    e = euler_char(g, census.total, b)
    notes: list[str] = []
    src = data.signature_source
    if isinstance(src, EndoG3):
        sigma = signature_genus3_hyperelliptic(census.n, census.s) + b
    elif isinstance(src, Genus2Formula):
        sigma = signature_genus2(census.n, census.s, b)
        notes.append(GENUS2_SIGN_NOTE)
    elif isinstance(src, UserSupplied):
        sigma = int(src.sigma)
    elif isinstance(src, TRoute):
        parent = compute_report(src.parent)
        derived = parent
        for step in src.steps:
            derived = t_effect(derived, step)
        if derived.census.total != census.total:
            raise ValueError(
                f"T-route predicts {derived.census.total} critical fibres but the word has {census.total}"
            )
        if derived.base_points != b:
            raise ValueError("T-route parent has a different number of base-points")
        sigma = derived.sigma
        notes.append(f"sigma via T-route: parent sigma {parent.sigma}, steps {', '.join(src.steps)}")
        notes.extend(parent.notes)
    else:
        raise TypeError(f"unknown signature source {src!r}")
    h1 = tuple(first_homology(data.word))
    return InvariantReport.from_counts(g, e, sigma, census, b, h1=h1, notes=tuple(notes))


T_DELTAS = {"forward": (10, -6, 2), "backward": (-10, 6, -2)}


def t_effect(rep: InvariantReport, direction: str = "forward") -> InvariantReport:
    """Apply the invariant shifts of the T-operation: ``e +10, sigma -6, c1^2 +2``.

    Assumes the generic situation where both boundary curves of the inserted
    two-holed torus are non-separating, so ten irreducible fibres are added.
    """
    try:
        de, ds, dc = T_DELTAS[direction]
    except KeyError:
        raise ValueError(f"direction must be 'forward' or 'backward', not {direction!r}") from None
    census = TwistCensus(rep.census.n + de, rep.census.s_by_genus)
    out = InvariantReport.from_counts(rep.genus, rep.e + de, rep.sigma + ds, census, rep.base_points, notes=rep.notes)
    assert out.c1_sq == rep.c1_sq + dc
    return out


def fibre_sum_invariants(rep1: InvariantReport, rep2: InvariantReport, g: int | None = None) -> InvariantReport:
    """``sigma = sigma_1 + sigma_2`` and ``e = e_1 + e_2 - 2 e(F)`` with ``e(F) = 2 - 2g``."""
    g = rep1.genus if g is None else g
    if rep1.genus != g or rep2.genus != g:
        raise ValueError(f"genus mismatch: {rep1.genus}, {rep2.genus} (expected {g})")
    if rep1.base_points or rep2.base_points:
        raise ValueError("fibre sums are taken between fibrations (no base-points)")
    e = rep1.e + rep2.e - 2 * (2 - 2 * g)
    return InvariantReport.from_counts(g, e, rep1.sigma + rep2.sigma, rep1.census + rep2.census)
