"""Decision procedures: non-holomorphicity tests, irreducibility certificates and genus-two geography.

Verdicts are certificates or silence.  A gate that returns ``False`` only
says its certificate is unavailable; it never claims the opposite property.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from .errors import NoSuchFibre, NonDivisible, RefusesVerdict
from .invariants import signature_genus2
from .moduli import covering_term
from .words import TwistCensus

ISOTOPY_ASSUMPTION = "assumes the symplectic isotopy conjecture for genus-two branch curves"

G2_WORDS = {
    "word1": "(a1 b1 a2 b2 a3 a3 b2 a2 b1 a1)^2",
    "word2": "(a1 b1 a2 b2 a3)^6",
    "word3": "(a1 b1 a2 b2)^10",
}


@dataclass(frozen=True)
class ObstructionVerdict:
    hyperelliptic_possible: bool
    pairing_value: Fraction
    non_holomorphic: bool
    reasons: tuple[str, ...] = ()


def genus3_obstruction(e: int, sigma: int, has_reducible: bool = False, refine_mod14: bool = False) -> ObstructionVerdict:
    """Test a genus-three fibration (no base-points) for a non-holomorphicity certificate.

    Without the flag, hyperellipticity needs ``7 | e + 1`` (integrality of the
    hyperelliptic signature formula with ``i = e + 8``).  With ``refine_mod14``
    it needs ``14 | i = e + 8``: the literal reading ``14 | e + 1`` would rule
    out the hyperelliptic fibration ``(a1 b1 a2 b2 a3 b3)^14`` itself.
    """
    if has_reducible:
        raise RefusesVerdict("the obstruction needs a fibration with irreducible fibres only")
    pairing = Fraction(9 * sigma + 5 * e + 40, 4)
    reasons = []
    if refine_mod14:
        possible = (e + 8) % 14 == 0
        reasons.append(f"hyperelliptic: 14 {'divides' if possible else 'does not divide'} e+8 = {e + 8}")
    else:
        possible = (e + 1) % 7 == 0
        reasons.append(f"hyperelliptic: 7 {'divides' if possible else 'does not divide'} e+1 = {e + 1}")
    reasons.append(f"pairing: <S^2, H_3> = (9 sigma + 5e + 40)/4 = {pairing}")
    reasons.append("precondition: irreducible fibres only (supplied)")
    non_holomorphic = not possible and pairing < 0
    return ObstructionVerdict(possible, pairing, non_holomorphic, tuple(reasons))


def reducibility_parity_certificate(form_even: bool, K_even: bool, k: int) -> bool:
    """True when a degree-``k`` pencil is certified to have no reducible fibres."""
    return k % 2 == 0 and (form_even or K_even)


def hodge_index_contradictions(D1_sq: int, D2_sq: int, k: int, C_sq: int) -> list[str]:
    """Contradictions met by a split ``k[C] = D1 + D2`` with ``D1 . D2 = 1`` on a Kahler surface.

    An empty list means the split survives every check.
    """
    if k == 1:
        return []
    if k < 1:
        raise ValueError("k must be positive")
    if k * k * C_sq <= 4:
        raise ValueError(f"the gate needs k^2 C^2 > 4, got {k * k * C_sq}")
    found = []
    if D1_sq + D2_sq != k * k * C_sq - 2:
        found.append(f"sum: D1^2 + D2^2 = {D1_sq + D2_sq} but k^2 C^2 - 2 = {k * k * C_sq - 2}")
    for name, sq in (("D1", D1_sq), ("D2", D2_sq)):
        if 1 + sq <= 0:
            found.append(f"positivity: [k omega].{name} = 1 + {name}^2 = {1 + sq} is not positive")
        elif (1 + sq) % k:
            found.append(f"divisibility: k = {k} does not divide 1 + {name}^2 = {1 + sq}")
    if D1_sq * D2_sq >= 1:
        found.append(f"hodge index: D1^2 D2^2 = {D1_sq * D2_sq} >= 1")
    return found


def hodge_index_reducibility_gate(D1_sq: int, D2_sq: int, k: int, C_sq: int) -> bool:
    """Feasibility of a reducible fibre split; ``k = 1`` is exempt and always feasible."""
    return not hodge_index_contradictions(D1_sq, D2_sq, k, C_sq)


# -- genus-two geography -----------------------------------------------------------

K_ZERO = "K_zero"
K_OMEGA_ONE = "K_omega_one"
B_PLUS_ONE = "b_plus_one"
UNLISTED = "unlisted"


@dataclass(frozen=True)
class GeographyCase:
    branch: str
    n: int
    s: int
    b1: int
    e: int
    sigma: int
    c1_sq: int
    omega_sq: int
    homeo_word: str | None = None
    note: str = ""

    @property
    def b_plus(self) -> int:
        return (self.e + self.sigma) // 2 - 1 + self.b1

    @property
    def b_minus(self) -> int:
        return self.b_plus - self.sigma

    def key(self) -> tuple:
        return (self.branch, self.n, self.s, self.b1, self.omega_sq)


def _case(branch: str, n: int, s: int, b1: int, omega_sq: int, **kw) -> GeographyCase:
    sigma = signature_genus2(n, s, omega_sq)
    e = n + s - 4 - omega_sq
    return GeographyCase(branch, n, s, b1, e, sigma, 2 * e + 3 * sigma, omega_sq, **kw)


def _parity_ok(case: GeographyCase) -> bool:
    # b1 even forces b_+ odd on an almost complex manifold
    return (case.e + case.sigma) % 4 == 0 and case.b_plus % 2 == 1


def _lattice(total: int, weight: int) -> list[tuple[int, int]]:
    """Non-negative ``(n, s)`` with ``n + weight*s = total`` and ``10 | n + 2s``."""
    return [(total - weight * s, s) for s in range(total // weight + 1) if (total - weight * s + 2 * s) % 10 == 0]


def _b1_choices(s: int) -> tuple[int, ...]:
    # s = 0 gives a simply connected total space
    return (0,) if s == 0 else (0, 2)


def _k_zero() -> list[GeographyCase]:
    out = []
    for n, s in _lattice(30, 7):
        for b1 in _b1_choices(s):
            c = _case(K_ZERO, n, s, b1, 2, homeo_word="word2" if s == 0 else None)
            if _parity_ok(c) and c.b_plus > 1:
                out.append(c)
    return out


def _k_omega_one() -> list[GeographyCase]:
    out = []
    for n, s in _lattice(40, 7):
        for b1 in _b1_choices(s):
            c = _case(
                K_OMEGA_ONE, n, s, b1, 1,
                homeo_word="word3" if s == 0 else None,
                note="" if s == 0 else UNLISTED,
            )
            if _parity_ok(c) and c.b_plus > 1:
                out.append(c)
    return out


def _b_plus_one() -> list[GeographyCase]:
    out = []
    for b1 in (0, 2):
        for n, s in _lattice(20 - 5 * b1, 2):
            if s == 0 and b1:
                continue
            for omega_sq in (1, 2):
                c = _case(B_PLUS_ONE, n, s, b1, omega_sq, homeo_word="word1" if s == 0 else None)
                if c.b_plus == 1 and c.b_minus >= 0:
                    out.append(c)
    return out


BRANCHES = {K_ZERO: _k_zero, K_OMEGA_ONE: _k_omega_one, B_PLUS_ONE: _b_plus_one}


def genus2_geography(order: tuple[str, ...] = (K_ZERO, K_OMEGA_ONE, B_PLUS_ONE)) -> list[GeographyCase]:
    """Every fibre count allowed for a genus-two pencil, sorted by branch and counts.

    ``order`` only changes the evaluation order; the result is the same.
    """
    seen = {}
    for name in order:
        for c in BRANCHES[name]():
            seen.setdefault(c.key(), c)
    rank = {K_ZERO: 0, K_OMEGA_ONE: 1, B_PLUS_ONE: 2}
    return sorted(seen.values(), key=lambda c: (rank[c.branch], -c.n, c.s, c.b1, c.omega_sq))


def k_zero_lattice(sign: int = -1) -> list[tuple[int, int]]:
    """Non-negative ``(n, s)`` with ``c1^2 = 0`` on a two base-point pencil.

    ``sign=-1`` uses ``sigma_fib = -(3n + s)/5``; ``sign=+1`` uses the
    variant ``(3n - s)/5``, which has no solutions at all.
    """
    sols = []
    for n in range(200):
        for s in range(200):
            num = -(3 * n + s) if sign < 0 else 3 * n - s
            if num % 5:
                continue
            e = n + s - 6
            sigma = num // 5 + 2
            if 2 * e + 3 * sigma == 0 and (n + 2 * s) % 10 == 0:
                sols.append((n, s))
    return sols


# -- sections and trades ---------------------------------------------------------

CASE1 = "case1"
CASE2 = "case2"
VIOLATION = "violation"


@dataclass(frozen=True)
class SectionBound:
    verdict: str
    m: int
    lhs_case1: int
    lhs_case2: int
    rhs: int
    assumption: str = ISOTOPY_ASSUMPTION


def section_bound(delta0: int, delta1: int, s_dot_s: int) -> SectionBound:
    total = delta0 + 2 * delta1
    if total % 10:
        raise NonDivisible(f"delta0 + 2 delta1 = {total} is not divisible by 10")
    m = total // 10
    ss = abs(s_dot_s)
    rhs = m + delta1
    if 3 * ss >= rhs:
        verdict = CASE1
    elif 4 * ss == rhs:
        verdict = CASE2
    else:
        verdict = VIOLATION
    return SectionBound(verdict, m, 3 * ss, 4 * ss, rhs)


def genus2_section_bound(delta0: int, delta1: int, s_dot_s: int) -> str:
    """``case1`` if ``3|s.s| >= m + delta1``, ``case2`` if ``4|s.s| = m + delta1``, else ``violation``."""
    return section_bound(delta0, delta1, s_dot_s).verdict


def weierstrass_margin(delta0: int, delta1: int, s_dot_s: int) -> int:
    """``3|s.s| - m - delta1``; unchanged by :func:`trade_reducible`."""
    total = delta0 + 2 * delta1
    if total % 10:
        raise NonDivisible(f"delta0 + 2 delta1 = {total} is not divisible by 10")
    return 3 * abs(s_dot_s) - total // 10 - delta1


def trade_reducible(census: TwistCensus, h: int) -> TwistCensus:
    """Replace one reducible fibre with a genus-``h`` component by ``(4h+2)2h`` irreducible ones."""
    if census.separating(h) < 1:
        raise NoSuchFibre(f"no reducible fibre with a genus-{h} component")
    counts = dict(census.s_by_genus)
    counts[h] -= 1
    return TwistCensus(census.n + (4 * h + 2) * 2 * h, counts)


def pencil_duality_check(base_points: int, delta1: int) -> bool:
    """False when a pencil with a single base-point has reducible fibres (obstructed)."""
    return not (base_points == 1 and delta1 >= 1)


# -- covering sequence -----------------------------------------------------------

UNBOUNDED = "unbounded_growth"
BOUNDED = "bounded"
ZERO = "identically_zero"


@dataclass(frozen=True)
class CoveringVerdict:
    verdict: str
    terms: tuple[tuple[int, Fraction], ...]
    threshold: int | None = None
    notes: tuple[str, ...] = ()


def _growth_threshold(K_dot_omega: int, omega_sq: int, c1_sq: int, c2: int) -> int:
    """First even ``k`` from which the terms are positive and increasing."""
    for k in count(2, 2):
        a = covering_term(K_dot_omega, omega_sq, c1_sq, c2, k).value
        b = covering_term(K_dot_omega, omega_sq, c1_sq, c2, k + 2).value
        # the step between terms is non-decreasing in k, so this persists
        if a > 0 and b > a:
            return k
    raise AssertionError("unreachable")


def covering_boundedness(K_dot_omega: int, omega_sq: int, c1_sq: int, c2: int, kmax: int) -> CoveringVerdict:
    """Evaluate the covering sequence for even ``k <= kmax`` and classify its growth.

    The terms are quadratic in ``k`` with leading part ``k^2 K.w / 3``; for
    ``K.w = 0`` the linear part ``(c1^2 - c2) k / 6`` decides.  When growth is
    unbounded but only starts beyond ``kmax``, the evaluation is extended to
    the first term past the threshold so the listed terms witness it.
    """
    if kmax < 2 or kmax % 2:
        raise ValueError(f"kmax must be even and at least 2, got {kmax}")
    growing = K_dot_omega > 0 or (K_dot_omega == 0 and c1_sq > c2)
    notes = []
    threshold = None
    last = kmax
    if growing:
        threshold = _growth_threshold(K_dot_omega, omega_sq, c1_sq, c2)
        if threshold + 2 > kmax:
            last = threshold + 2
            notes.append(f"evaluation extended to k = {last} past the growth threshold")
    terms = []
    for k in range(2, last + 1, 2):
        t = covering_term(K_dot_omega, omega_sq, c1_sq, c2, k)
        terms.append((k, t.value))
    if all(v == 0 for _, v in terms):
        verdict = ZERO
    elif growing:
        verdict = UNBOUNDED
    else:
        verdict = BOUNDED
    return CoveringVerdict(verdict, tuple(terms), threshold, tuple(notes))
