"""Formal divisor classes on moduli spaces of pointed curves and their pairing with fibration spheres.

A class on ``M_{g,h}`` is a rational combination of ``lambda``, the boundary
classes ``delta_0 .. delta_{g//2}``, the cotangent classes ``psi_1 .. psi_h``
and (for ``h = 1``) the relative dualising class ``omega_RD``.  A fibration
(or pencil with ``h`` base-points) gives a sphere whose values on these
generators are read off from its invariants; the pairing is the obvious
linear fold.  Everything is a :class:`fractions.Fraction`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import NonIntegral
from .invariants import InvariantReport, adjunction_genus

FUNCTOR = "functor"
CHOW = "chow"

PRINTED_C2_NOTE = (
    "closed form with c2 coefficient -(g+11)/12 differs from the computed value by exactly c2; "
    "the computed pipeline value is reported"
)


class NormalizationWarning(UserWarning):
    """Chow-normalized classes paired with a sphere meeting ``delta_1``."""


def _fractions(values: Sequence) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class DivisorClass:
    g: int
    h: int = 0
    coeff_lambda: Fraction = Fraction(0)
    coeff_delta: tuple[Fraction, ...] = ()
    coeff_psi: tuple[Fraction, ...] = ()
    coeff_omega_rd: Fraction = Fraction(0)
    normalization: str = FUNCTOR

    def __post_init__(self):
        if self.g < 1 or self.h < 0:
            raise ValueError("need g >= 1 and h >= 0")
        if self.normalization not in (FUNCTOR, CHOW):
            raise ValueError(f"normalization must be {FUNCTOR!r} or {CHOW!r}")
        delta = _fractions(self.coeff_delta) + (Fraction(0),) * (self.g // 2 + 1 - len(self.coeff_delta))
        psi = _fractions(self.coeff_psi) + (Fraction(0),) * (self.h - len(self.coeff_psi))
        if len(delta) != self.g // 2 + 1:
            raise ValueError(f"genus {self.g} has boundary classes delta_0..delta_{self.g // 2}")
        if len(psi) != self.h:
            raise ValueError(f"{self.h} markings give {self.h} psi classes, got {len(psi)}")
        if self.coeff_omega_rd and self.h != 1:
            raise ValueError("omega_RD is only used with one marking")
        object.__setattr__(self, "coeff_lambda", Fraction(self.coeff_lambda))
        object.__setattr__(self, "coeff_delta", delta)
        object.__setattr__(self, "coeff_psi", psi)
        object.__setattr__(self, "coeff_omega_rd", Fraction(self.coeff_omega_rd))

    def _check(self, other: DivisorClass):
        if (self.g, self.h) != (other.g, other.h):
            raise ValueError(f"classes live on M_{{{self.g},{self.h}}} and M_{{{other.g},{other.h}}}")
        if self.normalization != other.normalization:
            raise ValueError("cannot combine functor and chow normalized classes")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._check(other)
        return DivisorClass(
            self.g,
            self.h,
            self.coeff_lambda + other.coeff_lambda,
            tuple(x + y for x, y in zip(self.coeff_delta, other.coeff_delta)),
            tuple(x + y for x, y in zip(self.coeff_psi, other.coeff_psi)),
            self.coeff_omega_rd + other.coeff_omega_rd,
            self.normalization,
        )

    def scale(self, t) -> DivisorClass:
        t = Fraction(t)
        return DivisorClass(
            self.g,
            self.h,
            t * self.coeff_lambda,
            tuple(t * x for x in self.coeff_delta),
            tuple(t * x for x in self.coeff_psi),
            t * self.coeff_omega_rd,
            self.normalization,
        )

    __rmul__ = scale

    def __neg__(self) -> DivisorClass:
        return self.scale(-1)

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-other)

    def with_markings(self, h: int, psi=()) -> DivisorClass:
        """Pull back to ``h`` markings, with the given ``psi`` coefficients."""
        return DivisorClass(self.g, h, self.coeff_lambda, self.coeff_delta, psi, 0, self.normalization)

    def is_zero(self) -> bool:
        return not (self.coeff_lambda or any(self.coeff_delta) or any(self.coeff_psi) or self.coeff_omega_rd)

    def __str__(self):
        terms = [(self.coeff_lambda, "lambda")]
        terms += [(c, f"delta_{i}") for i, c in enumerate(self.coeff_delta)]
        terms += [(c, f"psi_{j + 1}") for j, c in enumerate(self.coeff_psi)]
        terms.append((self.coeff_omega_rd, "omega_RD"))
        parts = [f"{c}*{name}" for c, name in terms if c]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class SphereData:
    """Values of the tautological generators on the sphere of a fibration.

    ``psi_values[j]`` and ``omega_rd_value`` are both ``-(s_j . s_j)``, so
    an exceptional section contributes ``+1``.
    """

    g: int
    h: int = 0
    lambda_value: Fraction = Fraction(0)
    delta_values: tuple[int, ...] = ()
    psi_values: tuple[int, ...] = ()
    omega_rd_value: int = 0

    def __post_init__(self):
        delta = tuple(int(x) for x in self.delta_values)
        delta += (0,) * (self.g // 2 + 1 - len(delta))
        if len(delta) != self.g // 2 + 1:
            raise ValueError(f"genus {self.g} has boundary classes delta_0..delta_{self.g // 2}")
        if any(x < 0 for x in delta):
            raise ValueError("boundary intersections count fibres and must be non-negative")
        psi = tuple(int(x) for x in self.psi_values)
        if len(psi) != self.h:
            raise ValueError(f"need {self.h} psi values, got {len(psi)}")
        object.__setattr__(self, "lambda_value", Fraction(self.lambda_value))
        object.__setattr__(self, "delta_values", delta)
        object.__setattr__(self, "psi_values", psi)

    @classmethod
    def from_report(cls, rep: InvariantReport, section_squares: Sequence[int] = ()) -> SphereData:
        """Sphere of the fibration obtained by blowing up the report's base-points.

        Each base-point gives an exceptional section of square ``-1``; further
        sections may be passed as ``section_squares``.
        """
        g = rep.genus
        squares = [-1] * rep.base_points + list(section_squares)
        delta = [rep.census.delta(i) for i in range(g // 2 + 1)]
        h = len(squares)
        omega = -squares[0] if h == 1 else 0
        return cls(g, h, rep.lam, tuple(delta), tuple(-s for s in squares), omega)

    @classmethod
    def from_counts(cls, g: int, sigma_fib: int, delta: Sequence[int], section_squares: Sequence[int] = ()) -> SphereData:
        delta = tuple(delta)
        lam = Fraction(sigma_fib + sum(delta), 4)
        h = len(section_squares)
        omega = -section_squares[0] if h == 1 else 0
        return cls(g, h, lam, delta, tuple(-s for s in section_squares), omega)


def pair(c: DivisorClass, s: SphereData) -> Fraction:
    if (c.g, c.h) != (s.g, s.h):
        raise ValueError(f"dimension mismatch: class on M_{{{c.g},{c.h}}}, sphere for M_{{{s.g},{s.h}}}")
    if c.normalization == CHOW and s.g >= 2 and s.delta_values[1:2] and s.delta_values[1]:
        warnings.warn(
            "chow-normalized class paired with a sphere meeting delta_1; the result differs "
            "from the functor normalization",
            NormalizationWarning,
            stacklevel=2,
        )
    total = c.coeff_lambda * s.lambda_value
    total += sum(x * y for x, y in zip(c.coeff_delta, s.delta_values))
    total += sum(x * y for x, y in zip(c.coeff_psi, s.psi_values))
    total += c.coeff_omega_rd * s.omega_rd_value
    return total


def hyperelliptic_class(mode: str = FUNCTOR) -> DivisorClass:
    """Class of the hyperelliptic locus in genus three."""
    if mode == FUNCTOR:
        return DivisorClass(3, 0, 9, (-1, -3), normalization=FUNCTOR)
    if mode == CHOW:
        return DivisorClass(3, 0, 18, (-2, -3), normalization=CHOW)
    raise ValueError(f"mode must be {FUNCTOR!r} or {CHOW!r}")


def bn_constant(k: int) -> Fraction:
    """``c_k = 3 (2k-4)! / (k! (k-2)!)``."""
    if k < 2:
        raise ValueError("c_k needs k >= 2")
    return Fraction(3 * factorial(2 * k - 4), factorial(k) * factorial(k - 2))


def _bn_bracket(g: int) -> DivisorClass:
    if g < 3 or g % 2 == 0:
        raise ValueError(f"Brill-Noether divisors of k-gonal curves need odd genus >= 3, got {g}")
    delta = [-Fraction(g + 1, 6)] + [-Fraction(i * (g - i)) for i in range(1, g // 2 + 1)]
    return DivisorClass(g, 0, g + 3, tuple(delta))


def brill_noether_class(g: int) -> DivisorClass:
    """Class of the locus of ``k``-gonal curves, ``k = (g+1)/2``, for odd ``g``."""
    bracket = _bn_bracket(g)
    return bracket.scale(bn_constant((g + 1) // 2))


def covering_divisor(g: int, h: int) -> DivisorClass:
    """Normalized Brill-Noether class on ``M_{g,h}`` translated by ``-sum psi_j``."""
    if h < 1:
        raise ValueError("the covering divisor needs at least one marking")
    return _bn_bracket(g).with_markings(h, (-1,) * h)


def weierstrass_class() -> DivisorClass:
    """Closure of the Weierstrass locus in ``M_{2,1}``: ``3 omega_RD - lambda - delta_1``."""
    return DivisorClass(2, 1, -1, (0, -1), coeff_omega_rd=3)


def t_pairing_delta(a, b) -> Fraction:
    """Change of ``<a lambda - b delta_0, sphere>`` under a forward T-operation."""
    return -(10 * Fraction(b) - Fraction(a))


@dataclass(frozen=True)
class CoveringTerm:
    """One term of the covering sequence, with the data that produced it."""

    k: int
    pencil_genus: int
    divisor_genus: int
    base_points: int
    sphere: SphereData
    value: Fraction
    notes: tuple[str, ...] = field(default=())


def covering_sphere(K_dot_omega: int, omega_sq: int, c1_sq: int, c2: int, k: int) -> tuple[int, int, SphereData]:
    """Sphere of the degree-``k`` pencil, transported to genus ``2k - 1``.

    Returns ``(pencil_genus, base_points, sphere)``.  The pencil genus comes
    from adjunction and the sphere values from the pencil's invariants;
    all fibres are taken irreducible, so only ``delta_0`` is non-zero.
    """
    if k < 2 or k % 2:
        raise ValueError(f"k must be even and at least 2, got {k}")
    if omega_sq < 1:
        raise ValueError("a symplectic class needs omega^2 > 0")
    twice_sigma = c1_sq - 2 * c2
    if twice_sigma % 3:
        raise NonIntegral(f"signature (c1^2 - 2 c2)/3 = {twice_sigma}/3 is not an integer")
    sigma = twice_sigma // 3
    g_pencil = adjunction_genus(K_dot_omega, omega_sq, k)
    b = k * k * omega_sq
    delta0 = c2 + b + 4 * g_pencil - 4
    if delta0 < 0:
        raise ValueError(f"negative critical fibre count {delta0}")
    g_div = 2 * k - 1
    sphere = SphereData.from_counts(g_div, sigma - b, (delta0,), (-1,) * b)
    # lambda uses the pencil genus; the sphere lives on the genus 2k-1 moduli space
    lam = Fraction(sigma - b + delta0, 4)
    assert lam == Fraction(c1_sq + c2, 12) + g_pencil - 1
    return g_pencil, b, sphere


def covering_sequence_term(K_dot_omega: int, omega_sq: int, c1_sq: int, c2: int, k: int) -> Fraction:
    return covering_term(K_dot_omega, omega_sq, c1_sq, c2, k).value


def covering_term(K_dot_omega: int, omega_sq: int, c1_sq: int, c2: int, k: int) -> CoveringTerm:
    g_pencil, b, sphere = covering_sphere(K_dot_omega, omega_sq, c1_sq, c2, k)
    divisor = covering_divisor(sphere.g, b)
    notes = []
    if g_pencil % 2 == 0:
        notes.append(f"pencil genus {g_pencil} is even")
    return CoveringTerm(k, g_pencil, sphere.g, b, sphere, pair(divisor, sphere), tuple(notes))


def covering_closed_form(K_dot_omega, c1_sq, c2, k: int) -> Fraction:
    """``((g+1)(g+7)/12) K.w + ((g+3)/12) c1^2 + ((1-g)/12) c2`` with ``g = 2k - 1``."""
    g = 2 * k - 1
    return (
        Fraction((g + 1) * (g + 7), 12) * K_dot_omega
        + Fraction(g + 3, 12) * c1_sq
        + Fraction(1 - g, 12) * c2
    )


def printed_closed_form(K_dot_omega, c1_sq, c2, k: int) -> Fraction:
    """The closed form with the ``c2`` coefficient ``-(g+11)/12``; off by exactly ``c2``."""
    g = 2 * k - 1
    return (
        Fraction((g + 1) * (g + 7), 12) * K_dot_omega
        + Fraction(g + 3, 12) * c1_sq
        - Fraction(g + 11, 12) * c2
    )
