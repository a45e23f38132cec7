"""Reference surface, curve alphabets and the homology action of Dehn twists.

Homology vectors live in the symplectic basis ``(a_1, b_1, ..., a_g, b_g)``
of ``H_1(Sigma_g; Z)`` and pair by

    <u, v> = sum_i (u_{a_i} v_{b_i} - u_{b_i} v_{a_i}),

so ``<a_i, b_i> = 1``.  A positive Dehn twist about ``c`` acts on homology by
the transvection ``x -> x + <x, c> c``.  The opposite sign is an equally good
global convention; every identity check in the package is insensitive to it.

The standard alphabet is the chain ``a_1, b_1, a_2, b_2, ...`` in which
consecutive curves meet once and all other pairs are disjoint.  Writing
``alpha_i, beta_i`` for the basis vectors, the chain classes are

    [a_1] = alpha_1,  [a_i] = alpha_i - alpha_{i-1} (i >= 2),  [b_i] = beta_i,

and the optional closing curve ``a_{g+1}`` has class ``-alpha_g``.  The
vanishing classes must pair like a chain (+-1 on neighbours, 0 otherwise);
taking every ``[a_i]`` to be a bare basis vector would not, and the chain
relations would then fail already in homology.

Matrices are tuples of tuples of Python ints, so arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import LefschetzError

IntMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Curve:
    """A labelled simple closed curve on the reference surface."""

    id: str
    homology: tuple[int, ...]
    separating: bool = False
    split_genus: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "homology", tuple(int(x) for x in self.homology))
        if len(self.homology) % 2:
            raise ValueError(f"curve {self.id}: homology vector has odd length")
        zero = not any(self.homology)
        if self.separating != zero:
            raise ValueError(
                f"curve {self.id}: separating={self.separating} but homology "
                f"vector is {'zero' if zero else 'non-zero'}"
            )
        if self.separating != (self.split_genus is not None):
            raise ValueError(f"curve {self.id}: split_genus is required exactly when separating")
        if self.split_genus is not None:
            g = len(self.homology) // 2
            if not 1 <= self.split_genus <= g // 2:
                raise ValueError(f"curve {self.id}: split genus {self.split_genus} outside [1, {g // 2}]")

    @property
    def genus(self) -> int:
        return len(self.homology) // 2


def _pair_key(u: str, v: str) -> tuple[str, str]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class CurveAlphabet:
    """Curves on a genus-``g`` surface with declared geometric intersections.

    ``geom_intersections`` lists the non-zero entries of the symmetric table;
    absent pairs are disjoint.  Only the values 0 and 1 matter for rewriting.
    """

    genus: int
    curves: tuple[Curve, ...]
    geom_intersections: tuple[tuple[tuple[str, str], int], ...] = ()
    _index: Mapping[str, Curve] = field(init=False, repr=False, compare=False)
    _geom: Mapping[tuple[str, str], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.genus < 1:
            raise ValueError("genus must be at least 1")
        curves = tuple(self.curves)
        object.__setattr__(self, "curves", curves)
        index = {}
        for c in curves:
            if c.id in index:
                raise ValueError(f"duplicate curve id {c.id!r}")
            if len(c.homology) != 2 * self.genus:
                raise ValueError(f"curve {c.id}: homology vector must have length {2 * self.genus}")
            index[c.id] = c
        geom = {}
        for (u, v), n in dict(self.geom_intersections).items():
            if u not in index or v not in index:
                raise ValueError(f"intersection i({u},{v}) names an unknown curve")
            if n < 0:
                raise ValueError(f"i({u},{v}) must be non-negative")
            if u == v and n:
                raise ValueError(f"i({u},{u}) must be 0")
            if n:
                geom[_pair_key(u, v)] = int(n)
        object.__setattr__(self, "geom_intersections", tuple(sorted(geom.items())))
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_geom", geom)
        for i, u in enumerate(curves):
            for v in curves[i + 1:]:
                alg = abs(algebraic_intersection(u, v))
                if alg > self.geometric(u.id, v.id):
                    raise ValueError(
                        f"|<{u.id},{v.id}>| = {alg} exceeds declared geometric intersection "
                        f"{self.geometric(u.id, v.id)}"
                    )

    def __getitem__(self, curve_id: str) -> Curve:
        try:
            return self._index[curve_id]
        except KeyError:
            raise KeyError(f"curve {curve_id!r} not in the genus-{self.genus} alphabet") from None

    def __contains__(self, curve_id) -> bool:
        return curve_id in self._index

    def __iter__(self):
        return iter(self.curves)

    def __len__(self):
        return len(self.curves)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.curves)

    def geometric(self, u: str, v: str) -> int:
        """Declared geometric intersection number of two curves."""
        self[u], self[v]
        return self._geom.get(_pair_key(u, v), 0)

    def extended(self, curves: Iterable[Curve] = (), intersections: Mapping[tuple[str, str], int] | None = None) -> CurveAlphabet:
        """Return a new alphabet with extra curves and intersection entries."""
        geom = dict(self.geom_intersections)
        for (u, v), n in (intersections or {}).items():
            geom[_pair_key(u, v)] = n
        return CurveAlphabet(self.genus, self.curves + tuple(curves), tuple(geom.items()))


def basis_vector(g: int, name: str) -> tuple[int, ...]:
    """The basis vector ``alpha_i`` (``name='a<i>'``) or ``beta_i`` (``'b<i>'``)."""
    kind, i = name[0], int(name[1:])
    if kind not in "ab" or not 1 <= i <= g:
        raise ValueError(f"no basis vector {name!r} in genus {g}")
    v = [0] * (2 * g)
    v[2 * (i - 1) + (kind == "b")] = 1
    return tuple(v)


def _add(*vectors: Sequence[int], scale: Sequence[int] | None = None) -> tuple[int, ...]:
    scale = scale or [1] * len(vectors)
    return tuple(sum(s * v[k] for s, v in zip(scale, vectors)) for k in range(len(vectors[0])))


def standard_alphabet(g: int, closing_curve: bool = False) -> CurveAlphabet:
    """Chain curves ``a_1, b_1, ..., a_g, b_g`` on the genus-``g`` surface.

    With ``closing_curve`` the chain is extended by ``a_{g+1}``, which meets
    ``b_g`` once; the genus-two words ``(a_1 b_1 a_2 b_2 a_3)^6`` and
    ``(a_1 ... a_3 a_3 ... a_1)^2`` need it.  In genus three the alphabet also
    carries ``d_2, e_2``: the two boundary curves of a neighbourhood of
    ``a_1 u b_1 u a_2``.  They are disjoint from that chain and from each
    other, meet ``b_2`` once, and have class ``[a_1] + [a_2]``.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    alpha = [basis_vector(g, f"a{i}") for i in range(1, g + 1)]
    beta = [basis_vector(g, f"b{i}") for i in range(1, g + 1)]
    chain: list[Curve] = []
    for i in range(g):
        a = alpha[0] if i == 0 else _add(alpha[i], alpha[i - 1], scale=[1, -1])
        chain.append(Curve(f"a{i + 1}", a))
        chain.append(Curve(f"b{i + 1}", beta[i]))
    if closing_curve:
        chain.append(Curve(f"a{g + 1}", _add(alpha[g - 1], scale=[-1])))
    geom = {(chain[k].id, chain[k + 1].id): 1 for k in range(len(chain) - 1)}
    curves = list(chain)
    if g == 3:
        boundary = _add(chain[0].homology, chain[2].homology)
        curves += [Curve("d2", boundary), Curve("e2", boundary)]
        geom[("d2", "b2")] = 1
        geom[("e2", "b2")] = 1
    return CurveAlphabet(g, tuple(curves), tuple(geom.items()))


def algebraic_intersection(u: Curve | Sequence[int], v: Curve | Sequence[int]) -> int:
    """Symplectic pairing of two homology classes."""
    x = u.homology if isinstance(u, Curve) else tuple(u)
    y = v.homology if isinstance(v, Curve) else tuple(v)
    if len(x) != len(y):
        raise ValueError(f"homology vectors have different lengths ({len(x)} and {len(y)})")
    return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(len(x) // 2))


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def symplectic_form(g: int) -> IntMatrix:
    """The Gram matrix ``J`` of the pairing, ``<u, v> = u^T J v``."""
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return tuple(tuple(r) for r in rows)


def is_symplectic(m: IntMatrix) -> bool:
    j = symplectic_form(len(m) // 2)
    return matmul(matmul(transpose(m), j), m) == j


def transvection_matrix(c: Curve, g: int | None = None, power: int = 1) -> IntMatrix:
    """Matrix of ``x -> x + power * <x, c> c``; ``power=-1`` gives the inverse twist.

    Columns are images of basis vectors.  Separating curves give the identity.
    """
    g = c.genus if g is None else g
    if c.genus != g:
        raise ValueError(f"curve {c.id} lives in genus {c.genus}, not {g}")
    n = 2 * g
    h = c.homology
    # <e_j, c> for the j-th basis vector
    coeff = [h[j + 1] if j % 2 == 0 else -h[j - 1] for j in range(n)]
    return tuple(
        tuple(int(i == j) + power * coeff[j] * h[i] for j in range(n)) for i in range(n)
    )
