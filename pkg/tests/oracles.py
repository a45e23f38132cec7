"""Independent reference computations used by the tests (sympy based)."""

from __future__ import annotations

import sympy


def form(g: int) -> sympy.Matrix:
    return sympy.Matrix(sympy.BlockDiagMatrix(*[sympy.Matrix([[0, 1], [-1, 0]])] * g))


def pairing(u, v) -> int:
    g = len(u) // 2
    return int((sympy.Matrix([u]) * form(g) * sympy.Matrix(v))[0, 0])


def transvection(h, power: int = 1) -> sympy.Matrix:
    """Matrix whose j-th column is ``e_j + power <e_j, h> h``."""
    n = len(h)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        t = pairing(e, h)
        cols.append(sympy.Matrix(e) + power * t * sympy.Matrix(h))
    return sympy.Matrix.hstack(*cols)


def image(word, alphabet) -> sympy.Matrix:
    m = sympy.eye(2 * alphabet.genus)
    for curve_id, e in word:
        m = m * transvection(alphabet[curve_id].homology, e)
    return m


def invariant_factors(rows) -> list[int]:
    from sympy.matrices.normalforms import smith_normal_form

    if not rows:
        return []
    snf = smith_normal_form(sympy.Matrix(rows), domain=sympy.ZZ)
    return [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
