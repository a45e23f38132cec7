"""Invariant factors of integer matrices (Smith normal form diagonal)."""

from __future__ import annotations

from typing import Sequence


def invariant_factors(rows: Sequence[Sequence[int]]) -> list[int]:
    """Non-zero diagonal entries ``d_1 | d_2 | ...`` of the Smith normal form."""
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # p must also divide the remaining block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # move the smallest non-zero entry of row/column t onto the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def cokernel(rows: Sequence[Sequence[int]], rank: int) -> list[int]:
    """Invariant factors of ``Z^rank / span(rows)``.

    ``0`` stands for a free summand ``Z``; trivial factors ``1`` are dropped,
    so the trivial group is ``[]`` and ``Z^2`` is ``[0, 0]``.
    """
    d = invariant_factors(rows)
    torsion = [x for x in d if x != 1]
    return torsion + [0] * (rank - len(d))


def describe_group(factors: Sequence[int]) -> str:
    if not factors:
        return "0"
    free = sum(1 for x in factors if x == 0)
    parts = [f"Z/{x}" for x in factors if x]
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    return " + ".join(parts)
