"""Small exact linear algebra over Q and Z/pZ."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .. import nmod


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        rowr = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], rowr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace_q(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of the right nullspace over Q."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, piv = rref(rows, ncols)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def solve_q(a: Sequence[Sequence], b: Sequence):
    """Solve a x = b over Q.

    Returns ``(x, rank)`` where ``x`` is None when the system is
    inconsistent; free variables (if any) are set to zero.
    """
    n = len(a[0]) if a else 0
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    m, piv = rref(aug, n + 1)
    if n in piv:
        return None, len(piv) - 1
    x = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        x[pc] = m[i][n]
    return x, len(piv)


def det_bareiss(mat: Sequence[Sequence]):
    """Fraction-free determinant; entries may be ints or ring elements with exact ``/``."""
    m = [list(r) for r in mat]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            sw = next((i for i in range(k + 1, n) if m[i][k]), None)
            if sw is None:
                return m[0][0] * 0
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = _exact_div(num, prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact Bareiss step")
        return q
    if isinstance(b, int) and b == 1:
        return a
    return a / b


def nullspace_mod(rows, ncols, p):
    return nmod.nullspace([[x % p for x in r] for r in rows], ncols, p)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]


def det3(a):
    return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
