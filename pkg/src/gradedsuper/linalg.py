"""Exact dense linear algebra.

`rref` and `rank` work with Fraction entries or any field-like type
supporting +, -, *, /, truthiness for zero-testing (rational functions
qualify).  The solvers are used with Fraction entries.  Everything is
small and dense; first nonzero entry wins as pivot.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def mat_copy(a):
    return [list(row) for row in a]


def rref(a):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    a = mat_copy(a)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [v - f * w for v, w in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(a) -> int:
    return len(rref(a)[1])


def nullspace(a, one=ONE, zero=ZERO):
    """Basis of the right kernel, one vector per free column."""
    if not a:
        return []
    red, pivots = rref(a)
    cols = len(a[0])
    basis = []
    for fc in (c for c in range(cols) if c not in pivots):
        v = [zero] * cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution of A x = b over Fraction, or None when inconsistent.

    Free variables are set to zero.
    """
    if not a:
        return []
    cols = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][-1]
    return x


def invert(a):
    """Inverse of a square Fraction matrix, or None when singular."""
    n = len(a)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def mat_mul(a, b):
    bt = list(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            acc = None
            for av, bv in zip(row, col):
                term = av * bv
                acc = term if acc is None else acc + term
            orow.append(acc)
        out.append(orow)
    return out
