"""Exact Gaussian elimination over a field of RatFunc entries."""
from __future__ import annotations

from .exact import as_ratfunc

__all__ = ["SingularSystemError", "row_reduce", "nullspace", "rank"]


class SingularSystemError(ArithmeticError):
    pass


def _size(x):
    return x.total_size() if hasattr(x, "total_size") else 0


def row_reduce(rows, ncols=None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``.

    Within each column the pivot is the entry of smallest total degree,
    which keeps intermediate expressions small.
    """
    rows = [[as_ratfunc(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        best = None
        for i in range(r, len(rows)):
            x = rows[i][col]
            if not x.is_zero() and (best is None or _size(x) < _size(rows[best][col])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv if not x.is_zero() else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if not f.is_zero():
                    rows[i] = [a - f * b if not b.is_zero() else a for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows, ncols=None) -> int:
    return len(row_reduce(rows, ncols)[1])


def nullspace(rows, ncols: int) -> list:
    """Basis of ``{x : rows @ x = 0}``, one vector per free column."""
    if not rows:
        return [[as_ratfunc(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [as_ratfunc(0)] * ncols
        v[fcol] = as_ratfunc(1)
        for row, pcol in zip(red, pivots):
            v[pcol] = -row[fcol]
        basis.append(v)
    return basis
