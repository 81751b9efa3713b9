"""Exact sparse Gaussian elimination: rank and linear solves.

Rows are dicts mapping column keys to nonzero field elements.  Pivoting
prefers the sparsest column, then the sparsest row holding it, which keeps
fill-in small on the coefficient matrices and certificate systems that
arise here.  All arithmetic happens in the supplied field, so results are
exact over Q (Fraction) and over F_p.
"""

from __future__ import annotations


class CapExceededError(RuntimeError):
    """A configured size cap would be exceeded."""


def _column_counts(rows):
    counts = {}
    for row in rows:
        for col in row:
            counts[col] = counts.get(col, 0) + 1
    return counts


def _eliminate(rows, field, pivot_row, pivot_col):
    """Subtract multiples of pivot_row from every other row holding pivot_col."""
    inv = field.inv(pivot_row[pivot_col])
    out = []
    for row in rows:
        if pivot_col not in row:
            if row:
                out.append(row)
            continue
        factor = field.mul(row[pivot_col], inv)
        new_row = dict(row)
        for col, val in pivot_row.items():
            acc = field.sub(new_row.get(col, field.zero), field.mul(factor, val))
            if field.is_zero(acc):
                new_row.pop(col, None)
            else:
                new_row[col] = acc
        if new_row:
            out.append(new_row)
    return out


def rank(rows, field) -> int:
    """Rank of the sparse matrix given as an iterable of {col: coeff} rows."""
    live = [dict(r) for r in rows if r]
    rk = 0
    while live:
        counts = _column_counts(live)
        pivot_col = min(counts, key=lambda c: (counts[c], str(c)))
        pivot_row = min(
            (r for r in live if pivot_col in r), key=lambda r: (len(r), sorted(map(str, r)))
        )
        live.remove(pivot_row)
        live = _eliminate(live, field, pivot_row, pivot_col)
        rk += 1
    return rk


def solve(equations, rhs, field, nnz_cap=None):
    """Solve a sparse linear system; return {unknown: value} or None.

    ``equations`` is a list of {unknown: coeff} rows, ``rhs`` the matching
    right-hand sides.  Free unknowns are set to zero.  Returns None when the
    system is inconsistent.
    """
    if nnz_cap is not None:
        nnz = sum(len(r) for r in equations)
        if nnz > nnz_cap:
            raise CapExceededError(f"linear system has {nnz} nonzeros (cap {nnz_cap})")

    live = []
    for row, b in zip(equations, rhs):
        row = {c: v for c, v in row.items() if not field.is_zero(v)}
        if row:
            live.append((row, b))
        elif not field.is_zero(b):
            return None

    solved = []  # (pivot_col, row, b) in elimination order
    while live:
        counts = _column_counts(r for r, _ in live)
        pivot_col = min(counts, key=lambda c: (counts[c], str(c)))
        idx = min(
            (i for i, (r, _) in enumerate(live) if pivot_col in r),
            key=lambda i: (len(live[i][0]), sorted(map(str, live[i][0]))),
        )
        pivot_row, pivot_b = live.pop(idx)
        inv = field.inv(pivot_row[pivot_col])
        nxt = []
        for row, b in live:
            if pivot_col not in row:
                if row:
                    nxt.append((row, b))
                elif not field.is_zero(b):
                    return None
                continue
            factor = field.mul(row[pivot_col], inv)
            new_row = dict(row)
            for col, val in pivot_row.items():
                acc = field.sub(new_row.get(col, field.zero), field.mul(factor, val))
                if field.is_zero(acc):
                    new_row.pop(col, None)
                else:
                    new_row[col] = acc
            new_b = field.sub(b, field.mul(factor, pivot_b))
            if new_row:
                nxt.append((new_row, new_b))
            elif not field.is_zero(new_b):
                return None
        live = nxt
        solved.append((pivot_col, pivot_row, pivot_b))

    # back substitution, free unknowns default to zero
    values = {}
    for pivot_col, row, b in reversed(solved):
        acc = b
        for col, val in row.items():
            if col == pivot_col:
                continue
            acc = field.sub(acc, field.mul(val, values.get(col, field.zero)))
        values[pivot_col] = field.div(acc, row[pivot_col])
    return values
