"""Coefficient matrices, evaluation dimension, roABPs, distinct leading monomials.

The coefficient matrix of f under a partition (left | right) has rows
indexed by left-monomials and columns by right-monomials; its exact rank is
the coefficient dimension, which equals the roABP width requirement at the
corresponding prefix cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

from .field import check_same_field
from .linalg import CapExceededError, rank
from .ring import GRLEX, Polynomial, make_mono, var_key

DEFAULT_EVAL_CAP = 1 << 20
DEFAULT_TERM_CAP = 1 << 20


@dataclass(frozen=True)
class VarPartition:
    left: tuple
    right: tuple

    def __post_init__(self):
        if set(self.left) & set(self.right):
            raise ValueError("partition sides overlap")

    def check_covers(self, f: Polynomial):
        missing = set(f.support_vars()) - set(self.left) - set(self.right)
        if missing:
            raise ValueError(f"partition misses variables {sorted(missing)}")


def split_monomial(m, left_set):
    lm, rm = {}, {}
    for v, e in m:
        (lm if v in left_set else rm)[v] = e
    return make_mono(lm), make_mono(rm)


def coefficient_matrix(f: Polynomial, part: VarPartition):
    """Sparse {(left-mono, right-mono): coeff} with only nonzero entries."""
    part.check_covers(f)
    left_set = set(part.left)
    out = {}
    for m, c in f.terms.items():
        out[split_monomial(m, left_set)] = c
    return out

def coeff_dim(f: Polynomial, part: VarPartition) -> int:
    """Rank of the coefficient matrix over the polynomial's own field."""
    entries = coefficient_matrix(f, part)
    rows = {}
    for (lm, rm), c in entries.items():
        rows.setdefault(lm, {})[rm] = c
    return rank(rows.values(), f.field)


def eval_dim(f: Polynomial, part: VarPartition, points, cap=DEFAULT_EVAL_CAP) -> int:
    """Dimension of span{ f(left, b) : b in points^{|right|} }."""
    part.check_covers(f)
    if len(points) ** len(part.right) > cap:
        raise CapExceededError(
            f"{len(points)}^{len(part.right)} evaluations exceed the cap {cap}"
        )
    fld = f.field
    left_set = set(part.left)
    rows = []
    for assignment in iter_product(points, repeat=len(part.right)):
        point = dict(zip(part.right, assignment))
        row = {}
        for m, c in f.terms.items():
            lm, rm = split_monomial(m, left_set)
            val = c
            for v, e in rm:
                for _ in range(e):
                    val = fld.mul(val, point[v])
            if fld.is_zero(val):
                continue
            acc = fld.add(row.get(lm, fld.zero), val)
            if fld.is_zero(acc):
                row.pop(lm, None)
            else:
                row[lm] = acc
        if row:
            rows.append(row)
    return rank(rows, fld)


# ---------------------------------------------------------------------------
# read-once oblivious ABPs in matrix normal form
# ---------------------------------------------------------------------------


class Roabp:
    """Layered matrix program: one square matrix of univariate polys per variable.

    Computes (A_1(x_1) * ... * A_n(x_n))[0][0] following the layer order.
    """

    def __init__(self, order, layers):
        self.order = tuple(order)
        if len(set(self.order)) != len(self.order):
            raise ValueError("layer order repeats a variable (program must be read-once)")
        if len(layers) != len(self.order):
            raise ValueError("need one matrix per variable in the order")
        if not layers:
            raise ValueError("empty program")
        width = len(layers[0])
        self.layers = []
        for var, matrix in zip(self.order, layers):
            if len(matrix) != width or any(len(row) != width for row in matrix):
                raise ValueError("all layer matrices must be square of equal width")
            for row in matrix:
                for entry in row:
                    bad = [v for v in entry.support_vars() if v != var]
                    if bad:
                        raise ValueError(f"layer for {var} mentions {bad}")
            self.layers.append(tuple(tuple(row) for row in matrix))
        self.layers = tuple(self.layers)
        self.width = width
        self.field = layers[0][0][0].field

    def expand(self, term_cap=DEFAULT_TERM_CAP) -> Polynomial:
        """Multiply the layer matrices symbolically and read entry (0, 0)."""
        vec = list(self.layers[0][0])
        for matrix in self.layers[1:]:
            nxt = []
            for j in range(self.width):
                acc = Polynomial.zero(self.field)
                for i in range(self.width):
                    acc = acc + vec[i] * matrix[i][j]
                nxt.append(acc)
            vec = nxt
            if sum(p.num_terms() for p in vec) > term_cap:
                raise CapExceededError("roABP expansion exceeds the term cap")
        return vec[0].with_vars(self.order)

    def eval(self, point):
        fld = self.field
        vec = [entry.eval(point) for entry in self.layers[0][0]]
        for matrix in self.layers[1:]:
            vals = [[entry.eval(point) for entry in row] for row in matrix]
            vec = [
                _dot(fld, vec, [vals[i][j] for i in range(self.width)])
                for j in range(self.width)
            ]
        return vec[0]


def _dot(fld, u, v):
    acc = fld.zero
    for a, b in zip(u, v):
        acc = fld.add(acc, fld.mul(a, b))
    return acc


def roabp_add(p: Roabp, q: Roabp) -> Roabp:
    """Width-(r+s) program computing expand(p) + expand(q)."""
    if p.order != q.order:
        raise ValueError("programs must share the same layer order")
    check_same_field(p.field, q.field)
    fld = p.field
    r, s = p.width, q.width
    zero = Polynomial.zero(fld)
    n = len(p.order)
    layers = []
    for idx in range(n):
        A, B = p.layers[idx], q.layers[idx]
        M = [[zero for _ in range(r + s)] for _ in range(r + s)]
        if n == 1:
            M[0][0] = A[0][0] + B[0][0]
        elif idx == 0:
            for j in range(r):
                M[0][j] = A[0][j]
            for j in range(s):
                M[0][r + j] = B[0][j]
        elif idx == n - 1:
            for i in range(r):
                M[i][0] = A[i][0]
            for i in range(s):
                M[r + i][0] = B[i][0]
        else:
            for i in range(r):
                for j in range(r):
                    M[i][j] = A[i][j]
            for i in range(s):
                for j in range(s):
                    M[r + i][r + j] = B[i][j]
        layers.append(M)
    return Roabp(p.order, layers)


def roabp_mul(p: Roabp, q: Roabp) -> Roabp:
    """Width-(r*s) Kronecker program computing expand(p) * expand(q)."""
    if p.order != q.order:
        raise ValueError("programs must share the same layer order")
    check_same_field(p.field, q.field)
    r, s = p.width, q.width
    layers = []
    for A, B in zip(p.layers, q.layers):
        M = [[None] * (r * s) for _ in range(r * s)]
        for i1 in range(r):
            for i2 in range(s):
                for j1 in range(r):
                    for j2 in range(s):
                        M[i1 * s + i2][j1 * s + j2] = A[i1][j1] * B[i2][j2]
        layers.append(M)
    return Roabp(p.order, layers)


def roabp_width_bound(f: Polynomial, order) -> int:
    """max over prefix cuts of the coefficient dimension.

    This is both a lower bound on the width of any roABP for f in the given
    order and achievable by one.
    """
    order = tuple(order)
    missing = set(f.support_vars()) - set(order)
    if missing:
        raise ValueError(f"order misses variables {sorted(missing)}")
    best = 1
    for i in range(1, len(order)):
        part = VarPartition(order[:i], order[i:])
        best = max(best, coeff_dim(f, part))
    return best


def distinct_lm_count(family, order=GRLEX) -> int:
    """Number of distinct leading monomials in a family of nonzero polynomials."""
    lms = set()
    for f in family:
        if f.is_zero():
            raise ValueError("family contains the zero polynomial")
        lms.add(f.leading_monomial(order)[0])
    return len(lms)
