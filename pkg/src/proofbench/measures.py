"""Monomial counting, residue, partial-derivative spans and the APP measure.

APP is evaluated at explicitly supplied affine projections only; the
maximum over all projections is a continuum search and every use here
evaluates one concrete projection (the knapsack preset maps the positive
variables to 1 and keeps the negative ones).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .field import QQ
from .linalg import CapExceededError, rank
from .ring import Polynomial, make_mono

DEFAULT_PARTIALS_CAP = 200_000


def count_monomials(n: int, k: int, at_most: bool = False) -> int:
    """M(n,k) (or M_<=) : monomials of degree exactly (at most) k in n variables."""
    if n < 0 or k < 0:
        raise ValueError("need n, k >= 0")
    if at_most:
        return math.comb(n + k, k)
    if n == 0:
        return 1 if k == 0 else 0
    return math.comb(n + k - 1, k)


def residue(k: int, degrees) -> Fraction:
    """Half the minimal lattice distance of the scaled degree vector.

    residue_k(d_1..d_t) = 1/2 * min over integers k_j of
    sum |k_j - (k/d) d_j| with d = sum d_j; the minimum separates per
    coordinate into the distance to the nearest integer.
    """
    degrees = tuple(degrees)
    if not degrees or any(d <= 0 for d in degrees):
        raise ValueError("degrees must be positive")
    d = sum(degrees)
    if not (0 <= k < d):
        raise ValueError("need 0 <= k < sum(degrees)")
    total = Fraction(0)
    for dj in degrees:
        r = Fraction(k * dj, d)
        frac = r - (r.numerator // r.denominator)
        total += min(frac, 1 - frac)
    return total / 2


# ---------------------------------------------------------------------------
# partial derivatives
# ---------------------------------------------------------------------------


def derivative(f: Polynomial, var: str) -> Polynomial:
    fld = f.field
    out = {}
    for m, c in f.terms.items():
        exps = {v: e for v, e in m}
        e = exps.get(var, 0)
        if e == 0:
            continue
        exps[var] = e - 1
        mono = make_mono(exps)
        coeff = fld.mul(c, fld.from_int(e))
        if mono in out:
            coeff = fld.add(out[mono], coeff)
        out[mono] = coeff
    return Polynomial(fld, out, f.vars)


def partials_span(f: Polynomial, k: int, cap: int = DEFAULT_PARTIALS_CAP):
    """All order-k partial derivatives of f, duplicates collapsed."""
    if k < 0 or k > max(f.degree(), 0):
        raise ValueError("need 0 <= k <= deg f")
    names = f.support_vars()
    n = len(names)
    if count_monomials(n, k) > cap:
        raise CapExceededError(f"{count_monomials(n, k)} derivative multi-indices exceed cap {cap}")
    seen = {}
    for combo in combinations_with_replacement(names, k):
        g = f
        for v in combo:
            g = derivative(g, v)
            if g.is_zero():
                break
        if g.is_zero():
            continue
        seen[frozenset(g.terms.items())] = g
    return list(seen.values())


# ---------------------------------------------------------------------------
# affine projections of partials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Projection:
    """Affine substitution: every source variable maps to an affine form."""

    images: dict  # variable -> Polynomial of degree <= 1
    n0: int

    def apply(self, f: Polynomial) -> Polynomial:
        missing = set(f.support_vars()) - set(self.images)
        if missing:
            raise ValueError(f"projection misses variables {sorted(missing)}")
        return f.substitute(self.images)


def projection(images, field=QQ) -> Projection:
    imgs = {}
    targets = set()
    for v, form in images.items():
        if not isinstance(form, Polynomial):
            form = Polynomial.constant(form, field)
        if form.degree() > 1:
            raise ValueError(f"image of {v} is not affine")
        imgs[v] = form
        targets.update(form.support_vars())
    return Projection(imgs, len(targets))


def knapsack_projection(positive_vars, negative_vars, field=QQ) -> Projection:
    """The preset projection: z -> z on the negative side, z -> 1 on the positive."""
    images = {v: Polynomial.variable(v, field) for v in negative_vars}
    one = Polynomial.constant(1, field)
    images.update({v: one for v in positive_vars})
    return Projection(images, len(tuple(negative_vars)))


def app_dim(f: Polynomial, k: int, L: Projection, cap: int = DEFAULT_PARTIALS_CAP) -> int:
    """dim of the span of the projected order-k partials of f.

    A certified lower bound on the APP measure (which maximizes over all
    projections of the same shape).
    """
    images = [L.apply(g) for g in partials_span(f, k, cap)]
    rows = [dict(g.terms) for g in images if not g.is_zero()]
    return rank(rows, f.field)


# ---------------------------------------------------------------------------
# alternating restrictions (the h_alpha family of the knapsack analysis)
# ---------------------------------------------------------------------------


def _check_set_multilinear(alpha_vars, blocks):
    for block in blocks:
        hits = [v for v in alpha_vars if v in block]
        if len(hits) != 1:
            raise ValueError("alpha is not set-multilinear over the positive blocks")
    covered = set().union(*[set(b) for b in blocks]) if blocks else set()
    stray = [v for v in alpha_vars if v not in covered]
    if stray:
        raise ValueError(f"alpha mentions non-block variables {stray}")


def superset_coefficient_sum(g: Polynomial, alpha_vars, x_vars) -> Polynomial:
    """Defining route: sum of g's y-coefficient polynomials over supersets of alpha.

    Writing g = sum_m g_m(y) * x^m over multilinear x-monomials m, returns
    sum over m containing alpha of ml(g_m).
    """
    if not g.is_multilinear():
        raise ValueError("g must be multilinear")
    alpha = set(alpha_vars)
    xset = set(x_vars)
    fld = g.field
    out = {}
    for m, c in g.terms.items():
        x_part = {v for v, _ in m if v in xset}
        if not alpha <= x_part:
            continue
        y_mono = make_mono({v: e for v, e in m if v not in xset})
        out[y_mono] = fld.add(out.get(y_mono, fld.zero), c)
    return Polynomial(fld, out)


def alternating_restriction(g: Polynomial, alpha_vars, x_vars, blocks=None) -> Polynomial:
    """h_alpha via the alternating sum of zero/one substitutions.

    h_alpha = sum over mu subset alpha of (-1)^|mu| g with the x-variables
    of mu set to 0 and every other x-variable set to 1.
    """
    if not g.is_multilinear():
        raise ValueError("g must be multilinear")
    if blocks is not None:
        _check_set_multilinear(alpha_vars, blocks)
    fld = g.field
    alpha = tuple(alpha_vars)
    total = Polynomial.zero(fld)
    for mask in range(1 << len(alpha)):
        mu = {alpha[i] for i in range(len(alpha)) if mask & (1 << i)}
        point = {v: (fld.zero if v in mu else fld.one) for v in x_vars}
        restricted = g.substitute(point)
        if len(mu) % 2:
            restricted = -restricted
        total = total + restricted
    return total


def point_restriction(h: Polynomial, gamma_vars, y_vars):
    """pi_gamma: set the gamma variables to 1, all other y-variables to 0."""
    fld = h.field
    gamma = set(gamma_vars)
    point = {v: (fld.one if v in gamma else fld.zero) for v in y_vars}
    return h.eval({**point})
