"""Elementary symmetric polynomials, symmetry tests and decomposition.

The symmetry test is exact: it groups terms by the multiset of exponents
and demands that each orbit under variable permutation is fully present
with one common coefficient.  Decomposition of a multilinear symmetric
polynomial peels homogeneous slices from the top degree down, using the
fact that a symmetric homogeneous multilinear slice of degree d must be a
scalar multiple of e_{d,n}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .boolcube import multilinearize
from .field import QQ
from .ring import Polynomial, make_mono, mono_deg, var_key


class NotSymmetricError(ValueError):
    pass


class NotMultilinearError(ValueError):
    pass


def default_vars(n: int, prefix: str = "x"):
    return tuple(f"{prefix}_{i}" for i in range(1, n + 1))


def elementary(d: int, n: int, field=QQ, names=None) -> Polynomial:
    """e_{d,n}: the sum of all degree-d multilinear monomials in n variables."""
    if d < 0 or d > n:
        raise ValueError(f"need 0 <= d <= n, got d={d}, n={n}")
    names = tuple(names) if names is not None else default_vars(n)
    if len(names) != n:
        raise ValueError("need exactly n variable names")
    terms = {}
    for subset in combinations(names, d):
        terms[make_mono({v: 1 for v in subset})] = field.one
    return Polynomial(field, terms, names)


def _orbit_size(exponents, n: int) -> int:
    """Number of distinct monomials obtained by permuting n variables."""
    mult = {}
    for e in exponents:
        mult[e] = mult.get(e, 0) + 1
    size = math.factorial(n)
    for count in mult.values():
        size //= math.factorial(count)
    size //= math.factorial(n - len(exponents))
    return size


def is_symmetric(f: Polynomial, names=None) -> bool:
    """Whether f is invariant under every permutation of its variables.

    Decided exactly: coefficients must be constant on exponent-multiset
    orbits and each orbit must be complete.
    """
    names = tuple(names) if names is not None else f.vars
    n = len(names)
    universe = set(names)
    groups = {}
    for m, c in f.terms.items():
        if any(v not in universe for v, _ in m):
            raise ValueError("monomial uses a variable outside the declared universe")
        sig = tuple(sorted((e for _, e in m), reverse=True))
        groups.setdefault(sig, []).append(c)
    for sig, coeffs in groups.items():
        if len(coeffs) != _orbit_size(sig, n):
            return False
        first = coeffs[0]
        if any(c != first for c in coeffs[1:]):
            return False
    return True


@dataclass(frozen=True)
class SymmetricDecomposition:
    """f = sum_i lambdas[i] * e_{i,n} over the given variables."""

    lambdas: tuple
    names: tuple
    field: object

    def reconstruct(self) -> Polynomial:
        n = len(self.names)
        out = Polynomial.zero(self.field, self.names)
        for i, lam in enumerate(self.lambdas):
            if not self.field.is_zero(lam):
                out = out + elementary(i, n, self.field, self.names).scale(lam)
        return out


def decompose_multilinear_symmetric(f: Polynomial, names=None) -> SymmetricDecomposition:
    """Express a multilinear symmetric f as a linear combination of the e_{i,n}."""
    names = tuple(names) if names is not None else f.vars
    n = len(names)
    if not f.is_multilinear():
        raise NotMultilinearError("input is not multilinear")
    if not is_symmetric(f, names):
        raise NotSymmetricError("input is not symmetric over the declared variables")
    lambdas = [f.field.zero] * (n + 1)
    rest = f
    for d in range(n, -1, -1):
        slice_d = rest.degree_slice(d)
        if slice_d.is_zero():
            continue
        lam = next(iter(slice_d.terms.values()))
        e_d = elementary(d, n, f.field, names)
        if slice_d != e_d.scale(lam):
            raise NotSymmetricError(f"degree-{d} slice is not a multiple of e_{d},{n}")
        lambdas[d] = lam
        rest = rest - e_d.scale(lam)
    if not rest.is_zero():
        raise NotSymmetricError("decomposition left a nonzero remainder")
    return SymmetricDecomposition(tuple(lambdas), names, f.field)


def product_leading_slice(d: int, k: int, n: int, field=QQ):
    """Top slice of ml(e_{d,n} * e_{k,n}).

    Returns (c, remainder) where the degree-(d+k) slice equals
    c * e_{d+k,n} and remainder is the lower-degree rest of the
    multilinearized product.  Raises if the slice is not proportional to
    e_{d+k,n} or if c vanishes.
    """
    if not (1 <= d <= n) or k < 1 or k > n - d:
        raise ValueError(f"need 1 <= d <= n and 1 <= k <= n-d, got d={d}, k={k}, n={n}")
    names = default_vars(n)
    prod = multilinearize(elementary(d, n, field, names) * elementary(k, n, field, names))
    top = prod.degree_slice(d + k)
    e_top = elementary(d + k, n, field, names)
    if top.is_zero():
        raise ArithmeticError("top slice vanished; proportionality claim fails")
    c = next(iter(top.terms.values()))
    if top != e_top.scale(c):
        raise ArithmeticError("top slice is not proportional to the elementary polynomial")
    if field.is_zero(c):
        raise ArithmeticError("top-slice constant vanishes")
    return c, prod - top
