"""Exact sparse multivariate polynomial arithmetic with monomial orders.

Representation:

  Monomial    -- tuple of (variable, exponent) pairs, exponents > 0, sorted
                 by the canonical variable key; the empty tuple is 1.
  Polynomial  -- a field plus a dict {Monomial: nonzero coefficient} plus a
                 declared variable universe.  Values are immutable after
                 construction; all operations return fresh objects.

Variable names are strings of the form ``base('_' digits)+`` such as
``x_1`` or ``z_1_2_3_4``; the digit components order variables numerically
(so ``x_2`` comes before ``x_10``).  Equality of polynomials compares term
maps only, never the declared universe.

The text form round-trips bit-exactly:

  poly   := ['-'] term (('+'|'-') term)*
  term   := [coeff '*'] factor ('*' factor)*  |  coeff
  factor := var ['^' uint]
  coeff  := int | int '/' uint
  var    := name ('_' digits)+
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction

from .field import QQ, check_same_field

# ---------------------------------------------------------------------------
# variables and monomials
# ---------------------------------------------------------------------------

_VAR_RE = re.compile(r"^[A-Za-z]+(_[0-9]+)+$")


@functools.lru_cache(maxsize=None)
def var_key(name: str):
    """Sort key ordering variables by base name, then numeric components.

    Digit components with leading zeros (bitstring subscripts like
    ``x_1_01``) stay distinct from their numeric value via the raw string
    tie-break.
    """
    parts = name.split("_")
    return (parts[0], tuple((int(c), c) for c in parts[1:]))


def check_var_name(name: str) -> str:
    if not _VAR_RE.match(name):
        raise ValueError(f"bad variable name: {name!r}")
    return name


def mono_mul(m1, m2):
    """Merge two monomials; both inputs are sorted, so this is a list merge."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif var_key(v1) < var_key(v2):
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def make_mono(exps) -> tuple:
    """Build a monomial from a {var: exponent} mapping; drops zero powers."""
    items = [(v, e) for v, e in exps.items() if e != 0]
    for v, e in items:
        if e < 0:
            raise ValueError(f"negative exponent on {v}")
    return tuple(sorted(items, key=lambda it: var_key(it[0])))


def mono_deg(m) -> int:
    return sum(e for _, e in m)


def mono_vars(m):
    return tuple(v for v, _ in m)


def mono_clamp(m) -> tuple:
    """Multilinear shadow of a monomial (every exponent clamped to 1)."""
    return tuple((v, 1) for v, _ in m)


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials: 'grlex' (default) or 'lex'.

    ``precedence`` lists variables from smallest to largest; variables not
    listed are ordered by ``var_key`` and come before listed ones.  With the
    default empty precedence, x_1 < x_2 < ... and the lex comparison reads
    exponents from the largest variable down.
    """

    kind: str = "grlex"
    precedence: tuple = ()

    def __post_init__(self):
        if self.kind not in ("grlex", "lex"):
            raise ValueError(f"unknown order kind: {self.kind}")

    def _rank(self, v):
        try:
            return (1, self.precedence.index(v))
        except ValueError:
            return (0, var_key(v))

    def _lex_cmp(self, m1, m2) -> int:
        exps1, exps2 = dict(m1), dict(m2)
        for v in sorted(set(exps1) | set(exps2), key=self._rank, reverse=True):
            e1, e2 = exps1.get(v, 0), exps2.get(v, 0)
            if e1 != e2:
                return 1 if e1 > e2 else -1
        return 0

    def cmp(self, m1, m2) -> int:
        """-1, 0 or 1 as m1 <, =, > m2."""
        if self.kind == "grlex":
            d1, d2 = mono_deg(m1), mono_deg(m2)
            if d1 != d2:
                return 1 if d1 > d2 else -1
        return self._lex_cmp(m1, m2)

    def greater(self, m1, m2) -> bool:
        return self.cmp(m1, m2) > 0

    def sort_key(self):
        return functools.cmp_to_key(self.cmp)


GRLEX = MonomialOrder("grlex")


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial over an exact field."""

    __slots__ = ("field", "terms", "vars", "_hash")

    def __init__(self, field, terms, vars=()):
        clean = {}
        for m, c in terms.items():
            if not field.is_zero(c):
                clean[m] = c
        universe = set(vars)
        for m in clean:
            universe.update(mono_vars(m))
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "vars", tuple(sorted(universe, key=var_key)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(field=QQ, vars=()):
        return Polynomial(field, {}, vars)

    @staticmethod
    def constant(c, field=QQ, vars=()):
        return Polynomial(field, {(): field.from_fraction(Fraction(c))}, vars)

    @staticmethod
    def variable(name, field=QQ):
        check_var_name(name)
        return Polynomial(field, {((name, 1),): field.one})

    @staticmethod
    def from_terms(field, items, vars=()):
        acc = {}
        for m, c in items:
            if m in acc:
                acc[m] = field.add(acc[m], c)
            else:
                acc[m] = c
        return Polynomial(field, acc, vars)

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, m):
        """Coefficient of a monomial (zero if absent)."""
        return self.terms.get(m, self.field.zero)

    def constant_term(self):
        return self.terms.get((), self.field.zero)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((mono_deg(m) for m in self.terms), default=-1)

    def individual_degree(self) -> int:
        ideg = 0
        for m in self.terms:
            for _, e in m:
                ideg = max(ideg, e)
        return ideg

    def is_multilinear(self) -> bool:
        return self.individual_degree() <= 1

    def support_vars(self):
        used = set()
        for m in self.terms:
            used.update(mono_vars(m))
        return tuple(sorted(used, key=var_key))

    def num_terms(self) -> int:
        return len(self.terms)

    def degree_slice(self, d: int) -> "Polynomial":
        """The homogeneous degree-d part."""
        return Polynomial(
            self.field,
            {m: c for m, c in self.terms.items() if mono_deg(m) == d},
            self.vars,
        )

    def with_vars(self, extra) -> "Polynomial":
        return Polynomial(self.field, self.terms, tuple(self.vars) + tuple(extra))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            check_same_field(self.field, other.field)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = f.add(acc.get(m, f.zero), c)
        return Polynomial(f, acc, self.vars + other.vars)

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return Polynomial(f, {m: f.neg(c) for m, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        add, mul = f.add, f.mul
        acc = {}
        small, large = (
            (self.terms, other.terms)
            if len(self.terms) <= len(other.terms)
            else (other.terms, self.terms)
        )
        for m1, c1 in small.items():
            for m2, c2 in large.items():
                m = mono_mul(m1, m2)
                c = mul(c1, c2)
                if m in acc:
                    acc[m] = add(acc[m], c)
                else:
                    acc[m] = c
        return Polynomial(f, acc, self.vars + other.vars)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = Polynomial.constant(1, self.field, self.vars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        """Multiply by a field element."""
        f = self.field
        return Polynomial(f, {m: f.mul(coef, c) for m, coef in self.terms.items()}, self.vars)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)):
                other = Polynomial.constant(other, self.field)
            else:
                return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            h = hash((self.field, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- substitution and evaluation ---------------------------------------

    def substitute(self, mapping) -> "Polynomial":
        """Simultaneous substitution of variables by polynomials.

        Unmapped variables are left alone.  Image polynomials must share
        this polynomial's field.
        """
        f = self.field
        images = {}
        for v, img in mapping.items():
            if not isinstance(img, Polynomial):
                img = Polynomial.constant(img, f)
            check_same_field(f, img.field)
            images[v] = img
        acc = {}
        zero, add, mul = f.zero, f.add, f.mul
        for m, c in self.terms.items():
            part = Polynomial.constant(1, f)
            plain = {}
            for v, e in m:
                if v in images:
                    part = part * images[v] ** e
                else:
                    plain[v] = e
            if plain:
                part = part * Polynomial(f, {make_mono(plain): f.one})
            for pm, pc in part.terms.items():
                val = add(acc.get(pm, zero), mul(pc, c))
                acc[pm] = val
        return Polynomial(f, acc, self.vars)

    def eval(self, point):
        """Exact evaluation at a point covering every variable that occurs."""
        f = self.field
        total = f.zero
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                if v not in point:
                    raise KeyError(f"no assignment for variable {v}")
                x = point[v]
                for _ in range(e):
                    val = f.mul(val, x)
            total = f.add(total, val)
        return total

    # -- leading terms ----------------------------------------------------

    def leading_monomial(self, order=GRLEX):
        """(LM, LC) under the given order; error on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has neither leading nor trailing monomial")
        lm = max(self.terms, key=order.sort_key())
        return lm, self.terms[lm]

    def trailing_monomial(self, order=GRLEX):
        if not self.terms:
            raise ValueError("zero polynomial has neither leading nor trailing monomial")
        tm = min(self.terms, key=order.sort_key())
        return tm, self.terms[tm]

    # -- text form ----------------------------------------------------------

    def __str__(self):
        return poly_to_text(self)

    def __repr__(self):
        return f"Polynomial({self.field!r}, {poly_to_text(self)!r})"


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------


def poly_to_text(f: Polynomial, order: MonomialOrder = GRLEX) -> str:
    """Canonical text: terms in descending monomial order."""
    if not f.terms:
        return "0"
    monos = sorted(f.terms, key=order.sort_key(), reverse=True)
    pieces = []
    for m in monos:
        c = f.terms[m]
        negative = f.field == QQ and c < 0
        mag = -c if negative else c
        factors = [v if e == 1 else f"{v}^{e}" for v, e in m]
        if not factors:
            body = f.field.coeff_str(mag)
        elif mag == f.field.one:
            body = "*".join(factors)
        else:
            body = f.field.coeff_str(mag) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)


_TOKEN_RE = re.compile(r"\s*([A-Za-z]+(?:_[0-9]+)+|[0-9]+|\^|\*|\+|-|/)")


def _tokenize(text: str):
    tokens, pos = [], 0
    while pos < len(text):
        mo = _TOKEN_RE.match(text, pos)
        if not mo:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot tokenize polynomial text at: {text[pos:pos+20]!r}")
        tokens.append(mo.group(1))
        pos = mo.end()
    return tokens


def parse_polynomial(text: str, field=QQ, vars=()) -> Polynomial:
    """Parse the polynomial text grammar (whitespace insignificant)."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_uint():
        tok = take()
        if not tok.isdigit():
            raise ValueError(f"expected integer, got {tok!r}")
        return int(tok)

    def parse_atom():
        # returns (monomial-exps or None, coefficient or None)
        tok = take()
        if tok.isdigit():
            num = int(tok)
            if peek() == "/":
                take()
                den = parse_uint()
                return None, field.from_fraction(Fraction(num, den))
            return None, field.from_int(num)
        if _VAR_RE.match(tok):
            e = 1
            if peek() == "^":
                take()
                e = parse_uint()
            return {tok: e}, None
        raise ValueError(f"unexpected token {tok!r}")

    def parse_term():
        coeff = field.one
        exps = {}
        while True:
            mono_part, coeff_part = parse_atom()
            if coeff_part is not None:
                coeff = field.mul(coeff, coeff_part)
            else:
                for v, e in mono_part.items():
                    exps[v] = exps.get(v, 0) + e
            if peek() == "*":
                take()
                continue
            break
        return make_mono(exps), coeff

    items = []
    sign = 1
    if peek() == "-":
        take()
        sign = -1
    elif peek() == "+":
        take()
    while True:
        m, c = parse_term()
        if sign < 0:
            c = field.neg(c)
        items.append((m, c))
        nxt = peek()
        if nxt is None:
            break
        if nxt == "+":
            sign = 1
        elif nxt == "-":
            sign = -1
        else:
            raise ValueError(f"expected '+' or '-', got {nxt!r}")
        take()
    return Polynomial.from_terms(field, items, vars)


def variables(names, field=QQ):
    """Convenience: a list of variable polynomials."""
    return [Polynomial.variable(n, field) for n in names]
