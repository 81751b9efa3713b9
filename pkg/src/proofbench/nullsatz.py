"""Nullstellensatz certificates: verification, degree search, functional degree.

A certificate consists of cofactors g_i (one per axiom) and Boolean
cofactors h_v (one per variable) with

    sum_i g_i * f_i + sum_v h_v * (v^2 - v) = 1

as a formal polynomial identity.  The degree of the certificate is
max deg(g_i * f_i).  The minimal-degree search sets up one exact linear
system per probed degree and solves it over the instance's own field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .boolcube import inverse_on_cube, multilinearize, DEFAULT_CUBE_CAP
from .field import QQ, field_from_tag
from .linalg import solve
from .ring import Polynomial, make_mono, mono_deg, parse_polynomial, poly_to_text, var_key

DEFAULT_NNZ_CAP = 2_000_000


@dataclass(frozen=True)
class NsCertificate:
    cofactors: tuple  # Polynomial per axiom
    boolean_cofactors: dict  # variable name -> Polynomial

    def degree(self, axioms) -> int:
        return max(
            (g * f).degree() for g, f in zip(self.cofactors, axioms) if not (g * f).is_zero()
        )


@dataclass(frozen=True)
class SearchReport:
    degree: int
    found: bool
    certificate: object  # NsCertificate or None
    rows: int
    cols: int
    nnz: int


def combination(axioms, cert: NsCertificate) -> Polynomial:
    if len(axioms) != len(cert.cofactors):
        raise ValueError("one cofactor per axiom required")
    fld = axioms[0].field
    total = Polynomial.zero(fld)
    for g, f in zip(cert.cofactors, axioms):
        total = total + g * f
    for v, h in cert.boolean_cofactors.items():
        sq = Polynomial(fld, {((v, 2),): fld.one})
        lin = Polynomial.variable(v, fld)
        total = total + h * (sq - lin)
    return total


def verify(axioms, cert: NsCertificate) -> bool:
    """True iff the certificate combination is exactly the polynomial 1."""
    return combination(axioms, cert) == Polynomial.constant(1, axioms[0].field)


def boolean_cofactors_from_product(g: Polynomial, f: Polynomial):
    """Reconstruct Boolean cofactors h_v with g*f + sum h_v (v^2-v) = 1.

    Works by rewriting v^k -> v (k >= 2) in g*f - 1 while tracking the
    quotients; succeeds iff g*f multilinearizes to 1.  Returns None when it
    does not.
    """
    fld = g.field
    work = g * f - Polynomial.constant(1, fld)
    quotients = {}
    while True:
        target = None
        for m in work.terms:
            for v, e in m:
                if e >= 2:
                    target = (m, v, e)
                    break
            if target:
                break
        if target is None:
            break
        m, v, e = target
        c = work.terms[m]
        rest = make_mono({w: ee for w, ee in m if w != v})
        rest_poly = Polynomial(fld, {rest: c})
        # v^e = v + (v^2 - v) * (1 + v + ... + v^(e-2))
        geo = Polynomial(fld, {make_mono({v: t}) if t else (): fld.one for t in range(e - 1)})
        quotients[v] = quotients.get(v, Polynomial.zero(fld)) + rest_poly * geo
        clamped = Polynomial(fld, {mono_from_pairs(m, v, 1): c})
        work = work - Polynomial(fld, {m: c}) + clamped
    if not work.is_zero():
        return None
    return {v: -q for v, q in quotients.items()}


def mono_from_pairs(m, var, new_exp):
    exps = {w: e for w, e in m}
    exps[var] = new_exp
    return make_mono(exps)


def certificate_for_single_axiom(f: Polynomial, cap=DEFAULT_CUBE_CAP) -> NsCertificate:
    """Constructive certificate from the functional inverse of the axiom."""
    g = inverse_on_cube(f, cap)
    hs = boolean_cofactors_from_product(g, f)
    if hs is None:
        raise ArithmeticError("inverse failed to produce a certificate")
    return NsCertificate((g,), hs)


# ---------------------------------------------------------------------------
# degree-bounded search
# ---------------------------------------------------------------------------


def _monomials_up_to(names, bound, multilinear=False):
    if bound < 0:
        return
    if multilinear:
        for d in range(min(bound, len(names)) + 1):
            for subset in combinations(names, d):
                yield make_mono({v: 1 for v in subset})
    else:
        for d in range(bound + 1):
            for combo in combinations_with_replacement(names, d):
                exps = {}
                for v in combo:
                    exps[v] = exps.get(v, 0) + 1
                yield make_mono(exps)


def search_min_degree(
    axioms,
    max_degree: int,
    multilinear_cofactors: bool = False,
    nnz_cap: int = DEFAULT_NNZ_CAP,
):
    """Probe degrees 1..max_degree for a Nullstellensatz certificate.

    For each degree D the unknowns are the coefficients of every g_i
    monomial with deg(g_i * f_i) <= D (multilinear-only when flagged) and
    of every h_v monomial of degree <= D - 2; the equations force the
    combination to equal 1.  Every Found outcome carries a certificate that
    has been re-verified.
    """
    fld = axioms[0].field
    names = sorted({v for f in axioms for v in f.vars}, key=var_key)
    reports = []
    for D in range(1, max_degree + 1):
        columns = {}
        unknowns = []
        for i, f in enumerate(axioms):
            for m in _monomials_up_to(names, D - f.degree(), multilinear_cofactors):
                unknowns.append(("g", i, m))
        for v in names:
            for m in _monomials_up_to(names, D - 2):
                unknowns.append(("h", v, m))
        equations = {(): {}}  # the constraint "constant coefficient = 1" always binds
        for uid in unknowns:
            kind, which, m = uid
            if kind == "g":
                gen = axioms[which].terms.items()
                for mono, c in gen:
                    tgt = _mono_mul(m, mono)
                    equations.setdefault(tgt, {})[uid] = fld.add(
                        equations.get(tgt, {}).get(uid, fld.zero), c
                    )
            else:
                v = which
                for mono, c in (
                    (make_mono({v: 2}), fld.one),
                    (make_mono({v: 1}), fld.neg(fld.one)),
                ):
                    tgt = _mono_mul(m, mono)
                    equations.setdefault(tgt, {})[uid] = fld.add(
                        equations.get(tgt, {}).get(uid, fld.zero), c
                    )
        rows = []
        rhs = []
        for tgt, row in sorted(equations.items(), key=lambda kv: (mono_deg(kv[0]), kv[0])):
            rows.append(row)
            rhs.append(fld.one if tgt == () else fld.zero)
        nnz = sum(len(r) for r in rows)
        solution = solve(rows, rhs, fld, nnz_cap=nnz_cap)
        if solution is None:
            reports.append(SearchReport(D, False, None, len(rows), len(unknowns), nnz))
            continue
        cofactors = []
        for i in range(len(axioms)):
            terms = {}
            for uid, val in solution.items():
                if uid[0] == "g" and uid[1] == i and not fld.is_zero(val):
                    terms[uid[2]] = val
            cofactors.append(Polynomial(fld, terms, names))
        hs = {}
        for uid, val in solution.items():
            if uid[0] == "h" and not fld.is_zero(val):
                v = uid[1]
                hs.setdefault(v, {})[uid[2]] = val
        cert = NsCertificate(
            tuple(cofactors), {v: Polynomial(fld, t, names) for v, t in hs.items()}
        )
        if not verify(axioms, cert):
            raise ArithmeticError("solver produced a certificate that fails verification")
        reports.append(SearchReport(D, True, cert, len(rows), len(unknowns), nnz))
    return reports


def _mono_mul(m1, m2):
    exps = {v: e for v, e in m1}
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return make_mono(exps)


# ---------------------------------------------------------------------------
# functional degree and the FPHP reduction identity
# ---------------------------------------------------------------------------


def functional_degree(instance, cap=DEFAULT_CUBE_CAP) -> int:
    """deg of the unique multilinear inverse of the instance's axiom."""
    axiom = instance.axiom if instance.axiom is not None else instance.expanded_axiom()
    return inverse_on_cube(axiom, cap).degree()


@dataclass(frozen=True)
class FphpReport:
    n: int
    identity_ok: bool
    substituted_individual_degree: int


def fphp_knapsack_identity(n: int, cap=DEFAULT_CUBE_CAP) -> FphpReport:
    """Pigeonhole reduction: invert the column-sum knapsack and substitute.

    Builds p with p * (y_1 + ... + y_n - (n+1)) = 1 over the cube, checks
    the identity, then substitutes y_k -> x_1k + ... + x_(n+1)k and reports
    the individual degree of the substituted certificate product.
    """
    fld = QQ
    ynames = [f"y_{k}" for k in range(1, n + 1)]
    axiom = Polynomial(fld, {((y, 1),): fld.one for y in ynames}, ynames) - Polynomial.constant(
        n + 1, fld
    )
    p = inverse_on_cube(axiom, cap)
    identity_ok = multilinearize(p * axiom) == Polynomial.constant(1, fld)
    mapping = {}
    for k in range(1, n + 1):
        col = Polynomial.zero(fld)
        for i in range(1, n + 2):
            col = col + Polynomial.variable(f"x_{i}_{k}", fld)
        mapping[f"y_{k}"] = col
    # Scaling p to integer coefficients leaves the individual degree of the
    # substituted product unchanged and keeps the big expansion cheap
    # (plain ints avoid per-term Fraction normalization).
    import math

    denom_lcm = math.lcm(*[c.denominator for c in p.terms.values()])
    p_scaled = Polynomial(fld, {m: int(c * denom_lcm) for m, c in p.terms.items()}, p.vars)
    ax_int = Polynomial(fld, {m: int(c) for m, c in axiom.terms.items()}, axiom.vars)
    substituted = p_scaled.substitute(mapping) * ax_int.substitute(mapping)
    return FphpReport(n, identity_ok, substituted.individual_degree())


# ---------------------------------------------------------------------------
# certificate JSON
# ---------------------------------------------------------------------------


def certificate_to_json(axioms, cert: NsCertificate) -> str:
    fld = axioms[0].field
    names = sorted({v for f in axioms for v in f.vars}, key=var_key)
    return json.dumps(
        {
            "schema": "ns-certificate/v1",
            "field": fld.tag,
            "axioms": [poly_to_text(f) for f in axioms],
            "cofactors": [poly_to_text(g) for g in cert.cofactors],
            "boolean_cofactors": [
                poly_to_text(cert.boolean_cofactors.get(v, Polynomial.zero(fld))) for v in names
            ],
            "variables": names,
            "degree": cert.degree(axioms),
        },
        indent=2,
    )


def certificate_from_json(text: str):
    data = json.loads(text)
    fld = field_from_tag(data["field"])
    axioms = [parse_polynomial(s, fld) for s in data["axioms"]]
    cofactors = tuple(parse_polynomial(s, fld) for s in data["cofactors"])
    names = data.get("variables") or sorted({v for f in axioms for v in f.vars}, key=var_key)
    hs = {}
    for v, s in zip(names, data["boolean_cofactors"]):
        h = parse_polynomial(s, fld)
        if not h.is_zero():
            hs[v] = h
    return axioms, NsCertificate(cofactors, hs)
