"""Generators for the hard instances, their invariance actions and plantings.

Every generator returns an Instance whose single non-Boolean axiom has the
shape core - beta.  Instances small enough (at most 22 variables by
default) are brute-force checked to be unsatisfiable over the Boolean
cube at construction time; larger ones carry unsat_verified=None.

The product instance on u/z variables is kept in factored form: full
expansion is astronomically large, and every use substitutes the z
variables first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .boolcube import SatisfiablePointError
from .field import QQ
from .linalg import CapExceededError
from .ring import Polynomial, make_mono, var_key

DEFAULT_UNSAT_CHECK_VARS = 22


class PlantingError(ValueError):
    """No partition-respecting planting assignment exists."""


def _as_field_elem(field, beta):
    if isinstance(beta, (int, Fraction)):
        return field.from_fraction(Fraction(beta))
    return beta


@dataclass(frozen=True)
class Instance:
    """A single axiom core - beta together with its Boolean axioms."""

    axiom: object  # Polynomial, or None when stored factored
    beta: object
    field: object
    var_groups: dict
    metadata: dict
    core_factors: tuple = None
    unsat_verified: object = None  # True, or None when the cube is too big

    @property
    def variables(self):
        out = []
        for group in self.var_groups.values():
            out.extend(group)
        return tuple(sorted(out, key=var_key))

    def expanded_axiom(self, term_cap: int = 1_000_000) -> Polynomial:
        if self.axiom is not None:
            return self.axiom
        prod = Polynomial.constant(1, self.field, self.variables)
        for factor in self.core_factors:
            prod = prod * factor
            if prod.num_terms() > term_cap:
                raise CapExceededError("expanded product exceeds the term cap")
        return prod - Polynomial(self.field, {(): self.beta})

    def core_substitute(self, assignment) -> Polynomial:
        """Substitute an (often partial) assignment into the factored core."""
        if self.core_factors is None:
            raise ValueError("instance is not stored in factored form")
        one = Polynomial.constant(1, self.field)
        prod = one
        for factor in self.core_factors:
            sub = factor.substitute(assignment)
            if sub == one:
                continue
            prod = prod * sub
        return prod


def _brute_force_unsat(instance: Instance, max_vars=DEFAULT_UNSAT_CHECK_VARS):
    """Check unsatisfiability over the full cube; None when too large."""
    names = instance.variables
    if len(names) > max_vars:
        return None
    fld = instance.field
    zero, one = fld.zero, fld.one
    for mask in range(1 << len(names)):
        point = {v: (one if mask & (1 << i) else zero) for i, v in enumerate(names)}
        if instance.axiom is not None:
            val = instance.axiom.eval(point)
        else:
            val = fld.one
            for factor in instance.core_factors:
                val = fld.mul(val, factor.eval(point))
            val = fld.sub(val, instance.beta)
        if fld.is_zero(val):
            raise SatisfiablePointError(tuple((mask >> i) & 1 for i in range(len(names))))
    return True


def _finalize(instance: Instance, check=True, max_vars=DEFAULT_UNSAT_CHECK_VARS):
    verified = _brute_force_unsat(instance, max_vars) if check else None
    return Instance(
        instance.axiom,
        instance.beta,
        instance.field,
        instance.var_groups,
        instance.metadata,
        instance.core_factors,
        verified,
    )


# ---------------------------------------------------------------------------
# subset sum
# ---------------------------------------------------------------------------


def subset_sum(n: int, beta, field=QQ) -> Instance:
    """The axiom x_1 + ... + x_n - beta."""
    if n < 1:
        raise ValueError("need n >= 1")
    b = _as_field_elem(field, beta)
    for k in range(n + 1):
        if field.from_int(k) == b:
            raise SatisfiablePointError((1,) * k + (0,) * (n - k))
    names = tuple(f"x_{i}" for i in range(1, n + 1))
    axiom = Polynomial(field, {((v, 1),): field.one for v in names}, names) - Polynomial(
        field, {(): b}
    )
    inst = Instance(axiom, b, field, {"x": names}, {"generator": "subset-sum", "n": n, "beta": str(beta)})
    return _finalize(inst)


# ---------------------------------------------------------------------------
# the vector-invariant instance Q
# ---------------------------------------------------------------------------


def q_tilde(n: int, field=QQ) -> Polynomial:
    """Product over odd i of the 2x2 determinants x_i y_{i+1} - y_i x_{i+1}."""
    if n < 1:
        raise ValueError("need n >= 1")
    prod = Polynomial.constant(1, field)
    for i in range(1, 2 * n, 2):
        det = (
            Polynomial.variable(f"x_{i}", field) * Polynomial.variable(f"y_{i+1}", field)
            - Polynomial.variable(f"y_{i}", field) * Polynomial.variable(f"x_{i+1}", field)
        )
        prod = prod * det
    xnames = tuple(f"x_{i}" for i in range(1, 2 * n + 1))
    ynames = tuple(f"y_{i}" for i in range(1, 2 * n + 1))
    return prod.with_vars(xnames + ynames)


def invariant_Q(n: int, beta, field=QQ) -> Instance:
    """Q(x, y) = prod of determinants minus beta, on 4n variables."""
    b = _as_field_elem(field, beta)
    forbidden = {field.from_int(-1), field.zero, field.one}
    if b in forbidden:
        raise ValueError("beta must avoid {-1, 0, 1}")
    core = q_tilde(n, field)
    axiom = core - Polynomial(field, {(): b})
    xnames = tuple(f"x_{i}" for i in range(1, 2 * n + 1))
    ynames = tuple(f"y_{i}" for i in range(1, 2 * n + 1))
    inst = Instance(
        axiom,
        b,
        field,
        {"x": xnames, "y": ynames},
        {"generator": "q", "n": n, "beta": str(beta)},
    )
    return _finalize(inst)


def apply_phi(j: int, f: Polynomial) -> Polynomial:
    """Row-addition action: y_j -> x_j + y_j and y_{j+1} -> x_{j+1} + y_{j+1}."""
    if j < 1 or j % 2 == 0:
        raise ValueError("j must be a positive odd index")
    fld = f.field
    mapping = {}
    for idx in (j, j + 1):
        mapping[f"y_{idx}"] = Polynomial.variable(f"x_{idx}", fld) + Polynomial.variable(
            f"y_{idx}", fld
        )
    return f.substitute(mapping)


# ---------------------------------------------------------------------------
# the lifted product instance P(u, z) and plantings
# ---------------------------------------------------------------------------


def z_name(quad) -> str:
    i, j, k, l = sorted(quad)
    return f"z_{i}_{j}_{k}_{l}"


def lifted_P(n: int, beta, field=QQ) -> Instance:
    """Factored product over all 4-subsets of the 4n u-indices.

    Each factor is 1 - z + z*(u_i*u_l - u_j*u_k) for the sorted subset
    (i, j, k, l); the axiom is the product minus beta.
    """
    b = _as_field_elem(field, beta)
    forbidden = {field.from_int(-1), field.zero, field.one}
    if b in forbidden:
        raise ValueError("beta must avoid {-1, 0, 1}")
    m = 4 * n
    unames = tuple(f"u_{i}" for i in range(1, m + 1))
    factors = []
    znames = []
    one = Polynomial.constant(1, field)
    for quad in combinations(range(1, m + 1), 4):
        i, j, k, l = quad
        z = Polynomial.variable(z_name(quad), field)
        znames.append(z_name(quad))
        det = (
            Polynomial.variable(f"u_{i}", field) * Polynomial.variable(f"u_{l}", field)
            - Polynomial.variable(f"u_{j}", field) * Polynomial.variable(f"u_{k}", field)
        )
        factors.append(one - z + z * det)
    inst = Instance(
        None,
        b,
        field,
        {"u": unames, "z": tuple(znames)},
        {"generator": "p", "n": n, "beta": str(beta)},
        core_factors=tuple(factors),
    )
    if len(unames) + len(znames) <= DEFAULT_UNSAT_CHECK_VARS:
        fld = field
        zero, onec = fld.zero, fld.one
        names = inst.variables
        for mask in range(1 << len(names)):
            point = {v: (onec if mask & (1 << i) else zero) for i, v in enumerate(names)}
            val = fld.one
            for factor in inst.core_factors:
                val = fld.mul(val, factor.eval(point))
            if fld.is_zero(fld.sub(val, b)):
                raise SatisfiablePointError(tuple((mask >> i) & 1 for i in range(len(names))))
        inst = Instance(None, b, field, inst.var_groups, inst.metadata, inst.core_factors, True)
    return inst


@dataclass(frozen=True)
class PlantingAssignment:
    """Boolean z-assignment plus the v/w labelling it realizes."""

    assignment: dict
    v_order: tuple
    w_order: tuple

    def target(self, fld) -> Polynomial:
        """The planted polynomial: prod over odd t of v_t w_{t+1} - w_t v_{t+1}."""
        prod = Polynomial.constant(1, fld)
        for t in range(0, len(self.v_order), 2):
            vt, vt1 = self.v_order[t], self.v_order[t + 1]
            wt, wt1 = self.w_order[t], self.w_order[t + 1]
            det = (
                Polynomial.variable(vt, fld) * Polynomial.variable(wt1, fld)
                - Polynomial.variable(wt, fld) * Polynomial.variable(vt1, fld)
            )
            prod = prod * det
        return prod


def _slot_labels(vpair, wpair, pos):
    """Labelling of one quadruple, or None if its extremes sit in one part.

    The factor of the selected z-variable is (outer product) - (inner
    product) over the four sorted positions; it matches a determinant
    v_t*w_{t+1} - w_t*v_{t+1} exactly when the two extreme positions lie in
    different parts.
    """
    quad = sorted(vpair + wpair, key=lambda v: pos[v])
    lo, hi = quad[0], quad[-1]
    inner = quad[1:3]
    in_v_lo, in_v_hi = lo in vpair, hi in vpair
    if in_v_lo == in_v_hi:
        return None
    v_t = lo if in_v_lo else hi
    w_t1 = hi if in_v_lo else lo
    v_t1 = inner[0] if inner[0] in vpair else inner[1]
    w_t = inner[1] if inner[0] in vpair else inner[0]
    return (v_t, v_t1, w_t, w_t1, tuple(pos[v] for v in quad))


def _pairings(items):
    if not items:
        yield []
        return
    first = items[0]
    for idx in range(1, len(items)):
        pair = (first, items[idx])
        rest = items[1:idx] + items[idx + 1 :]
        for tail in _pairings(rest):
            yield [pair] + tail


def plant_Q(partition, field=QQ) -> PlantingAssignment:
    """Find a z-assignment planting the determinant product across a partition.

    ``partition`` is a pair of equal-size collections of u-variables whose
    union is u_1..u_4n.  The search chooses how to pair up the two sides and
    how to order each part so that substituting the assignment into the
    factored core yields exactly the planted determinant product for the
    returned labelling.  Raises PlantingError when no arrangement works.
    """
    v_part, w_part = (tuple(partition[0]), tuple(partition[1]))
    if len(v_part) != len(w_part):
        raise ValueError("partition must have equal halves")
    universe = sorted(v_part + w_part, key=var_key)
    if len(set(universe)) != len(universe):
        raise ValueError("partition parts overlap")
    expected = [f"u_{i}" for i in range(1, len(universe) + 1)]
    if universe != expected:
        raise ValueError("partition must cover exactly u_1..u_4n")
    pos = {v: i + 1 for i, v in enumerate(expected)}
    n2 = len(v_part)  # = 2n

    def search(v_pairs, remaining_w):
        if not v_pairs:
            return []
        vpair = v_pairs[0]
        for wpair in combinations(remaining_w, 2):
            labels = _slot_labels(vpair, wpair, pos)
            if labels is None:
                continue
            rest_w = tuple(w for w in remaining_w if w not in wpair)
            tail = search(v_pairs[1:], rest_w)
            if tail is not None:
                return [labels] + tail
        return None

    for v_pairs in _pairings(list(v_part)):
        result = search(v_pairs, tuple(w_part))
        if result is not None:
            v_order, w_order, chosen = [], [], []
            for v_t, v_t1, w_t, w_t1, quad in result:
                v_order += [v_t, v_t1]
                w_order += [w_t, w_t1]
                chosen.append(quad)
            m = len(universe)
            assignment = {z_name(q): field.zero for q in combinations(range(1, m + 1), 4)}
            for quad in chosen:
                assignment[z_name(quad)] = field.one
            return PlantingAssignment(assignment, tuple(v_order), tuple(w_order))
    raise PlantingError(
        f"no planting realizes the determinant product across partition {v_part} | {w_part}"
    )


# ---------------------------------------------------------------------------
# lifting a symmetric instance to pair gadgets
# ---------------------------------------------------------------------------


def _lifted_elementary(i: int, pairs, field) -> Polynomial:
    """e_{i,m} over pair variables with w_{ab} replaced by z_ab * x_a * x_b."""
    terms = {}
    for subset in combinations(pairs, i):
        exps = {}
        for a, b in subset:
            exps[f"z_{a}_{b}"] = exps.get(f"z_{a}_{b}", 0) + 1
            exps[f"x_{a}"] = exps.get(f"x_{a}", 0) + 1
            exps[f"x_{b}"] = exps.get(f"x_{b}", 0) + 1
        terms[make_mono(exps)] = field.one
    return Polynomial(field, terms)


def lifted_symmetric_star(f: Polynomial, beta, field=None) -> Instance:
    """Lift a multilinear symmetric polynomial through the pair gadget.

    With f = sum_i lambda_i e_{i,n} on n variables, the lifted instance is
    sum_i lambda_i e_{i,m}(w) - beta on m = C(2n, 2) pair variables, after
    replacing each w_ab by z_ab x_a x_b.
    """
    from .symmetric import decompose_multilinear_symmetric

    field = field if field is not None else f.field
    decomp = decompose_multilinear_symmetric(f)
    n = len(decomp.names)
    return lifted_symmetric_star_from_lambdas(decomp.lambdas, n, beta, field)


def lifted_symmetric_star_from_lambdas(lambdas, n: int, beta, field=QQ) -> Instance:
    b = _as_field_elem(field, beta)
    xnames = tuple(f"x_{i}" for i in range(1, 2 * n + 1))
    pairs = list(combinations(range(1, 2 * n + 1), 2))
    znames = tuple(f"z_{a}_{b}" for a, b in pairs)
    core = Polynomial.zero(field, xnames + znames)
    for i, lam in enumerate(lambdas):
        if field.is_zero(lam):
            continue
        core = core + _lifted_elementary(i, pairs, field).scale(lam)
    axiom = core - Polynomial(field, {(): b})
    inst = Instance(
        axiom,
        b,
        field,
        {"x": xnames, "z": znames},
        {"generator": "star", "n": n, "beta": str(beta), "lambdas": [str(l) for l in lambdas]},
    )
    return _finalize(inst)


# ---------------------------------------------------------------------------
# knapsack over a word
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """A word of nonzero integer entries with its derived interval layout."""

    entries: tuple

    def __post_init__(self):
        if not self.entries or any(e == 0 for e in self.entries):
            raise ValueError("word entries must be nonzero")

    @property
    def positive_indices(self):
        return tuple(i for i, e in enumerate(self.entries, start=1) if e > 0)

    @property
    def negative_indices(self):
        return tuple(i for i, e in enumerate(self.entries, start=1) if e < 0)

    def entry(self, i):
        return self.entries[i - 1]

    def total(self):
        return sum(self.entries)

    def positive_weight(self):
        return sum(e for e in self.entries if e > 0)

    def negative_weight(self):
        return sum(-e for e in self.entries if e < 0)

    def a_interval(self, i):
        """Positions [lo, hi] carried by positive entry i."""
        before = sum(self.entry(t) for t in self.positive_indices if t < i)
        return (before + 1, before + self.entry(i))

    def b_interval(self, j):
        before = sum(-self.entry(t) for t in self.negative_indices if t < j)
        return (before + 1, before - self.entry(j))

    def is_balanced(self):
        for i in self.positive_indices:
            if not any(_overlap(self.a_interval(i), self.b_interval(j)) for j in self.negative_indices):
                return False
        for j in self.negative_indices:
            if not any(_overlap(self.a_interval(i), self.b_interval(j)) for i in self.positive_indices):
                return False
        return True

def _overlap(iv1, iv2):
    return max(iv1[0], iv2[0]) <= min(iv1[1], iv2[1])


def word_from_params(h: int, d: int, k: int) -> Word:
    """Zero-sum word: k copies of h, then floor/ceil copies balancing it.

    With h' = h*k/(d-k), the word has k1 = (d-k)*ceil(h') - k*h copies of
    -floor(h') and k2 = d - k - k1 copies of -ceil(h').
    """
    if not (0 < k < d):
        raise ValueError("need 0 < k < d")
    if h < 1:
        raise ValueError("need h >= 1")
    hprime = Fraction(h * k, d - k)
    ceil_h = -((-hprime.numerator) // hprime.denominator)
    floor_h = hprime.numerator // hprime.denominator
    k1 = (d - k) * ceil_h - k * h
    k2 = d - k - k1
    if k1 < 0 or k2 < 0:
        raise ValueError(f"parameters outside the construction's validity: k1={k1}, k2={k2}")
    if floor_h < 1:
        raise ValueError("floor(h') must be positive so entries stay nonzero")
    if ceil_h > h:
        raise ValueError("ceil(h') exceeds h, entries leave [-h, h]")
    entries = (h,) * k + (-floor_h,) * k1 + (-ceil_h,) * k2
    word = Word(entries)
    assert word.total() == 0
    return word


def _sigma_bits(lo, mask, width):
    """Bit labels for positions lo..lo+width-1 from an integer mask."""
    return {lo + t: (mask >> t) & 1 for t in range(width)}


def _block_vars(word, index, side, prefix):
    lo, hi = word.a_interval(index) if side == "A" else word.b_interval(index)
    width = hi - lo + 1
    out = []
    for mask in range(1 << width):
        bits = "".join(str((mask >> t) & 1) for t in range(width))
        out.append((f"{prefix}_{index}_{bits}", _sigma_bits(lo, mask, width)))
    return out


def knapsack_word(word: Word, beta, field=QQ, max_vars_for_check=DEFAULT_UNSAT_CHECK_VARS) -> Instance:
    """The generalized knapsack ks_w over interval-compatible variable blocks.

    Requires a balanced word.  When the word is N-heavy the outer sum runs
    over the positive blocks (x variables) and each product collects the
    compatible negative-block sums; for strictly P-heavy words the roles
    are switched.
    """
    if not word.is_balanced():
        raise ValueError("word is not balanced")
    b = _as_field_elem(field, beta)
    n_heavy = word.negative_weight() >= word.positive_weight()
    if n_heavy:
        outer_idx, inner_idx = word.positive_indices, word.negative_indices
        outer_side, inner_side = "A", "B"
        outer_prefix, inner_prefix = "x", "y"
    else:
        outer_idx, inner_idx = word.negative_indices, word.positive_indices
        outer_side, inner_side = "B", "A"
        outer_prefix, inner_prefix = "y", "x"

    inner_vars = {j: _block_vars(word, j, inner_side, inner_prefix) for j in inner_idx}
    core = Polynomial.zero(field)
    xnames, ynames = [], []
    for j in inner_idx:
        ynames.extend(name for name, _ in inner_vars[j])
    for i in outer_idx:
        iv_i = word.a_interval(i) if outer_side == "A" else word.b_interval(i)
        touching = [j for j in inner_idx if _overlap(iv_i, word.b_interval(j) if inner_side == "B" else word.a_interval(j))]
        for name, sigma in _block_vars(word, i, outer_side, outer_prefix):
            xnames.append(name)
            f_sigma = Polynomial.constant(1, field)
            for j in touching:
                compatible = Polynomial.zero(field)
                for yname, sigma_j in inner_vars[j]:
                    if all(sigma_j[p] == sigma[p] for p in sigma_j if p in sigma):
                        compatible = compatible + Polynomial.variable(yname, field)
                f_sigma = f_sigma * compatible
            core = core + Polynomial.variable(name, field) * f_sigma
    axiom = core - Polynomial(field, {(): b})
    groups = {outer_prefix: tuple(xnames), inner_prefix: tuple(ynames)}
    inst = Instance(
        axiom,
        b,
        field,
        groups,
        {"generator": "ks-word", "word": list(word.entries), "beta": str(beta)},
    )
    return _finalize(inst, max_vars=max_vars_for_check)


def set_multilinear_monomials(word: Word, side: str):
    """All set-multilinear monomials (one variable per block) on a side.

    Returns a list of (variable-name tuple, sigma) pairs where sigma maps
    interval positions to bits; two monomials from opposite sides sigma-match
    when their maps agree on the shared positions.
    """
    if side == "x":
        idx, blk_side, prefix = word.positive_indices, "A", "x"
    else:
        idx, blk_side, prefix = word.negative_indices, "B", "y"
    choices = [[]]
    for i in idx:
        block = _block_vars(word, i, blk_side, prefix)
        choices = [prev + [pick] for prev in choices for pick in block]
    out = []
    for combo in choices:
        names = tuple(name for name, _ in combo)
        sigma = {}
        for _, bits in combo:
            sigma.update(bits)
        out.append((names, sigma))
    return out
