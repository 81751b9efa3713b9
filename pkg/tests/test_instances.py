import random
from fractions import Fraction
from itertools import combinations

import pytest

from proofbench.boolcube import SatisfiablePointError, inverse_on_cube, multilinearize
from proofbench.field import QQ, PrimeField
from proofbench.instances import (
    Instance,
    PlantingError,
    Word,
    apply_phi,
    invariant_Q,
    knapsack_word,
    lifted_P,
    lifted_symmetric_star,
    plant_Q,
    q_tilde,
    set_multilinear_monomials,
    subset_sum,
    word_from_params,
)
from proofbench.ring import Polynomial, parse_polynomial
from proofbench.symmetric import elementary

# ---------------------------------------------------------------------------
# subset sum
# ---------------------------------------------------------------------------


def test_subset_sum_examples():
    inst = subset_sum(2, 3)
    assert inst.axiom == parse_polynomial("x_1 + x_2 - 3")
    assert inst.unsat_verified is True
    with pytest.raises(SatisfiablePointError):
        subset_sum(2, 1)
    assert subset_sum(3, Fraction(7, 2)).unsat_verified is True


def test_subset_sum_over_prime_field():
    # beta = 7 is reachable mod 5 (7 = 2 mod 5)
    with pytest.raises(SatisfiablePointError):
        subset_sum(3, 7, PrimeField(5))
    assert subset_sum(3, 4, PrimeField(5)).unsat_verified is True


# ---------------------------------------------------------------------------
# the invariant instance Q
# ---------------------------------------------------------------------------


def test_invariant_q_shape():
    inst = invariant_Q(1, 3)
    assert inst.axiom == parse_polynomial("x_1*y_2 - y_1*x_2 - 3")
    assert inst.axiom.is_multilinear()
    assert invariant_Q(2, 3).axiom.degree() == 4


def test_invariant_q_beta_constraint():
    for bad in (-1, 0, 1):
        with pytest.raises(ValueError):
            invariant_Q(1, bad)


def test_q_factors_evaluate_in_minus_one_zero_one():
    det = parse_polynomial("x_1*y_2 - y_1*x_2").with_vars(["x_1", "x_2", "y_1", "y_2"])
    seen = set()
    for mask in range(16):
        point = {v: QQ.from_int((mask >> i) & 1) for i, v in enumerate(det.vars)}
        seen.add(det.eval(point))
    assert seen == {QQ.from_int(-1), QQ.zero, QQ.one}


def test_invariant_q_unsat_brute_force():
    assert invariant_Q(1, 3).unsat_verified is True
    assert invariant_Q(2, 3).unsat_verified is True


def test_apply_phi_fixes_determinant():
    det = parse_polynomial("x_1*y_2 - y_1*x_2")
    assert apply_phi(1, det) == det
    assert apply_phi(1, parse_polynomial("y_1")) == parse_polynomial("x_1 + y_1")
    with pytest.raises(ValueError):
        apply_phi(2, det)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_phi_invariance_of_q_tilde(n):
    core = q_tilde(n)
    for j in range(1, 2 * n, 2):
        assert apply_phi(j, core) == core


# ---------------------------------------------------------------------------
# the lifted product instance and plantings
# ---------------------------------------------------------------------------


def test_lifted_p_structure():
    inst = lifted_P(1, 3)
    assert len(inst.core_factors) == 1
    factor = inst.core_factors[0]
    expected = parse_polynomial("1 - z_1_2_3_4 + z_1_2_3_4*u_1*u_4 - z_1_2_3_4*u_2*u_3")
    assert factor == expected
    # all z = 0 makes the core the constant 1
    zeros = {"z_1_2_3_4": QQ.zero}
    assert inst.core_substitute(zeros) == Polynomial.constant(1)
    assert inst.unsat_verified is True  # 32-point check ran at construction


def test_lifted_p_beta_constraint():
    with pytest.raises(ValueError):
        lifted_P(1, 1)


def test_plant_q_natural_partition():
    inst = lifted_P(1, 3)
    planting = plant_Q((("u_1", "u_2"), ("u_3", "u_4")))
    planted = inst.core_substitute(planting.assignment)
    assert planted == parse_polynomial("u_1*u_4 - u_2*u_3")
    assert planted == planting.target(QQ)
    # exactly one z set to one
    assert sum(1 for v in planting.assignment.values() if v == QQ.one) == 1


def test_plant_q_swapped_partition():
    inst = lifted_P(1, 3)
    planting = plant_Q((("u_3", "u_4"), ("u_1", "u_2")))
    assert inst.core_substitute(planting.assignment) == planting.target(QQ)
    assert set(planting.v_order) == {"u_3", "u_4"}
    assert set(planting.w_order) == {"u_1", "u_2"}


def test_plant_q_interleaved_partition():
    inst = lifted_P(1, 3)
    planting = plant_Q((("u_1", "u_3"), ("u_2", "u_4")))
    assert inst.core_substitute(planting.assignment) == planting.target(QQ)


def test_plant_q_obstructed_partition():
    # both extremes of the only 4-subset lie in the same part, so the lone
    # available factor u_1*u_4 - u_2*u_3 can never split as v.w - w.v
    with pytest.raises(PlantingError):
        plant_Q((("u_1", "u_4"), ("u_2", "u_3")))


def test_plant_q_all_n2_partitions():
    inst = lifted_P(2, 3)
    unames = [f"u_{i}" for i in range(1, 9)]
    plantable = 0
    for left in combinations(unames, 4):
        right = tuple(u for u in unames if u not in left)
        try:
            planting = plant_Q((left, right))
        except PlantingError:
            continue
        assert inst.core_substitute(planting.assignment) == planting.target(QQ)
        plantable += 1
    assert plantable == 66  # 4 of the 70 ordered halves admit no planting


def test_plant_q_rejects_bad_partitions():
    with pytest.raises(ValueError):
        plant_Q((("u_1",), ("u_2", "u_3")))
    with pytest.raises(ValueError):
        plant_Q((("u_1", "u_2"), ("u_2", "u_3")))


# ---------------------------------------------------------------------------
# lifted symmetric instances
# ---------------------------------------------------------------------------


def test_star_of_linear_elementary():
    # beta = -3: the lifted core only takes values 0..6 on the cube
    inst = lifted_symmetric_star(elementary(1, 2), -3)
    # n = 2 gives 4 x-variables and C(4,2) = 6 pair gadgets
    expected = Polynomial.zero(QQ)
    for a, b in combinations(range(1, 5), 2):
        expected = expected + parse_polynomial(f"z_{a}_{b}*x_{a}*x_{b}")
    assert inst.axiom == expected + 3


def test_star_of_constant():
    inst = lifted_symmetric_star(elementary(0, 2) + 1, 3)  # f = 2
    assert inst.axiom == Polynomial.constant(-1)


def test_star_matching_assignment_recovers_pair_instance():
    # setting the matching z's to one turns the lift into f of the pair products
    inst = lifted_symmetric_star(elementary(1, 2), -5)
    assignment = {z: QQ.zero for z in inst.var_groups["z"]}
    assignment["z_1_2"] = QQ.one
    assignment["z_3_4"] = QQ.one
    restricted = inst.axiom.substitute(assignment)
    assert restricted == parse_polynomial("x_1*x_2 + x_3*x_4 + 5")


def test_star_rejects_asymmetric():
    from proofbench.symmetric import NotSymmetricError

    with pytest.raises(NotSymmetricError):
        lifted_symmetric_star(parse_polynomial("x_1 + 2*x_2"), 3)


# ---------------------------------------------------------------------------
# words and the knapsack instance
# ---------------------------------------------------------------------------


def test_word_from_params_examples():
    assert word_from_params(2, 4, 2).entries == (2, 2, -2, -2)
    assert word_from_params(3, 3, 1).entries == (3, -1, -2)


def test_word_entry_sum_zero_for_all_valid_params():
    found = 0
    for h in range(1, 7):
        for d in range(2, 9):
            for k in range(1, d):
                try:
                    word = word_from_params(h, d, k)
                except ValueError:
                    continue
                assert word.total() == 0
                assert all(-h <= e <= h and e != 0 for e in word.entries)
                found += 1
    assert found > 10


def test_word_intervals_partition():
    word = Word((3, -1, -2))
    assert word.a_interval(1) == (1, 3)
    assert word.b_interval(2) == (1, 1)
    assert word.b_interval(3) == (2, 3)
    assert word.is_balanced()


def test_knapsack_simplest_word():
    inst = knapsack_word(Word((1, -1)), -3)
    assert inst.axiom == parse_polynomial("x_1_0*y_2_0 + x_1_1*y_2_1 + 3")


def test_knapsack_two_bit_word():
    inst = knapsack_word(Word((2, -2)), -3)
    assert len(inst.variables) == 8
    core = inst.axiom - 3
    expected = Polynomial.zero(QQ)
    for bits in ("00", "01", "10", "11"):
        expected = expected + parse_polynomial(f"x_1_{bits}*y_2_{bits}")
    assert core == expected


def test_knapsack_requires_balanced_word():
    with pytest.raises(ValueError):
        knapsack_word(Word((1, 1)), 3)


def test_knapsack_interval_overlap_bound():
    # words from the construction with h' in [h/3, h]: every A interval
    # meets between 1 and 3 B intervals
    from fractions import Fraction

    for h in range(1, 5):
        for d in range(2, 7):
            for k in range(1, d):
                if not Fraction(h, 3) <= Fraction(h * k, d - k) <= h:
                    continue
                try:
                    word = word_from_params(h, d, k)
                except ValueError:
                    continue
                for i in word.positive_indices:
                    touches = sum(
                        1
                        for j in word.negative_indices
                        if max(word.a_interval(i)[0], word.b_interval(j)[0])
                        <= min(word.a_interval(i)[1], word.b_interval(j)[1])
                    )
                    assert 1 <= touches <= 3


def test_knapsack_degree_bound():
    from fractions import Fraction

    for h in range(1, 5):
        for d in range(2, 7):
            for k in range(1, d):
                if not Fraction(h, 3) <= Fraction(h * k, d - k) <= h:
                    continue
                try:
                    word = word_from_params(h, d, k)
                except ValueError:
                    continue
                if sum(2 ** abs(e) for e in word.entries) > 20:
                    continue
                inst = knapsack_word(word, -3, max_vars_for_check=0)
                assert inst.axiom.degree() <= 4


def test_set_multilinear_monomials_sigma():
    word = Word((1, -1))
    xs = set_multilinear_monomials(word, "x")
    ys = set_multilinear_monomials(word, "y")
    assert [names for names, _ in xs] == [("x_1_0",), ("x_1_1",)]
    assert [names for names, _ in ys] == [("y_2_0",), ("y_2_1",)]
    assert xs[0][1] == {1: 0} and xs[1][1] == {1: 1}


def test_functional_inverse_of_knapsack():
    inst = knapsack_word(Word((1, -1)), -3)
    g = inverse_on_cube(inst.axiom)
    assert multilinearize(g * inst.axiom) == Polynomial.constant(1)


def test_knapsack_p_heavy_roles_switch():
    # strictly P-heavy word: the outer sum runs over the negative blocks
    inst = knapsack_word(Word((2, -1)), -3)
    expected = parse_polynomial(
        "y_2_0*x_1_00 + y_2_0*x_1_01 + y_2_1*x_1_10 + y_2_1*x_1_11 + 3"
    )
    assert inst.axiom == expected
