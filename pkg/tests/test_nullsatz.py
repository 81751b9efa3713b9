import random

import pytest

from proofbench.boolcube import inverse_on_cube, multilinearize
from proofbench.field import QQ, PrimeField
from proofbench.instances import invariant_Q, subset_sum
from proofbench.nullsatz import (
    NsCertificate,
    boolean_cofactors_from_product,
    certificate_for_single_axiom,
    certificate_from_json,
    certificate_to_json,
    combination,
    fphp_knapsack_identity,
    functional_degree,
    search_min_degree,
    verify,
)
from proofbench.ring import Polynomial, parse_polynomial


def test_verify_complementary_pair():
    axioms = [parse_polynomial("x_1"), parse_polynomial("1 - x_1")]
    one = Polynomial.constant(1)
    cert = NsCertificate((one, one), {})
    assert verify(axioms, cert)


def test_verify_constructed_certificate():
    f = parse_polynomial("x_1 + x_2 - 3")
    cert = certificate_for_single_axiom(f)
    assert verify([f], cert)
    assert cert.degree([f]) == 3


def test_verify_rejects_tampered_certificate():
    f = parse_polynomial("x_1 + x_2 - 3")
    cert = certificate_for_single_axiom(f)
    tampered = NsCertificate(
        (cert.cofactors[0] + parse_polynomial("x_1"),), cert.boolean_cofactors
    )
    assert not verify([f], tampered)


def test_boolean_cofactor_reduction():
    g = parse_polynomial("x_1^3*x_2 + 2*x_1^2 - x_2")
    hs = boolean_cofactors_from_product(g, Polynomial.constant(1))
    # reduction succeeds iff ml(g) = 1, which fails here
    assert hs is None
    f = parse_polynomial("x_1 + x_2 - 3")
    ginv = inverse_on_cube(f)
    hs = boolean_cofactors_from_product(ginv, f)
    cert = NsCertificate((ginv,), hs)
    assert verify([f], cert)


def test_search_subset_sum_floor():
    inst = subset_sum(2, 3)
    reports = search_min_degree([inst.axiom], 3)
    assert [r.found for r in reports] == [False, False, True]
    assert verify([inst.axiom], reports[-1].certificate)


def test_search_complementary_pair_found_at_one():
    axioms = [parse_polynomial("x_1"), parse_polynomial("1 - x_1")]
    reports = search_min_degree(axioms, 1)
    assert reports[0].found
    assert verify(axioms, reports[0].certificate)


def test_search_q_none_at_degree_one():
    inst = invariant_Q(1, 3)
    reports = search_min_degree([inst.axiom], 1)
    assert not reports[0].found


def test_search_monotone_in_degree():
    inst = subset_sum(2, 3)
    reports = search_min_degree([inst.axiom], 5)
    flags = [r.found for r in reports]
    first = flags.index(True)
    assert all(flags[first:])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_multilinear_search_agrees_with_full(n):
    inst = subset_sum(n, n + 1)
    full = search_min_degree([inst.axiom], n + 1)
    ml = search_min_degree([inst.axiom], n + 1, multilinear_cofactors=True)
    assert [r.found for r in full] == [r.found for r in ml]
    found = [r for r in ml if r.found]
    assert found and verify([inst.axiom], found[0].certificate)


def test_search_over_prime_field():
    inst = subset_sum(2, 3, PrimeField(101))
    reports = search_min_degree([inst.axiom], 3)
    assert [r.found for r in reports] == [False, False, True]
    assert verify([inst.axiom], reports[-1].certificate)


@pytest.mark.parametrize("n,beta", [(1, 2), (2, 3), (3, 4), (4, 5)])
def test_functional_degree_subset_sum(n, beta):
    assert functional_degree(subset_sum(n, beta)) == n


def test_functional_degree_q():
    # the inverse reaches total degree 4n (all variables); the paper's
    # bound is >= 2n from the degree-2n slice
    n = 1
    d = functional_degree(invariant_Q(n, 3))
    assert d >= 2 * n
    assert d == 4 * n


def test_functional_degree_symmetric_quadratic():
    from proofbench.symmetric import elementary

    f = elementary(2, 4) - Polynomial.constant(-3)  # e_{2,4} + 3, unsatisfiable
    g = inverse_on_cube(f)
    assert g.degree() >= 3  # n - d + 1 at n = 4, d = 2


@pytest.mark.parametrize("n", [1, 2, 4])
def test_fphp_identity(n):
    report = fphp_knapsack_identity(n)
    assert report.identity_ok
    assert report.substituted_individual_degree == 2


def test_certificate_json_roundtrip():
    inst = subset_sum(2, 3)
    cert = certificate_for_single_axiom(inst.axiom)
    blob = certificate_to_json([inst.axiom], cert)
    axioms, back = certificate_from_json(blob)
    assert axioms == [inst.axiom]
    assert verify(axioms, back)
    assert combination(axioms, back) == Polynomial.constant(1)


def test_found_certificates_always_verify():
    rng = random.Random(1)
    for _ in range(5):
        n = rng.randint(1, 3)
        inst = subset_sum(n, n + 1 + rng.randint(0, 3))
        for report in search_min_degree([inst.axiom], n + 1):
            if report.found:
                assert verify([inst.axiom], report.certificate)
