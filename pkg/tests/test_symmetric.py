import math
import random

import pytest

from proofbench.boolcube import inverse_on_cube
from proofbench.field import QQ
from proofbench.ring import Polynomial, parse_polynomial
from proofbench.symmetric import (
    NotMultilinearError,
    NotSymmetricError,
    SymmetricDecomposition,
    decompose_multilinear_symmetric,
    elementary,
    is_symmetric,
    product_leading_slice,
)


def test_elementary_examples():
    assert elementary(0, 3) == Polynomial.constant(1)
    assert elementary(2, 3) == parse_polynomial("x_1*x_2 + x_1*x_3 + x_2*x_3")
    for n in range(1, 7):
        for d in range(n + 1):
            assert elementary(d, n).num_terms() == math.comb(n, d)


def test_elementary_range_errors():
    with pytest.raises(ValueError):
        elementary(4, 3)
    with pytest.raises(ValueError):
        elementary(-1, 3)


def test_is_symmetric_examples():
    assert is_symmetric(parse_polynomial("x_1*x_2 + x_1 + x_2"))
    assert not is_symmetric(parse_polynomial("x_1 + 2*x_2"))
    assert not is_symmetric(parse_polynomial("x_1*y_2 - y_1*x_2"))


def test_is_symmetric_respects_universe():
    # x_1 + x_2 is symmetric in two variables but not in three
    f = parse_polynomial("x_1 + x_2")
    assert is_symmetric(f)
    assert not is_symmetric(f, names=("x_1", "x_2", "x_3"))


def test_decompose_examples():
    d = decompose_multilinear_symmetric(parse_polynomial("5 + x_1 + x_2"))
    assert d.lambdas == (5, 1, 0)
    d = decompose_multilinear_symmetric(elementary(2, 4))
    assert d.lambdas == (0, 0, 1, 0, 0)


def test_decompose_inverse_of_symmetric_instance():
    g = inverse_on_cube(parse_polynomial("x_1 + x_2 + x_3 - 5"))
    d = decompose_multilinear_symmetric(g)
    assert d.reconstruct() == g


def test_decompose_errors():
    with pytest.raises(NotSymmetricError):
        decompose_multilinear_symmetric(parse_polynomial("x_1 + 2*x_2"))
    with pytest.raises(NotMultilinearError):
        decompose_multilinear_symmetric(parse_polynomial("x_1^2 + x_2^2"))


def test_decompose_reconstruct_roundtrip_randomized():
    rng = random.Random(2)
    for n in range(1, 5):
        names = tuple(f"x_{i}" for i in range(1, n + 1))
        for _ in range(20):
            lambdas = tuple(QQ.from_int(rng.randint(-4, 4)) for _ in range(n + 1))
            f = SymmetricDecomposition(lambdas, names, QQ).reconstruct()
            d = decompose_multilinear_symmetric(f.with_vars(names), names)
            assert d.lambdas == lambdas
            assert d.reconstruct() == f


def test_product_leading_slice_examples():
    c, remainder = product_leading_slice(1, 1, 2)
    assert c == 2 and remainder == parse_polynomial("x_1 + x_2")
    assert product_leading_slice(1, 1, 3)[0] == 2
    assert product_leading_slice(2, 1, 4)[0] == 3


def test_product_leading_slice_constant_is_binomial():
    # measured constant is the disjoint-split count C(d+k, d)
    for n in range(2, 7):
        for d in range(1, n):
            for k in range(1, n - d + 1):
                c, _ = product_leading_slice(d, k, n)
                assert c == math.comb(d + k, d)


def test_product_leading_slice_range_errors():
    with pytest.raises(ValueError):
        product_leading_slice(2, 3, 4)  # k > n - d
    with pytest.raises(ValueError):
        product_leading_slice(0, 1, 3)


def test_unsatisfiable_symmetric_has_nonzero_constant():
    # symmetric and unsatisfiable over the cube forces a nonzero constant term
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(1, 4)
        names = tuple(f"x_{i}" for i in range(1, n + 1))
        lambdas = tuple(QQ.from_int(rng.randint(-3, 3)) for _ in range(n + 1))
        f = SymmetricDecomposition(lambdas, names, QQ).reconstruct().with_vars(names)
        zero_point = {v: QQ.zero for v in names}
        if QQ.is_zero(f.eval(zero_point)):
            # constant term vanishes: the all-zero point is a Boolean root
            assert QQ.is_zero(f.constant_term())
