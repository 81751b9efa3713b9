import io
import random

import pytest

from conftest import random_polynomial
from proofbench.boolcube import (
    CubeFunction,
    SatisfiablePointError,
    interpolate,
    inverse_on_cube,
    multilinearize,
)
from proofbench.field import QQ, PrimeField
from proofbench.linalg import CapExceededError
from proofbench.ring import Polynomial, parse_polynomial


def test_ml_clamps_exponents():
    f = parse_polynomial("x_1^2 + 2*x_1*x_2 + x_2^2")
    assert multilinearize(f) == parse_polynomial("x_1 + 2*x_1*x_2 + x_2")


def test_ml_fixes_multilinear():
    f = parse_polynomial("x_1*x_2 - 3*x_3 + 1/2")
    assert multilinearize(f) == f


def test_ml_of_squared_elementary():
    from proofbench.symmetric import elementary

    e = elementary(1, 2)
    assert multilinearize(e * e) == parse_polynomial("x_1 + x_2 + 2*x_1*x_2")


def test_ml_idempotent_and_multiplicative_randomized():
    rng = random.Random(3)
    names = [f"x_{i}" for i in range(1, 6)]
    for _ in range(60):
        f = random_polynomial(rng, names)
        g = random_polynomial(rng, names)
        mf = multilinearize(f)
        assert multilinearize(mf) == mf
        assert multilinearize(f * g) == multilinearize(mf * multilinearize(g))
        assert mf.degree() <= max(f.degree(), -1)


def test_interpolate_constant():
    cube = CubeFunction(["x_1", "x_2"], QQ, values=[QQ.one] * 4)
    assert interpolate(cube) == Polynomial.constant(1)


def test_interpolate_xor():
    # table order: variable x_1 is the least-significant bit
    values = [QQ.zero, QQ.one, QQ.one, QQ.zero]
    cube = CubeFunction(["x_1", "x_2"], QQ, values=values)
    assert interpolate(cube) == parse_polynomial("x_1 + x_2 - 2*x_1*x_2")


def test_interpolation_recovers_ml_randomized():
    rng = random.Random(5)
    names = [f"x_{i}" for i in range(1, 5)]
    for _ in range(40):
        f = random_polynomial(rng, names)
        f = f.with_vars(names)
        assert interpolate(CubeFunction.of_polynomial(f)) == multilinearize(f).with_vars(names)


def test_interpolate_is_linear():
    rng = random.Random(9)
    names = ["x_1", "x_2", "x_3"]
    for _ in range(25):
        F = [QQ.from_int(rng.randint(-5, 5)) for _ in range(8)]
        G = [QQ.from_int(rng.randint(-5, 5)) for _ in range(8)]
        a, b = QQ.from_int(rng.randint(-3, 3)), QQ.from_int(rng.randint(-3, 3))
        mixed = [a * x + b * y for x, y in zip(F, G)]
        lhs = interpolate(CubeFunction(names, QQ, values=mixed))
        rhs = interpolate(CubeFunction(names, QQ, values=F)).scale(a) + interpolate(
            CubeFunction(names, QQ, values=G)
        ).scale(b)
        assert lhs == rhs


def test_interpolate_respects_support():
    # a table depending only on x_2 yields a polynomial only in x_2
    names = ["x_1", "x_2", "x_3"]
    values = [QQ.from_int((mask >> 1) & 1) for mask in range(8)]
    f = interpolate(CubeFunction(names, QQ, values=values))
    assert f.support_vars() == ("x_2",)


def test_inverse_subset_sum_example():
    g = inverse_on_cube(parse_polynomial("x_1 + x_2 - 3"))
    assert g == parse_polynomial("-1/3 - 1/6*x_1 - 1/6*x_2 - 1/3*x_1*x_2")


def test_inverse_of_constant():
    from fractions import Fraction

    g = inverse_on_cube(Polynomial.constant(2))
    assert g == Polynomial.constant(Fraction(1, 2))


def test_inverse_satisfiable_point():
    with pytest.raises(SatisfiablePointError) as err:
        inverse_on_cube(parse_polynomial("x_1"))
    assert err.value.point == (0,)


def test_inverse_is_functional_inverse_randomized():
    rng = random.Random(13)
    names = [f"x_{i}" for i in range(1, 5)]
    done = 0
    while done < 20:
        f = random_polynomial(rng, names).with_vars(names) + Polynomial.constant(
            rng.choice([-3, 17, 23])
        )
        try:
            g = inverse_on_cube(f)
        except SatisfiablePointError:
            continue
        assert multilinearize(g * f) == Polynomial.constant(1)
        done += 1


def test_inverse_over_prime_field():
    f7 = PrimeField(7)
    f = parse_polynomial("x_1*y_2 - y_1*x_2 - 3", f7)
    g = inverse_on_cube(f)
    assert multilinearize(g * f) == Polynomial.constant(1, f7)


def test_cube_cap():
    names = [f"x_{i}" for i in range(1, 25)]
    f = Polynomial.zero(QQ, names) + Polynomial.constant(1)
    with pytest.raises(CapExceededError):
        inverse_on_cube(f.with_vars(names), cap=1 << 10)


def test_value_table_csv_dump():
    f = parse_polynomial("x_1 + x_2 - 3").with_vars(["x_1", "x_2"])
    cube = CubeFunction.of_polynomial(f)
    buf = io.StringIO()
    cube.dump_csv(buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "bits,value"
    assert lines[1] == "00,-3"
    assert lines[2] == "10,-2"  # x_1 = 1 flips the least-significant bit
    assert len(lines) == 5
