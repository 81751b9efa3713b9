"""Multilinearization, Boolean-cube interpolation and 1/f over {0,1}^n.

The cube over variables (v_1, ..., v_n) is enumerated in integer order of
the characteristic vector with v_1 as the least-significant bit, so point
number ``mask`` assigns v_i the bit ``(mask >> (i-1)) & 1``.  Interpolation
uses the subset Moebius transform in O(n * 2^n) field operations.
"""

from __future__ import annotations

import csv

from .field import QQ
from .linalg import CapExceededError
from .ring import Polynomial, make_mono, mono_clamp, var_key

DEFAULT_CUBE_CAP = 1 << 22


class SatisfiablePointError(ValueError):
    """f vanishes at a Boolean point, so 1/f does not exist on the cube."""

    def __init__(self, point):
        self.point = tuple(point)
        bits = "".join(str(b) for b in self.point)
        super().__init__(f"polynomial vanishes at Boolean point ({bits})")


def multilinearize(f: Polynomial) -> Polynomial:
    """ml(f): clamp every exponent to 1; agrees with f on the cube."""
    out = {}
    fld = f.field
    for m, c in f.terms.items():
        mm = mono_clamp(m)
        if mm in out:
            out[mm] = fld.add(out[mm], c)
        else:
            out[mm] = c
    return Polynomial(fld, out, f.vars)


class CubeFunction:
    """A function {0,1}^n -> field, by table or by on-demand evaluator."""

    def __init__(self, names, field=QQ, values=None, evaluator=None):
        if (values is None) == (evaluator is None):
            raise ValueError("give exactly one of values= or evaluator=")
        self.names = tuple(sorted(names, key=var_key))
        self.n = len(self.names)
        self.field = field
        if values is not None and len(values) != 1 << self.n:
            raise ValueError(f"need {1 << self.n} values, got {len(values)}")
        self._values = list(values) if values is not None else None
        self._evaluator = evaluator

    def value(self, mask: int):
        if self._values is not None:
            return self._values[mask]
        bits = tuple((mask >> i) & 1 for i in range(self.n))
        return self._evaluator(bits)

    def table(self):
        return [self.value(mask) for mask in range(1 << self.n)]

    @staticmethod
    def of_polynomial(f: Polynomial, cap=DEFAULT_CUBE_CAP):
        names = f.vars
        if 1 << len(names) > cap:
            raise CapExceededError(f"cube of dimension {len(names)} exceeds cap {cap}")
        fld = f.field
        zero, one = fld.zero, fld.one

        def ev(bits):
            point = {v: (one if bits[i] else zero) for i, v in enumerate(names)}
            return f.eval(point)

        return CubeFunction(names, fld, evaluator=ev)

    def dump_csv(self, fileobj):
        """Value-table dump: rows of (bit-vector, scalar)."""
        writer = csv.writer(fileobj)
        writer.writerow(["bits", "value"])
        for mask in range(1 << self.n):
            bits = "".join(str((mask >> i) & 1) for i in range(self.n))
            writer.writerow([bits, self.field.coeff_str(self.value(mask))])


def interpolate(cube: CubeFunction) -> Polynomial:
    """The unique multilinear polynomial agreeing with the table on the cube."""
    fld = cube.field
    coeffs = cube.table()
    n = cube.n
    for i in range(n):
        bit = 1 << i
        for mask in range(1 << n):
            if mask & bit:
                coeffs[mask] = fld.sub(coeffs[mask], coeffs[mask ^ bit])
    terms = {}
    for mask in range(1 << n):
        c = coeffs[mask]
        if fld.is_zero(c):
            continue
        mono = make_mono({cube.names[i]: 1 for i in range(n) if mask & (1 << i)})
        terms[mono] = c
    return Polynomial(fld, terms, cube.names)


def inverse_on_cube(f: Polynomial, cap=DEFAULT_CUBE_CAP) -> Polynomial:
    """The unique multilinear g with g*f = 1 on {0,1}^n.

    Raises SatisfiablePointError when f has a Boolean root (the instance
    f = 0 is then satisfiable and has no refutation).
    """
    names = f.vars
    n = len(names)
    if 1 << n > cap:
        raise CapExceededError(f"cube of dimension {n} exceeds cap {cap}")
    fld = f.field
    zero, one = fld.zero, fld.one
    values = []
    for mask in range(1 << n):
        point = {v: (one if mask & (1 << i) else zero) for i, v in enumerate(names)}
        val = f.eval(point)
        if fld.is_zero(val):
            raise SatisfiablePointError(tuple((mask >> i) & 1 for i in range(n)))
        values.append(fld.inv(val))
    return interpolate(CubeFunction(names, fld, values=values))
