from proofbench.field import QQ, PrimeField
from proofbench.ring import Polynomial, make_mono


def random_polynomial(rng, names, field=QQ, max_terms=6, max_exp=3, coeff_range=6):
    """A random sparse polynomial; may be zero."""
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        mono = make_mono(
            {v: rng.randint(0, max_exp) for v in rng.sample(names, rng.randint(0, len(names)))}
        )
        c = 0
        while c == 0:
            c = rng.randint(-coeff_range, coeff_range)
        terms[mono] = field.add(terms.get(mono, field.zero), field.from_int(c))
    return Polynomial(field, terms, names)


def random_nonzero(rng, names, field=QQ, **kw):
    while True:
        f = random_polynomial(rng, names, field, **kw)
        if not f.is_zero():
            return f


BOTH_FIELDS = [QQ, PrimeField(5)]
