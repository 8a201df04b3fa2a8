import random
from fractions import Fraction

import pytest

from ratrec.core import CoefficientStream, InitialConditions


def rand_rational(rng, nonzero=True):
    num = rng.choice([k for k in range(-9, 10) if k != 0 or not nonzero])
    return Fraction(num, rng.randint(1, 9))


def rand_seeds(rng):
    return InitialConditions.of(*(rand_rational(rng) for _ in range(4)))


def rand_stream(rng, horizon, kinds=("constant", "periodic", "list")):
    kind = rng.choice(list(kinds))
    if kind == "constant":
        return CoefficientStream.constant(rand_rational(rng), rand_rational(rng, nonzero=False))
    if kind == "periodic":
        return CoefficientStream.periodic(
            [(rand_rational(rng), rand_rational(rng, nonzero=False))
             for _ in range(rng.randint(1, 6))])
    return CoefficientStream.explicit(
        [(rand_rational(rng), rand_rational(rng, nonzero=False))
         for _ in range(horizon)])


# ---------------------------------------------------------------------------
# literal specification oracles (nested products, no shortcuts)

def literal_v_closed(v0, stream, n):
    """V_n by the literal nested-product closed form."""
    total = Fraction(v0)
    for k in range(n):
        total *= stream.at(k)[0]
    for l in range(n):
        term = stream.at(l)[1]
        for k in range(l + 1, n):
            term *= stream.at(k)[0]
        total += term
    return total


def fold_v(v0, stream, n):
    """V_n by folding the one-step map (independent of any closed form)."""
    v = Fraction(v0)
    for k in range(n):
        a, b = stream.at(k)
        v = a * v + b
    return v


@pytest.fixture
def rng():
    return random.Random(20260826)
