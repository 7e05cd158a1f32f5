import json
import os
import random
from fractions import Fraction

import pytest
from hypothesis import settings

from berklocus.berkmap import RationalMapK, normalize
from berklocus.field import PrimeContext

settings.register_profile("default", deadline=None)
settings.load_profile("default")

EXPECTED_PATH = os.path.join(os.path.dirname(__file__), "..", "scripts",
                             "expected_values.json")


def mk(p, num, den, n=1, k=1) -> RationalMapK:
    ctx = PrimeContext(p, n, k)
    return normalize(ctx, [Fraction(c) for c in num],
                     [Fraction(c) for c in den])


@pytest.fixture(scope="session")
def expected():
    with open(EXPECTED_PATH) as fh:
        return json.load(fh)


def random_split_map(rng: random.Random, p: int, d: int) -> RationalMapK:
    """A degree-d map over Q_p whose d+1 classical fixed points are distinct
    rationals: pick the fixed points and a denominator, then solve for the
    numerator."""
    pool = [Fraction(a, b) for a in range(-6, 7) for b in (1, 2, 3)]
    while True:
        xis = rng.sample(pool, d + 1)
        den = [Fraction(rng.randint(-4, 4)) for _ in range(d)] + [Fraction(1)]
        P = [Fraction(1)]
        for xi in xis:
            Q = [Fraction(0)] * (len(P) + 1)
            for i, c in enumerate(P):
                Q[i + 1] += c
                Q[i] -= xi * c
            P = Q

        def ev(cs, x):
            r = Fraction(0)
            for c in reversed(cs):
                r = r * x + c
            return r

        if any(ev(den, xi) == 0 for xi in xis):
            continue
        num = [Fraction(0)] * (d + 2)
        for i, c in enumerate(den):
            num[i + 1] += c
        for i, c in enumerate(P):
            num[i] -= c
        while num and num[-1] == 0:
            num.pop()
        f = mk(p, num, den)
        if f.degree == d:
            return f
