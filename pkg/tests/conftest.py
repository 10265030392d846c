"""Shared randomized generators.

HOLOFOL_SEED fixes the seed of every randomized test; the default keeps the
suite deterministic between runs.
"""

import math
import os
import random
from fractions import Fraction

import pytest
from hypothesis import settings

from holofol import (
    PulledBackRiccati,
    SaitoSuzukiParams,
    UniPoly,
    build_H,
    pushforward_field,
)
from holofol.scalars import GaussianRational as GR

SEED = int(os.environ.get("HOLOFOL_SEED", "20260823"))

# exact-arithmetic examples vary a lot in cost; wall-clock deadlines only flake
settings.register_profile("holofol", deadline=None, derandomize=True)
settings.load_profile("holofol")


@pytest.fixture
def rng():
    return random.Random(SEED)


def rand_fraction(rng, zero_ok=True, span=4):
    num = rng.randint(-span, span)
    if not zero_ok:
        while num == 0:
            num = rng.randint(-span, span)
    return Fraction(num, rng.randint(1, span))


def rand_gr(rng, zero_ok=True, real_only=False, span=4):
    re = rand_fraction(rng, zero_ok=True, span=span)
    im = Fraction(0) if real_only else rand_fraction(rng, zero_ok=True, span=span)
    if not zero_ok and re == 0 and im == 0:
        re = Fraction(1)
    return GR(re, im)


def rand_unipoly(rng, var, max_deg, nonzero_constant=False, span=4):
    terms = {
        d: rand_gr(rng, span=span)
        for d in range(max_deg + 1)
        if rng.random() < 0.7
    }
    if nonzero_constant:
        terms[0] = rand_gr(rng, zero_ok=False, span=span)
    return UniPoly(var, {d: c for d, c in terms.items() if not c.is_zero()})


def rand_params(rng, allow_negative_m=True, covering_ready=False):
    """Random (m, n, l, p) with |m|, n <= 5 coprime, l <= 3, deg p < l."""
    while True:
        m = rng.randint(1, 5)
        if allow_negative_m and not covering_ready and rng.random() < 0.5:
            m = -m
        n = rng.randint(1, 5)
        if math.gcd(abs(m), n) == 1:
            break
    l = rng.randint(0, 3)
    if l == 0:
        p = UniPoly.zero("x")
    else:
        p = rand_unipoly(rng, "x", l - 1, nonzero_constant=True)
    return SaitoSuzukiParams(m=m, n=n, l=l, p=p)


def rand_pb(rng, n, force_N1=False, real_a0_c=False):
    """Random deck-invariant pulled-back Riccati shape for covering degree n:
    n | k, a in C[z^n] with a(0) != 0, N = 1 mod n."""
    k = n * rng.randint(0, 2)
    N = 1 if force_N1 else 1 + n * rng.randint(0, 2)
    a_terms = {0: rand_gr(rng, zero_ok=False, real_only=real_a0_c)}
    for j in range(1, 3):
        if rng.random() < 0.6:
            c = rand_gr(rng)
            if not c.is_zero():
                a_terms[n * j] = c
    a = UniPoly("v", a_terms)
    c = rand_gr(rng, zero_ok=False, real_only=real_a0_c)
    return PulledBackRiccati(k=k, a=a, c=c, N=N, n=n)


def pipeline_instance(rng):
    """Random (params, pb, X) triple on which the full first-integral
    pipeline must succeed: m >= 1, N = 1, lambda1 = a(0)/c real rational."""
    params = rand_params(rng, covering_ready=True)
    pb = rand_pb(rng, params.n, force_N1=True, real_a0_c=True)
    X = pushforward_field(build_H(params), pb.field())
    return params, pb, X
