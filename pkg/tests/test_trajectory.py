import cmath
import math
import random
from fractions import Fraction

import pytest

from holofol import (
    LaurentUniPoly,
    UniPoly,
    parse_vector_field,
    riccati_detect,
    riccati_parametrize,
)
from holofol.errors import BaseOnInvariantLine, NotRiccati
from holofol.scalars import GaussianRational as GR
from holofol.scalars import ZERO

from conftest import SEED, rand_gr, rand_unipoly


def test_detect_catalog():
    r = riccati_detect(parse_vector_field("x^2 d/dx + y d/dy"))
    assert r.monomial_flag and r.lam == GR(1) and r.N == 2
    assert r.b == UniPoly.constant("x", 1) and r.c.is_zero()

    r = riccati_detect(parse_vector_field("x d/dx + (x*y+3) d/dy"))
    assert r.a == UniPoly.variable("x")
    assert r.b == UniPoly.variable("x")
    assert r.c == UniPoly.constant("x", 3)

    with pytest.raises(NotRiccati):
        riccati_detect(parse_vector_field("x*(1+x*y) d/dx + y d/dy"))
    with pytest.raises(NotRiccati):
        riccati_detect(parse_vector_field("x d/dx + y^2 d/dy"))


def test_parametrize_catalog():
    # a = x^2, b = 1, c = 0 from (1,1): y(t) = e^{-1/(t+1)+1}
    r = riccati_detect(parse_vector_field("x^2 d/dx + y d/dy"))
    tp = riccati_parametrize(r, (GR(1), GR(1)))
    assert tp.mu.is_zero()
    assert tp.laurent_exp == LaurentUniPoly("w", {-1: GR(-1)})
    assert tp.quadrature.is_trivial()
    t = 0.7
    assert abs(tp.y_of_t(t) - math.exp(-1 / (t + 1) + 1)) < 1e-14

    # a = x, b = x, c = 0: bbar = 1, y(t) = e^t
    r = riccati_detect(parse_vector_field("x d/dx + x*y d/dy"))
    tp = riccati_parametrize(r, (GR(1), GR(1)))
    assert tp.mu.is_zero()
    assert tp.laurent_exp == LaurentUniPoly("w", {1: GR(1)})
    # E(t) = e^{t+1}; y(t) = (y0/E(0)) E(t) = e^t
    assert abs(tp.y_of_t(0.5) - math.exp(0.5)) < 1e-14

    # a = x, b = 1, c = 0: bbar = 1/w, mu = 1, y(t) = y0 (t+1)
    r = riccati_detect(parse_vector_field("x d/dx + y d/dy"))
    tp = riccati_parametrize(r, (GR(1), GR(1)))
    assert tp.mu == GR(1)
    assert tp.laurent_exp.is_zero()
    assert abs(tp.y_of_t(2.0) - 3.0) < 1e-14


def test_parametrize_rejects_base_on_invariant_line():
    r = riccati_detect(parse_vector_field("x d/dx + y d/dy"))
    with pytest.raises(BaseOnInvariantLine):
        riccati_parametrize(r, (ZERO, GR(1)))


def test_formal_identity_randomized():
    from holofol.trajectory import RiccatiParams

    rng = random.Random(SEED + 7)
    for _ in range(30):
        lam = rand_gr(rng, zero_ok=False)
        N = rng.randint(0, 3)
        b = rand_unipoly(rng, "x", 3)
        c = rand_unipoly(rng, "x", 3)
        r = RiccatiParams(
            UniPoly("x", {N: lam}), b, c, monomial_flag=True, lam=lam, N=N
        )
        x0 = rand_gr(rng, zero_ok=False)
        tp = riccati_parametrize(r, (x0, rand_gr(rng)))
        # independent recomposition: mu/w + L'(w) must equal b(w)/(lam w^N)
        lhs = LaurentUniPoly("w", {-1: tp.mu}) + tp.laurent_exp.derivative()
        bbar = LaurentUniPoly(
            "w", {e - N: coeff / lam for e, coeff in b.terms.items()}
        )
        assert lhs == bbar
        # quadrature descriptor stores cbar, -mu and -L
        cbar = LaurentUniPoly(
            "w", {e - N: coeff / lam for e, coeff in c.terms.items()}
        )
        assert tp.quadrature.prefactor == cbar
        assert tp.quadrature.power == -tp.mu
        assert tp.quadrature.exp_part == -tp.laurent_exp


def test_quadrature_against_linear_ode():
    # a = x, b = 1, c = 1 from (1, 0): y' = (y + 1)/(t+1), y = (t+1) - 1... check
    r = riccati_detect(parse_vector_field("x d/dx + (y+1) d/dy"))
    tp = riccati_parametrize(r, (GR(1), GR(0)))
    t = 0.5
    # exact solution through (1, 0) of dy/dt = (y+1)/(t+1) is y = t
    assert abs(tp.y_of_t(t) - t) < 1e-12
