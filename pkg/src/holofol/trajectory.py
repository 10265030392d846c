"""Riccati-shaped fields over the x-line and their closed-form trajectories.

A field a(x) d/dx + (b(x) y + c(x)) d/dy with a(x) = lam * x^N integrates, in
the time scale where x(t) = t + x0, to

    y(t) = (y0/E(0) + I(t)) * E(t),
    E(t) = w^mu * exp(L(w)),      w = t + x0,
    I(t) = integral_0^t  cbar(w) * w^(-mu) * exp(-L(w)) dt,

with mu the residue of bbar = b/(lam x^N) at x = 0 and L its Laurent
antiderivative.  The integral is generally non-elementary; it is represented
as a quadrature descriptor and only evaluated numerically along explicit
paths.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import BaseOnInvariantLine, InvalidInput, NotRiccati
from .foliation import VectorField2
from .poly import LaurentUniPoly, UniPoly
from .scalars import GaussianRational as GR
from .scalars import ZERO


@dataclass(frozen=True)
class RiccatiParams:
    """Coefficients of a(x) d/dx + (b(x) y + c(x)) d/dy."""

    a: UniPoly
    b: UniPoly
    c: UniPoly
    monomial_flag: bool
    lam: GR = ZERO
    N: int = 0


def riccati_detect(X: VectorField2) -> RiccatiParams:
    """Recognize the x-complete Riccati shape of a polynomial field."""
    if not X.is_polynomial():
        raise NotRiccati("components are not polynomial")
    px = X.comp_x.as_bipoly()
    py = X.comp_y.as_bipoly()
    xv, yv = X.vars
    if px.depends_on(yv):
        raise NotRiccati(f"d/d{xv} component depends on {yv}")
    if py.degree_in(yv) > 1:
        raise NotRiccati(f"d/d{yv} component has {yv}-degree > 1")
    a = px.as_unipoly(xv)
    b_terms = {i: coeff for (i, j), coeff in py.terms.items() if j == 1}
    c_terms = {i: coeff for (i, j), coeff in py.terms.items() if j == 0}
    b = UniPoly(xv, b_terms)
    c = UniPoly(xv, c_terms)
    monomial = a.is_monomial()
    lam = a.leading_coeff() if monomial else ZERO
    N = a.degree() if monomial else 0
    return RiccatiParams(a, b, c, monomial, lam, N)


@dataclass(frozen=True)
class QuadratureDescriptor:
    """The unevaluated integrand cbar(w) * w^power * exp(exp_part(w))."""

    prefactor: LaurentUniPoly  # cbar expressed in w = t + x0
    power: GR                  # -mu
    exp_part: LaurentUniPoly   # -L(w)

    def is_trivial(self) -> bool:
        return self.prefactor.is_zero()

    def integrand(self, w: complex) -> complex:
        if self.is_trivial():
            return 0.0
        pw = w ** complex(self.power) if not self.power.is_zero() else 1.0
        return self.prefactor.eval(w) * pw * cmath.exp(self.exp_part.eval(w))


@dataclass(frozen=True)
class TrajectoryParam:
    """Closed-form trajectory data through (x0, y0); see module docstring."""

    base: Tuple[GR, GR]
    mu: GR
    laurent_exp: LaurentUniPoly
    quadrature: QuadratureDescriptor

    def growth_factor(self, t: complex) -> complex:
        """E(t) = w^mu exp(L(w)) with w = t + x0 (principal branch)."""
        w = complex(t) + complex(self.base[0])
        pw = w ** complex(self.mu) if not self.mu.is_zero() else 1.0
        return pw * cmath.exp(self.laurent_exp.eval(w))

    def integral_term(self, t: complex, nodes: int = 200) -> complex:
        """I(t) along the straight segment from 0 to t (Gauss-Legendre)."""
        if self.quadrature.is_trivial() or t == 0:
            return 0.0
        xs, ws = np.polynomial.legendre.leggauss(min(nodes, 200))
        half = t / 2.0
        x0 = complex(self.base[0])
        total = 0.0 + 0.0j
        for xi, wi in zip(xs, ws):
            s = half + half * xi
            total += wi * self.quadrature.integrand(s + x0)
        return total * half

    def y_of_t(self, t: complex, nodes: int = 200) -> complex:
        y0 = complex(self.base[1])
        e0 = self.growth_factor(0.0)
        return (y0 / e0 + self.integral_term(t, nodes)) * self.growth_factor(t)

    def point(self, t: complex, nodes: int = 200) -> Tuple[complex, complex]:
        return (t + complex(self.base[0]), self.y_of_t(t, nodes))


def riccati_parametrize(r: RiccatiParams, base: Tuple[GR, GR]) -> TrajectoryParam:
    """Build the closed-form trajectory data for a monomial-a Riccati field.

    The formal identity mu/w + L'(w) = bbar(w) is verified exactly at
    construction; together with the fundamental-theorem rewrite of I' this is
    the ODE-satisfaction check of the represented solution.
    """
    if not r.monomial_flag:
        raise InvalidInput("riccati_parametrize requires a(x) = lam * x^N")
    x0, y0 = base
    if x0.is_zero():
        raise BaseOnInvariantLine("base point lies on the invariant line x = 0")
    lam_inv = r.lam.inverse()
    # bbar, cbar as Laurent polynomials in w = t + x0 (so b(x) -> b(w)).
    bbar = LaurentUniPoly("w", {e - r.N: c * lam_inv for e, c in r.b.terms.items()})
    cbar = LaurentUniPoly("w", {e - r.N: c * lam_inv for e, c in r.c.terms.items()})
    mu = bbar.terms.get(-1, ZERO)
    L = LaurentUniPoly(
        "w", {e + 1: c / GR(e + 1) for e, c in bbar.terms.items() if e != -1}
    )
    check = LaurentUniPoly("w", {-1: mu}) + L.derivative() - bbar
    if not check.is_zero():
        raise InvalidInput(f"antiderivative identity failed: residual {check}")
    quad = QuadratureDescriptor(prefactor=cbar, power=-mu, exp_part=-L)
    return TrajectoryParam(base=(x0, y0), mu=mu, laurent_exp=L, quadrature=quad)
