"""Closed-form first integrals.

From the pulled-back shape u^k (a(v) u d/du + c v^N d/dv) the chain is:
partial fractions of a(z)/(c z^N), the closed form

    Gamma(z) = exp(sbar(z)) * z^lambda1 * exp(lambda2/z + ... + lambdaN/z^(N-1)),

the upstairs integral F = u / Gamma(v), and downstairs the single-valued
power  G^(nq) = x^q * exp(-n q sigma(P)) * P^(-p)  where lambda1 = p/q in
lowest terms and sbar(z) = sigma(z^n).  Only this single-valued power is ever
materialized; verification contracts its logarithmic differential with the
field and demands the exact zero rational function.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .bipoly import BiPoly
from .errors import DivisionByZeroFunction, GateFailure, InvalidParams, IrrationalLambda1
from .foliation import XY, OneForm2, VectorField2, contract, differential
from .normal_forms import PulledBackRiccati, SaitoSuzukiParams, build_P, build_Y
from .poly import PartialFractionAtZero, UniPoly, pf_at_zero
from .ratfunc import RatFunc
from .scalars import GaussianRational as GR
from .scalars import ZERO


@dataclass(frozen=True)
class GammaClosedForm:
    """Gamma(z) with logarithmic derivative s(z) + sum A_i z^(-i)."""

    sbar: UniPoly                 # antiderivative of s, constant term 0
    lambda1: Fraction             # = A_1, required real rational
    lambdas: Tuple[GR, ...]       # lambda_i = A_i / (1 - i), i = 2..N

    @property
    def N(self) -> int:
        return len(self.lambdas) + 1

    def log_derivative_matches(self, pf: PartialFractionAtZero) -> bool:
        """Check d/dz log Gamma = s + sum A_i z^(-i) coefficientwise."""
        if self.sbar.derivative() != pf.s:
            return False
        if GR(self.lambda1) != pf.A[0]:
            return False
        for i, lam in enumerate(self.lambdas, start=2):
            # d/dz [lam * z^(1-i)] = lam (1-i) z^(-i) must equal A_i z^(-i)
            if lam * GR(1 - i) != pf.A[i - 1]:
                return False
        return True

    def eval_complex(self, z: complex) -> complex:
        """Principal-branch numeric value (z^lambda1 is multivalued)."""
        acc = cmath.exp(self.sbar.eval(z)) * z ** float(self.lambda1)
        tail = sum(
            complex(lam) * z ** (1 - i) for i, lam in enumerate(self.lambdas, start=2)
        )
        return acc * cmath.exp(tail)


def gamma_from_pf(pf: PartialFractionAtZero) -> GammaClosedForm:
    """Assemble Gamma from a partial-fraction expansion; the leading residue
    must be a real rational or the construction is rejected."""
    A1 = pf.A[0]
    if not A1.is_real():
        raise IrrationalLambda1(f"lambda1 = {A1} is not real rational")
    lambdas = tuple(pf.A[i - 1] / GR(1 - i) for i in range(2, pf.N + 1))
    g = GammaClosedForm(sbar=pf.s.antiderivative(), lambda1=A1.re, lambdas=lambdas)
    assert g.log_derivative_matches(pf)
    return g


@dataclass(frozen=True)
class UpstairsIntegral:
    """F(u, v) = u / Gamma(v).  ``non_proper_regime`` is set when N > 1: the
    formal object exists but no proper trajectory can live there."""

    gamma: GammaClosedForm
    non_proper_regime: bool

    def eval_complex(self, u: complex, v: complex) -> complex:
        return u / self.gamma.eval_complex(v)


def first_integral_uv(pb: PulledBackRiccati) -> Tuple[GammaClosedForm, UpstairsIntegral]:
    pf = pf_at_zero(pb.a.rename("z"), pb.c, pb.N)
    gamma = gamma_from_pf(pf)
    return gamma, UpstairsIntegral(gamma=gamma, non_proper_regime=pb.N > 1)


@dataclass(frozen=True)
class FirstIntegralForm:
    """G^(nq) = x^q * exp(-n q sigma(P)) * P^(-p), single-valued by
    construction (all exponents integral)."""

    q_hat: int
    p_hat: int
    n: int
    sbar: UniPoly     # in z, with sbar(z) = sigma(z^n)
    sigma: UniPoly    # in z
    P: BiPoly

    def __post_init__(self):
        if self.q_hat <= 0:
            raise InvalidParams("q must be positive")
        if math.gcd(abs(self.p_hat), self.q_hat) != 1:
            raise InvalidParams("p/q must be in lowest terms")

    def exp_argument(self) -> BiPoly:
        """-n q sigma(P), the polynomial inside the exponential."""
        out = BiPoly.zero(XY)
        for e, c in self.sigma.terms.items():
            out = out + (self.P**e).scale(c)
        return out.scale(GR(-self.n * self.q_hat))

    def log_differential(self) -> OneForm2:
        """d log G^(nq) = q dx/x - n q sigma'(P) dP - p dP/P."""
        x = RatFunc.variable(XY, "x")
        P = RatFunc.from_bipoly(self.P)
        sig_prime = BiPoly.zero(XY)
        for e, c in self.sigma.derivative().terms.items():
            sig_prime = sig_prime + (self.P**e).scale(c)
        coefs = []
        for var in XY:
            dP = RatFunc.from_bipoly(self.P.diff(var))
            c = (
                RatFunc.constant(XY, self.q_hat) * x.diff(var) / x
                - dP * RatFunc.from_bipoly(sig_prime) * GR(self.n * self.q_hat)
                - dP / P * GR(self.p_hat)
            )
            coefs.append(c)
        return OneForm2(coefs[0], coefs[1])

    def eval_complex(self, x: complex, y: complex, guard: float = 1e-300) -> complex:
        Pv = self.P.eval_complex(x, y)
        if self.p_hat > 0 and abs(Pv) <= guard:
            raise DivisionByZeroFunction("P vanishes at the evaluation point")
        return (
            x**self.q_hat
            * cmath.exp(self.exp_argument().eval_complex(x, y))
            * Pv ** (-self.p_hat)
        )

    def describe(self) -> str:
        return (
            f"x^{self.q_hat} * exp(-{self.n * self.q_hat}*sigma(P)) * P^(-{self.p_hat})"
            f" with sigma(z) = {self.sigma}, P = {self.P}"
        )


def first_integral_xy(params: SaitoSuzukiParams, pb: PulledBackRiccati) -> FirstIntegralForm:
    """Descend F = u/Gamma(v) to the single-valued meromorphic power G^(nq).

    Gates: N = 1 (proper regime), lambda1 real rational, sbar in C[z^n]."""
    if pb.N > 1:
        raise GateFailure("N_greater_than_1", f"N = {pb.N} > 1: no proper trajectory")
    pf = pf_at_zero(pb.a.rename("z"), pb.c, pb.N)
    gamma = gamma_from_pf(pf)          # raises IrrationalLambda1 if lambda1 not real
    if not gamma.sbar.in_power_subring(params.n):
        raise GateFailure(
            "sbar_not_in_C_zn", f"sbar = {gamma.sbar} is not a polynomial in z^{params.n}"
        )
    sigma = UniPoly(
        "z", {e // params.n: c for e, c in gamma.sbar.terms.items()}
    )
    lam = gamma.lambda1
    P = build_P(params)
    if not isinstance(P, BiPoly):
        raise InvalidParams("first_integral_xy requires m >= 1")
    return FirstIntegralForm(
        q_hat=lam.denominator,
        p_hat=lam.numerator,
        n=params.n,
        sbar=gamma.sbar,
        sigma=sigma,
        P=P,
    )


@dataclass(frozen=True)
class Verdict:
    """Outcome of the exact first-integral check."""

    kind: str                      # "exact-zero" | "nonzero" | "undefined"
    residual: Optional[RatFunc] = None

    @property
    def is_exact_zero(self) -> bool:
        return self.kind == "exact-zero"


def verify_first_integral(G: FirstIntegralForm, X: VectorField2) -> Verdict:
    """Contract d log G^(nq) with X; the exact zero rational function means
    G^(nq) is constant along the trajectories of X."""
    try:
        residual = contract(G.log_differential(), X)
    except DivisionByZeroFunction:
        return Verdict(kind="undefined")
    if residual.is_zero():
        return Verdict(kind="exact-zero")
    return Verdict(kind="nonzero", residual=residual)


@dataclass(frozen=True)
class NormalIntegralDescriptor:
    """The fiber polynomial itself packaged as a first integral of the dual
    field, with its logarithmic differential ready for contraction."""

    P: RatFunc
    dlog: OneForm2

    def verify_against(self, Y: VectorField2) -> bool:
        return contract(self.dlog, Y).is_zero()


def corollary1_normal_integral(params: SaitoSuzukiParams) -> NormalIntegralDescriptor:
    P = build_P(params)
    P_rat = P if isinstance(P, RatFunc) else RatFunc.from_bipoly(P)
    dlog = OneForm2(P_rat.diff("x") / P_rat, P_rat.diff("y") / P_rat)
    return NormalIntegralDescriptor(P=P_rat, dlog=dlog)
