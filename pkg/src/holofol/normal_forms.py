"""Normal forms: the fiber polynomial x^m (x^l y + p(x))^n, its dual field,
the covering map, the pulled-back Riccati shape with its arithmetic gates,
translations, and the special-value set of a fibration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import sympy
from sympy.polys.domains import QQ_I

from .bipoly import BiPoly, _symbol, divides, factor_list
from .errors import GateFailure, InvalidParams, NotPComplete, ShapeMismatch
from .foliation import (
    XY,
    UV,
    CoveringMapH,
    OneForm2,
    VectorField2,
    contract,
    differential,
    numerator_form,
    reduce_codim1,
)
from .poly import UniPoly
from .ratfunc import RatFunc
from .scalars import GaussianRational as GR
from .scalars import ONE, ZERO
from .trajectory import (  # noqa: F401  (module-level API surface)
    QuadratureDescriptor,
    RiccatiParams,
    TrajectoryParam,
    riccati_detect,
    riccati_parametrize,
)


@dataclass(frozen=True)
class SaitoSuzukiParams:
    """The tuple (m, n, l, p) behind P = x^m (x^l y + p(x))^n.

    Invariants: m != 0, n >= 1, gcd(|m|, n) = 1, deg p < l, p(0) != 0 when
    l > 0 and p = 0 when l = 0.  ``covering_ready`` records whether the
    m >= 1 restriction needed by the covering-map pipeline is in force.
    """

    m: int
    n: int
    l: int
    p: UniPoly = field(default_factory=lambda: UniPoly.zero("x"))

    def __post_init__(self):
        if self.m == 0:
            raise InvalidParams("m must be a nonzero integer")
        if self.n < 1:
            raise InvalidParams("n must be a positive integer")
        if math.gcd(abs(self.m), self.n) != 1:
            raise InvalidParams(f"gcd(|m|, n) = gcd({abs(self.m)}, {self.n}) != 1")
        if self.l < 0:
            raise InvalidParams("l must be nonnegative")
        if self.p.var != "x":
            raise InvalidParams("p must be a polynomial in x")
        if self.l == 0:
            if not self.p.is_zero():
                raise InvalidParams("p must be identically zero when l = 0")
        else:
            if self.p.degree() >= self.l:
                raise InvalidParams(f"deg p = {self.p.degree()} must be < l = {self.l}")
            if self.p.coeff(0).is_zero():
                raise InvalidParams("p(0) must be nonzero when l > 0")

    @property
    def covering_ready(self) -> bool:
        return self.m >= 1


def fiber_factor(params: SaitoSuzukiParams) -> BiPoly:
    """f = x^l y + p(x)."""
    return BiPoly(XY, {(params.l, 1): ONE}) + BiPoly.from_unipoly(params.p, XY)


def build_P(params: SaitoSuzukiParams) -> Union[BiPoly, RatFunc]:
    """x^m (x^l y + p(x))^n: a polynomial for m > 0, else a rational function
    with denominator x^(-m)."""
    f_pow = fiber_factor(params) ** params.n
    if params.m > 0:
        return BiPoly(XY, {(params.m, 0): ONE}) * f_pow
    return RatFunc(f_pow, BiPoly(XY, {(-params.m, 0): ONE}))


def build_Y(params: SaitoSuzukiParams) -> VectorField2:
    """The dual polynomial field tangent to every fiber of P:
    n x^(l+1) d/dx - ((m + n l) x^l y + m p(x) + n x p'(x)) d/dy."""
    m, n, l = params.m, params.n, params.l
    comp_x = BiPoly(XY, {(l + 1, 0): GR(n)})
    comp_y = -(
        BiPoly(XY, {(l, 1): GR(m + n * l)})
        + BiPoly.from_unipoly(params.p.scale(m), XY)
        + BiPoly.from_unipoly(params.p.derivative().scale(n), XY)
        * BiPoly.variable(XY, "x")
    )
    return VectorField2.from_polys(comp_x, comp_y)


def build_H(params: SaitoSuzukiParams) -> CoveringMapH:
    if not params.covering_ready:
        raise InvalidParams("build_H requires m >= 1")
    return CoveringMapH(params)


# ---------------------------------------------------------------------------
# the pulled-back Riccati shape and its gates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PulledBackRiccati:
    """The factorization H* X = u^k (a(v) u d/du + c v^N d/dv), together with
    the covering degree n so the divisibility gates can be (re)checked."""

    k: int
    a: UniPoly
    c: GR
    N: int
    n: int

    def check_gates(self):
        if self.a.coeff(0).is_zero():
            raise GateFailure("a_vanishes_at_0", "a(0) = 0: zeros are not isolated")
        if self.k % self.n != 0:
            raise GateFailure(
                "n_does_not_divide_k", f"n = {self.n} does not divide k = {self.k}"
            )
        if self.N > 1 and (self.N - 1) % self.n != 0:
            raise GateFailure(
                "n_does_not_divide_N_minus_1",
                f"n = {self.n} does not divide N - 1 = {self.N - 1}",
            )
        if not self.a.in_power_subring(self.n):
            raise GateFailure(
                "a_not_in_C_zn", f"a = {self.a} is not a polynomial in z^{self.n}"
            )

    def field(self) -> VectorField2:
        """Reassemble u^k (a(v) u d/du + c v^N d/dv) as a (u,v) field."""
        u = RatFunc.variable(UV, "u")
        a_uv = RatFunc.from_bipoly(
            BiPoly(UV, {(0, e): coeff for e, coeff in self.a.terms.items()})
        )
        uk = u**self.k
        comp_u = uk * a_uv * u
        comp_v = uk * RatFunc.from_bipoly(BiPoly(UV, {(0, self.N): self.c}))
        return VectorField2(comp_u, comp_v)


def _laurent_terms(R: RatFunc):
    """Terms of a rational function whose denominator is a monomial."""
    if not R.den.is_monomial():
        raise ShapeMismatch(f"denominator {R.den} is not a monomial")
    (di, dj), dc = next(iter(R.den.terms.items()))
    dc_inv = dc.inverse()
    return {(i - di, j - dj): c * dc_inv for (i, j), c in R.num.terms.items()}


def extract_pullback_shape(W: VectorField2, n: int) -> PulledBackRiccati:
    """Factor a pulled-back field as u^k (a(v) u d/du + c v^N d/dv) and run
    the arithmetic gates (n | k, n | N-1 for N > 1, a in C[z^n], a(0) != 0)."""
    if W.vars != UV:
        raise ShapeMismatch("expected a field in (u, v)")
    if W.comp_x.is_zero() or W.comp_y.is_zero():
        raise ShapeMismatch("a component vanishes identically")
    tu = _laurent_terms(W.comp_x)
    u_exps = {i for i, _ in tu}
    if len(u_exps) != 1:
        raise ShapeMismatch(f"d/du component is not u^(k+1) * a(v): {W.comp_x}")
    k = u_exps.pop() - 1
    if any(j < 0 for _, j in tu):
        raise ShapeMismatch(f"d/du component has a pole in v: {W.comp_x}")
    a = UniPoly("v", {j: c for (_, j), c in tu.items()})

    tv = _laurent_terms(W.comp_y)
    if len(tv) != 1:
        raise ShapeMismatch(f"d/dv component is not a monomial: {W.comp_y}")
    ((i, N),) = tv.keys()
    c = tv[(i, N)]
    if i != k:
        raise ShapeMismatch(f"u-exponents disagree: k = {k} vs {i}")
    if N < 1:
        raise ShapeMismatch(f"d/dv component must carry v^N with N >= 1, got N = {N}")
    pb = PulledBackRiccati(k=k, a=a, c=c, N=N, n=n)
    pb.check_gates()
    return pb


# ---------------------------------------------------------------------------
# translations
# ---------------------------------------------------------------------------


def translate(alpha: GR, obj):
    """The translation (x, y) -> (x + alpha, y) applied to a point, a list of
    points, or a vector field (whose coefficients get x -> x - alpha)."""
    if isinstance(obj, tuple) and len(obj) == 2:
        return (obj[0] + alpha, obj[1])
    if isinstance(obj, (list, set, frozenset)):
        return type(obj)(translate(alpha, pt) for pt in obj)
    if isinstance(obj, VectorField2):
        shift = {
            "x": RatFunc.from_bipoly(
                BiPoly.variable(XY, "x") - BiPoly.constant(XY, alpha)
            ),
            "y": RatFunc.variable(XY, "y"),
        }
        return VectorField2(
            obj.comp_x.substitute(shift), obj.comp_y.substitute(shift)
        )
    raise InvalidParams(f"cannot translate object of type {type(obj).__name__}")


# ---------------------------------------------------------------------------
# critical values and invariant fiber components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialValueReport:
    """Exact Q(i)-rational critical values of P, a residual polynomial in t
    whose roots are the critical values not splitting over Q(i), and the
    fiber components invariant under the foliation of X."""

    critical_values: Tuple[GR, ...]
    residual: UniPoly
    invariant_fiber_components: Tuple[BiPoly, ...]


def critical_values(P: BiPoly) -> Tuple[Tuple[GR, ...], UniPoly]:
    """Eliminate (x, y) from {P - t = 0, P_x = 0, P_y = 0} and split the
    resulting polynomial in t over Q(i)."""
    if P.is_constant():
        raise InvalidParams("P must be nonconstant")
    x, y, t = _symbol(P.vars[0]), _symbol(P.vars[1]), _symbol("_t")
    Pe = P.to_sympy_poly().as_expr()
    gb = sympy.groebner(
        [Pe - t, sympy.diff(Pe, x), sympy.diff(Pe, y)],
        x, y, t, order="lex", domain=QQ_I,
    )
    elim = [g for g in gb.exprs if not g.free_symbols - {t}]
    if not elim or any(g.is_number and g != 0 for g in elim):
        # 1 in the ideal: the critical set is empty.
        return (), UniPoly.constant("t", 1)
    poly_t = sympy.Poly(elim[0], t, domain=QQ_I)
    values: List[GR] = []
    residual = UniPoly.constant("t", 1)
    _, factors = poly_t.factor_list()
    for fac, _mult in factors:
        cs = fac.all_coeffs()
        if fac.degree() == 1:
            from .bipoly import _from_domain

            lead, const = (QQ_I.convert(c) for c in cs)
            values.append(-_from_domain(const) / _from_domain(lead))
        else:
            from .bipoly import _from_domain

            terms = {
                fac.degree() - i: _from_domain(QQ_I.convert(c))
                for i, c in enumerate(cs)
            }
            residual = residual * UniPoly("t", terms)
    values.sort(key=lambda v: (v.re, v.im))
    return tuple(values), residual


def special_values(P: BiPoly, X: VectorField2) -> SpecialValueReport:
    """The finite bad-value data of the fibration of P relative to X:
    critical values plus the invariant components among the fibers.

    Invariant components are found as the nonconstant irreducible factors g
    of the tangency polynomial eta(X) that also pass the direct invariance
    test g | X(g)."""
    vals, residual = critical_values(P)
    eta = reduce_codim1(numerator_form(RatFunc.from_bipoly(P)))
    etaX = contract(eta, X)
    invariant: List[BiPoly] = []
    if not etaX.is_zero() and etaX.is_polynomial():
        _, factors = factor_list(etaX.as_bipoly())
        for g, _mult in factors:
            if g.is_constant():
                continue
            xg = X.apply_to(RatFunc.from_bipoly(g))
            if xg.is_polynomial() and divides(g, xg.as_bipoly()):
                invariant.append(g)
    return SpecialValueReport(vals, residual, tuple(invariant))
