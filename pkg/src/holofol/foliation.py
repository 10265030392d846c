"""Vector fields and one-forms on C^2, and their transport under the
ramified covering (u,v) -> (u^n, u^(-(m+n*l)) (v - u^m p(u^n))).

All objects carry a coordinate tag, either ("x","y") downstairs or ("u","v")
upstairs, and all operations are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .bipoly import BiPoly, divexact, divides, poly_gcd
from .errors import (
    InvalidParams,
    NotDeckInvariant,
    NotPComplete,
    SingularLocus,
    ZeroForm,
)
from .poly import UniPoly
from .ratfunc import RatFunc
from .scalars import GaussianRational as GR
from .scalars import ONE

XY = ("x", "y")
UV = ("u", "v")


class VectorField2:
    """A rational vector field comp_x d/dx + comp_y d/dy (or d/du, d/dv)."""

    __slots__ = ("comp_x", "comp_y")

    def __init__(self, comp_x: RatFunc, comp_y: RatFunc):
        if comp_x.vars != comp_y.vars:
            raise InvalidParams("component coordinate tags differ")
        self.comp_x = comp_x
        self.comp_y = comp_y

    @classmethod
    def from_polys(cls, px: BiPoly, py: BiPoly) -> "VectorField2":
        return cls(RatFunc.from_bipoly(px), RatFunc.from_bipoly(py))

    @property
    def vars(self) -> Tuple[str, str]:
        return self.comp_x.vars

    def is_polynomial(self) -> bool:
        return self.comp_x.is_polynomial() and self.comp_y.is_polynomial()

    def has_isolated_zeros(self) -> bool:
        """Polynomial components with unit gcd."""
        if not self.is_polynomial():
            return False
        return poly_gcd(self.comp_x.as_bipoly(), self.comp_y.as_bipoly()).is_constant()

    def apply_to(self, f: RatFunc) -> RatFunc:
        """The derivative X(f) = f_x X_x + f_y X_y."""
        v = self.vars
        return f.diff(v[0]) * self.comp_x + f.diff(v[1]) * self.comp_y

    def scale(self, c) -> "VectorField2":
        return VectorField2(self.comp_x * c, self.comp_y * c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField2):
            return NotImplemented
        return self.comp_x == other.comp_x and self.comp_y == other.comp_y

    def __repr__(self):
        v = self.vars
        return f"({self.comp_x}) d/d{v[0]} + ({self.comp_y}) d/d{v[1]}"


class OneForm2:
    """A rational one-form coef_dx dx + coef_dy dy (or du, dv)."""

    __slots__ = ("coef_dx", "coef_dy")

    def __init__(self, coef_dx: RatFunc, coef_dy: RatFunc):
        if coef_dx.vars != coef_dy.vars:
            raise InvalidParams("coefficient coordinate tags differ")
        self.coef_dx = coef_dx
        self.coef_dy = coef_dy

    @classmethod
    def from_polys(cls, ax: BiPoly, ay: BiPoly) -> "OneForm2":
        return cls(RatFunc.from_bipoly(ax), RatFunc.from_bipoly(ay))

    @property
    def vars(self) -> Tuple[str, str]:
        return self.coef_dx.vars

    def is_zero(self) -> bool:
        return self.coef_dx.is_zero() and self.coef_dy.is_zero()

    def scale(self, c) -> "OneForm2":
        return OneForm2(self.coef_dx * c, self.coef_dy * c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OneForm2):
            return NotImplemented
        return self.coef_dx == other.coef_dx and self.coef_dy == other.coef_dy

    def __repr__(self):
        v = self.vars
        return f"({self.coef_dx}) d{v[0]} + ({self.coef_dy}) d{v[1]}"


def differential(P: BiPoly) -> OneForm2:
    """dP = P_x dx + P_y dy."""
    return OneForm2.from_polys(P.diff(P.vars[0]), P.diff(P.vars[1]))


def differential_rational(P: RatFunc) -> OneForm2:
    return OneForm2(P.diff(P.vars[0]), P.diff(P.vars[1]))


def numerator_form(P: RatFunc) -> OneForm2:
    """The polynomial-coefficient form num(dP) = dN*D - N*dD for P = N/D.

    Same zero set as dP off the poles; this is the form whose codimension-one
    reduction is taken when P is rational.
    """
    v = P.vars
    ax = P.num.diff(v[0]) * P.den - P.num * P.den.diff(v[0])
    ay = P.num.diff(v[1]) * P.den - P.num * P.den.diff(v[1])
    return OneForm2.from_polys(ax, ay)


def reduce_codim1(omega: OneForm2) -> OneForm2:
    """Divide both (polynomial) coefficients by their gcd.

    The scalar unit is retained: only the common polynomial factor of
    positive degree is removed, so d(x^2) = 2x dx reduces to 2 dx.
    """
    if omega.is_zero():
        raise ZeroForm("cannot reduce the zero one-form")
    ax = omega.coef_dx.as_bipoly()
    ay = omega.coef_dy.as_bipoly()
    g = poly_gcd(ax, ay)
    if not g.is_constant():
        ax = divexact(ax, g)
        ay = divexact(ay, g)
    return OneForm2.from_polys(ax, ay)


def contract(omega: OneForm2, X: VectorField2) -> RatFunc:
    """omega(X) = coef_dx * X_x + coef_dy * X_y, reduced."""
    if omega.vars != X.vars:
        raise InvalidParams(f"coordinate mismatch: {omega.vars} vs {X.vars}")
    return omega.coef_dx * X.comp_x + omega.coef_dy * X.comp_y


# ---------------------------------------------------------------------------
# covering map
# ---------------------------------------------------------------------------


class CoveringMapH:
    """The finite regular covering (u,v) -> (u^n, u^(-(m+n*l))(v - u^m p(u^n))).

    Composing the fiber polynomial with it collapses it to v^n.  The deck
    group is generated by (u,v) -> (zeta u, zeta^m v) with zeta a primitive
    n-th root of unity; the weight of a monomial u^i v^j under that action is
    (i + m*j) mod n, which is how deck invariance is checked exactly without
    any algebraic-number arithmetic.
    """

    __slots__ = ("params", "x_comp", "y_comp")

    def __init__(self, params):
        if params.m < 1:
            raise InvalidParams("covering map requires m >= 1")
        self.params = params
        m, n, l = params.m, params.n, params.l
        u = BiPoly.variable(UV, "u")
        v = BiPoly.variable(UV, "v")
        p_of_un = BiPoly(UV, {(n * e, 0): c for e, c in params.p.terms.items()})
        self.x_comp = RatFunc.from_bipoly(u**n)
        self.y_comp = RatFunc(v - u**m * p_of_un, u ** (m + n * l))

    def apply(self, f: RatFunc) -> RatFunc:
        """f(H(u,v)) for f in the (x,y) chart."""
        return f.substitute({"x": self.x_comp, "y": self.y_comp})

    def apply_point(self, u: complex, v: complex) -> Tuple[complex, complex]:
        return (
            self.x_comp.eval_complex(u, v),
            self.y_comp.eval_complex(u, v),
        )

    def weight(self, i: int, j: int) -> int:
        return (i + self.params.m * j) % self.params.n

    def jacobian(self) -> Tuple[RatFunc, RatFunc, RatFunc]:
        """(dx/du, dy/du, dy/dv); dx/dv is identically zero."""
        return (
            self.x_comp.diff("u"),
            self.y_comp.diff("u"),
            self.y_comp.diff("v"),
        )

    def __repr__(self):
        return f"H(u,v) = ({self.x_comp}, {self.y_comp})"


def pullback_field(H: CoveringMapH, X: VectorField2) -> VectorField2:
    """The unique (u,v) field W with DH . W = X o H.

    Solved through the triangular Jacobian of H; no multivalued inverse of H
    is ever needed in this direction.
    """
    if X.vars != XY:
        raise InvalidParams("pullback_field expects a field in (x, y)")
    d11, d21, d22 = H.jacobian()
    if d11.is_zero() or d22.is_zero():
        raise SingularLocus("degenerate covering Jacobian")
    xx = H.apply(X.comp_x)
    xy = H.apply(X.comp_y)
    wu = xx / d11
    wv = (xy - d21 * wu) / d22
    return VectorField2(wu, wv)


def pushforward_field(H: CoveringMapH, Z: VectorField2) -> VectorField2:
    """Transport a deck-invariant (u,v) field down to (x, y).

    DH . Z is computed upstairs; each component must be invariant under the
    deck action (all monomials of its reduced numerator in one weight class,
    same for the denominator, with matching classes), and is then rewritten
    through the invariant generators u^n = x and u^(-m) v = x^l y + p(x).
    """
    if Z.vars != UV:
        raise InvalidParams("pushforward_field expects a field in (u, v)")
    d11, d21, d22 = H.jacobian()
    wx = d11 * Z.comp_x
    wy = d21 * Z.comp_x + d22 * Z.comp_y
    comp_x = _invariant_to_xy(H, wx)
    comp_y = _invariant_to_xy(H, wy)
    return VectorField2(comp_x, comp_y)


def _weight_class(H: CoveringMapH, p: BiPoly) -> int:
    """Deck weight of a weight-homogeneous polynomial; NotDeckInvariant if mixed."""
    weights = {H.weight(i, j) for i, j in p.terms}
    if len(weights) > 1:
        raise NotDeckInvariant(
            f"monomials of {p} fall in distinct deck-weight classes {sorted(weights)}"
        )
    return weights.pop() if weights else 0


def _invariant_to_xy(H: CoveringMapH, R: RatFunc) -> RatFunc:
    """Rewrite a deck-invariant rational function of (u,v) in the (x,y) chart."""
    if R.is_zero():
        return RatFunc.constant(XY, 0)
    m, n, l = H.params.m, H.params.n, H.params.l
    wn = _weight_class(H, R.num)
    wd = _weight_class(H, R.den)
    if (wn - wd) % n != 0:
        raise NotDeckInvariant(
            f"{R} picks up a deck factor of weight {(wn - wd) % n}"
        )
    # Shift both parts into weight class 0 by a common monomial factor.
    s = (-wn) % n
    u_s = BiPoly(UV, {(s, 0): ONE})
    num = R.num * u_s
    den = R.den * u_s

    x = BiPoly.variable(XY, "x")
    fib = BiPoly(XY, {(l, 1): ONE}) + BiPoly.from_unipoly(H.params.p, XY)

    def rewrite(p: BiPoly) -> RatFunc:
        out = RatFunc.constant(XY, 0)
        fib_pow: Dict[int, BiPoly] = {0: BiPoly.constant(XY, 1)}
        for (i, j), c in p.terms.items():
            e, r = divmod(i + m * j, n)
            assert r == 0  # guaranteed by the weight-0 normalization
            if j not in fib_pow:
                fib_pow[j] = fib**j
            out = out + RatFunc.from_bipoly(x**e * fib_pow[j]) * c
        return out

    return rewrite(num) / rewrite(den)


def pullback_form(H: CoveringMapH, omega: OneForm2) -> OneForm2:
    """H* (A dx + B dy) = (A.H dHx/du + B.H dHy/du) du + (B.H dHy/dv) dv."""
    if omega.vars != XY:
        raise InvalidParams("pullback_form expects a form in (x, y)")
    d11, d21, d22 = H.jacobian()
    a = H.apply(omega.coef_dx)
    b = H.apply(omega.coef_dy)
    return OneForm2(a * d11 + b * d21, b * d22)


# ---------------------------------------------------------------------------
# the one-form of times
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TimesFormData:
    """Reduced fiber form eta, the contraction eta(X) = unit * x^alpha * f^beta
    with f the fiber factor, and the assembled one-form of times tau."""

    eta: OneForm2
    eta_of_X: BiPoly
    alpha: int
    beta: int
    unit_const: GR
    tau: OneForm2


def times_form(X: VectorField2, params) -> TimesFormData:
    """Build the global one-form of times tau = x*f/eta(X) * dP/P.

    eta is the codimension-one reduction of (the numerator form of) dP.  The
    contraction eta(X) must be, up to a constant, a product of powers of x
    and of the fiber factor f = x^l y + p(x); any other irreducible factor
    means X is not transverse-compatible with this fibration.
    """
    from .normal_forms import build_P, fiber_factor  # deferred: layer cycle

    P = build_P(params)
    P_rat = P if isinstance(P, RatFunc) else RatFunc.from_bipoly(P)
    eta = reduce_codim1(numerator_form(P_rat))
    etaX_rat = contract(eta, X)
    if etaX_rat.is_zero():
        raise NotPComplete("eta(X) vanishes identically: X is tangent to the fibers")
    if not etaX_rat.is_polynomial():
        raise NotPComplete(f"eta(X) = {etaX_rat} is not a polynomial")
    etaX = etaX_rat.as_bipoly()

    x = BiPoly.variable(XY, "x")
    f = fiber_factor(params)
    rest = etaX
    alpha = 0
    while divides(x, rest):
        rest = divexact(rest, x)
        alpha += 1
    beta = 0
    while divides(f, rest):
        rest = divexact(rest, f)
        beta += 1
    if not rest.is_constant():
        raise NotPComplete(
            f"eta(X) has an irreducible factor outside {{x, {f}}}: {rest}"
        )
    unit = rest.constant_value()

    scale = RatFunc.from_bipoly(x * f) / etaX_rat
    dlogP = OneForm2(
        P_rat.diff("x") / P_rat,
        P_rat.diff("y") / P_rat,
    )
    tau = dlogP.scale(scale)
    return TimesFormData(eta, etaX, alpha, beta, unit, tau)
