"""Reduced rational functions in two variables over Q(i).

A RatFunc is always kept canonical: gcd(num, den) is a unit and the
denominator is grlex-monic, so structural equality is semantic equality.
"""

from __future__ import annotations

from typing import Dict, Mapping, Tuple

from .bipoly import BiPoly, divexact, poly_gcd
from .errors import DivisionByZeroFunction, InvalidInput
from .scalars import GaussianRational as GR
from .scalars import ONE, ZERO, _coerce


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: BiPoly, den: BiPoly | None = None, *, _reduced: bool = False):
        if den is None:
            den = BiPoly.constant(num.vars, 1)
        num._same_vars(den)
        if den.is_zero():
            raise DivisionByZeroFunction("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = BiPoly.constant(num.vars, 1)
            else:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = divexact(num, g)
                    den = divexact(den, g)
                lc = den.leading_coeff()
                if not lc.is_one():
                    inv = lc.inverse()
                    num = num.scale(inv)
                    den = den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors

    @classmethod
    def from_bipoly(cls, p: BiPoly) -> "RatFunc":
        return cls(p, BiPoly.constant(p.vars, 1), _reduced=True)

    @classmethod
    def constant(cls, vars: Tuple[str, str], c) -> "RatFunc":
        return cls.from_bipoly(BiPoly.constant(vars, c))

    @classmethod
    def variable(cls, vars: Tuple[str, str], name: str) -> "RatFunc":
        return cls.from_bipoly(BiPoly.variable(vars, name))

    # -- inspection

    @property
    def vars(self) -> Tuple[str, str]:
        return self.num.vars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> GR:
        return self.num.constant_value() / self.den.constant_value()

    def as_bipoly(self) -> BiPoly:
        if not self.is_polynomial():
            raise InvalidInput(f"not a polynomial: {self}")
        return self.num.scale(self.den.constant_value().inverse())

    # -- arithmetic

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other, self.vars)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RatFunc":
        return self + (-_as_ratfunc(other, self.vars))

    def __rsub__(self, other) -> "RatFunc":
        return _as_ratfunc(other, self.vars) - self

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other, self.vars)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other, self.vars)
        if other.is_zero():
            raise DivisionByZeroFunction("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other, self.vars) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            if self.is_zero():
                raise DivisionByZeroFunction("negative power of zero")
            return RatFunc(self.den**-k, self.num**-k)
        return RatFunc(self.num**k, self.den**k)

    # -- calculus, substitution, evaluation

    def diff(self, var: str) -> "RatFunc":
        return RatFunc(
            self.num.diff(var) * self.den - self.num * self.den.diff(var),
            self.den * self.den,
        )

    def substitute(self, values: Mapping[str, "RatFunc"]) -> "RatFunc":
        num = subs_poly(self.num, values)
        den = subs_poly(self.den, values)
        if den.is_zero():
            raise DivisionByZeroFunction("denominator vanished under substitution")
        return num / den

    def eval_complex(self, zx: complex, zy: complex) -> complex:
        d = self.den.eval_complex(zx, zy)
        return self.num.eval_complex(zx, zy) / d

    def eval_exact(self, zx: GR, zy: GR) -> GR:
        d = self.den.eval_exact(zx, zy)
        if d.is_zero():
            raise DivisionByZeroFunction("denominator vanishes at the point")
        return self.num.eval_exact(zx, zy) / d

    def rename(self, vars: Tuple[str, str]) -> "RatFunc":
        return RatFunc(self.num.rename(vars), self.den.rename(vars), _reduced=True)

    # -- comparisons and display

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, GR, BiPoly)):
            other = _as_ratfunc(other, self.vars)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def __str__(self):
        if self.is_polynomial():
            return str(self.as_bipoly())
        return f"({self.num}) / ({self.den})"


def _as_ratfunc(v, vars: Tuple[str, str]) -> RatFunc:
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, BiPoly):
        return RatFunc.from_bipoly(v)
    return RatFunc.constant(vars, _coerce(v))


def subs_poly(p: BiPoly, values: Mapping[str, RatFunc]) -> RatFunc:
    """Evaluate a polynomial at rational-function values (ring homomorphism)."""
    vx = values[p.vars[0]]
    vy = values[p.vars[1]]
    target = vx.vars
    out = RatFunc.constant(target, 0)
    px: Dict[int, RatFunc] = {0: RatFunc.constant(target, 1)}
    py: Dict[int, RatFunc] = {0: RatFunc.constant(target, 1)}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = power(cache, base, k - 1) * base
        return cache[k]

    for (i, j), c in p.terms.items():
        out = out + power(px, vx, i) * power(py, vy, j) * c
    return out
