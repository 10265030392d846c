"""Sparse exact bivariate polynomials over Q(i).

Arithmetic, differentiation and substitution are implemented natively on the
sparse term map.  Classical plumbing with well-studied algorithms behind it
(multivariate gcd, Sylvester resultants, irreducible factorization) is
delegated to sympy's QQ_I polynomial domain behind the same exact interface.

The monomial order used everywhere for normalization (leading terms, monic
denominators, report ordering) is graded lexicographic with the first
variable ranked above the second (x > y, u > v).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

import sympy
from sympy.polys.domains import QQ, QQ_I

from .errors import InvalidInput, NotDivisible
from .poly import UniPoly
from .scalars import GaussianRational as GR
from .scalars import ONE, ZERO, _coerce

Exponents = Tuple[int, int]

_SYMBOLS: Dict[str, sympy.Symbol] = {}


def _symbol(name: str) -> sympy.Symbol:
    if name not in _SYMBOLS:
        _SYMBOLS[name] = sympy.Symbol(name)
    return _SYMBOLS[name]


def _to_domain(c: GR):
    return QQ_I.new(
        QQ(c.re.numerator, c.re.denominator), QQ(c.im.numerator, c.im.denominator)
    )


def _from_domain(e) -> GR:
    return GR(
        Fraction(int(e.x.numerator), int(e.x.denominator)),
        Fraction(int(e.y.numerator), int(e.y.denominator)),
    )


def _grlex_key(exps: Exponents) -> Tuple[int, int]:
    return (exps[0] + exps[1], exps[0])


class BiPoly:
    """Sparse polynomial in an ordered pair of variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Tuple[str, str], terms: Mapping[Exponents, GR] | None = None):
        self.vars = (vars[0], vars[1])
        clean: Dict[Exponents, GR] = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise InvalidInput(f"negative exponent ({i},{j}) in BiPoly")
            c = _coerce(c)
            if not c.is_zero():
                clean[(i, j)] = c
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, vars: Tuple[str, str]) -> "BiPoly":
        return cls(vars, {})

    @classmethod
    def constant(cls, vars: Tuple[str, str], c) -> "BiPoly":
        return cls(vars, {(0, 0): _coerce(c)})

    @classmethod
    def variable(cls, vars: Tuple[str, str], name: str) -> "BiPoly":
        if name == vars[0]:
            return cls(vars, {(1, 0): ONE})
        if name == vars[1]:
            return cls(vars, {(0, 1): ONE})
        raise InvalidInput(f"{name} is not one of {vars}")

    @classmethod
    def from_unipoly(cls, p: UniPoly, vars: Tuple[str, str]) -> "BiPoly":
        if p.var == vars[0]:
            return cls(vars, {(e, 0): c for e, c in p.terms.items()})
        if p.var == vars[1]:
            return cls(vars, {(0, e): c for e, c in p.terms.items()})
        raise InvalidInput(f"{p.var} is not one of {vars}")

    # -- inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> GR:
        if not self.is_constant():
            raise InvalidInput("not a constant polynomial")
        return self.terms.get((0, 0), ZERO)

    def total_degree(self) -> int:
        return max(i + j for i, j in self.terms) if self.terms else -1

    def degree_in(self, var: str) -> int:
        k = self._axis(var)
        return max(e[k] for e in self.terms) if self.terms else -1

    def depends_on(self, var: str) -> bool:
        k = self._axis(var)
        return any(e[k] for e in self.terms)

    def _axis(self, var: str) -> int:
        if var == self.vars[0]:
            return 0
        if var == self.vars[1]:
            return 1
        raise InvalidInput(f"{var} is not one of {self.vars}")

    def leading_exponents(self) -> Exponents:
        if not self.terms:
            raise InvalidInput("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self) -> GR:
        return self.terms[self.leading_exponents()]

    def coeff(self, i: int, j: int) -> GR:
        return self.terms.get((i, j), ZERO)

    def content_exponents(self) -> Exponents:
        """Exponents of the largest monomial dividing every term."""
        if not self.terms:
            return (0, 0)
        return (
            min(i for i, _ in self.terms),
            min(j for _, j in self.terms),
        )

    def as_unipoly(self, var: str) -> UniPoly:
        """Project to a univariate polynomial; fails if the other variable occurs."""
        k = self._axis(var)
        other = 1 - k
        if any(e[other] for e in self.terms):
            raise InvalidInput(f"polynomial depends on {self.vars[other]}")
        return UniPoly(var, {e[k]: c for e, c in self.terms.items()})

    # -- ring operations

    def _same_vars(self, other: "BiPoly"):
        if self.vars != other.vars:
            raise InvalidInput(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._same_vars(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return BiPoly(self.vars, out)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, (int, GR)):
            return self.scale(other)
        self._same_vars(other)
        out: Dict[Exponents, GR] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                prev = out.get(e)
                out[e] = c1 * c2 if prev is None else prev + c1 * c2
        return BiPoly(self.vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "BiPoly":
        c = _coerce(c)
        return BiPoly(self.vars, {e: a * c for e, a in self.terms.items()})

    def __pow__(self, k: int) -> "BiPoly":
        if k < 0:
            raise InvalidInput("negative power of BiPoly")
        out = BiPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def monic(self) -> "BiPoly":
        """Divide by the grlex leading coefficient."""
        if self.is_zero():
            return self
        inv = self.leading_coeff().inverse()
        return self.scale(inv)

    # -- calculus, substitution, evaluation

    def diff(self, var: str) -> "BiPoly":
        k = self._axis(var)
        out: Dict[Exponents, GR] = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[k]
            if e:
                ne = (i - 1, j) if k == 0 else (i, j - 1)
                out[ne] = out.get(ne, ZERO) + c * e
        return BiPoly(self.vars, out)

    def substitute(self, values: Mapping[str, "BiPoly"]) -> "BiPoly":
        """Polynomial substitution; every variable maps to a BiPoly over one
        common variable pair (rational substitution lives in ratfunc)."""
        target = next(iter(values.values())).vars
        out = BiPoly.zero(target)
        vx = values[self.vars[0]]
        vy = values[self.vars[1]]
        pow_x: Dict[int, BiPoly] = {0: BiPoly.constant(target, 1)}
        pow_y: Dict[int, BiPoly] = {0: BiPoly.constant(target, 1)}

        def power(cache, base, k):
            if k not in cache:
                cache[k] = power(cache, base, k - 1) * base
            return cache[k]

        for (i, j), c in self.terms.items():
            out = out + (power(pow_x, vx, i) * power(pow_y, vy, j)).scale(c)
        return out

    def eval_exact(self, zx: GR, zy: GR) -> GR:
        acc = ZERO
        for (i, j), c in self.terms.items():
            acc = acc + c * zx**i * zy**j
        return acc

    def eval_complex(self, zx: complex, zy: complex) -> complex:
        return sum(complex(c) * zx**i * zy**j for (i, j), c in self.terms.items())

    def rename(self, vars: Tuple[str, str]) -> "BiPoly":
        return BiPoly(vars, dict(self.terms))

    # -- sympy bridge

    def to_sympy_poly(self) -> sympy.Poly:
        gens = (_symbol(self.vars[0]), _symbol(self.vars[1]))
        if not self.terms:
            return sympy.Poly.from_dict({(0, 0): QQ_I.zero}, *gens, domain=QQ_I)
        return sympy.Poly.from_dict(
            {e: _to_domain(c) for e, c in self.terms.items()}, *gens, domain=QQ_I
        )

    @classmethod
    def from_sympy_poly(cls, p: sympy.Poly, vars: Tuple[str, str]) -> "BiPoly":
        p = p.set_domain(QQ_I)
        d = p.rep.to_dict()
        gens = [str(g) for g in p.gens]
        terms: Dict[Exponents, GR] = {}
        for exps, c in d.items():
            full = {g: e for g, e in zip(gens, exps)}
            terms[(full.get(vars[0], 0), full.get(vars[1], 0))] = _from_domain(c)
        return cls(vars, terms)

    # -- comparisons and display

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, GR)):
            other = BiPoly.constant(self.vars, other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"BiPoly({self.vars!r}, {self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            cs = str(c)
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k
            )
            if not mono:
                pieces.append(cs)
            elif cs == "1":
                pieces.append(mono)
            elif cs == "-1":
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{cs}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# exact division, gcd, resultants, factorization
# ---------------------------------------------------------------------------


def divexact(f: BiPoly, g: BiPoly) -> BiPoly:
    """Exact quotient f/g; raises NotDivisible when the remainder is nonzero.

    Standard term-by-term reduction under grlex.  With a single divisor the
    first leading term not divisible by lt(g) certifies non-divisibility.
    """
    f._same_vars(g)
    if g.is_zero():
        raise InvalidInput("division by the zero polynomial")
    if g.is_constant():
        return f.scale(g.constant_value().inverse())
    q: Dict[Exponents, GR] = {}
    rem = f
    gi, gj = g.leading_exponents()
    glc_inv = g.leading_coeff().inverse()
    while not rem.is_zero():
        fi, fj = rem.leading_exponents()
        if fi < gi or fj < gj:
            raise NotDivisible(f"{g} does not divide {f}")
        e = (fi - gi, fj - gj)
        c = rem.leading_coeff() * glc_inv
        q[e] = c
        rem = rem - BiPoly(rem.vars, {e: c}) * g
    return BiPoly(f.vars, q)


def divides(g: BiPoly, f: BiPoly) -> bool:
    try:
        divexact(f, g)
        return True
    except NotDivisible:
        return False


def poly_gcd(f: BiPoly, g: BiPoly) -> BiPoly:
    """A gcd over Q(i), normalized to grlex leading coefficient 1.

    gcd(0, 0) = 0.  Fast paths cover the frequent cases (constants and pure
    monomial common content); the general case goes through sympy.
    """
    f._same_vars(g)
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return BiPoly.constant(f.vars, 1)
    if f.is_monomial() or g.is_monomial():
        fi, fj = f.content_exponents()
        gi, gj = g.content_exponents()
        return BiPoly(f.vars, {(min(fi, gi), min(fj, gj)): ONE})
    h = f.to_sympy_poly().gcd(g.to_sympy_poly())
    return BiPoly.from_sympy_poly(h, f.vars).monic()


def resultant(f: BiPoly, g: BiPoly, eliminate: str) -> UniPoly:
    """Sylvester resultant eliminating one variable; exact UniPoly result.

    Convention: determinant of the Sylvester matrix with the rows of ``f``
    first (sympy's convention), frozen by tests such as
    Res_y(y - x, y + x) = 2x.
    """
    if f.is_zero() or g.is_zero():
        raise InvalidInput("resultant of the zero polynomial")
    f._same_vars(g)
    keep = f.vars[1] if eliminate == f.vars[0] else f.vars[0]
    if eliminate not in f.vars:
        raise InvalidInput(f"{eliminate} is not one of {f.vars}")
    gens = (_symbol(eliminate), _symbol(keep))
    fp = sympy.Poly(f.to_sympy_poly().as_expr(), *gens, domain=QQ_I)
    gp = sympy.Poly(g.to_sympy_poly().as_expr(), *gens, domain=QQ_I)
    res = fp.resultant(gp)
    out = BiPoly.from_sympy_poly(sympy.Poly(res, *gens, domain=QQ_I), f.vars)
    return UniPoly(keep, {e[0 if keep == f.vars[0] else 1]: c for e, c in out.terms.items()})


def factor_list(f: BiPoly) -> Tuple[GR, List[Tuple[BiPoly, int]]]:
    """Irreducible factorization over Q(i); factors come back grlex-monic and
    sorted by (total degree, grlex leading monomial)."""
    if f.is_zero():
        return ZERO, []
    coeff, factors = f.to_sympy_poly().factor_list()
    unit = _from_domain(QQ_I.convert(coeff))
    out: List[Tuple[BiPoly, int]] = []
    for fac, mult in factors:
        b = BiPoly.from_sympy_poly(fac, f.vars)
        lc = b.leading_coeff()
        unit = unit * lc**mult
        out.append((b.monic(), mult))
    out.sort(key=lambda fm: (fm[0].total_degree(), _grlex_key(fm[0].leading_exponents())))
    return unit, out
