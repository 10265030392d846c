"""Sparse exact univariate and Laurent polynomials over Q(i)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InvalidInput
from .scalars import GaussianRational as GR
from .scalars import ONE, ZERO, _coerce

#: Degree reported for the zero polynomial.
ZERO_DEGREE = -1


class UniPoly:
    """A sparse polynomial in one variable with GaussianRational coefficients.

    The internal map never stores zero coefficients, so the leading
    coefficient is nonzero whenever the polynomial is nonzero.
    """

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms: Dict[int, GR] | None = None):
        self.var = var
        clean: Dict[int, GR] = {}
        for e, c in (terms or {}).items():
            if e < 0:
                raise InvalidInput(f"negative exponent {e} in UniPoly")
            c = _coerce(c)
            if not c.is_zero():
                clean[e] = c
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, var: str) -> "UniPoly":
        return cls(var, {})

    @classmethod
    def constant(cls, var: str, c) -> "UniPoly":
        return cls(var, {0: _coerce(c)})

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Sequence) -> "UniPoly":
        """Dense list, index = degree."""
        return cls(var, {i: _coerce(c) for i, c in enumerate(coeffs)})

    @classmethod
    def variable(cls, var: str) -> "UniPoly":
        return cls(var, {1: ONE})

    # -- inspection

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max(self.terms) if self.terms else ZERO_DEGREE

    def coeff(self, e: int) -> GR:
        return self.terms.get(e, ZERO)

    def leading_coeff(self) -> GR:
        return self.terms[max(self.terms)] if self.terms else ZERO

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def supported_exponents(self) -> List[int]:
        return sorted(self.terms)

    def in_power_subring(self, n: int) -> bool:
        """True when every exponent is a multiple of ``n``."""
        return all(e % n == 0 for e in self.terms)

    # -- ring operations

    def _same_var(self, other: "UniPoly"):
        if self.var != other.var:
            raise InvalidInput(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._same_var(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return UniPoly(self.var, out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.var, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, (int, GR)):
            return self.scale(other)
        self._same_var(other)
        out: Dict[int, GR] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, ZERO) + c1 * c2
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def scale(self, c) -> "UniPoly":
        c = _coerce(c)
        return UniPoly(self.var, {e: a * c for e, a in self.terms.items()})

    def __pow__(self, k: int) -> "UniPoly":
        if k < 0:
            raise InvalidInput("negative power of UniPoly")
        out = UniPoly.constant(self.var, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- calculus and substitution

    def derivative(self) -> "UniPoly":
        return UniPoly(self.var, {e - 1: c * e for e, c in self.terms.items() if e})

    def antiderivative(self) -> "UniPoly":
        """Antiderivative with constant term 0."""
        return UniPoly(
            self.var, {e + 1: c / GR(e + 1) for e, c in self.terms.items()}
        )

    def eval(self, z):
        """Horner-free sparse evaluation; ``z`` may be GR or complex."""
        if isinstance(z, GR):
            acc = ZERO
            for e, c in self.terms.items():
                acc = acc + c * z**e
            return acc
        zc = complex(z)
        return sum(complex(c) * zc**e for e, c in self.terms.items())

    def compose(self, inner: "UniPoly") -> "UniPoly":
        out = UniPoly.zero(inner.var)
        for e, c in self.terms.items():
            out = out + (inner**e).scale(c)
        return out

    def shift(self, a) -> "UniPoly":
        """p(z + a) as a polynomial in z."""
        inner = UniPoly(self.var, {1: ONE, 0: _coerce(a)})
        return self.compose(inner)

    def rename(self, var: str) -> "UniPoly":
        return UniPoly(var, dict(self.terms))

    # -- comparisons and display

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, GR)):
            other = UniPoly.constant(self.var, other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    def __repr__(self):
        return f"UniPoly({self.var!r}, {self.terms!r})"

    def __str__(self):
        return _format_terms(self.terms, self.var) or "0"


class LaurentUniPoly:
    """A Laurent polynomial: finitely many terms with integer exponents."""

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms: Dict[int, GR] | None = None):
        self.var = var
        self.terms = {
            e: _coerce(c) for e, c in (terms or {}).items() if not _coerce(c).is_zero()
        }

    @classmethod
    def zero(cls, var: str) -> "LaurentUniPoly":
        return cls(var, {})

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> "LaurentUniPoly":
        return cls(p.var, dict(p.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentUniPoly") -> "LaurentUniPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return LaurentUniPoly(self.var, out)

    def __neg__(self) -> "LaurentUniPoly":
        return LaurentUniPoly(self.var, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentUniPoly":
        c = _coerce(c)
        return LaurentUniPoly(self.var, {e: a * c for e, a in self.terms.items()})

    def derivative(self) -> "LaurentUniPoly":
        return LaurentUniPoly(
            self.var, {e - 1: c * e for e, c in self.terms.items() if e}
        )

    def eval(self, z: complex) -> complex:
        zc = complex(z)
        return sum(complex(c) * zc**e for e, c in self.terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentUniPoly):
            return NotImplemented
        return self.var == other.var and self.terms == other.terms

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LaurentUniPoly({self.var!r}, {self.terms!r})"

    def __str__(self):
        return _format_terms(self.terms, self.var) or "0"


def _format_terms(terms: Dict[int, GR], var: str) -> str:
    pieces = []
    for e in sorted(terms, reverse=True):
        c = terms[e]
        cs = str(c)
        if "+" in cs[1:] or "-" in cs[1:]:
            cs = f"({cs})"
        if e == 0:
            pieces.append(cs)
        else:
            head = "" if cs == "1" else ("-" if cs == "-1" else f"{cs}*")
            pieces.append(f"{head}{var}" + (f"^{e}" if e != 1 else ""))
    out = " + ".join(pieces)
    return out.replace("+ -", "- ")


@dataclass(frozen=True)
class PartialFractionAtZero:
    """a(z)/(c z^N) = s(z) + A_1/z + ... + A_N/z^N, all exact.

    The residues A_i may be zero; zero terms simply drop out downstream.
    """

    s: UniPoly
    A: Tuple[GR, ...]
    c: GR
    N: int

    def recompose(self) -> UniPoly:
        """Return c z^N s(z) + c * sum A_i z^{N-i}; must equal a(z)."""
        var = self.s.var
        zN = UniPoly(var, {self.N: self.c})
        out = self.s * zN
        for i, a in enumerate(self.A, start=1):
            out = out + UniPoly(var, {self.N - i: a * self.c})
        return out


def pf_at_zero(a: UniPoly, c, N: int) -> PartialFractionAtZero:
    """Split a(z)/(c z^N) into polynomial part plus principal part at 0."""
    c = _coerce(c)
    if c.is_zero():
        raise InvalidInput("pf_at_zero: c must be nonzero")
    if N < 1:
        raise InvalidInput("pf_at_zero: N must be >= 1")
    cinv = c.inverse()
    s_terms: Dict[int, GR] = {}
    A: List[GR] = [ZERO] * N
    for e, coeff in a.terms.items():
        if e >= N:
            s_terms[e - N] = coeff * cinv
        else:
            A[N - e - 1] = coeff * cinv  # A_i with i = N - e
    return PartialFractionAtZero(UniPoly(a.var, s_terms), tuple(A), c, N)
