"""Recursive-descent parser and canonical printer for exact expressions.

Grammar (implicit multiplication is rejected on purpose):

    expr            := term (('+' | '-') term)*
    term            := factor ('*' factor)*
    factor          := '-' factor | base ('^' exponent)?
    base            := rationalComplex | var | '(' expr ')'
    rationalComplex := int ('/' int)? ('i')?
    exponent        := '-'? int | '(' '-'? int ('/' int)? ')'

Variables are x, y (downstairs) or u, v (upstairs); the bare identifier i is
the imaginary unit.  Vector fields are written "<expr> d/dx + <expr> d/dy"
(or d/du, d/dv) and one-forms "<expr> dx + <expr> dy".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .bipoly import BiPoly, _grlex_key
from .errors import ExprSyntaxError, NonIntegerExponent, UnknownVariable
from .foliation import OneForm2, VectorField2
from .ratfunc import RatFunc
from .scalars import GaussianRational as GR

_CHARTS = (("x", "y"), ("u", "v"))


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: GR


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"


Node = Union[Lit, Var, BinOp, Pow, Neg]


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, END
    text: str
    line: int
    column: int


def _tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*^()/":
            tokens.append(Token("OP", ch, line, col))
            col += 1
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("END", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "OP" or tok.text != text:
            raise ExprSyntaxError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.column)
        return self.advance()

    def at_op(self, *texts: str) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.text in texts

    # expr := term (('+'|'-') term)*
    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    # term := factor (('*'|'/') factor)*
    def term(self) -> Node:
        node = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    # factor := '-' factor | base ('^' exponent)?
    def factor(self) -> Node:
        if self.at_op("-"):
            self.advance()
            return Neg(self.factor())
        node = self.base()
        if self.at_op("^"):
            self.advance()
            node = Pow(node, self.exponent())
        return node

    def base(self) -> Node:
        tok = self.peek()
        if tok.kind == "INT":
            return Lit(self.rational_complex())
        if tok.kind == "IDENT":
            self.advance()
            if tok.text == "i":
                return Lit(GR(0, 1))
            if tok.text in ("x", "y", "u", "v"):
                return Var(tok.text)
            raise UnknownVariable(f"unknown variable {tok.text!r}", tok.line, tok.column)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(f"unexpected token {tok.text!r}", tok.line, tok.column)

    def rational_complex(self) -> GR:
        tok = self.advance()
        num = int(tok.text)
        den = 1
        if self.at_op("/"):
            # only int '/' int, not a general division
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "INT":
                self.advance()
                den = int(self.advance().text)
        value = Fraction(num, den)
        tok2 = self.peek()
        if tok2.kind == "IDENT" and tok2.text == "i":
            self.advance()
            return GR(0, value)
        return GR(value)

    def exponent(self) -> int:
        tok = self.peek()
        if self.at_op("("):
            self.advance()
            sign = 1
            if self.at_op("-"):
                self.advance()
                sign = -1
            itok = self.advance()
            if itok.kind != "INT":
                raise ExprSyntaxError("expected integer exponent", itok.line, itok.column)
            num = sign * int(itok.text)
            if self.at_op("/"):
                self.advance()
                dtok = self.advance()
                if dtok.kind != "INT":
                    raise ExprSyntaxError("expected integer", dtok.line, dtok.column)
                if int(dtok.text) != 1 and num % int(dtok.text) != 0:
                    raise NonIntegerExponent(
                        f"exponent {num}/{dtok.text} is not an integer", tok.line, tok.column
                    )
                num //= int(dtok.text)
            self.expect_op(")")
            return num
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        itok = self.advance()
        if itok.kind != "INT":
            raise NonIntegerExponent(
                f"expected integer exponent, found {itok.text!r}", itok.line, itok.column
            )
        return sign * int(itok.text)


def _collect_vars(node: Node, out: set):
    if isinstance(node, Var):
        out.add(node.name)
    elif isinstance(node, BinOp):
        _collect_vars(node.left, out)
        _collect_vars(node.right, out)
    elif isinstance(node, (Pow, Neg)):
        inner = node.base if isinstance(node, Pow) else node.operand
        _collect_vars(inner, out)


def _infer_chart(used: set, vars: Optional[Tuple[str, str]]) -> Tuple[str, str]:
    if vars is not None:
        extra = used - set(vars)
        if extra:
            raise UnknownVariable(f"variables {sorted(extra)} not in chart {vars}", 1, 1)
        return vars
    for chart in _CHARTS:
        if used <= set(chart):
            return chart
    raise ExprSyntaxError(f"mixed coordinate charts: {sorted(used)}", 1, 1)


def _eval(node: Node, chart: Tuple[str, str]) -> RatFunc:
    if isinstance(node, Lit):
        return RatFunc.constant(chart, node.value)
    if isinstance(node, Var):
        return RatFunc.variable(chart, node.name)
    if isinstance(node, Neg):
        return -_eval(node.operand, chart)
    if isinstance(node, Pow):
        return _eval(node.base, chart) ** node.exponent
    if isinstance(node, BinOp):
        left = _eval(node.left, chart)
        right = _eval(node.right, chart)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "/":
            return left / right
        return left * right
    raise TypeError(f"unknown node {node!r}")


def parse_expression(text: str, vars: Optional[Tuple[str, str]] = None) -> RatFunc:
    """Parse an expression to an exact rational function (a polynomial when
    no negative exponents occur)."""
    parser = _Parser(text)
    node = parser.expr()
    tok = parser.peek()
    if tok.kind != "END":
        raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.line, tok.column)
    used: set = set()
    _collect_vars(node, used)
    chart = _infer_chart(used, vars)
    return _eval(node, chart)


def parse_polynomial(text: str, vars: Optional[Tuple[str, str]] = None) -> BiPoly:
    r = parse_expression(text, vars)
    if not r.is_polynomial():
        raise ExprSyntaxError("expected a polynomial expression", 1, 1)
    return r.as_bipoly()


def _parse_diff_marker(parser: _Parser, chart_vars: List[str]) -> str:
    """Consume 'd' '/' 'dx' and return the coordinate name."""
    tok = parser.advance()
    if tok.kind != "IDENT" or tok.text != "d":
        raise ExprSyntaxError(f"expected d/d<var>, found {tok.text!r}", tok.line, tok.column)
    parser.expect_op("/")
    tok = parser.advance()
    if tok.kind != "IDENT" or len(tok.text) != 2 or tok.text[0] != "d":
        raise ExprSyntaxError(f"expected d/d<var>, found {tok.text!r}", tok.line, tok.column)
    name = tok.text[1]
    if name not in chart_vars:
        raise UnknownVariable(f"unknown coordinate {name!r}", tok.line, tok.column)
    return name


def parse_vector_field(text: str) -> VectorField2:
    """Parse "<expr> d/dx + <expr> d/dy" (or d/du + d/dv)."""
    parser = _Parser(text)
    first = parser.expr()
    v1 = _parse_diff_marker(parser, ["x", "y", "u", "v"])
    chart = ("x", "y") if v1 in "xy" else ("u", "v")
    sign = 1
    if parser.at_op("+", "-"):
        sign = 1 if parser.advance().text == "+" else -1
        second = parser.expr()
        v2 = _parse_diff_marker(parser, list(chart))
    else:
        second = Lit(GR(0))
        v2 = chart[1] if v1 == chart[0] else chart[0]
    tok = parser.peek()
    if tok.kind != "END":
        raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.line, tok.column)
    if v1 == v2:
        raise ExprSyntaxError(f"duplicate component d/d{v1}", 1, 1)
    used: set = set()
    _collect_vars(first, used)
    _collect_vars(second, used)
    _infer_chart(used, chart)
    comps = {v1: _eval(first, chart), v2: _eval(second, chart) * GR(sign)}
    return VectorField2(comps[chart[0]], comps[chart[1]])


def parse_one_form(text: str) -> OneForm2:
    """Parse "<expr> dx + <expr> dy" (or du, dv)."""
    parser = _Parser(text)

    def marker() -> str:
        tok = parser.advance()
        if tok.kind != "IDENT" or len(tok.text) != 2 or tok.text[0] != "d":
            raise ExprSyntaxError(f"expected d<var>, found {tok.text!r}", tok.line, tok.column)
        return tok.text[1]

    first = parser.expr()
    v1 = marker()
    chart = ("x", "y") if v1 in "xy" else ("u", "v")
    sign = 1
    if parser.at_op("+", "-"):
        sign = 1 if parser.advance().text == "+" else -1
        second = parser.expr()
        v2 = marker()
    else:
        second = Lit(GR(0))
        v2 = chart[1] if v1 == chart[0] else chart[0]
    tok = parser.peek()
    if tok.kind != "END":
        raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.line, tok.column)
    if v1 == v2 or v2 not in chart:
        raise ExprSyntaxError(f"bad form components d{v1}, d{v2}", 1, 1)
    used: set = set()
    _collect_vars(first, used)
    _collect_vars(second, used)
    _infer_chart(used, chart)
    coefs = {v1: _eval(first, chart), v2: _eval(second, chart) * GR(sign)}
    return OneForm2(coefs[chart[0]], coefs[chart[1]])


# ---------------------------------------------------------------------------
# canonical printer (round trips through parse_expression)
# ---------------------------------------------------------------------------


def _format_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _subterms(c: GR, mono: str) -> List[str]:
    """One Gaussian coefficient becomes up to two parseable subterms."""
    out = []
    for part, suffix in ((c.re, ""), (c.im, "i")):
        if not part:
            continue
        coef = _format_fraction(part) + suffix
        if mono:
            if coef == "1":
                out.append(mono)
            elif coef == "-1":
                out.append(f"-{mono}")
            else:
                out.append(f"{coef}*{mono}")
        else:
            out.append(coef if coef != "1i" else "i")
    return out


def print_bipoly(p: BiPoly) -> str:
    if p.is_zero():
        return "0"
    pieces: List[str] = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        mono = "*".join(
            f"{v}^{k}" if k > 1 else v for v, k in zip(p.vars, e) if k
        )
        pieces.extend(_subterms(p.terms[e], mono))
    out = pieces[0]
    for piece in pieces[1:]:
        out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return out


def print_ratfunc(r: RatFunc) -> str:
    if r.is_polynomial():
        return print_bipoly(r.as_bipoly())
    num, den = print_bipoly(r.num), print_bipoly(r.den)
    return f"({num}) / ({den})"


def print_vector_field(X: VectorField2) -> str:
    a, b = X.vars
    return f"({print_ratfunc(X.comp_x)}) d/d{a} + ({print_ratfunc(X.comp_y)}) d/d{b}"


def print_one_form(w: OneForm2) -> str:
    a, b = w.vars
    return f"({print_ratfunc(w.coef_dx)}) d{a} + ({print_ratfunc(w.coef_dy)}) d{b}"
