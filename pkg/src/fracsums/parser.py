"""Expression front end.

Grammar (whitespace-insensitive, no implicit multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | 'k' | CONST | FUNC '(' expr ')' | '(' expr ')'

    NUMBER := digits ['.' digits] [('e'|'E') ['+'|'-'] digits] ['i']
    CONST  := 'pi' | 'e' | 'gamma' | 'i'
    FUNC   := 'exp' | 'ln' | 'sin' | 'cos'

``^`` binds tighter than unary minus and is right-associative, so ``-k^2`` is
``-(k^2)`` and ``2^-k`` is ``2^(-k)``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Union

from .errors import LexError, ParseError, UnsupportedFunction
from .expr import (
    CatalogExpr, CatalogTerm, Constant, Exponential, ExpTimesX,
    InverseMonomial, Logarithm, Monomial, clean,
)
from .specfun import EULER_GAMMA

__all__ = [
    "Num", "Const", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call",
    "parse", "unparse", "evaluate_tree", "canonicalize", "parse_expr",
    "parse_scalar", "MAX_DEGREE",
]

MAX_DEGREE = 16

CONSTANTS = {"pi": complex(math.pi), "e": complex(math.e), "gamma": complex(EULER_GAMMA), "i": 1j}
FUNCTIONS = ("exp", "ln", "sin", "cos")


# ---------------------------------------------------------------------------
# syntax tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: complex


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Union[Num, Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call]

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div, "^": Pow}
_SYMBOL = {cls: op for op, cls in _BINARY.items()}


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


def tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise LexError(f"unexpected character {src[pos]!r}", _byte_offset(src, pos))
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), _byte_offset(src, pos)))
        pos = m.end()
    toks.append(_Tok("end", "", _byte_offset(src, len(src))))
    return toks


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> None:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.offset)
        self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return node

    def expr(self) -> Node:
        left = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            left = _BINARY[op](left, self.term())
        return left

    def term(self) -> Node:
        left = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.advance().text
            left = _BINARY[op](left, self.unary())
        return left

    def unary(self) -> Node:
        if self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.tok.text == "^":
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            text = t.text
            if text.endswith("i"):
                return Num(complex(0.0, float(text[:-1])))
            return Num(complex(float(text)))
        if t.kind == "ident":
            self.advance()
            if t.text == "k":
                return Var()
            if t.text in CONSTANTS:
                return Const(t.text)
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg)
            raise ParseError(f"unknown identifier {t.text!r}", t.offset)
        if t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = t.text or "end of input"
        raise ParseError(f"unexpected {found!r}", t.offset)


def parse(src: str) -> Node:
    """Parse text into a syntax tree; raises LexError / ParseError."""
    return _Parser(src).parse()


def _num_text(v: complex) -> str:
    if v.real == 0 and v.imag != 0:
        return f"{v.imag!r}i"
    if v.imag == 0 and v.real >= 0:
        return repr(v.real)
    # not produced by the parser; keeps the value, not the tree shape
    return f"({v.real!r}+{v.imag!r}i)"


def unparse(node: Node) -> str:
    """Text that parses back to an identical tree."""
    if isinstance(node, Num):
        return _num_text(node.value)
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Var):
        return "k"
    if isinstance(node, Call):
        return f"{node.func}({unparse(node.arg)})"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand)
    return f"{_wrap(node.left)}{_SYMBOL[type(node)]}{_wrap(node.right)}"


def _wrap(node: Node) -> str:
    s = unparse(node)
    if isinstance(node, (Const, Var, Call)) or (isinstance(node, Num) and not s.startswith("(")):
        return s
    return f"({s})"


# ---------------------------------------------------------------------------
# direct evaluation
# ---------------------------------------------------------------------------

def _neg(v: complex) -> complex:
    return 0j - v


def _cpow(u: complex, y: complex) -> complex:
    if y.imag == 0 and y.real == int(y.real) and abs(y.real) <= 64:
        n = int(y.real)
        return u ** n if n >= 0 else 1 / u ** -n
    if u == 0:
        return 0j
    return cmath.exp(y * cmath.log(u))


def evaluate_tree(node: Node, k=None) -> complex:
    """Evaluate the tree at ``k`` with principal branches throughout."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Var):
        if k is None:
            raise ValueError("expression depends on k")
        return complex(k)
    if isinstance(node, Neg):
        return _neg(evaluate_tree(node.operand, k))
    if isinstance(node, Call):
        v = evaluate_tree(node.arg, k)
        return {"exp": cmath.exp, "ln": cmath.log, "sin": cmath.sin, "cos": cmath.cos}[node.func](v)
    a = evaluate_tree(node.left, k)
    b = evaluate_tree(node.right, k)
    if isinstance(node, Add):
        return a + b
    if isinstance(node, Sub):
        return a - b
    if isinstance(node, Mul):
        return a * b
    if isinstance(node, Div):
        return a / b
    return _cpow(a, b)


def parse_scalar(src: str) -> complex:
    """Parse a constant expression such as ``-0.5``, ``pi`` or ``1+2i``."""
    tree = parse(src)
    try:
        return clean(evaluate_tree(tree))
    except ValueError:
        raise ParseError("expected a constant, found an expression in k", 0) from None
    except ZeroDivisionError:
        raise ParseError("division by zero in constant", 0) from None


# ---------------------------------------------------------------------------
# canonicalization
# ---------------------------------------------------------------------------

def _const_value(e: CatalogExpr):
    """Scalar value if ``e`` is constant, else None."""
    if not e.terms:
        return 0j
    if len(e.terms) == 1 and isinstance(e.terms[0].basis, Constant):
        return e.terms[0].coeff
    return None


def _linear(e: CatalogExpr):
    """(c1, c0) with e = c1*k + c0, else None."""
    c1 = c0 = 0j
    for t in e:
        if isinstance(t.basis, Constant):
            c0 += t.coeff
        elif t.basis == Monomial(1):
            c1 += t.coeff
        else:
            return None
    return c1, c0


def _scalar(c) -> CatalogExpr:
    return CatalogExpr.of(CatalogTerm(c, 0, Constant()))


def _inverse_pair(a: int, r: complex, b: int, t: complex) -> list[CatalogTerm]:
    # 1/((k+r)^a (k+t)^b) for r != t by repeated use of
    # 1/((k+r)(k+t)) = (1/(t-r)) (1/(k+r) - 1/(k+t))
    if a == 0:
        return [CatalogTerm(1, t, InverseMonomial(b))]
    if b == 0:
        return [CatalogTerm(1, r, InverseMonomial(a))]
    d = 1.0 / (t - r)
    out = []
    for u in _inverse_pair(a, r, b - 1, t):
        out.append(CatalogTerm(u.coeff * d, u.shift, u.basis))
    for u in _inverse_pair(a - 1, r, b, t):
        out.append(CatalogTerm(-u.coeff * d, u.shift, u.basis))
    return out


def _term_product(p: CatalogTerm, q: CatalogTerm, node) -> list[CatalogTerm]:
    order = (Constant, Monomial, InverseMonomial, Exponential, ExpTimesX, Logarithm)
    if order.index(type(p.basis)) > order.index(type(q.basis)):
        p, q = q, p
    c = p.coeff * q.coeff
    bp, bq = p.basis, q.basis
    if isinstance(bp, Constant):
        return [CatalogTerm(c, q.shift, bq)]
    if isinstance(bp, Monomial):
        if isinstance(bq, Monomial):
            if bp.a + bq.a > MAX_DEGREE:
                raise UnsupportedFunction(f"polynomial degree exceeds {MAX_DEGREE}", node)
            return [CatalogTerm(c, 0, Monomial(bp.a + bq.a))]
        if isinstance(bq, InverseMonomial):
            # k^m = sum_j C(m,j) (k+s)^j (-s)^(m-j)
            s, m, a = q.shift, bp.a, bq.a
            out = []
            for j in range(m + 1):
                w = c * math.comb(m, j) * (-s) ** (m - j)
                if j < a:
                    out.append(CatalogTerm(w, s, InverseMonomial(a - j)))
                else:
                    out.append(CatalogTerm(w, s, Constant() if j == a else Monomial(j - a)))
            return out
        if bp.a == 1 and isinstance(bq, Exponential):
            return [CatalogTerm(c, 0, ExpTimesX(bq.z))]
    if isinstance(bp, InverseMonomial) and isinstance(bq, InverseMonomial):
        if p.shift == q.shift:
            return [CatalogTerm(c, p.shift, InverseMonomial(bp.a + bq.a))]
        return [CatalogTerm(c * u.coeff, u.shift, u.basis)
                for u in _inverse_pair(bp.a, p.shift, bq.a, q.shift)]
    if isinstance(bp, Exponential) and isinstance(bq, Exponential):
        return [CatalogTerm(c, 0, Exponential(bp.z + bq.z))]
    if isinstance(bp, Exponential) and isinstance(bq, ExpTimesX):
        return [CatalogTerm(c, 0, ExpTimesX(bp.z + bq.z))]
    raise UnsupportedFunction(
        f"product of {type(bp).__name__} and {type(bq).__name__} is outside the catalog", node)


def _product(x: CatalogExpr, y: CatalogExpr, node) -> CatalogExpr:
    return CatalogExpr(tuple(u for p in x for q in y for u in _term_product(p, q, node)))


def _power(x: CatalogExpr, n: int, node) -> CatalogExpr:
    out = _scalar(1)
    for _ in range(n):
        out = _product(out, x, node)
    return out


def _integer(v: complex):
    if v.imag == 0 and v.real == int(v.real):
        return int(v.real)
    return None


def _reciprocal(node: Node) -> CatalogExpr:
    """1/node, built structurally so factored denominators stay factored."""
    if isinstance(node, Mul):
        return _product(_reciprocal(node.left), _reciprocal(node.right), node)
    if isinstance(node, Div):
        return _product(_canon(node.right), _reciprocal(node.left), node)
    if isinstance(node, Neg):
        return -_reciprocal(node.operand)
    if isinstance(node, Pow):
        y = _const_value(_canon(node.right))
        n = None if y is None else _integer(y)
        if n is not None and abs(n) <= MAX_DEGREE:
            if n >= 0:
                return _power(_reciprocal(node.left), n, node)
            return _power(_canon(node.left), -n, node)
    e = _canon(node)
    c = _const_value(e)
    if c is not None:
        if c == 0:
            raise UnsupportedFunction("division by zero", node)
        return _scalar(1 / c)
    lin = _linear(e)
    if lin is not None:
        c1, c0 = lin
        s = c0 if c1 == 1 else c0 / c1
        return CatalogExpr.of(CatalogTerm(1 / c1, s, InverseMonomial(1)))
    if len(e.terms) == 1:
        t = e.terms[0]
        b = t.basis
        if isinstance(b, Monomial):
            return CatalogExpr.of(CatalogTerm(1 / t.coeff, 0, InverseMonomial(b.a)))
        if isinstance(b, Exponential):
            return CatalogExpr.of(CatalogTerm(1 / t.coeff, 0, Exponential(-b.z)))
        if isinstance(b, InverseMonomial):
            return CatalogExpr.of(CatalogTerm(1 / t.coeff, t.shift, Monomial(b.a)))
    raise UnsupportedFunction("reciprocal is outside the catalog", node)


def _snap(w: complex) -> complex:
    # drop round-off components such as the 1.2e-16 in exp(pi*i)
    tiny = 4 * 2.220446049250313e-16 * abs(w)
    return complex(0.0 if abs(w.real) < tiny else w.real, 0.0 if abs(w.imag) < tiny else w.imag)


def _exp_of_linear(arg: CatalogExpr, node, scale=1) -> CatalogExpr:
    lin = _linear(arg)
    if lin is None:
        raise UnsupportedFunction("exponent must be linear in k", node)
    c1, c0 = lin
    c1, c0 = c1 * scale, c0 * scale
    w = _snap(cmath.exp(c0)) if c0 != 0 else 1
    return CatalogExpr.of(CatalogTerm(w, 0, Exponential(c1)))


def _canon(node: Node) -> CatalogExpr:
    if isinstance(node, Num):
        return _scalar(node.value)
    if isinstance(node, Const):
        return _scalar(CONSTANTS[node.name])
    if isinstance(node, Var):
        return CatalogExpr.of(CatalogTerm(1, 0, Monomial(1)))
    if isinstance(node, Neg):
        return -_canon(node.operand)
    if isinstance(node, Add):
        return _canon(node.left) + _canon(node.right)
    if isinstance(node, Sub):
        return _canon(node.left) - _canon(node.right)
    if isinstance(node, Mul):
        return _product(_canon(node.left), _canon(node.right), node)
    if isinstance(node, Div):
        return _product(_canon(node.left), _reciprocal(node.right), node)
    if isinstance(node, Pow):
        return _canon_pow(node)
    if isinstance(node, Call):
        return _canon_call(node)
    raise TypeError(node)


def _canon_pow(node: Pow) -> CatalogExpr:
    base = _canon(node.left)
    expo = _canon(node.right)
    y = _const_value(expo)
    u = _const_value(base)
    if y is not None:
        if u is not None:
            return _scalar(_cpow(u, y))
        n = _integer(y)
        if n is None or abs(n) > MAX_DEGREE:
            raise UnsupportedFunction("exponent must be an integer of modulus <= 16", node)
        if n >= 0:
            return _power(base, n, node)
        return _power(_reciprocal(node.left), -n, node)
    if u is None:
        raise UnsupportedFunction("k-dependent base with k-dependent exponent", node)
    if u == 0:
        raise UnsupportedFunction("0^k is outside the catalog", node)
    if isinstance(node.left, Const) and node.left.name == "e":
        return _exp_of_linear(expo, node)
    # u^y := e^{y ln u}, principal log
    return _exp_of_linear(expo, node, scale=cmath.log(u))


def _canon_call(node: Call) -> CatalogExpr:
    arg = _canon(node.arg)
    c = _const_value(arg)
    if c is not None:
        if node.func == "ln" and c == 0:
            raise UnsupportedFunction("ln(0)", node)
        return _scalar(evaluate_tree(Call(node.func, Num(c))))
    if node.func == "exp":
        return _exp_of_linear(arg, node)
    if node.func in ("sin", "cos"):
        lin = _linear(arg)
        if lin is None:
            raise UnsupportedFunction(f"{node.func} argument must be linear in k", node)
        c1, c0 = lin
        plus = CatalogExpr.of(CatalogTerm(_snap(cmath.exp(1j * c0)), 0, Exponential(1j * c1)))
        minus = CatalogExpr.of(CatalogTerm(_snap(cmath.exp(-1j * c0)), 0, Exponential(-1j * c1)))
        if node.func == "cos":
            return (plus + minus).scale(0.5)
        return (plus - minus).scale(1 / 2j)
    # ln
    lin = _linear(arg)
    if lin is None:
        raise UnsupportedFunction("ln argument must be linear in k", node)
    c1, c0 = lin
    if c1.imag != 0 or c1.real <= 0:
        raise UnsupportedFunction("ln(c*k + d) needs a positive real c", node)
    s = c0 if c1 == 1 else c0 / c1
    out = CatalogExpr.of(CatalogTerm(1, s, Logarithm()))
    if c1 != 1:
        out = out + _scalar(math.log(c1.real))
    return out


def canonicalize(node: Node) -> CatalogExpr:
    """Map a syntax tree onto the catalog, or raise UnsupportedFunction."""
    return _canon(node)


def parse_expr(src: str) -> CatalogExpr:
    return canonicalize(parse(src))
