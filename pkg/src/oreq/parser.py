"""Surface syntax for operator expressions.

Grammar (whitespace ignored, ``^`` binds tighter than ``*`` binds tighter
than ``+``/``-``, all left associative)::

    expr     := ["-"] term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := "-" factor | atom ("^" nat)?
    atom     := "d" | "int" | "x" | "H" | "e" "[" nat "," nat "]"
              | rational | "(" expr ")"
    rational := nat ("/" posnat)?

``d`` is the derivative, ``int`` the integration operator; the Unicode
aliases for both and for minus/times are accepted.  Syntax errors carry the
byte offset of the offending token.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from . import i1
from .i1 import I1Element, KxPoly


class ParseError(InputError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    name: str  # "d" | "int" | "x" | "H"


@dataclass(frozen=True)
class EUnit:
    i: int
    j: int


@dataclass(frozen=True)
class BinOp:
    op: str  # "+" | "-" | "*"
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Neg:
    operand: object


ExprAst = object

_ALIASES = {"∂": "d", "∫": "int", "−": "-", "·": "*"}


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        ch = _ALIASES.get(ch, ch)
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(("num", int(text[start:i]), start))
            continue
        if ch.isalpha():
            start = i
            while i < len(text) and text[i].isalpha():
                i += 1
            word = text[start:i]
            word = _ALIASES.get(word, word)
            if word not in ("d", "int", "x", "H", "e"):
                raise ParseError(f"unknown name {word!r}", start)
            tokens.append(("name", word, start))
            continue
        if ch in "+-*^()[],/":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {text[i]!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> ExprAst:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[0]!r}", tok[2])
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> ExprAst:
        if self.peek()[0] == "-":
            self.take("-")
            return Neg(self.factor())
        node = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            tok = self.take("num")
            return Pow(node, tok[1])
        return node

    def atom(self) -> ExprAst:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take("num")
            if self.peek()[0] == "/":
                self.take("/")
                den = self.take("num")[1]
                if den == 0:
                    raise ParseError("zero denominator", pos)
                return Num(Fraction(value, den))
            return Num(Fraction(value))
        if kind == "name":
            self.take("name")
            if value == "e":
                self.take("[")
                i = self.take("num")[1]
                self.take(",")
                j = self.take("num")[1]
                self.take("]")
                return EUnit(i, j)
            return Gen(value)
        if kind == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"expected an atom, found {kind!r}", pos)


def parse_expr(text: str) -> ExprAst:
    return _Parser(text).parse()


_GENERATORS = {"d": i1.D, "int": i1.INT, "x": i1.X, "H": i1.H}


def _eval_element(node: ExprAst) -> I1Element:
    if isinstance(node, Num):
        return i1.as_element(node.value)
    if isinstance(node, Gen):
        return _GENERATORS[node.name]
    if isinstance(node, EUnit):
        return i1.e(node.i, node.j)
    if isinstance(node, Neg):
        return -_eval_element(node.operand)
    if isinstance(node, Pow):
        return _eval_element(node.base) ** node.exponent
    if isinstance(node, BinOp):
        left, right = _eval_element(node.left), _eval_element(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise InputError(f"malformed expression node {node!r}")


def normalize(expr) -> I1Element:
    """Evaluate an expression (text or AST) to its unique canonical form.

    Generators map to canonical operators and every node is folded with the
    canonical ring operations, so this is a ring morphism from well-formed
    words modulo the defining relations.
    """
    if isinstance(expr, str):
        expr = parse_expr(expr)
    return _eval_element(expr)


def _eval_kx(node: ExprAst) -> tuple[Fraction, ...]:
    from .exact import PolyH

    def as_poly(n) -> PolyH:
        if isinstance(n, Num):
            return PolyH([n.value])
        if isinstance(n, Gen):
            if n.name != "x":
                raise InputError("polynomial arguments may use x only")
            return PolyH([0, 1])
        if isinstance(n, Neg):
            return -as_poly(n.operand)
        if isinstance(n, Pow):
            return as_poly(n.base) ** n.exponent
        if isinstance(n, BinOp):
            left, right = as_poly(n.left), as_poly(n.right)
            if n.op == "+":
                return left + right
            if n.op == "-":
                return left - right
            return left * right
        raise InputError(f"malformed polynomial node {n!r}")

    return as_poly(node).coeffs


def parse_kx(text: str) -> KxPoly:
    """Parse a polynomial in x with rational coefficients."""
    return _eval_kx(parse_expr(text))
