"""Small expression language for the arbitrary colour functions.

Grammar (lowest to highest binding)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right associative
    atom   := NUMBER | 'i' | VAR | FUNC '(' expr ')' | '(' expr ')'

Variables are ``u``, ``xi`` and ``eta``; functions are ``exp``, ``log``,
``sin``, ``cos``, ``sinh`` and ``cosh``.  Evaluation is over the complex
numbers with principal branches.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Mapping, Union

VARIABLES = ("u", "xi", "eta")
FUNCTIONS = {
    "exp": cmath.exp,
    "log": cmath.log,
    "sin": cmath.sin,
    "cos": cmath.cos,
    "sinh": cmath.sinh,
    "cosh": cmath.cosh,
}


class ParseError(ValueError):
    def __init__(self, offset: int, expected: str, found: str = ""):
        self.offset = offset
        self.expected = expected
        self.found = found
        where = f"found {found!r}" if found else "found end of input"
        super().__init__(f"syntax error at byte {offset}: expected {expected}, {where}")


class EvalError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


Node = Union[Num, Imag, Var, Neg, BinOp, Call]


@dataclass(frozen=True)
class ColourExpr:
    """A parsed expression together with the text it came from."""

    tree: Node
    source: str

    def __str__(self) -> str:
        return to_source(self.tree)

    def free_vars(self) -> frozenset:
        return free_vars(self.tree)

    def __call__(self, **bindings) -> complex:
        return evaluate(self.tree, bindings)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(src: str):
    toks = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            start = pos + (len(src[pos:]) - len(src[pos:].lstrip()))
            raise ParseError(_byte_offset(src, start), "a number, name, operator or parenthesis", src[start])
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


def _byte_offset(src: str, char_index: int) -> int:
    return len(src[:char_index].encode("utf-8"))


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def advance(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str):
        kind, text, start = self.peek()
        raise ParseError(_byte_offset(self.src, start), expected, text)

    def expect_op(self, op: str):
        kind, text, _ = self.peek()
        if kind != "op" or text != op:
            self.fail(repr(op))
        self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail("an operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.advance()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.advance()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Node:
        kind, text, start = self.peek()
        if kind == "num":
            self.advance()
            value = float(text)
            if not math.isfinite(value):
                raise ParseError(_byte_offset(self.src, start), "a finite number literal", text)
            return Num(value)
        if kind == "name":
            self.advance()
            if text == "i":
                return Imag()
            if text in VARIABLES:
                return Var(text)
            if text in FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(text, arg)
            raise ParseError(_byte_offset(self.src, start), "a variable (u, xi, eta), i or a known function", text)
        if kind == "op" and text == "(":
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail("a number, variable, function call or '('")


def parse(src: str) -> ColourExpr:
    if isinstance(src, bytes):
        src = src.decode("utf-8")
    return ColourExpr(_Parser(src).parse(), src)


def free_vars(node: Node) -> frozenset:
    if isinstance(node, Var):
        return frozenset((node.name,))
    if isinstance(node, (Num, Imag)):
        return frozenset()
    if isinstance(node, (Neg, Call)):
        return free_vars(node.arg)
    return free_vars(node.left) | free_vars(node.right)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM_PREC = 5


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    return _ATOM_PREC


def to_source(node: Node) -> str:
    def wrap(child: Node, parens: bool) -> str:
        s = to_source(child)
        return f"({s})" if parens else s

    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.fn}({to_source(node.arg)})"
    if isinstance(node, Neg):
        return "-" + wrap(node.arg, _prec(node.arg) < _NEG_PREC)
    p = _PREC[node.op]
    if node.op == "^":
        return f"{wrap(node.left, _prec(node.left) <= p)}^{wrap(node.right, _prec(node.right) < _NEG_PREC)}"
    left = wrap(node.left, _prec(node.left) < p)
    right = wrap(node.right, _prec(node.right) <= p)
    return f"{left} {node.op} {right}"


def _power(a: complex, b: complex) -> complex:
    if b.imag == 0 and b.real.is_integer() and abs(b.real) <= 64:
        n = int(b.real)
        if a == 0 and n < 0:
            raise EvalError("division by zero in power")
        return complex(a) ** n
    if a == 0:
        if b.real > 0:
            return 0j
        raise EvalError("log of zero in power")
    return cmath.exp(b * cmath.log(a))


def evaluate(node: Node, bindings: Mapping[str, complex]) -> complex:
    try:
        return _eval(node, bindings)
    except OverflowError as exc:
        raise EvalError(f"overflow: {exc}") from None
    except ValueError as exc:
        raise EvalError(str(exc)) from None


def _eval(node: Node, env: Mapping[str, complex]) -> complex:
    if isinstance(node, Num):
        return complex(node.value)
    if isinstance(node, Imag):
        return 1j
    if isinstance(node, Var):
        try:
            return complex(env[node.name])
        except KeyError:
            raise EvalError(f"unbound variable {node.name!r}") from None
    if isinstance(node, Neg):
        # 0 - x keeps a +0 imaginary part, so log(-1) lands on +i*pi
        return 0j - _eval(node.arg, env)
    if isinstance(node, Call):
        x = _eval(node.arg, env)
        if node.fn == "log" and x == 0:
            raise EvalError("log of zero")
        return FUNCTIONS[node.fn](x)
    a = _eval(node.left, env)
    b = _eval(node.right, env)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        if b == 0:
            raise EvalError("division by zero")
        return a / b
    return _power(a, b)


def eval_expr(e: ColourExpr, bindings: Mapping[str, complex]) -> complex:
    return evaluate(e.tree, bindings)
