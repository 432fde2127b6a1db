"""One grammar for polynomial and class expressions.

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := ("-" | "+") unary | power
    power := atom ("^" INT | "^" "(" INT ")")?
    atom  := INT | NAME | NAME "(" expr ("," expr)* ")" | "pi*(" NAME ")" | "(" expr ")"

Names resolve at evaluation time against an :class:`Env`: stored values,
named classes, the class atoms of the model (xi/H/h, f/F, base symbols) and
finally free parameters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .chern import FormalBundle, porteous_codim2, porteous_codim3, schur_s22
from .chow import ChowClass, ChowError, ChowModel
from .param_ring import PolyExpr, binom_poly


class ParseError(ValueError):
    def __init__(self, message: str, column: int, expected: frozenset[str] = frozenset(),
                 line: int | None = None, text: str = ""):
        self.message = message
        self.column = column
        self.expected = expected
        self.line = line
        self.text = text
        where = f"line {line}, column {column}" if line is not None else f"column {column}"
        exp = f" (expected {', '.join(sorted(expected))})" if expected else ""
        super().__init__(f"{where}: {message}{exp}")


class EvalError(ValueError):
    pass


# AST


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Name:
    id: str


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Num, Name, Call, BinOp, Neg, Pow]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<pi>pi\*\()|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", col, text=text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append(_Tok(kind, m.group(kind), start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, expected: set[str], tok: _Tok | None = None):
        tok = tok or self.peek()
        what = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.col, frozenset(expected), text=self.text)

    def expect_op(self, op: str):
        if self.peek().kind == "op" and self.peek().text == op:
            return self.take()
        self.error({repr(op)})

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "eof":
            self.error({"operator", "end of input"})
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            operand = self.unary()
            return Neg(operand) if t.text == "-" else operand
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.peek()
            if t.kind == "num":
                return Pow(base, int(self.take().text))
            if t.kind == "op" and t.text == "(":
                self.take()
                if self.peek().kind != "num":
                    self.error({"integer"})
                k = int(self.take().text)
                self.expect_op(")")
                return Pow(base, k)
            self.error({"integer", "'('"})
        return base

    def atom(self) -> Node:
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Num(int(t.text))
        if t.kind == "pi":
            self.take()
            if self.peek().kind != "name":
                self.error({"base symbol"})
            sym = Name(self.take().text)
            self.expect_op(")")
            return Call("pi", (sym,))
        if t.kind == "name":
            self.take()
            if self.peek().kind == "op" and self.peek().text == "(":
                self.take()
                args = [self.expr()]
                while self.peek().kind == "op" and self.peek().text == ",":
                    self.take()
                    args.append(self.expr())
                self.expect_op(")")
                return Call(t.text, tuple(args))
            return Name(t.text)
        if t.kind == "op" and t.text == "(":
            self.take()
            node = self.expr()
            self.expect_op(")")
            return node
        self.error({"number", "name", "'('", "'-'"})


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


# rendering

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def render(node: Node) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.id
    if isinstance(node, Call):
        return f"{node.func}({', '.join(render(a) for a in node.args)})"
    if isinstance(node, Neg):
        inner = render(node.operand)
        return "-" + (f"({inner})" if _prec(node.operand) < 3 else inner)
    if isinstance(node, Pow):
        inner = render(node.base)
        return (f"({inner})" if _prec(node.base) < 5 else inner) + f"^{node.exp}"
    p = _PREC[node.op]
    left = render(node.left)
    right = render(node.right)
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    sep = f" {node.op} " if p == 1 else node.op
    return f"{left}{sep}{right}"


# evaluation

Value = Union[PolyExpr, ChowClass]

XI_NAMES = frozenset({"xi", "H", "h"})
FIBER_NAMES = frozenset({"f", "F"})
RESERVED_WORDS = XI_NAMES | FIBER_NAMES | {"pi"}


@dataclass
class Env:
    model: ChowModel | None = None
    classes: dict[str, ChowClass] = field(default_factory=dict)
    bundles: dict[str, FormalBundle] = field(default_factory=dict)
    values: dict[str, PolyExpr] = field(default_factory=dict)


def _need_model(env: Env, what: str) -> ChowModel:
    if env.model is None:
        raise EvalError(f"{what} needs a model")
    return env.model


def evaluate(node: Node, env: Env) -> Value:
    if isinstance(node, Num):
        return PolyExpr.const(node.value)
    if isinstance(node, Name):
        name = node.id
        if name in env.values:
            return env.values[name]
        if name in env.classes:
            return env.classes[name]
        if env.model is not None:
            m = env.model
            if name in XI_NAMES:
                return m.xi()
            if name in FIBER_NAMES:
                return m.fiber()
            if name in m.symbols:
                return m.pi(name)
            if name == "n":
                return m.dim
        elif name in XI_NAMES | FIBER_NAMES:
            raise EvalError(f"class atom {name!r} needs a model")
        return PolyExpr.var(name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, env)
    if isinstance(node, Pow):
        return evaluate(node.base, env) ** node.exp
    if isinstance(node, BinOp):
        a = evaluate(node.left, env)
        b = evaluate(node.right, env)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if not isinstance(b, PolyExpr) or not b.is_constant():
            raise EvalError(f"cannot divide by {b}; divisors must be nonzero constants")
        if b.constant_value() == 0:
            raise EvalError("division by zero")
        return a / b.constant_value()
    if isinstance(node, Call):
        return _call(node, env)
    raise EvalError(f"unknown node {node!r}")


_BUNDLE_FUNCS = {"porteous2": porteous_codim2, "porteous3": porteous_codim3, "s22": schur_s22}


def _bundle(node: Node, env: Env) -> FormalBundle:
    if not isinstance(node, Name) or node.id not in env.bundles:
        raise EvalError(f"{render(node)} is not a bundle name")
    return env.bundles[node.id]


def _call(node: Call, env: Env) -> Value:
    f, args = node.func, node.args
    if f == "pi":
        m = _need_model(env, "pi(...)")
        if len(args) != 1 or not isinstance(args[0], Name):
            raise EvalError("pi takes one base symbol")
        try:
            return m.pi(args[0].id)
        except ChowError as exc:
            raise EvalError(str(exc)) from None
    if f in ("c1", "c2", "c3", "c4", "det") and len(args) == 1 and isinstance(args[0], Name) \
            and args[0].id in env.bundles:
        k = 1 if f == "det" else int(f[1])
        return env.bundles[args[0].id].chern(k)
    if f in _BUNDLE_FUNCS and len(args) == 1:
        return _BUNDLE_FUNCS[f](_bundle(args[0], env))
    if f == "rank" and len(args) == 1:
        return _bundle(args[0], env).rank
    if f == "binom":
        if len(args) != 2:
            raise EvalError("binom takes two arguments")
        p = evaluate(args[0], env)
        k = evaluate(args[1], env)
        if not isinstance(p, PolyExpr) or not isinstance(k, PolyExpr) or not k.is_constant():
            raise EvalError("binom(p, k) needs a polynomial p and an integer k")
        kv = k.constant_value()
        if kv.denominator != 1 or kv < 0:
            raise EvalError("binom(p, k) needs a nonnegative integer k")
        return binom_poly(p, int(kv))
    raise EvalError(f"unknown function {f}(...)")


def eval_poly(text_or_node: str | Node, env: Env | None = None) -> PolyExpr:
    env = env or Env()
    node = parse_expression(text_or_node) if isinstance(text_or_node, str) else text_or_node
    v = evaluate(node, env)
    if isinstance(v, ChowClass):
        if all(k == (0, 0, "") for k in v.terms):
            return v.coefficient(0)
        raise EvalError(f"expected a polynomial, got the class {v}")
    return v


def eval_class(text_or_node: str | Node, env: Env) -> ChowClass:
    m = _need_model(env, "a class expression")
    node = parse_expression(text_or_node) if isinstance(text_or_node, str) else text_or_node
    v = evaluate(node, env)
    if isinstance(v, PolyExpr):
        return m.const(v)
    return v


__all__ = [
    "ParseError", "EvalError", "Num", "Name", "Call", "BinOp", "Neg", "Pow", "Node",
    "parse_expression", "render", "evaluate", "eval_poly", "eval_class", "Env",
]
