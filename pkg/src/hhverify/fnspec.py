"""Expression DSL for one-variable real functions.

Grammar, lowest precedence first: ``+ -``, then ``* /``, then unary ``-``,
then ``^`` (whose exponent must be a constant expression, keeping the
evaluation domain decidable).  Atoms are decimal literals, the variable
``x``, ``ln(e)``, ``exp(e)``, ``abs(e)`` and two-argument ``min``/``max``.
``**`` is accepted as a synonym for ``^`` and the unicode signs for
multiplication and division are normalised to ``*`` and ``/``.

Evaluation follows the IEEE double path of the tree node by node and never
lets a NaN (or an infinity) escape: every invalid operation surfaces as an
:class:`EvalDomainError` instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

__all__ = [
    "ExpressionError",
    "ParseError",
    "EvalDomainError",
    "Node",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Call1",
    "Call2",
    "FunctionSpec",
    "EvalPoint",
    "parse",
    "evaluate",
    "compose",
    "compile_ast",
    "to_source",
    "tabulate",
]


class ExpressionError(ValueError):
    """Base class for expression parsing and evaluation failures."""


class ParseError(ExpressionError):
    """Syntax or validation error; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class EvalDomainError(ExpressionError):
    """Evaluation left the reals: log of a non-positive value, division by
    zero, a negative base under a fractional power, overflow, ..."""


# --- AST -------------------------------------------------------------------


class Node:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Num(Node):
    value: float


@dataclass(frozen=True, slots=True)
class Var(Node):
    pass


@dataclass(frozen=True, slots=True)
class Neg(Node):
    arg: Node


@dataclass(frozen=True, slots=True)
class BinOp(Node):
    op: str  # one of "+", "-", "*", "/"
    left: Node
    right: Node


@dataclass(frozen=True, slots=True)
class Pow(Node):
    base: Node
    exponent: Node  # constant subtree; enforced by the parser


@dataclass(frozen=True, slots=True)
class Call1(Node):
    name: str  # "ln" | "exp" | "abs"
    arg: Node


@dataclass(frozen=True, slots=True)
class Call2(Node):
    name: str  # "min" | "max"
    left: Node
    right: Node


_UNARY_FUNCS = ("ln", "exp", "abs")
_BINARY_FUNCS = ("min", "max")


def _contains_var(node: Node) -> bool:
    if isinstance(node, Var):
        return True
    if isinstance(node, Num):
        return False
    if isinstance(node, Neg):
        return _contains_var(node.arg)
    if isinstance(node, (BinOp, Call2)):
        return _contains_var(node.left) or _contains_var(node.right)
    if isinstance(node, Pow):
        return _contains_var(node.base) or _contains_var(node.exponent)
    if isinstance(node, Call1):
        return _contains_var(node.arg)
    raise TypeError(f"unknown node {node!r}")


# --- tokenizer -------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "num" | "ident" | "op" | "lparen" | "rparen" | "comma" | "end"
    text: str
    pos: int  # character index into the source


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-^()," or ch in "*/" or ch in "×÷":
            if ch == "(":
                toks.append(_Token("lparen", ch, i))
            elif ch == ")":
                toks.append(_Token("rparen", ch, i))
            elif ch == ",":
                toks.append(_Token("comma", ch, i))
            elif ch == "*" and i + 1 < n and text[i + 1] == "*":
                toks.append(_Token("op", "^", i))
                i += 2
                continue
            else:
                op = {"×": "*", "÷": "/"}.get(ch, ch)
                toks.append(_Token("op", op, i))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            toks.append(_Token("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", _byte_offset(text, i))
    toks.append(_Token("end", "", n))
    return toks


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def _peek(self) -> _Token:
        return self.toks[self.i]

    def _take(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def _err(self, message: str, tok: _Token):
        raise ParseError(message, _byte_offset(self.text, tok.pos))

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self._peek()
        if tok.kind != kind:
            self._err(f"expected {what}", tok)
        return self._take()

    def parse(self) -> Node:
        node = self.expr()
        tok = self._peek()
        if tok.kind != "end":
            self._err("unexpected trailing input", tok)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self._peek().kind == "op" and self._peek().text in "+-":
            op = self._take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self._peek().kind == "op" and self._peek().text in "*/":
            op = self._take().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        tok = self._peek()
        if tok.kind == "op" and tok.text == "-":
            self._take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        tok = self._peek()
        if tok.kind == "op" and tok.text == "^":
            self._take()
            exp_tok = self._peek()
            exponent = self.unary()
            if _contains_var(exponent):
                self._err("power exponent must be a constant expression", exp_tok)
            node = Pow(node, exponent)
        return node

    def atom(self) -> Node:
        tok = self._peek()
        if tok.kind == "num":
            self._take()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self._take()
            name = tok.text
            if name == "x":
                return Var()
            if name in _UNARY_FUNCS:
                self._expect("lparen", f"'(' after {name}")
                arg = self.expr()
                nxt = self._peek()
                if nxt.kind == "comma":
                    self._err(f"{name} takes exactly one argument", nxt)
                self._expect("rparen", "')'")
                return Call1(name, arg)
            if name in _BINARY_FUNCS:
                self._expect("lparen", f"'(' after {name}")
                left = self.expr()
                nxt = self._peek()
                if nxt.kind == "rparen":
                    self._err(f"{name} takes exactly two arguments", nxt)
                self._expect("comma", "','")
                right = self.expr()
                self._expect("rparen", "')'")
                return Call2(name, left, right)
            self._err(f"unknown identifier {name!r}", tok)
        if tok.kind == "lparen":
            self._take()
            node = self.expr()
            self._expect("rparen", "')'")
            return node
        self._err("expected an expression", tok)


# --- printer ---------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def to_source(node: Node) -> str:
    """Render the tree back to source.

    Grouping is fully parenthesised where precedence alone would not
    reconstruct the same tree, so re-parsing reproduces the exact IEEE
    evaluation order; numeric literals use ``repr`` and round-trip exactly.
    """
    return _format(node, 0)


def _format(node: Node, min_prec: int) -> str:
    if isinstance(node, Num):
        s = repr(node.value)
        prec = _PREC_NEG if node.value < 0 else _PREC_ATOM
    elif isinstance(node, Var):
        s, prec = "x", _PREC_ATOM
    elif isinstance(node, Neg):
        s, prec = "-" + _format(node.arg, _PREC_NEG), _PREC_NEG
    elif isinstance(node, BinOp):
        prec = _PREC_ADD if node.op in "+-" else _PREC_MUL
        s = _format(node.left, prec) + node.op + _format(node.right, prec + 1)
    elif isinstance(node, Pow):
        s = _format(node.base, _PREC_ATOM) + "^" + _format(node.exponent, _PREC_NEG)
        prec = _PREC_POW
    elif isinstance(node, Call1):
        s, prec = f"{node.name}({_format(node.arg, 0)})", _PREC_ATOM
    elif isinstance(node, Call2):
        s = f"{node.name}({_format(node.left, 0)}, {_format(node.right, 0)})"
        prec = _PREC_ATOM
    else:
        raise TypeError(f"unknown node {node!r}")
    return f"({s})" if prec < min_prec else s


# --- compilation and evaluation ---------------------------------------------


def compile_ast(node: Node) -> Callable[[float], float]:
    """Compile the tree into nested closures, one per node."""
    if isinstance(node, Num):
        v = node.value
        return lambda t: v
    if isinstance(node, Var):
        return lambda t: t
    if isinstance(node, Neg):
        g = compile_ast(node.arg)
        return lambda t: -g(t)
    if isinstance(node, BinOp):
        g = compile_ast(node.left)
        h = compile_ast(node.right)
        if node.op == "+":
            return lambda t: g(t) + h(t)
        if node.op == "-":
            return lambda t: g(t) - h(t)
        if node.op == "*":
            return lambda t: g(t) * h(t)
        return lambda t: g(t) / h(t)
    if isinstance(node, Pow):
        g = compile_ast(node.base)
        e = compile_ast(node.exponent)

        def _pow(t: float) -> float:
            base = g(t)
            # math.pow(nan, 0) would silently absorb a NaN produced upstream
            if base != base:
                raise EvalDomainError("NaN reached a power")
            return math.pow(base, e(t))

        return _pow
    if isinstance(node, Call1):
        g = compile_ast(node.arg)
        fn = {"ln": math.log, "exp": math.exp, "abs": abs}[node.name]
        return lambda t: fn(g(t))
    if isinstance(node, Call2):
        g = compile_ast(node.left)
        h = compile_ast(node.right)
        pick = min if node.name == "min" else max

        def _sel(t: float) -> float:
            u, v = g(t), h(t)
            # Python's min/max can silently drop a NaN operand
            if u != u or v != v:
                raise EvalDomainError("NaN reached min/max")
            return pick(u, v)

        return _sel
    raise TypeError(f"unknown node {node!r}")


@dataclass(frozen=True)
class FunctionSpec:
    """A parsed function of one real variable.

    Immutable after construction, hence safe to share between concurrent
    workers.  Instances are callable.
    """

    source: str
    ast: Node
    domain: Optional[Tuple[float, float]] = None
    _compiled: Callable[[float], float] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_compiled", compile_ast(self.ast))

    def __call__(self, t: float) -> float:
        return evaluate(self, t)


@dataclass(frozen=True, slots=True)
class EvalPoint:
    """An abscissa together with the finite value a function took there."""

    t: float
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite value {self.value!r} at t={self.t!r}")


def parse(text: str, domain: Optional[Tuple[float, float]] = None) -> FunctionSpec:
    """Parse ``text`` into a :class:`FunctionSpec`.

    Raises :class:`ParseError` with a byte offset on syntax errors, unknown
    identifiers, arity mismatches and non-constant power exponents.
    """
    ast = _Parser(text).parse()
    return FunctionSpec(source=text, ast=ast, domain=domain)


def evaluate(spec: FunctionSpec, t: float) -> float:
    """Evaluate ``spec`` at ``t``; returns a finite float or raises
    :class:`EvalDomainError` (NaN propagation is forbidden)."""
    if spec.domain is not None:
        lo, hi = spec.domain
        if not lo <= t <= hi:
            raise EvalDomainError(f"t={t!r} outside declared domain [{lo!r}, {hi!r}]")
    try:
        value = spec._compiled(t)
    except EvalDomainError:
        raise
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise EvalDomainError(f"evaluation failed at t={t!r}: {exc}") from None
    if not math.isfinite(value):
        raise EvalDomainError(f"evaluation at t={t!r} left the finite reals")
    return value


def compose(outer: Callable[[float], float], inner: Callable[[float], float]) -> Callable[[float], float]:
    """Pointwise composition ``t -> outer(inner(t))``; errors propagate."""

    def composed(t: float) -> float:
        return outer(inner(t))

    return composed


def tabulate(f: Callable[[float], float], ts: Sequence[float]) -> tuple[EvalPoint, ...]:
    """Evaluate ``f`` on ``ts``, returning finite sample points."""
    return tuple(EvalPoint(t, f(t)) for t in ts)
