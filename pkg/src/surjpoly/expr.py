"""Concrete syntax for polynomials and algebra elements.

Grammar (whitespace is ignored)::

    expr   := ('+' | '-')? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := rational | ident | '[' expr ',' expr ']' ('_' nat)? | '(' expr ')'

Rationals are written ``p`` or ``p/q``.  ``[a, b]_k`` is the iterated
bracket ``[a, [a, ..., [a, b]]]`` with k copies of a (``_0`` gives b, no
subscript means one bracket).  Which identifiers exist depends on the
context the text is interpreted in: ``X1 .. Xn, U, V`` for partially
commutative polynomials, ``v, w`` for the Weyl algebra, ``v`` for shift
operators.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Union


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at position {pos})")


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, "Node"], ...]  # (sign, node)


@dataclass(frozen=True)
class Prod:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"
    depth: int = 1


Node = Union[Num, Var, Sum, Prod, Pow, Bracket]


# --- tokenizer -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^_,\[\]()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.tokens[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def nat(self) -> int:
        tok = self.take(kind="num")
        if "/" in tok[1]:
            raise ParseError("expected a natural number", tok[2])
        return int(tok[1])

    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        terms.append((sign, self.term()))
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.peek()[1] == "*" and self.peek()[0] == "op":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            return Pow(base, self.nat())
        return base

    def atom(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return Num(Fraction(val))
        if kind == "ident":
            self.take()
            return Var(val, pos)
        if val == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if val == "[":
            self.take()
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            depth = 1
            if self.peek()[1] == "_" and self.peek()[0] == "op":
                self.take()
                depth = self.nat()
            return Bracket(left, right, depth)
        got = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {got}", pos)


def parse(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    p.take(kind="end")
    return node


# --- interpretation --------------------------------------------------------

@dataclass(frozen=True)
class Context:
    """How to turn names and numbers into ring elements."""

    lookup: Callable[[str, int], Any]
    const: Callable[[Fraction], Any]


def interpret(node: Node, ctx: Context):
    if isinstance(node, Num):
        return ctx.const(node.value)
    if isinstance(node, Var):
        return ctx.lookup(node.name, node.pos)
    if isinstance(node, Sum):
        out = None
        for sign, t in node.terms:
            val = interpret(t, ctx)
            if sign < 0:
                val = -val
            out = val if out is None else out + val
        return out
    if isinstance(node, Prod):
        out = interpret(node.factors[0], ctx)
        for f in node.factors[1:]:
            out = out * interpret(f, ctx)
        return out
    if isinstance(node, Pow):
        base = interpret(node.base, ctx)
        out = ctx.const(Fraction(1))
        for _ in range(node.exp):
            out = out * base
        return out
    if isinstance(node, Bracket):
        a = interpret(node.left, ctx)
        out = interpret(node.right, ctx)
        for _ in range(node.depth):
            out = a * out - out * a
        return out
    raise TypeError(f"not an expression node: {node!r}")


_XVAR = re.compile(r"X([1-9][0-9]*)$")


def max_variable(node: Node) -> int:
    """Largest j with X<j> occurring in the expression (0 if none)."""
    if isinstance(node, Var):
        m = _XVAR.match(node.name)
        return int(m.group(1)) if m else 0
    if isinstance(node, Sum):
        return max(max_variable(t) for _, t in node.terms)
    if isinstance(node, Prod):
        return max(max_variable(f) for f in node.factors)
    if isinstance(node, Pow):
        return max_variable(node.base)
    if isinstance(node, Bracket):
        return max(max_variable(node.left), max_variable(node.right))
    return 0


def pc_context(n: int) -> Context:
    from surjpoly.pcpoly import PCPoly

    def lookup(name, pos):
        if name == "U":
            return PCPoly.U(n)
        if name == "V":
            return PCPoly.V(n)
        m = _XVAR.match(name)
        if m:
            j = int(m.group(1))
            if j > n:
                raise ParseError(f"variable {name} out of range for n={n}", pos)
            return PCPoly.x(j, n)
        raise ParseError(f"unknown identifier {name!r}; expected X<j>, U or V", pos)

    return Context(lookup, lambda c: PCPoly.const(c, n))


def parse_pc(text: str, n: int | None = None):
    """Parse into a :class:`PCPoly`; n defaults to the largest variable index used."""
    node = parse(text)
    if n is None:
        n = max(max_variable(node), 1)
    return interpret(node, pc_context(n))


def algebra_context(alg) -> Context:
    names = {"v": lambda: alg.v}
    if getattr(alg, "name", "") == "weyl":
        names["w"] = lambda: alg.w

    def lookup(name, pos):
        if name not in names:
            raise ParseError(f"unknown identifier {name!r} for the {alg.name} backend; "
                             f"expected one of {sorted(names)}", pos)
        return names[name]()

    return Context(lookup, alg.scalar)


def parse_element(text: str, alg):
    """Parse an element of ``alg``.

    For a product algebra, ``;`` separates per-component expressions; a
    single expression is used in every component.
    """
    from surjpoly.backends.product import ProductAlgebra, ProductElement

    if isinstance(alg, ProductAlgebra):
        parts = text.split(";")
        if len(parts) == 1:
            parts = parts * len(alg.components)
        if len(parts) != len(alg.components):
            raise ParseError(f"expected {len(alg.components)} components, got {len(parts)}")
        return ProductElement(parse_element(p, c) for p, c in zip(parts, alg.components))
    return interpret(parse(text), algebra_context(alg))


def parse_weyl(text: str):
    from surjpoly.backends.weyl import WeylAlgebra

    return parse_element(text, WeylAlgebra())
