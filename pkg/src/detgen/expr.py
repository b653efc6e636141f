"""Group expressions such as ``Z(2)^2 x Z(9)`` or ``(S(3) x Z(2))^2``.

    expr    := term ("x" term)*
    term    := primary ("^" INT)*
    primary := ATOM "(" INT ("," INT)* ")" | "(" expr ")"

``^`` binds tighter than ``x``; products are flat, so ``A x B x C`` is one node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .groups import FiniteGroup, GroupError, construct, direct_product

ARITY = {"Z": 1, "D": 1, "S": 1, "A": 1, "Q": 1, "EA": 2, "U": 2, "ST": 2, "T": 2}


class ExprError(ValueError):
    """Syntax or parameter error at a byte offset of the input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Atom:
    name: str
    params: tuple[int, ...]


@dataclass(frozen=True)
class Power:
    base: "Expr"
    k: int


@dataclass(frozen=True)
class Product:
    items: tuple["Expr", ...]


Expr = Union[Atom, Power, Product]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<atom>EA|ST|[ZDSAQUT])|(?P<op>[x^(),]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                if not text[pos:].strip():
                    break
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ExprError(f"unexpected character {text[start]!r}", self._bytes(start))
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), self._bytes(m.start(kind))))
            pos = m.end()
        self.i = 0

    def _bytes(self, char_pos: int) -> int:
        return len(self.text[:char_pos].encode())

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("end", "", len(self.text.encode()))

    def take(self, kind: str, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or {"int": "an integer", "atom": "a group atom"}.get(kind, kind)
            got = tok[1] or "end of input"
            raise ExprError(f"expected {want}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Expr:
        items = [self.term()]
        while self.peek()[:2] == ("op", "x"):
            self.i += 1
            items.append(self.term())
        return items[0] if len(items) == 1 else Product(tuple(items))

    def term(self) -> Expr:
        node = self.primary()
        while self.peek()[:2] == ("op", "^"):
            self.i += 1
            _, k, off = self.take("int")
            if int(k) < 1:
                raise ExprError("exponent must be positive", off)
            node = Power(node, int(k))
        return node

    def primary(self) -> Expr:
        kind, value, off = self.peek()
        if (kind, value) == ("op", "("):
            self.i += 1
            node = self.expr()
            self.take("op", ")")
            return node
        if kind != "atom":
            raise ExprError(f"expected a group atom, got {value or 'end of input'!r}", off)
        self.i += 1
        self.take("op", "(")
        params = [int(self.take("int")[1])]
        while self.peek()[:2] == ("op", ","):
            self.i += 1
            params.append(int(self.take("int")[1]))
        self.take("op", ")")
        if len(params) != ARITY[value]:
            raise ExprError(f"{value} takes {ARITY[value]} parameter(s)", off)
        if any(p < 1 for p in params):
            raise ExprError(f"{value} parameters must be positive", off)
        return Atom(value, tuple(params))


def parse_group_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    kind, value, off = p.peek()
    if kind != "end":
        raise ExprError(f"unexpected {value!r}", off)
    return node


def print_expr(node: Expr) -> str:
    if isinstance(node, Atom):
        return f"{node.name}({','.join(map(str, node.params))})"
    if isinstance(node, Power):
        inner = print_expr(node.base)
        if not isinstance(node.base, Atom):
            inner = f"({inner})"
        return f"{inner}^{node.k}"
    return " x ".join(f"({print_expr(i)})" if isinstance(i, Product) else print_expr(i)
                      for i in node.items)


def atoms(node: Expr) -> list[Atom]:
    """Direct factors in order, with powers expanded and products flattened."""
    if isinstance(node, Atom):
        return [node]
    if isinstance(node, Power):
        return atoms(node.base) * node.k
    return [a for i in node.items for a in atoms(i)]


def evaluate(node: Expr, cap: int | None = None) -> FiniteGroup:
    factors = atoms(node)
    try:
        built = [construct(a.name, *a.params, cap=cap) for a in factors]
    except GroupError as exc:
        raise GroupError(f"{print_expr(node)}: {exc}") from exc
    if len(built) == 1:
        return built[0]
    return direct_product(built, cap=cap, descriptor=print_expr(node))


def build(text: str, cap: int | None = None) -> FiniteGroup:
    return evaluate(parse_group_expr(text), cap)
