"""A small expression language over Euler characteristics.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | atom
    atom   := INT | NAME "(" [expr ("," expr)*] ")" | "(" expr ")"

Every expression evaluates to an integer chi. Function arguments that name a
dimension, genus, count or index are integers too, e.g. sphere(2) or cover(2, rp(4)).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Callable

from . import eulercalc as ec
from .errors import InvalidInput, ParseError


logger = logging.getLogger("exotica.chiexpr")

TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*(),]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(source):
        if source[pos:].strip() == "":
            break
        m = TOKEN_RE.match(source, pos)
        if not m:
            raise ParseError(f"unexpected character {source[pos:].lstrip()[:1]!r} at {pos}")
        kind = m.lastgroup or "op"
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


def _need(args: list[int], count: int, name: str) -> None:
    if len(args) != count:
        raise InvalidInput(f"{name}() takes {count} arguments, got {len(args)}", kind="invalid-arguments")


def _fn(count: int, body: Callable[..., int]) -> Callable[[list[int], str], int]:
    def call(args: list[int], name: str) -> int:
        _need(args, count, name)
        return body(*args)

    return call


def _union(args: list[int], name: str) -> int:
    if len(args) < 2:
        raise InvalidInput(f"{name}() takes at least 2 arguments", kind="invalid-arguments")
    total = args[0]
    for value in args[1:]:
        total = ec.chi_combine(ec.DisjointUnion(), [total, value])
    return total


def _product(args: list[int], name: str) -> int:
    if len(args) < 2:
        raise InvalidInput(f"{name}() takes at least 2 arguments", kind="invalid-arguments")
    total = args[0]
    for value in args[1:]:
        total = ec.chi_combine(ec.Product(), [total, value])
    return total


def _betti(args: list[int], name: str) -> int:
    return ec.chi_from_betti(args)


def _handles(args: list[int], name: str) -> int:
    return ec.handle_chi(ec.HandleComplex.of(*args))


FUNCTIONS: dict[str, Callable[[list[int], str], int]] = {
    "point": _fn(0, lambda: ec.point().chi),
    "sphere": _fn(1, lambda n: ec.sphere(n).chi),
    "disk": _fn(1, lambda n: ec.disk(n).chi),
    "torus": _fn(1, lambda n: ec.torus(n).chi),
    "rp": _fn(1, lambda n: ec.real_projective_space(n).chi),
    "klein": _fn(0, lambda: ec.klein_bottle().chi),
    "mobius": _fn(0, lambda: ec.mobius_strip().chi),
    "crosscap": _fn(0, lambda: ec.cross_cap().chi),
    "surface": _fn(1, lambda g: ec.chi_surface(True, g)),
    "nonorientable": _fn(1, lambda k: ec.chi_surface(False, k)),
    "polyhedron": _fn(3, ec.chi_polyhedron),
    "union": _union,
    "product": _product,
    "excision": _fn(3, lambda m, n, i: ec.chi_combine(ec.Excision(), [m, n, i])),
    "cover": _fn(2, lambda k, m: ec.chi_combine(ec.Covering(k), [m])),
    "fibration": _fn(2, lambda f, b: ec.chi_combine(ec.Fibration(), [f, b])),
    "surgery": _fn(2, ec.chi_surgery),
    "connected_sum": _fn(3, ec.chi_connected_sum),
    "betti": _betti,
    "handles": _handles,
}


class _Parser:
    def __init__(self, source: str) -> None:
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, text: str) -> None:
        token = self.advance()
        if token.text != text:
            found = token.text or "end of input"
            raise ParseError(f"expected {text!r} at {token.pos}, found {found!r}")

    def parse(self) -> int:
        value = self.expr()
        if self.current.kind != "end":
            raise ParseError(f"unexpected {self.current.text!r} at {self.current.pos}")
        return value

    def expr(self) -> int:
        value = self.term()
        while self.current.text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> int:
        value = self.unary()
        while self.current.text == "*":
            self.advance()
            value *= self.unary()
        return value

    def unary(self) -> int:
        if self.current.text == "-":
            self.advance()
            return -self.unary()
        return self.atom()

    def atom(self) -> int:
        token = self.advance()
        if token.kind == "int":
            return int(token.text)
        if token.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if token.kind == "name":
            fn = FUNCTIONS.get(token.text)
            if fn is None:
                raise ParseError(f"unknown function {token.text!r}; known: {', '.join(sorted(FUNCTIONS))}")
            self.expect("(")
            args: list[int] = []
            if self.current.text != ")":
                args.append(self.expr())
                while self.current.text == ",":
                    self.advance()
                    args.append(self.expr())
            self.expect(")")
            return fn(args, token.text)
        found = token.text or "end of input"
        raise ParseError(f"unexpected {found!r} at {token.pos}")


def evaluate(source: str) -> int:
    value = _Parser(source).parse()
    logger.debug("chi(%s) = %d", source, value)
    return value
