"""Textual syntax for weighted regular expressions.

::

    program  := stmt ((';' | newline) stmt)*
    stmt     := name '=' sum | sum
    sum      := prod ('+' prod)*
    prod     := postfix ('*' postfix)*
    postfix  := atom ('^*')*
    atom     := quoted | number | name | '(' sum ')'

``'c'`` is a symbol, ``'fish'`` a word, ``''`` the empty word.  Numbers are
weights.  Bindings may refer to themselves and to each other in any order;
each binding becomes a deferred node, so ``s = 1 + 'a' * s * 'b'`` works.
The value of a program is its last statement.
"""

from __future__ import annotations

import re
from typing import Optional

from .algebra import NAT, Semiring
from .regexp import Defer, RegExp, Value, single

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<sep>[;\n])
  | (?P<quoted>'(?:[^'\\]|\\.)*'|"(?:[^"\\]|\\.)*")
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<star>\^\*)
  | (?P<op>[+*=()])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"position {pos}: {message}")
        self.pos = pos


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


def _unquote(tok: str) -> str:
    body = tok[1:-1]
    return re.sub(r"\\(.)", r"\1", body)


class _Parser:
    def __init__(self, text: str, ring: Semiring, env: Optional[dict] = None):
        self.toks = tokenize(text)
        self.i = 0
        self.ring = ring
        self.env: dict[str, RegExp] = dict(env or {})

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, text: Optional[str] = None):
        tok = self.peek()
        if tok[0] != kind or (text is not None and tok[1] != text):
            want = text or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.peek()
        return tok[0] == kind and (text is None or tok[1] == text)

    def program(self) -> RegExp:
        # Declare every bound name first so bodies can refer forward.
        toks = self.toks
        for j in range(len(toks) - 1):
            if toks[j][0] == "name" and toks[j + 1][1] == "=":
                name = toks[j][1]
                self.env[name] = Defer(self.ring, name)
        result = None
        while True:
            while self.at("sep"):
                self.i += 1
            if self.at("eof"):
                break
            result = self.stmt()
            if not (self.at("sep") or self.at("eof")):
                tok = self.peek()
                raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        if result is None:
            raise ParseError("empty expression", 0)
        return result

    def stmt(self) -> RegExp:
        if self.at("name") and self.toks[self.i + 1][1] == "=":
            name = self.take("name")[1]
            self.take("op", "=")
            body = self.sum()
            d = self.env[name]
            if isinstance(d, Defer):
                d.define(lambda body=body: body)
            return d
        return self.sum()

    def sum(self) -> RegExp:
        e = self.prod()
        while self.at("op", "+"):
            self.i += 1
            e = e + self.prod()
        return e

    def prod(self) -> RegExp:
        e = self.postfix()
        while self.at("op", "*"):
            self.i += 1
            e = e * self.postfix()
        return e

    def postfix(self) -> RegExp:
        e = self.atom()
        while self.at("star"):
            self.i += 1
            e = e.star()
        return e

    def atom(self) -> RegExp:
        kind, text, pos = self.peek()
        ring = self.ring
        if kind == "quoted":
            self.i += 1
            return single(_unquote(text), ring)
        if kind == "number":
            self.i += 1
            if "." in text:
                if not isinstance(ring.one, float):
                    raise ParseError(f"{ring.name} weights must be whole numbers", pos)
                return Value(ring, float(text))
            return Value(ring, ring.from_int(int(text)))
        if kind == "name":
            self.i += 1
            if text not in self.env:
                raise ParseError(f"unbound name {text!r}", pos)
            return self.env[text]
        if kind == "op" and text == "(":
            self.i += 1
            e = self.sum()
            self.take("op", ")")
            return e
        raise ParseError(f"expected an expression, found {text or 'end of input'!r}", pos)


def parse(text: str, ring: Semiring = NAT, env: Optional[dict] = None) -> RegExp:
    """Parse ``text`` into an expression over ``ring``.

    ``env`` supplies predefined names (for example the fixtures).
    """
    return _Parser(text, ring, env).program()
