"""Surface description files.

A file holds one surface::

    # comments start with '#'
    name = ellipsoid
    x = (2*(1 - t^2 - s^2)/(1 + t^2 + s^2), -2*t/(1 + t^2 + s^2), 8*s/(1 + t^2 + s^2))
    mode = general          # optional hints: mode, degree_bound, sample_budget, seed, pn

Expressions use ``+ - * / ^``, integer literals, parentheses and the
variables ``t`` and ``s``.  Multiplication must be written explicitly and
exponents are integers.  The component tuple may span several lines.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .polyalg import MultiPoly, RationalFunction


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass
class _Tok:
    kind: str   # num, name, op, end
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            out.append(_Tok("num", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(_Tok("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(_Tok("end", "", len(text.rstrip()) if text.strip() else 0))
    return out


class _Parser:
    def __init__(self, text: str, variables: Sequence[str], offset: int = 0, full: str | None = None):
        self.text = text
        self.full = full if full is not None else text
        self.offset = offset
        self.toks = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)

    def _where(self, pos: int):
        pos += self.offset
        line = self.full.count("\n", 0, pos) + 1
        col = pos - (self.full.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        if tok.kind == "end":
            msg = f"{msg} at end of input"
        raise ParseError(msg, *self._where(tok.pos))

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, op: str):
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            self.error(f"expected '{op}'" if tok.kind == "end" else f"expected '{op}', found '{tok.text}'")
        return self.take()

    # expr := term (('+'|'-') term)*
    def expr(self) -> RationalFunction:
        val = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    # term := factor (('*'|'/') factor)*
    def term(self) -> RationalFunction:
        val = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.take()
            rhs = self.factor()
            if tok.text == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    self.error("division by zero polynomial", tok)
                val = val / rhs
        return val

    # factor := ('-'|'+') factor | base ('^' integer)?
    def factor(self) -> RationalFunction:
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            val = self.factor()
            return -val if tok.text == "-" else val
        base = self.base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            neg = False
            if self.peek().kind == "op" and self.peek().text == "-":
                self.take()
                neg = True
            e = self.peek()
            if e.kind != "num":
                self.error("expected integer exponent")
            self.take()
            k = int(e.text)
            if neg:
                if base.is_zero():
                    self.error("division by zero polynomial", e)
                return base ** (-k)
            return base ** k
        return base

    def base(self) -> RationalFunction:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return RationalFunction.const(int(tok.text))
        if tok.kind == "name":
            if tok.text not in self.variables:
                self.error(f"unknown identifier '{tok.text}'")
            self.take()
            return RationalFunction(MultiPoly.var(tok.text, self.variables))
        if tok.kind == "op" and tok.text == "(":
            self.take()
            val = self.expr()
            self.expect(")")
            return val
        self.error("expected a number, variable or '('")

    def tuple_(self) -> Tuple[RationalFunction, ...]:
        self.expect("(")
        items = [self.expr()]
        while self.peek().kind == "op" and self.peek().text == ",":
            self.take()
            items.append(self.expr())
        self.expect(")")
        return tuple(items)

    def finish(self):
        if self.peek().kind != "end":
            self.error(f"unexpected '{self.peek().text}'")


def parse_expr(text: str, variables: Sequence[str] = ("t", "s")) -> RationalFunction:
    p = _Parser(text, variables)
    val = p.expr()
    p.finish()
    return val


def parse_tuple(text: str, variables: Sequence[str] = ("t", "s")) -> Tuple[RationalFunction, ...]:
    p = _Parser(text, variables)
    val = p.tuple_()
    p.finish()
    return val


HINT_KEYS = {"mode", "degree_bound", "sample_budget", "seed", "pn"}


@dataclass
class SurfaceFile:
    name: str
    components: Tuple[RationalFunction, RationalFunction, RationalFunction]
    sources: Tuple[str, str, str]
    hints: Dict[str, object] = field(default_factory=dict)

    def surface(self):
        from .diffgeo import SurfaceParam

        return SurfaceParam(*self.components, name=self.name)


def _split_top(text: str) -> List[Tuple[str, int]]:
    # split "a, b, c" at top-level commas, keeping offsets
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def parse_surface(text: str, default_name: str = "surface") -> SurfaceFile:
    """Parse a surface file (see the module docstring)."""
    lines = text.split("\n")
    entries: List[Tuple[str, str, int]] = []   # key, value, value offset
    offset = 0
    pending = None
    for raw in lines:
        line_start = offset
        offset += len(raw) + 1
        body = raw.split("#", 1)[0]
        if pending is not None:
            key, val, voff = pending
            pending = (key, val + "\n" + body, voff)
            if val.count("(") + body.count("(") <= val.count(")") + body.count(")"):
                entries.append(pending)
                pending = None
            continue
        if not body.strip():
            continue
        if "=" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError("expected 'key = value'", text.count("\n", 0, line_start) + 1, col)
        key, val = body.split("=", 1)
        voff = line_start + len(key) + 1
        key = key.strip()
        if val.count("(") > val.count(")"):
            pending = (key, val, voff)
        else:
            entries.append((key, val, voff))
    if pending is not None:
        key, val, voff = pending
        p = _Parser(val, ("t", "s"), voff, text)
        p.tuple_()  # raises with the right position
    name = default_name
    comps = None
    sources = None
    hints: Dict[str, object] = {}
    for key, val, voff in entries:
        if key == "x":
            p = _Parser(val, ("t", "s"), voff, text)
            comps = p.tuple_()
            p.finish()
            if len(comps) != 3:
                tok = p.toks[0]
                raise ParseError(f"expected 3 components, got {len(comps)}", *p._where(tok.pos))
            inner = val.strip()[1:-1]
            sources = tuple(" ".join(s.split()) for s, _ in _split_top(inner))
        elif key == "name":
            name = val.strip()
        elif key in HINT_KEYS:
            v = val.strip()
            if key in {"degree_bound", "sample_budget", "seed"}:
                try:
                    hints[key] = int(v)
                except ValueError:
                    raise ParseError(f"{key} must be an integer", text.count("\n", 0, voff) + 1, 1) from None
            else:
                hints[key] = v
        else:
            raise ParseError(f"unknown key '{key}'", text.count("\n", 0, voff) + 1, 1)
    if comps is None:
        raise ParseError("missing 'x = (...)'", len(lines), 1)
    return SurfaceFile(name=name, components=comps, sources=sources, hints=hints)


def load_surface(path: str) -> SurfaceFile:
    import os

    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    base = os.path.splitext(os.path.basename(path))[0]
    return parse_surface(text, default_name=base)
