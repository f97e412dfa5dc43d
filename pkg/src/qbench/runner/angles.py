"""Arithmetic angle expressions (numbers, ``pi``, + - * /, parentheses) and uniform grids."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import pi

_TOKEN = re.compile(rb"\s*(?:(\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|(pi)\b|([-+*/()]))")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class DivisionByZero(ZeroDivisionError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.src = text.encode()
        self.tokens: list[tuple[str, object, int]] = []
        pos = 0
        while pos < len(self.src):
            if self.src[pos:].strip() == b"":
                break
            m = _TOKEN.match(self.src, pos)
            if not m:
                start = pos + len(self.src[pos:]) - len(self.src[pos:].lstrip())
                raise ParseError("unexpected character", start)
            at = m.start(m.lastindex)
            if m.group(1):
                self.tokens.append(("num", float(m.group(1)), at))
            elif m.group(2):
                self.tokens.append(("num", pi, at))
            else:
                self.tokens.append((m.group(3).decode(), None, at))
            pos = m.end()
        self.tokens.append(("end", None, len(self.src)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self) -> float:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, at = self.take()
            rhs = self.factor()
            if op == "*":
                value *= rhs
            elif rhs == 0:
                raise DivisionByZero(f"division by zero at byte {at}")
            else:
                value /= rhs
        return value

    def factor(self) -> float:
        kind, val, at = self.take()
        if kind == "num":
            return val
        if kind == "-":
            return -self.factor()
        if kind == "(":
            value = self.expr()
            if self.peek()[0] != ")":
                raise ParseError("expected ')'", self.peek()[2])
            self.take()
            return value
        raise ParseError("expected a number, 'pi' or '('", at)


def parse_angle_expr(text) -> float:
    """Evaluate an angle expression in radians. Plain numbers pass straight through."""
    if isinstance(text, bool):
        raise ParseError("expected an expression", 0)
    if isinstance(text, (int, float)):
        return float(text)
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty expression", 0)
    p = _Parser(text)
    value = p.expr()
    if p.peek()[0] != "end":
        raise ParseError("unexpected trailing input", p.peek()[2])
    return float(value)


@dataclass(frozen=True)
class AngleRange:
    """Expressions are kept for display; equality uses the evaluated endpoints."""

    start_expr: str = field(compare=False)
    stop_expr: str = field(compare=False)
    num_steps: int
    start: float = field(init=False)
    stop: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "start", parse_angle_expr(self.start_expr))
        object.__setattr__(self, "stop", parse_angle_expr(self.stop_expr))
        if isinstance(self.num_steps, bool) or not isinstance(self.num_steps, int) or self.num_steps < 2:
            raise ValueError("num_steps must be an integer >= 2")
        if self.start > self.stop:
            raise ValueError("angle range start exceeds stop")


def angle_grid(r: AngleRange) -> list[float]:
    """Uniform grid including both endpoints, which are reproduced bitwise."""
    n = r.num_steps
    step = (r.stop - r.start) / (n - 1)
    grid = [r.start + k * step for k in range(n)]
    grid[-1] = r.stop
    return grid
