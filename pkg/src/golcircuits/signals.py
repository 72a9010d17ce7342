"""Delayed boolean signal expressions carried by circuit ports.

Normal form keeps all delays pushed onto the input leaves, so two
expressions denote the same signal iff they are structurally equal for a
fixed leaf order.  ``(a^[n])_t = t >= n and a_{t-n}``; boolean operators act
pointwise per tick.

Text grammar (used by gate manifest files): names are words, operators are
``!`` (not), ``&`` (and), ``^`` (xor), ``|`` (or) in decreasing precedence,
``@n`` delays the preceding atom or parenthesized group by n ticks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class SigInput:
    name: str
    delay: int = 0

    def __post_init__(self):
        if self.delay < 0:
            raise ValueError("signal delay must be a natural number")


@dataclass(frozen=True)
class SigNot:
    e: "SignalExpr"


@dataclass(frozen=True)
class SigAnd:
    a: "SignalExpr"
    b: "SignalExpr"


@dataclass(frozen=True)
class SigOr:
    a: "SignalExpr"
    b: "SignalExpr"


@dataclass(frozen=True)
class SigXor:
    a: "SignalExpr"
    b: "SignalExpr"


SignalExpr = object


def sig(name: str) -> SigInput:
    return SigInput(name, 0)


def sig_delay(e: SignalExpr, n: int) -> SignalExpr:
    """Delay by n ticks, distributing onto the leaves (normal form)."""
    if n == 0:
        return e
    if isinstance(e, SigInput):
        return SigInput(e.name, e.delay + n)
    if isinstance(e, SigNot):
        return SigNot(sig_delay(e.e, n))
    if isinstance(e, SigAnd):
        return SigAnd(sig_delay(e.a, n), sig_delay(e.b, n))
    if isinstance(e, SigOr):
        return SigOr(sig_delay(e.a, n), sig_delay(e.b, n))
    if isinstance(e, SigXor):
        return SigXor(sig_delay(e.a, n), sig_delay(e.b, n))
    raise TypeError(f"not a signal expression: {e!r}")


def sig_substitute(e: SignalExpr, binding: dict) -> SignalExpr:
    """Replace input leaves per ``binding`` and renormalize delays."""
    if isinstance(e, SigInput):
        if e.name in binding:
            return sig_delay(binding[e.name], e.delay)
        return e
    if isinstance(e, SigNot):
        return SigNot(sig_substitute(e.e, binding))
    if isinstance(e, SigAnd):
        return SigAnd(sig_substitute(e.a, binding), sig_substitute(e.b, binding))
    if isinstance(e, SigOr):
        return SigOr(sig_substitute(e.a, binding), sig_substitute(e.b, binding))
    if isinstance(e, SigXor):
        return SigXor(sig_substitute(e.a, binding), sig_substitute(e.b, binding))
    raise TypeError(f"not a signal expression: {e!r}")


def sig_inputs(e: SignalExpr) -> frozenset:
    if isinstance(e, SigInput):
        return frozenset({e.name})
    if isinstance(e, SigNot):
        return sig_inputs(e.e)
    if isinstance(e, (SigAnd, SigOr, SigXor)):
        return sig_inputs(e.a) | sig_inputs(e.b)
    raise TypeError(f"not a signal expression: {e!r}")


def stream_bit(stream, t: int) -> bool:
    """Streams are finite bool lists extended with false."""
    if t < 0:
        return False
    if t < len(stream):
        return bool(stream[t])
    return False


def sig_eval(e: SignalExpr, env: dict, t: int) -> bool:
    """Value of the signal at tick t, given named streams."""
    if isinstance(e, SigInput):
        if t < e.delay:
            return False
        return stream_bit(env[e.name], t - e.delay)
    if isinstance(e, SigNot):
        return not sig_eval(e.e, env, t)
    if isinstance(e, SigAnd):
        return sig_eval(e.a, env, t) and sig_eval(e.b, env, t)
    if isinstance(e, SigOr):
        return sig_eval(e.a, env, t) or sig_eval(e.b, env, t)
    if isinstance(e, SigXor):
        return sig_eval(e.a, env, t) != sig_eval(e.b, env, t)
    raise TypeError(f"not a signal expression: {e!r}")


# precedence levels for printing: | = 0, ^ = 1, & = 2, ! and atoms = 3
def sig_text(e: SignalExpr, _level: int = 0) -> str:
    if isinstance(e, SigInput):
        return f"{e.name}@{e.delay}" if e.delay else e.name
    if isinstance(e, SigNot):
        return "!" + sig_text(e.e, 3)
    if isinstance(e, SigAnd):
        s = f"{sig_text(e.a, 2)} & {sig_text(e.b, 2)}"
        return f"({s})" if _level > 2 else s
    if isinstance(e, SigXor):
        s = f"{sig_text(e.a, 1)} ^ {sig_text(e.b, 1)}"
        return f"({s})" if _level > 1 else s
    if isinstance(e, SigOr):
        s = f"{sig_text(e.a, 0)} | {sig_text(e.b, 0)}"
        return f"({s})" if _level > 0 else s
    raise TypeError(f"not a signal expression: {e!r}")


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|@-?\d+|[()!&^|])")


class _SigParser:
    def __init__(self, text):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ValueError(f"bad signal syntax near {text[pos:]!r}")
                break
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        e = self.parse_or()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens in signal: {self.tokens[self.i:]}")
        return e

    def parse_or(self):
        e = self.parse_xor()
        while self.peek() == "|":
            self.take()
            e = SigOr(e, self.parse_xor())
        return e

    def parse_xor(self):
        e = self.parse_and()
        while self.peek() == "^":
            self.take()
            e = SigXor(e, self.parse_and())
        return e

    def parse_and(self):
        e = self.parse_unary()
        while self.peek() == "&":
            self.take()
            e = SigAnd(e, self.parse_unary())
        return e

    def parse_unary(self):
        if self.peek() == "!":
            self.take()
            return SigNot(self.parse_unary())
        return self.parse_primary()

    def parse_primary(self):
        tok = self.take()
        if tok == "(":
            e = self.parse_or()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses in signal")
        elif tok is not None and re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
            e = sig(tok)
        else:
            raise ValueError(f"unexpected token {tok!r} in signal")
        while self.peek() is not None and self.peek().startswith("@"):
            n = int(self.take()[1:])
            e = sig_delay(e, n)
        return e


def parse_sig(text: str) -> SignalExpr:
    return _SigParser(text).parse()
