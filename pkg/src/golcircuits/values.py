"""Approximate/exact signal values: the wire annotations of the assembler.

An approximate value ``A@n`` says the stream holds the boolean combination
A of nearby mega-cell states from tick n onward (anything before).  Exact
values describe the clock and latch streams on a bidirectional time axis:
``ck`` pulses for the first 22 ticks of every 586-tick period, ``this``
holds the current mega-cell state for one period, then the next, and so on.
``top`` is the failure value satisfied by every stream.

The three latch combination rules and their guards are the heart of the
module; the guards are pinned by regression tests.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import GolError

PULSE_WIDTH = 22
PERIOD = 586
CK_LATCH_BOUND = -22

# ---------------------------------------------------------------------------
# avalue: hash-consed boolean combinations of cell(dx, dy) atoms


class AValue:
    __slots__ = ("kind", "a", "b", "offset", "serial")

    def __init__(self, kind, a=None, b=None, offset=None, serial=0):
        self.kind = kind
        self.a = a
        self.b = b
        self.offset = offset
        self.serial = serial

    def __repr__(self):
        return avalue_text(self)


_intern: dict = {}
_serial = [0]


def _mk(key, *args, **kw):
    node = _intern.get(key)
    if node is None:
        _serial[0] += 1
        node = AValue(*args, serial=_serial[0], **kw)
        _intern[key] = node
    return node


def cell(dx: int, dy: int) -> AValue:
    return _mk(("C", dx, dy), "C", offset=(dx, dy))


def a_not(x: AValue) -> AValue:
    return _mk(("N", id(x)), "N", a=x)


def a_and(x: AValue, y: AValue) -> AValue:
    return _mk(("A", id(x), id(y)), "A", a=x, b=y)


def a_or(x: AValue, y: AValue) -> AValue:
    return _mk(("O", id(x), id(y)), "O", a=x, b=y)


def a_xor(x: AValue, y: AValue) -> AValue:
    return _mk(("X", id(x), id(y)), "X", a=x, b=y)


def avalue_atoms(a: AValue) -> frozenset:
    if a.kind == "C":
        return frozenset({a.offset})
    if a.kind == "N":
        return avalue_atoms(a.a)
    return avalue_atoms(a.a) | avalue_atoms(a.b)


def avalue_eval(a: AValue, atom) -> bool:
    """Evaluate with ``atom`` mapping (dx, dy) offsets to booleans."""
    if a.kind == "C":
        return bool(atom(a.offset))
    if a.kind == "N":
        return not avalue_eval(a.a, atom)
    if a.kind == "A":
        return avalue_eval(a.a, atom) and avalue_eval(a.b, atom)
    if a.kind == "O":
        return avalue_eval(a.a, atom) or avalue_eval(a.b, atom)
    return avalue_eval(a.a, atom) != avalue_eval(a.b, atom)


def avalue_equiv(a1: AValue, a2: AValue, atom_cap: int = 12) -> bool:
    if a1 is a2:
        return True
    atoms = sorted(avalue_atoms(a1) | avalue_atoms(a2))
    if len(atoms) > atom_cap:
        raise GolError(f"avalue equivalence check over {len(atoms)} atoms refused")
    for bits in range(1 << len(atoms)):
        env = {at: bool(bits >> i & 1) for i, at in enumerate(atoms)}
        if avalue_eval(a1, env.__getitem__) != avalue_eval(a2, env.__getitem__):
            return False
    return True


def avalue_translate(a: AValue, z) -> AValue:
    zx, zy = z
    if zx == 0 and zy == 0:
        return a
    if a.kind == "C":
        dx, dy = a.offset
        return cell(dx + zx, dy + zy)
    if a.kind == "N":
        return a_not(avalue_translate(a.a, z))
    ctor = {"A": a_and, "O": a_or, "X": a_xor}[a.kind]
    return ctor(avalue_translate(a.a, z), avalue_translate(a.b, z))


# ---------------------------------------------------------------------------
# values

CK = "ck"
NOTCK = "!ck"
THIS = "this"
THIS_AND_CK = "this&ck"
THIS_AND_NOTCK = "this&!ck"

EVALUES = (CK, NOTCK, THIS, THIS_AND_CK, THIS_AND_NOTCK)


@dataclass(frozen=True)
class Approx:
    a: AValue
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("approximate delay must be a natural number")

    def __repr__(self):
        return value_text(self)


@dataclass(frozen=True)
class Exact:
    e: str
    n: int

    def __post_init__(self):
        if self.e not in EVALUES:
            raise ValueError(f"unknown exact value form {self.e!r}")

    def __repr__(self):
        return value_text(self)


class _Top:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "top"


TOP = _Top()


def is_exact(v) -> bool:
    return isinstance(v, Exact)


def v_not(v):
    if v is TOP:
        return TOP
    if isinstance(v, Approx):
        return Approx(a_not(v.a), v.n)
    if v.e == CK:
        return Exact(NOTCK, v.n)
    if v.e == NOTCK:
        return Exact(CK, v.n)
    return TOP  # no evalue represents the negations of this-forms


def v_and(v1, v2):
    if isinstance(v1, Approx) and isinstance(v2, Approx):
        return Approx(a_and(v1.a, v2.a), max(v1.n, v2.n))
    # latch rule: this@m & !ck@n = this&!ck@n  when n <= m <= n + 22
    for x, y in ((v1, v2), (v2, v1)):
        if isinstance(x, Exact) and x.e == THIS and isinstance(y, Exact) and y.e == NOTCK:
            if y.n <= x.n <= y.n + PULSE_WIDTH:
                return Exact(THIS_AND_NOTCK, y.n)
    # latch rule: ck@m & v@n = this&ck@m  when n <= m + 586, m <= -22, v = nextCell
    for x, y in ((v1, v2), (v2, v1)):
        if isinstance(x, Exact) and x.e == CK and isinstance(y, Approx):
            if (
                y.n <= x.n + PERIOD
                and x.n <= CK_LATCH_BOUND
                and y.a is next_cell_formula()
            ):
                return Exact(THIS_AND_CK, x.n)
    return TOP


def v_or(v1, v2):
    if isinstance(v1, Approx) and isinstance(v2, Approx):
        return Approx(a_or(v1.a, v2.a), max(v1.n, v2.n))
    # latch rule: this&ck@n | this&!ck@n = this@n
    for x, y in ((v1, v2), (v2, v1)):
        if (
            isinstance(x, Exact)
            and x.e == THIS_AND_CK
            and isinstance(y, Exact)
            and y.e == THIS_AND_NOTCK
            and x.n == y.n
        ):
            return Exact(THIS, x.n)
    return TOP


def v_xor(v1, v2):
    if isinstance(v1, Approx) and isinstance(v2, Approx):
        return Approx(a_xor(v1.a, v2.a), max(v1.n, v2.n))
    return TOP


def v_delay(v, k: int):
    if v is TOP:
        return TOP
    if isinstance(v, Approx):
        if v.n + k < 0:
            raise GolError(f"approximate delay {v.n}+{k} would go negative")
        return Approx(v.a, v.n + k)
    return Exact(v.e, v.n + k)


def decay(v, n: int):
    """this@m refines cell(0,0)@n whenever 0 <= m <= n."""
    if not (isinstance(v, Exact) and v.e == THIS):
        raise GolError(f"decay applies to exact this values, not {v!r}")
    if not (0 <= v.n <= n):
        raise GolError(f"decay guard violated: need 0 <= {v.n} <= {n}")
    return Approx(cell(0, 0), n)


def translate_value(v, z):
    zx, zy = z
    if zx == 0 and zy == 0:
        return v
    if v is TOP:
        return TOP
    if isinstance(v, Approx):
        return Approx(avalue_translate(v.a, z), v.n)
    return TOP  # translation is defined only for cell formulas


def values_equal(v1, v2) -> bool:
    """Structural equality; clock delays compare modulo the 586-tick period."""
    if v1 is TOP or v2 is TOP:
        return v1 is v2
    if isinstance(v1, Approx) and isinstance(v2, Approx):
        return v1.a is v2.a and v1.n == v2.n
    if isinstance(v1, Exact) and isinstance(v2, Exact):
        if v1.e != v2.e:
            return False
        if v1.e in (CK, NOTCK):
            return (v1.n - v2.n) % PERIOD == 0
        return v1.n == v2.n
    return False


def refines(v1, v2) -> bool:
    """Sufficient syntactic check that every stream matching v1 matches v2."""
    if v2 is TOP:
        return True
    if v1 is TOP:
        return False
    if isinstance(v1, Approx) and isinstance(v2, Approx):
        return v1.n <= v2.n and avalue_equiv(v1.a, v2.a)
    if isinstance(v1, Exact) and isinstance(v2, Exact):
        if v1.e != v2.e:
            return False
        if v1.e in (CK, NOTCK):
            return (v1.n - v2.n) % PERIOD == 0
        return v1.n == v2.n
    if isinstance(v1, Exact) and v1.e == THIS and isinstance(v2, Approx):
        if v2.a is cell(0, 0):
            return 0 <= v1.n <= v2.n
    return False


# ---------------------------------------------------------------------------
# denotation over finite windows


class MegaTrace:
    """Ambient mega simulation: (z, generation) -> bool over a finite horizon."""

    def __init__(self, fn, horizon: int):
        self.fn = fn
        self.horizon = horizon

    def __call__(self, z, gen: int) -> bool:
        if not (0 <= gen <= self.horizon):
            raise GolError(f"mega trace generation {gen} outside horizon {self.horizon}")
        return bool(self.fn(z, gen))


class SampledStream:
    """Per-mega-cell boolean streams over a finite tick window."""

    def __init__(self, fn, zs, window):
        self.fn = fn
        self.zs = tuple(zs)
        self.window = window  # (t0, t1) half open

    def __call__(self, z, t: int) -> bool:
        t0, t1 = self.window
        if not (t0 <= t < t1):
            raise GolError(f"stream tick {t} outside window {self.window}")
        return bool(self.fn(z, t))


def ck_stream(u: int) -> bool:
    """The clock: 1 on ticks [0, 22) of each 586-tick period (periodic in Z)."""
    return (u % PERIOD) < PULSE_WIDTH


def this_stream(u: int, z, trace: MegaTrace) -> bool:
    """Current mega-cell value for one period, then the next, clamped below 0."""
    return trace(z, max(0, u // PERIOD))


def exact_stream(e: str, u: int, z, trace: MegaTrace) -> bool:
    if e == CK:
        return ck_stream(u)
    if e == NOTCK:
        return not ck_stream(u)
    if e == THIS:
        return this_stream(u, z, trace)
    if e == THIS_AND_CK:
        return this_stream(u, z, trace) and ck_stream(u)
    return this_stream(u, z, trace) and not ck_stream(u)


def gen_of_tick(t: int) -> int:
    return t // PERIOD


def approx_bit(a: AValue, n: int, z, t: int, trace: MegaTrace) -> bool:
    g = gen_of_tick(t)
    return avalue_eval(a, lambda off: trace((z[0] + off[0], z[1] + off[1]), g))


def denotes(s: SampledStream, v, trace: MegaTrace) -> bool:
    """Membership of the sampled stream in the value's denotation (windowed)."""
    t0, t1 = s.window
    if v is TOP:
        return True
    if isinstance(v, Approx):
        for z in s.zs:
            for t in range(max(t0, v.n), t1):
                if s(z, t) != approx_bit(v.a, v.n, z, t, trace):
                    return False
        return True
    if isinstance(v, Exact):
        for z in s.zs:
            for t in range(t0, t1):
                if s(z, t) != exact_stream(v.e, t - v.n, z, trace):
                    return False
        return True
    raise TypeError(f"not a value: {v!r}")


def stream_of_value(v, trace: MegaTrace, zs, window) -> SampledStream:
    """The canonical stream inhabiting a value's denotation (false for top)."""
    if v is TOP:
        return SampledStream(lambda z, t: False, zs, window)
    if isinstance(v, Approx):
        return SampledStream(
            lambda z, t: approx_bit(v.a, v.n, z, t, trace), zs, window
        )
    return SampledStream(
        lambda z, t: exact_stream(v.e, t - v.n, z, trace), zs, window
    )


# ---------------------------------------------------------------------------
# the step formula computed by the mega-cell

ATOM_ORDER = (
    (-1, -1), (0, -1), (1, -1),
    (-1, 0), (1, 0),
    (-1, 1), (0, 1), (1, 1),
)

_next_cell = [None]


def half_add(x: AValue, y: AValue):
    return a_xor(x, y), a_and(x, y)


def exactly_one(bits):
    """any & !two_or_more, built as a left-to-right running chain."""
    any_ = bits[0]
    two = None
    for x in bits[1:]:
        pair = a_and(any_, x)
        two = pair if two is None else a_or(two, pair)
        any_ = a_or(any_, x)
    return a_and(any_, a_not(two))


def next_cell_formula() -> AValue:
    """B3/S23 over the nine cell atoms, shaped like the adder-tree circuit.

    Summing the eight neighbor bits with a half-adder tree leaves one
    weight-1 bit and seven weight-2 bits; the count is 2 or 3 exactly when
    one weight-2 bit is set, and the parity bit distinguishes 3 from 2.
    """
    if _next_cell[0] is None:
        n = [cell(dx, dy) for dx, dy in ATOM_ORDER]
        c = cell(0, 0)
        s_a, c_a = half_add(n[0], n[1])
        s_b, c_b = half_add(n[2], n[3])
        s_c, c_c = half_add(n[4], n[5])
        s_d, c_d = half_add(n[6], n[7])
        s_e, c_e = half_add(s_a, s_b)
        s_f, c_f = half_add(s_c, s_d)
        s0, c_g = half_add(s_e, s_f)
        one_pair = exactly_one([c_a, c_b, c_c, c_d, c_e, c_f, c_g])
        _next_cell[0] = a_and(one_pair, a_or(s0, c))
    return _next_cell[0]


def check_next_cell_equals_step(formula: AValue = None):
    """Compare the formula with the GOL rule on all 512 neighborhoods.

    Returns None when they agree everywhere, else the first counterexample
    as a dict mapping atom offsets to booleans.
    """
    from .core import step, world

    if formula is None:
        formula = next_cell_formula()
    offsets = ((0, 0),) + ATOM_ORDER
    for bits in range(512):
        env = {off: bool(bits >> i & 1) for i, off in enumerate(offsets)}
        got = avalue_eval(formula, env.__getitem__)
        state = world(off for off, b in env.items() if b)
        want = (0, 0) in step(state)
        if got != want:
            return env
    return None


# ---------------------------------------------------------------------------
# textual syntax (floodfill transcripts, seeds)


def avalue_text(a: AValue, _level: int = 0) -> str:
    if a.kind == "C":
        return f"cell({a.offset[0]},{a.offset[1]})"
    if a.kind == "N":
        return "!" + avalue_text(a.a, 3)
    ops = {"A": (" & ", 2), "X": (" ^ ", 1), "O": (" | ", 0)}
    op, level = ops[a.kind]
    s = f"{avalue_text(a.a, level)}{op}{avalue_text(a.b, level)}"
    return f"({s})" if _level > level else s


def value_text(v) -> str:
    if v is TOP:
        return "top"
    if isinstance(v, Approx):
        body = avalue_text(v.a)
        if v.a.kind in ("A", "O", "X"):
            body = f"({body})"
        return f"{body}@{v.n}"
    body = v.e
    if v.e in (THIS_AND_CK, THIS_AND_NOTCK):
        body = f"({v.e})"
    return f"{body}@{v.n}"


_VAL_TOKEN = re.compile(r"\s*(cell\(\s*-?\d+\s*,\s*-?\d+\s*\)|this|!ck|ck|top|@-?\d+|[()!&^|])")


class _ValueParser:
    def __init__(self, text):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _VAL_TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip():
                    raise ValueError(f"bad value syntax near {text[pos:]!r}")
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
        v = self.parse_or()
        if self.peek() is not None:
            raise ValueError(f"trailing value tokens: {self.tokens[self.i:]}")
        return v

    def parse_or(self):
        v = self.parse_xor()
        while self.peek() == "|":
            self.take()
            v = v_or(v, self.parse_xor()) if not _is_sym(v) else _sym_or(v, self.parse_xor())
        return v

    def parse_xor(self):
        v = self.parse_and()
        while self.peek() == "^":
            self.take()
            v = _sym_xor(v, self.parse_and())
        return v

    def parse_and(self):
        v = self.parse_unary()
        while self.peek() == "&":
            self.take()
            v = _sym_and(v, self.parse_unary())
        return v

    def parse_unary(self):
        if self.peek() == "!":
            self.take()
            inner = self.parse_unary()
            return _sym_not(inner)
        return self.parse_primary()

    def parse_primary(self):
        tok = self.take()
        if tok == "(":
            v = self.parse_or()
            if self.take() != ")":
                raise ValueError("unbalanced parentheses in value")
        elif tok == "top":
            return TOP
        elif tok == "this":
            v = Exact(THIS, 0)
        elif tok == "ck":
            v = Exact(CK, 0)
        elif tok == "!ck":
            v = Exact(NOTCK, 0)
        elif tok is not None and tok.startswith("cell("):
            dx, dy = map(int, tok[5:-1].split(","))
            v = Approx(cell(dx, dy), 0)
        else:
            raise ValueError(f"unexpected value token {tok!r}")
        while self.peek() is not None and self.peek().startswith("@"):
            n = int(self.take()[1:])
            v = v_delay(v, n)
        return v


def _is_sym(v):
    return isinstance(v, (Approx, Exact)) or v is TOP


def _sym_and(x, y):
    # syntactic combination used only by the parser: this&ck etc. at delay 0
    if isinstance(x, Exact) and isinstance(y, Exact) and x.n == y.n == 0:
        if x.e == THIS and y.e == CK:
            return Exact(THIS_AND_CK, 0)
        if x.e == THIS and y.e == NOTCK:
            return Exact(THIS_AND_NOTCK, 0)
    if isinstance(x, Approx) and isinstance(y, Approx):
        return Approx(a_and(x.a, y.a), max(x.n, y.n))
    raise ValueError(f"cannot parse conjunction of {x!r} and {y!r}")


def _sym_or(x, y):
    if isinstance(x, Approx) and isinstance(y, Approx):
        return Approx(a_or(x.a, y.a), max(x.n, y.n))
    raise ValueError(f"cannot parse disjunction of {x!r} and {y!r}")


def _sym_xor(x, y):
    if isinstance(x, Approx) and isinstance(y, Approx):
        return Approx(a_xor(x.a, y.a), max(x.n, y.n))
    raise ValueError(f"cannot parse xor of {x!r} and {y!r}")


def _sym_not(v):
    if isinstance(v, Approx) and v.n == 0:
        return Approx(a_not(v.a), 0)
    if isinstance(v, Exact) and v.e == CK and v.n == 0:
        return Exact(NOTCK, 0)
    raise ValueError(f"cannot parse negation of {v!r}")


def parse_value(text: str):
    return _ValueParser(text).parse()
