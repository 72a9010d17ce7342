"""GOL-IO: the guarded, edited step relation and bounded runs.

A modifier wraps one generation with guard rails (``area``), assertions on
the stepped state, and edits (insertions/deletions).  Matching inputs and
outputs cancel: when the assertions equal the insertions and the deletion
region equals the assertion region, io_step degenerates to plain step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import EMPTY, WorldState, step
from .errors import AssertionFailure, BoundaryEscape


class _Unbounded:
    def __contains__(self, cell):
        return True

    def __repr__(self):
        return "UNBOUNDED"


UNBOUNDED = _Unbounded()


class RectUnion:
    """Union of half-open rectangles (x0, y0, x1, y1); fast point queries."""

    __slots__ = ("rects",)

    def __init__(self, rects):
        self.rects = tuple(rects)

    def __contains__(self, cell):
        x, y = cell
        for x0, y0, x1, y1 in self.rects:
            if x0 <= x < x1 and y0 <= y < y1:
                return True
        return False

    def __repr__(self):
        return f"RectUnion({list(self.rects)!r})"


def area_escape_witness(area, state: WorldState):
    """First cell of infl(state) outside ``area``, or None when contained."""
    if area is UNBOUNDED:
        return None
    for x, y in state:
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                c = (x + dx, y + dy)
                if c not in area:
                    return c
    return None


@dataclass(frozen=True)
class Modifier:
    """Per-step IO environment."""

    area: object = UNBOUNDED
    insertions: WorldState = EMPTY
    deletions: frozenset = frozenset()
    assert_area: frozenset = frozenset()
    assert_content: WorldState = EMPTY

    def __post_init__(self):
        if not self.assert_content <= self.assert_area:
            raise ValueError("assert_content must be contained in assert_area")


TRIVIAL_MODIFIER = Modifier()


def io_step(c: Modifier, s1: WorldState) -> WorldState:
    """One modified generation; raises on guard or assertion violation."""
    witness = area_escape_witness(c.area, s1)
    if witness is not None:
        raise BoundaryEscape(witness)
    s2 = step(s1)
    if c.assert_area:
        got = s2 & c.assert_area
        if got != c.assert_content:
            raise AssertionFailure(got ^ c.assert_content)
    if c.deletions:
        s2 = s2 - c.deletions
    if c.insertions:
        s2 = s2 | c.insertions
    return s2


@dataclass(frozen=True)
class ModifierSequence:
    """Eventually periodic infinite sequence of modifiers."""

    prefix: tuple = ()
    cycle: tuple = (TRIVIAL_MODIFIER,)

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    def at(self, n: int) -> Modifier:
        if n < len(self.prefix):
            return self.prefix[n]
        return self.cycle[(n - len(self.prefix)) % len(self.cycle)]


TRIVIAL_SEQUENCE = ModifierSequence()


def io_steps(k: int, cs: ModifierSequence, n: int, state: WorldState) -> WorldState:
    """k io_steps using the modifiers at indices n, n+1, ..., n+k-1."""
    for i in range(k):
        try:
            state = io_step(cs.at(n + i), state)
        except (BoundaryEscape, AssertionFailure) as err:
            err.index = n + i
            raise
    return state


@dataclass(frozen=True)
class RunVerdict:
    ok: bool
    final: WorldState = EMPTY
    failure: Exception = None
    index: int = None

    def __bool__(self):
        return self.ok


def run_bounded(cs: ModifierSequence, state: WorldState, horizon: int) -> RunVerdict:
    """Check that the run survives ``horizon`` io_steps from index 0."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    try:
        final = io_steps(horizon, cs, 0, state)
    except (BoundaryEscape, AssertionFailure) as err:
        return RunVerdict(False, failure=err, index=err.index)
    return RunVerdict(True, final=final)


def cancel_check(c: Modifier) -> bool:
    """True iff the modifier's inputs and outputs cancel out."""
    return c.assert_content == c.insertions and c.assert_area == c.deletions
