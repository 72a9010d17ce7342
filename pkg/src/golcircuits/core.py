"""Sparse Game of Life engine on the unbounded plane.

A world state is a frozenset of live ``(x, y)`` cells with x growing east
and y growing south.  This engine is the reference implementation: it is
deliberately simple and is used as the oracle for the packed backend and
for the symbolic simulator.
"""

from __future__ import annotations

from collections import Counter
from typing import FrozenSet, Iterable, Tuple

Cell = Tuple[int, int]
WorldState = FrozenSet[Cell]

NEIGHBOR_OFFSETS = (
    (-1, -1), (0, -1), (1, -1),
    (-1, 0), (1, 0),
    (-1, 1), (0, 1), (1, 1),
)

EMPTY: WorldState = frozenset()


def world(cells: Iterable[Cell]) -> WorldState:
    """Normalize any iterable of coordinate pairs into a WorldState."""
    return frozenset((int(x), int(y)) for x, y in cells)


def adjacents(cell: Cell) -> WorldState:
    """The 8 cells at Chebyshev distance exactly 1."""
    x, y = cell
    return frozenset((x + dx, y + dy) for dx, dy in NEIGHBOR_OFFSETS)


def live_adj(state: WorldState, cell: Cell) -> int:
    """Number of live neighbours of ``cell`` in ``state``."""
    x, y = cell
    return sum((x + dx, y + dy) in state for dx, dy in NEIGHBOR_OFFSETS)


def step(state: WorldState) -> WorldState:
    """One generation of B3/S23 applied simultaneously everywhere."""
    counts: Counter = Counter()
    for x, y in state:
        for dx, dy in NEIGHBOR_OFFSETS:
            counts[(x + dx, y + dy)] += 1
    return frozenset(
        cell for cell, n in counts.items() if n == 3 or (n == 2 and cell in state)
    )


def step_n(state: WorldState, n: int) -> WorldState:
    """n-fold composition of step; identity for n == 0."""
    for _ in range(n):
        state = step(state)
    return state


def infl(state: WorldState) -> WorldState:
    """Area of influence: every cell within Chebyshev distance 1 of a live cell."""
    out = set(state)
    for x, y in state:
        for dx, dy in NEIGHBOR_OFFSETS:
            out.add((x + dx, y + dy))
    return frozenset(out)


def bounding_box(state: WorldState):
    """(min_x, min_y, max_x, max_y) of the live cells, or None when empty."""
    if not state:
        return None
    xs = [x for x, _ in state]
    ys = [y for _, y in state]
    return min(xs), min(ys), max(xs), max(ys)


def influence_disjoint(a: WorldState, b: WorldState) -> bool:
    """True iff the areas of influence of the two states do not intersect.

    Uses a bounding-box prefilter before the exact set intersection.
    """
    if not a or not b:
        return True
    ax0, ay0, ax1, ay1 = bounding_box(a)
    bx0, by0, bx1, by1 = bounding_box(b)
    # Influences can only meet if the boxes inflated by 1 overlap.
    if ax1 + 1 < bx0 - 1 or bx1 + 1 < ax0 - 1:
        return True
    if ay1 + 1 < by0 - 1 or by1 + 1 < ay0 - 1:
        return True
    return not (infl(a) & infl(b))


def translate(state: WorldState, v: Cell) -> WorldState:
    """Shift every live cell by the vector ``v``."""
    vx, vy = v
    return frozenset((x + vx, y + vy) for x, y in state)
