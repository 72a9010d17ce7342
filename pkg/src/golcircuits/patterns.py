"""Canonical pattern constants used throughout the package and its tests.

All patterns are anchored with their bounding box at the origin.  The
coordinate convention is x east, y south, so "north" means decreasing y.
"""

from __future__ import annotations

from .core import WorldState, world


def from_rows(rows, alive="o#O*") -> WorldState:
    """Build a world state from ASCII art rows (top row first)."""
    cells = []
    for y, row in enumerate(rows):
        for x, ch in enumerate(row):
            if ch in alive:
                cells.append((x, y))
    return world(cells)


def rotate_cw(state: WorldState) -> WorldState:
    """Rotate 90 degrees clockwise on screen (east becomes south)."""
    return normalize(world((-y, x) for x, y in state))


def rotate_ccw(state: WorldState) -> WorldState:
    """Rotate 90 degrees counter-clockwise on screen (east becomes north)."""
    return normalize(world((y, -x) for x, y in state))


def mirror_x(state: WorldState) -> WorldState:
    """Flip east-west."""
    return normalize(world((-x, y) for x, y in state))


def normalize(state: WorldState) -> WorldState:
    """Translate so the bounding box minimum corner is (0, 0)."""
    if not state:
        return state
    mx = min(x for x, _ in state)
    my = min(y for _, y in state)
    return world((x - mx, y - my) for x, y in state)


BLOCK = from_rows(["oo", "oo"])

BLINKER = from_rows(["ooo"])

# Moves (+1, +1) every 4 generations.
GLIDER_SE = from_rows([
    ".o.",
    "..o",
    "ooo",
])

# Moves (-2, 0) every 4 generations.
LWSS_W = from_rows([
    ".o..o",
    "o....",
    "o...o",
    "oooo.",
])

LWSS_E = mirror_x(LWSS_W)
LWSS_N = rotate_cw(LWSS_W)
LWSS_S = rotate_ccw(LWSS_W)

# Emits one glider every 30 generations (population grows by 5 per 30).
GOSPER_GUN = from_rows([
    "........................o...........",
    "......................o.o...........",
    "............oo......oo............oo",
    "...........o...o....oo............oo",
    "oo........o.....o...oo..............",
    "oo........o...o.oo....o.o...........",
    "..........o.....o.......o...........",
    "...........o...o....................",
    "............oo......................",
])
