"""Cell-level geometry of the tick/port protocol.

One tick is 60 GOL generations.  During the first 30, a gate owns its tiles
plus the port squares of its E/W inputs and N/S outputs; for the last 30,
ownership flips to N/S inputs and E/W outputs.  The N/S handoff (deletion,
assertion, insertion of an LWSS stamp) happens on generation 30 of the
tick, the E/W handoff on generation 60.
"""

from __future__ import annotations

from .circuits import EW, NS, CircuitSpec, PortSpec
from .core import WorldState, bounding_box, translate, world
from .errors import PortOverlapError
from .iostep import Modifier, ModifierSequence, RectUnion
from .patterns import LWSS_E, LWSS_N, LWSS_S, LWSS_W
from .signals import sig_eval

CELLS_PER_UNIT = 75
STEPS_PER_TICK = 60
HALF_TICK = 30

# LWSS stamps centered on the port cell (fixed phase; period 4 divides the
# 300-generation transit so insertions and assertions share one shape).
STAMP_SHAPES = {
    "E": translate(LWSS_E, (-2, -2)),
    "W": translate(LWSS_W, (-2, -2)),
    "N": translate(LWSS_N, (-2, -2)),
    "S": translate(LWSS_S, (-2, -2)),
}

BOX_MARGIN = 3


def port_cell(pos):
    return (CELLS_PER_UNIT * pos[0], CELLS_PER_UNIT * pos[1])


def tile_rect(anchor):
    """150x150 cell block of the tile centered at a double-even anchor."""
    cx, cy = port_cell(anchor)
    return (cx - 75, cy - 75, cx + 75, cy + 75)


def port_square_rect(pos):
    """75x75 ownership block centered on the port edge midpoint."""
    cx, cy = port_cell(pos)
    return (cx - 37, cy - 37, cx + 38, cy + 38)


def stamp(direction: str, pos) -> WorldState:
    return translate(STAMP_SHAPES[direction], port_cell(pos))


def stamp_box(direction: str, pos) -> frozenset:
    """Deletion/assertion region: stamp bounding box inflated by a margin."""
    x0, y0, x1, y1 = bounding_box(STAMP_SHAPES[direction])
    cx, cy = port_cell(pos)
    return frozenset(
        (x, y)
        for x in range(cx + x0 - BOX_MARGIN, cx + x1 + BOX_MARGIN + 1)
        for y in range(cy + y0 - BOX_MARGIN, cy + y1 + BOX_MARGIN + 1)
    )


def _check_port_squares(s: CircuitSpec):
    by_pos = {}
    for p in list(s.ins) + list(s.outs):
        d = by_pos.setdefault(p.pos, p.dir)
        if d != p.dir:
            raise PortOverlapError(
                f"ports at {p.pos} with directions {d} and {p.dir} share a square"
            )


def half_areas(s: CircuitSpec):
    """(first-half, second-half) cell areas of the protocol."""
    tiles = [tile_rect(a) for a in s.area]
    first = tiles + [
        port_square_rect(p.pos)
        for p in list(s.ins) + list(s.outs)
        if (p in s.ins and p.dir in EW) or (p in s.outs and p.dir in NS)
    ]
    second = tiles + [
        port_square_rect(p.pos)
        for p in list(s.ins) + list(s.outs)
        if (p in s.ins and p.dir in NS) or (p in s.outs and p.dir in EW)
    ]
    return RectUnion(first), RectUnion(second)


def handoff_edits(s: CircuitSpec, dirs, tick: int, env: dict):
    """(insertions, deletions, assert_area, assert_content) for one handoff."""
    insertions = set()
    deletions = set()
    assert_area = set()
    assert_content = set()
    for p in s.outs:
        if p.dir in dirs:
            box = stamp_box(p.dir, p.pos)
            deletions |= box
            assert_area |= box
            if sig_eval(p.sig, env, tick):
                assert_content |= stamp(p.dir, p.pos)
    for p in s.ins:
        if p.dir in dirs:
            if sig_eval(p.sig, env, tick):
                insertions |= stamp(p.dir, p.pos)
    return (
        world(insertions),
        frozenset(deletions),
        frozenset(assert_area),
        world(assert_content),
    )


def make_protocol(s: CircuitSpec, tick: int, env: dict) -> list:
    """The 60 modifiers realizing one tick of the port protocol.

    ``env`` maps input names to finite boolean streams (extended with false);
    output assertions use the ports' own signal expressions at this tick.
    """
    _check_port_squares(s)
    first, second = half_areas(s)
    ns_ins, ns_dels, ns_aa, ns_ac = handoff_edits(s, NS, tick, env)
    ew_ins, ew_dels, ew_aa, ew_ac = handoff_edits(s, EW, tick, env)
    mods = []
    for k in range(STEPS_PER_TICK):
        area = first if k < HALF_TICK else second
        if k == HALF_TICK - 1:
            mods.append(Modifier(area, ns_ins, ns_dels, ns_aa, ns_ac))
        elif k == STEPS_PER_TICK - 1:
            mods.append(Modifier(area, ew_ins, ew_dels, ew_aa, ew_ac))
        else:
            mods.append(Modifier(area))
    return mods


def protocol_sequence(s: CircuitSpec, env: dict, ticks: int) -> ModifierSequence:
    """Modifier sequence covering ``ticks`` ticks, then quiet periodic ticks.

    The cycle is the protocol tick with every signal false, which is exact
    once all streams are exhausted and the pipeline has drained.
    """
    prefix = []
    for t in range(ticks):
        prefix.extend(make_protocol(s, t, env))
    quiet = make_protocol(s, ticks, {name: [] for name in _all_names(s)})
    return ModifierSequence(tuple(prefix), tuple(quiet))


def _all_names(s: CircuitSpec):
    from .signals import sig_inputs

    names = set()
    for p in list(s.ins) + list(s.outs):
        names |= sig_inputs(p.sig)
    return names
