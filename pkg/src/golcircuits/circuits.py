"""Circuit-level specifications and their composition algebra.

Coordinates are half-tile units: one unit is 75 GOL cells, gates occupy
tiles anchored at double-even coordinates, and ports sit on tile edges
(exactly one odd coordinate).  Directions: E=(1,0), W=(-1,0), N=(0,-1),
S=(0,1) with y growing south.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import EMPTY, WorldState, translate as translate_cells
from .errors import AreaOverlapError, SignalMismatchError, SpecError, UnmatchedPortError
from .signals import SignalExpr, sig_inputs, sig_substitute, sig_text

DIR_VECTORS = {"E": (1, 0), "W": (-1, 0), "N": (0, -1), "S": (0, 1)}
DIRS = tuple(DIR_VECTORS)

EW = ("E", "W")
NS = ("N", "S")


def dir_vec(d: str):
    return DIR_VECTORS[d]


def pos_plus(pos, d: str):
    vx, vy = DIR_VECTORS[d]
    return (pos[0] + vx, pos[1] + vy)


def pos_minus(pos, d: str):
    vx, vy = DIR_VECTORS[d]
    return (pos[0] - vx, pos[1] - vy)


def scale_constants() -> dict:
    """The fixed geometry and timing constants of the construction."""
    return {
        "cells_per_unit": 75,
        "cells_per_tile": 150,
        "steps_per_tick": 60,
        "halftiles_per_megacell": 42,
        "cells_per_megacell": 3150,
        "ticks_per_period": 586,
        "pulse_width": 22,
        "steps_per_mega_generation": 60 * 586,
        "sample_pixel": (1726, 599),
    }


@dataclass(frozen=True)
class PortSpec:
    pos: tuple
    dir: str
    sig: SignalExpr

    def __post_init__(self):
        if self.dir not in DIR_VECTORS:
            raise SpecError(f"unknown direction {self.dir!r}")
        x, y = self.pos
        if (x % 2 == 0) == (y % 2 == 0):
            raise SpecError(f"port position {self.pos} must have exactly one odd coordinate")

    def key(self):
        return (self.pos, self.dir)

    def __repr__(self):
        return f"(({self.pos[0]},{self.pos[1]}),{self.dir},{sig_text(self.sig)})"


@dataclass(frozen=True)
class CircuitSpec:
    area: frozenset
    ins: frozenset
    outs: frozenset
    init: WorldState = EMPTY

    def __post_init__(self):
        for ax, ay in self.area:
            if ax % 2 or ay % 2:
                raise SpecError(f"tile anchor {(ax, ay)} must be double-even")
        for p in self.ins:
            if pos_plus(p.pos, p.dir) not in self.area:
                raise SpecError(f"input port {p} does not point into the area")
        for p in self.outs:
            if pos_minus(p.pos, p.dir) not in self.area:
                raise SpecError(f"output port {p} does not point out of the area")
        for ports, side in ((self.ins, "ins"), (self.outs, "outs")):
            keys = [p.key() for p in ports]
            if len(keys) != len(set(keys)):
                raise SpecError(f"duplicate (pos, dir) among {side}")

    def input_names(self) -> frozenset:
        names = set()
        for p in self.ins:
            names |= sig_inputs(p.sig)
        return frozenset(names)

    def sorted_ins(self):
        return sorted(self.ins, key=lambda p: (p.pos, p.dir))

    def sorted_outs(self):
        return sorted(self.outs, key=lambda p: (p.pos, p.dir))


def spec(area, ins, outs, init=EMPTY) -> CircuitSpec:
    return CircuitSpec(frozenset(area), frozenset(ins), frozenset(outs), init)


EMPTY_SPEC = spec((), (), ())


def spec_translate(s: CircuitSpec, v) -> CircuitSpec:
    """Shift a spec by an even vector; the pattern shifts by 75 cells/unit."""
    vx, vy = v
    if vx % 2 or vy % 2:
        raise SpecError(f"translation vector {v} must have even components")
    move = lambda pos: (pos[0] + vx, pos[1] + vy)
    return CircuitSpec(
        frozenset(move(a) for a in s.area),
        frozenset(PortSpec(move(p.pos), p.dir, p.sig) for p in s.ins),
        frozenset(PortSpec(move(p.pos), p.dir, p.sig) for p in s.outs),
        translate_cells(s.init, (75 * vx, 75 * vy)),
    )


def spec_substitute(s: CircuitSpec, binding: dict) -> CircuitSpec:
    """Substitute signal expressions for input names on every port."""
    return CircuitSpec(
        s.area,
        frozenset(PortSpec(p.pos, p.dir, sig_substitute(p.sig, binding)) for p in s.ins),
        frozenset(PortSpec(p.pos, p.dir, sig_substitute(p.sig, binding)) for p in s.outs),
        s.init,
    )


def _check_matching(ports, other_area, other_ports, inward: bool, side: str):
    """Every port whose source/target tile lies in the other area must have an
    identical counterpart of opposite polarity there."""
    other_by_key = {p.key(): p for p in other_ports}
    for p in ports:
        anchor = pos_minus(p.pos, p.dir) if inward else pos_plus(p.pos, p.dir)
        if anchor in other_area:
            match = other_by_key.get(p.key())
            if match is None:
                raise UnmatchedPortError(p.pos, p.dir, side)
            if match.sig != p.sig:
                raise SignalMismatchError(p.pos, p.dir, sig_text(p.sig), sig_text(match.sig))


def compose(s1: CircuitSpec, s2: CircuitSpec) -> CircuitSpec:
    """Union two specs after checking the port matching conditions."""
    if s1.area & s2.area:
        raise AreaOverlapError(f"overlapping tiles: {sorted(s1.area & s2.area)}")
    _check_matching(s1.ins, s2.area, s2.outs, True, "ins of first")
    _check_matching(s1.outs, s2.area, s2.ins, False, "outs of first")
    _check_matching(s2.ins, s1.area, s1.outs, True, "ins of second")
    _check_matching(s2.outs, s1.area, s1.ins, False, "outs of second")
    return CircuitSpec(
        s1.area | s2.area, s1.ins | s2.ins, s1.outs | s2.outs, s1.init | s2.init
    )


def internalize(s: CircuitSpec, m) -> CircuitSpec:
    """Delete matching in/out port pairs (m must be in both sets)."""
    m = frozenset(m)
    if not m <= s.ins:
        raise SpecError(f"internalize: {sorted(m - s.ins, key=repr)} not among ins")
    if not m <= s.outs:
        raise SpecError(f"internalize: {sorted(m - s.outs, key=repr)} not among outs")
    return CircuitSpec(s.area, s.ins - m, s.outs - m, s.init)


FUNDAMENTAL = 42


def quot(pos):
    return (pos[0] % FUNDAMENTAL, pos[1] % FUNDAMENTAL)


@dataclass(frozen=True)
class TiledSpec:
    """A base spec replicated over the 42-half-tile lattice."""

    base: CircuitSpec

    def __post_init__(self):
        for ax, ay in self.base.area:
            if not (0 <= ax < FUNDAMENTAL and 0 <= ay < FUNDAMENTAL):
                raise SpecError(f"tile anchor {(ax, ay)} outside the fundamental domain")
        for ports, side in ((self.base.ins, "ins"), (self.base.outs, "outs")):
            keys = [(quot(p.pos), p.dir) for p in ports]
            if len(keys) != len(set(keys)):
                raise SpecError(f"duplicate quotient port key among tiled {side}")

    def area_member(self, pos) -> bool:
        return quot(pos) in {quot(a) for a in self.base.area}

    def _port_member(self, ports, pos, d):
        for p in ports:
            if p.dir != d:
                continue
            dx = pos[0] - p.pos[0]
            dy = pos[1] - p.pos[1]
            if dx % FUNDAMENTAL == 0 and dy % FUNDAMENTAL == 0:
                return p, (dx // FUNDAMENTAL, dy // FUNDAMENTAL)
        return None

    def ins_member(self, pos, d):
        """The base in-port and lattice offset z for a tiled position, or None."""
        return self._port_member(self.base.ins, pos, d)

    def outs_member(self, pos, d):
        return self._port_member(self.base.outs, pos, d)


def tile(s: CircuitSpec) -> TiledSpec:
    return TiledSpec(s)
