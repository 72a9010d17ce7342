"""Gate verification by symbolic fixed point.

Starting from the concrete gate pattern, protocol ticks are simulated
symbolically, injecting a fresh stream variable at each input port every
tick (the variable index records the arrival tick).  Output handoffs assert
that the departing content equals the port's claimed signal expression.
The gate is verified once the end-of-tick state repeats up to aging, i.e.
tick(S) is per-cell equivalent to S with every variable aged by one: gates
behave as conveyor belts forever after.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .circuits import EW, NS, CircuitSpec
from .errors import GateCheckError
from .protocol import HALF_TICK, STEPS_PER_TICK, half_areas, stamp, stamp_box, _check_port_squares
from .signals import SigAnd, SigInput, SigNot, SigOr, SigXor
from .symbolic import (
    FALSE,
    TRUE,
    age_bexp,
    band,
    bexp_text,
    bexp_vars,
    bnot,
    bor,
    equiv,
    next_cell_expr,
    var,
)

NEIGHBORHOOD = (
    (-1, -1), (0, -1), (1, -1),
    (-1, 0), (1, 0),
    (-1, 1), (0, 1), (1, 1),
)


@dataclass
class GateCertificate:
    name: str
    spec: CircuitSpec
    pattern: frozenset
    verified: bool
    input_tags: dict
    fixpoint: dict = field(default_factory=dict, repr=False)
    warmup_ticks: int = 0

    def pattern_digest(self) -> str:
        text = ";".join(f"{x},{y}" for x, y in sorted(self.pattern))
        return hashlib.sha256(text.encode()).hexdigest()

    def fixpoint_digest(self) -> str:
        return hashlib.sha256(fixpoint_text(self.fixpoint).encode()).hexdigest()


def fixpoint_text(cells: dict) -> str:
    """Canonical dump with variable indices shifted to start at zero."""
    ages = [age for e in cells.values() for _, age in bexp_vars(e)]
    shift = -min(ages) if ages else 0
    lines = []
    for (x, y) in sorted(cells):
        lines.append(f"{x},{y}: {bexp_text(age_bexp(cells[(x, y)], shift))}")
    return "\n".join(lines)


def bexp_of_sig(sig, tick, tags):
    """Claimed signal at a given tick as a boolean expression over stream vars.

    A leaf delayed by n refers to the input that arrived on tick ``tick - n``;
    before tick n the delayed signal is identically false.
    """
    if isinstance(sig, SigInput):
        k = tick - sig.delay
        if k < 0:
            return FALSE
        return var(tags[sig.name], k)
    if isinstance(sig, SigNot):
        return bnot(bexp_of_sig(sig.e, tick, tags))
    if isinstance(sig, SigAnd):
        return band(bexp_of_sig(sig.a, tick, tags), bexp_of_sig(sig.b, tick, tags))
    if isinstance(sig, SigOr):
        return bor(bexp_of_sig(sig.a, tick, tags), bexp_of_sig(sig.b, tick, tags))
    if isinstance(sig, SigXor):
        a = bexp_of_sig(sig.a, tick, tags)
        b = bexp_of_sig(sig.b, tick, tags)
        return bor(band(a, bnot(b)), band(bnot(a), b))
    raise TypeError(f"not a signal expression: {sig!r}")


def input_tags(s: CircuitSpec) -> dict:
    """Assign stream tags A/B to the gate's input names in port order."""
    names = []
    for p in s.sorted_ins():
        if not isinstance(p.sig, SigInput) or p.sig.delay:
            raise GateCheckError(f"gate input {p} must carry a bare input name")
        if p.sig.name not in names:
            names.append(p.sig.name)
    if len(names) > 2:
        raise GateCheckError("symbolic checking supports at most two input streams")
    return {name: tag for name, tag in zip(names, ("A", "B"))}


def _sym_gol_step(cells: dict, area, var_cap: int, tick: int, k: int) -> dict:
    for (x, y) in cells:
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                if (x + dx, y + dy) not in area:
                    raise GateCheckError(
                        f"boundary escape at tick {tick} step {k}: "
                        f"cell {(x + dx, y + dy)} outside the owned area"
                    )
    candidates = set()
    for (x, y) in cells:
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                candidates.add((x + dx, y + dy))
    out = {}
    get = cells.get
    for c in sorted(candidates):
        x, y = c
        nbrs = tuple(get((x + dx, y + dy), FALSE) for dx, dy in NEIGHBORHOOD)
        e = next_cell_expr(get(c, FALSE), nbrs, var_cap=var_cap, cell=c)
        if e is not FALSE:
            out[c] = e
    return out


def _sym_handoff(cells: dict, s: CircuitSpec, dirs, tick: int, tags: dict, var_cap: int):
    for p in s.sorted_outs():
        if p.dir not in dirs:
            continue
        claimed = bexp_of_sig(p.sig, tick, tags)
        shape = stamp(p.dir, p.pos)
        for c in sorted(stamp_box(p.dir, p.pos)):
            expected = claimed if c in shape else FALSE
            actual = cells.pop(c, FALSE)
            if not equiv(actual, expected, var_cap):
                raise GateCheckError(
                    f"assertion mismatch at output port ({p.pos}, {p.dir}) "
                    f"tick {tick}: cell {c} holds {bexp_text(actual)}, "
                    f"claimed {bexp_text(expected)}"
                )
    for p in s.sorted_ins():
        if p.dir not in dirs:
            continue
        fresh = var(tags[p.sig.name], tick)
        for c in stamp(p.dir, p.pos):
            prev = cells.get(c, FALSE)
            cells[c] = bor(prev, fresh)


def sym_protocol_tick(cells: dict, s: CircuitSpec, tick: int, tags: dict,
                      areas=None, var_cap: int = 8) -> dict:
    """One full symbolic tick; returns the end-of-tick state."""
    first, second = areas if areas is not None else half_areas(s)
    cells = dict(cells)
    for k in range(STEPS_PER_TICK):
        area = first if k < HALF_TICK else second
        cells = _sym_gol_step(cells, area, var_cap, tick, k)
        if k == HALF_TICK - 1:
            _sym_handoff(cells, s, NS, tick, tags, var_cap)
        elif k == STEPS_PER_TICK - 1:
            _sym_handoff(cells, s, EW, tick, tags, var_cap)
    return cells


def _grids_equiv(c1: dict, c2: dict, var_cap: int) -> bool:
    for c in c1.keys() | c2.keys():
        if not equiv(c1.get(c, FALSE), c2.get(c, FALSE), var_cap):
            return False
    return True


def _aged(cells: dict) -> dict:
    return {c: age_bexp(e) for c, e in cells.items()}


def verify_gate(pattern, s: CircuitSpec, name: str = "gate",
                max_warmup: int = 32, var_cap: int = 8) -> GateCertificate:
    """Certify a gate pattern against its port specification.

    Raises GateCheckError on boundary escape, output assertion mismatch, or
    failure to reach the aging fixed point within ``max_warmup`` ticks.
    """
    _check_port_squares(s)
    tags = input_tags(s)
    areas = half_areas(s)
    prev = {c: TRUE for c in pattern}
    for t in range(max_warmup):
        cur = sym_protocol_tick(prev, s, t, tags, areas, var_cap)
        if _grids_equiv(cur, _aged(prev), var_cap):
            return GateCertificate(
                name=name,
                spec=s,
                pattern=frozenset(pattern),
                verified=True,
                input_tags=tags,
                fixpoint=prev,
                warmup_ticks=t,
            )
        prev = cur
    raise GateCheckError(
        f"no aging fixed point within {max_warmup} warmup ticks for {name}"
    )
