"""Depth-first assembly driver over circuit diagrams.

Seeds are installed first; the frontier of pending outputs is then scanned
in a fixed order, applying whichever floodfill rule matches: add a gate
once all of its inputs are pending, place or finish a crossover, and wrap
boundary-crossing outputs back into the fundamental domain by teleport.
The run stops when nothing can make progress, then finalization and the
tiled-run side conditions are checked.  Transcripts are deterministic and
golden-tested.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import FUNDAMENTAL, pos_plus
from .diagram import Diagram
from .errors import FloodfillError
from .floodfill import (
    FFState,
    ff_add_crossover,
    ff_add_gate,
    ff_add_ins,
    ff_check_run_conditions,
    ff_finalize,
    ff_finish_crossover,
)
from .gatelib import CROSSOVER, GateLibrary


@dataclass
class DriveResult:
    state: FFState
    transcript: str
    finalize_ok: bool
    conditions_ok: bool
    stuck: tuple = ()

    @property
    def ok(self):
        return self.finalize_ok and self.conditions_ok and not self.stuck


def _fmt_outs(st: FFState, prev_keys):
    fresh = [q for q in st.outs if q.key() not in prev_keys]
    return "; ".join(repr(q) for q in sorted(fresh, key=lambda q: q.key()))


def _seed_groups(diagram: Diagram, lib: GateLibrary):
    """Group seed values by the placement whose input ports they name."""
    occ = diagram.occupancy()
    groups = {}
    for pos, d, val in diagram.seeds:
        target = pos_plus(pos, d)
        placement = occ.get(target)
        if placement is None:
            raise FloodfillError("seed", f"seed at {pos} {d} does not face a gate")
        groups.setdefault(placement, {})[(pos, d)] = val
    out = []
    for placement in sorted(groups, key=lambda p: p.anchor):
        gate = lib[placement.gate]
        vals = []
        for port in gate.spec.sorted_ins():
            key = (
                (port.pos[0] + placement.anchor[0], port.pos[1] + placement.anchor[1]),
                port.dir,
            )
            if key not in groups[placement]:
                raise FloodfillError(
                    "seed", f"gate {gate.name} at {placement.anchor} missing seed for {key}"
                )
            vals.append(groups[placement][key])
        out.append((placement, gate, vals))
    return out


def ff_drive(diagram: Diagram, lib: GateLibrary, order: str = "lex") -> DriveResult:
    """Assemble a diagram; returns the final state and a transcript."""
    occ = diagram.occupancy()
    placed = set()
    lines = []
    st = FFState()

    for placement, gate, vals in _seed_groups(diagram, lib):
        prev = {q.key() for q in st.outs}
        st = ff_add_ins(st, gate, placement.anchor, vals)
        placed.add(placement.anchor)
        lines.append(
            f"RULE add_ins {gate.name} @ {placement.anchor} => outs: {_fmt_outs(st, prev)}"
        )

    def frontier(st):
        outs = sorted(st.outs, key=lambda q: (q.pos, q.dir))
        if order == "revlex":
            outs.reverse()
        return outs

    progress = True
    while progress:
        progress = False
        for q in frontier(st):
            target = pos_plus(q.pos, q.dir)
            tx, ty = target
            if not (0 <= tx < FUNDAMENTAL and 0 <= ty < FUNDAMENTAL):
                z = (-(tx // FUNDAMENTAL), -(ty // FUNDAMENTAL))
                idx = st.outs.index(q)
                from .floodfill import ff_teleport

                st = ff_teleport(st, idx, z)
                moved = st.outs[idx]
                lines.append(f"RULE teleport z={z} @ {q.pos} => outs: {moved!r}")
                progress = True
                break
            placement = occ.get(target)
            if placement is None:
                continue
            gate = lib[placement.gate]
            anchor = placement.anchor
            if gate.kind == CROSSOVER:
                prev = {r.key() for r in st.outs}
                if anchor in placed:
                    try:
                        st = ff_finish_crossover(st)
                    except FloodfillError:
                        continue
                    lines.append(
                        f"RULE finish_crossover @ {anchor} => outs: {_fmt_outs(st, prev)}"
                    )
                else:
                    try:
                        st = ff_add_crossover(st, gate, anchor)
                    except FloodfillError:
                        continue
                    placed.add(anchor)
                    lines.append(
                        f"RULE add_crossover {gate.name} @ {anchor} => outs: {_fmt_outs(st, prev)}"
                    )
                progress = True
                break
            if anchor in placed:
                continue
            outs_keys = {r.key() for r in st.outs}
            needed = [
                ((p.pos[0] + anchor[0], p.pos[1] + anchor[1]), p.dir)
                for p in gate.spec.sorted_ins()
            ]
            if all(k in outs_keys for k in needed):
                prev = outs_keys
                st = ff_add_gate(st, gate, anchor)
                placed.add(anchor)
                lines.append(
                    f"RULE add_gate {gate.name} @ {anchor} => outs: {_fmt_outs(st, prev)}"
                )
                progress = True
                break

    stuck = tuple(
        q for q in frontier(st)
        if q.key() not in {r.key() for r in st.ins}
    )
    verdict, final_lines = ff_finalize(st)
    lines.extend(final_lines)
    lines.append(f"FINALIZE {'ok' if verdict.ok else 'FAIL'}: {verdict.detail}")
    conds = ff_check_run_conditions(st)
    lines.append(f"CONDITIONS {'ok' if conds.ok else 'FAIL'}: {conds.detail}")
    if stuck and not verdict.ok:
        lines.append("STUCK frontier: " + "; ".join(repr(q) for q in stuck))
    return DriveResult(
        state=st,
        transcript="\n".join(lines) + "\n",
        finalize_ok=verdict.ok,
        conditions_ok=conds.ok,
        stuck=stuck if not verdict.ok else (),
    )
