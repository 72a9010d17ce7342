"""The floodfill assembly state machine.

A floodfill state tracks the claimed tile area, the unmatched input and
output ports with their signal values, pending crossover legs, and the
placed gates.  Gates are added in propagation order: a regular gate needs
all of its inputs among the pending outputs; crossovers match one leg at a
time; teleports wrap boundary-crossing outputs back into the fundamental
domain, translating their cell formulas to the neighboring mega-cell.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .circuits import FUNDAMENTAL, pos_minus, pos_plus, quot
from .errors import FloodfillError
from .gatelib import CROSSOVER, GateDef
from .signals import SigAnd, SigInput, SigNot, SigOr, SigXor
from .values import (
    Exact,
    THIS,
    TOP,
    is_exact,
    translate_value,
    v_and,
    v_delay,
    v_not,
    v_or,
    v_xor,
    value_text,
    values_equal,
    refines,
)


@dataclass(frozen=True)
class FFPort:
    pos: tuple
    dir: str
    val: object

    def key(self):
        return (self.pos, self.dir)

    def __repr__(self):
        return f"({self.pos[0]},{self.pos[1]}) {self.dir} {value_text(self.val)}"


@dataclass(frozen=True)
class CrossPending:
    in_pos: tuple
    out_pos: tuple
    dir: str
    delay: int = 5


@dataclass(frozen=True)
class FFState:
    area: frozenset = frozenset()
    ins: tuple = ()
    outs: tuple = ()
    crosses: tuple = ()
    gates: tuple = ()

    def validate(self):
        for ax, ay in self.area:
            if ax % 2 or ay % 2:
                raise FloodfillError("parity", f"tile anchor {(ax, ay)} not double-even")
            if not (0 <= ax < FUNDAMENTAL and 0 <= ay < FUNDAMENTAL):
                raise FloodfillError("bounds", f"tile anchor {(ax, ay)} outside [0,42)^2")
        for ports, side in ((self.ins, "ins"), (self.outs, "outs")):
            keys = [p.key() for p in ports]
            if len(keys) != len(set(keys)):
                raise FloodfillError("duplicates", f"duplicate (pos, dir) among {side}")
        return self


def eval_out_expr(sig, binding: dict):
    """Evaluate a gate output expression over bound input values."""
    if isinstance(sig, SigInput):
        return v_delay(binding[sig.name], sig.delay)
    if isinstance(sig, SigNot):
        return v_not(eval_out_expr(sig.e, binding))
    if isinstance(sig, SigAnd):
        return v_and(eval_out_expr(sig.a, binding), eval_out_expr(sig.b, binding))
    if isinstance(sig, SigOr):
        return v_or(eval_out_expr(sig.a, binding), eval_out_expr(sig.b, binding))
    if isinstance(sig, SigXor):
        return v_xor(eval_out_expr(sig.a, binding), eval_out_expr(sig.b, binding))
    raise TypeError(f"not a signal expression: {sig!r}")


def bind_value(v):
    """Values decay eagerly at gate inputs: a settled latch value this@m with
    m >= 0 weakens to the local cell formula so plain gates never see an
    exact signal."""
    if isinstance(v, Exact) and v.e == THIS and v.n >= 0:
        from .values import decay

        return decay(v, v.n)
    return v


def _check_insertion(st: FFState, g: GateDef, p):
    px, py = p
    if px % 2 or py % 2:
        raise FloodfillError("parity", f"gate anchor {p} not double-even")
    moved_area = frozenset((ax + px, ay + py) for ax, ay in g.spec.area)
    overlap = moved_area & st.area
    if overlap:
        raise FloodfillError("AreaOverlap", f"tiles {sorted(overlap)} already claimed")
    for ax, ay in moved_area:
        if not (0 <= ax < FUNDAMENTAL and 0 <= ay < FUNDAMENTAL):
            raise FloodfillError("OutOfBounds", f"tile {(ax, ay)} outside [0,42)^2")
    return moved_area


def _moved(pos, p):
    return (pos[0] + p[0], pos[1] + p[1])


def ff_add_ins(st: FFState, g: GateDef, p, vals) -> FFState:
    """Disjoint insertion of a seed gate whose inputs carry given exact values."""
    moved_area = _check_insertion(st, g, p)
    ins_ports = g.spec.sorted_ins()
    if len(vals) != len(ins_ports):
        raise FloodfillError("arity", f"{g.name} has {len(ins_ports)} inputs, got {len(vals)}")
    for v in vals:
        if not is_exact(v):
            raise FloodfillError("is_exact", f"seed value {value_text(v)} is not exact")
    existing_positions = {q.pos for q in st.ins} | {q.pos for q in st.outs}
    for port in ins_ports:
        if _moved(port.pos, p) in existing_positions:
            raise FloodfillError(
                "PortCollision", f"input at {_moved(port.pos, p)} collides with a pending port"
            )
    binding = {
        port.sig.name: bind_value(v) for port, v in zip(ins_ports, vals)
    }
    new_ins = tuple(
        FFPort(_moved(port.pos, p), port.dir, v) for port, v in zip(ins_ports, vals)
    )
    new_outs = tuple(
        FFPort(_moved(port.pos, p), port.dir, eval_out_expr(port.sig, binding))
        for port in g.spec.sorted_outs()
    )
    return replace(
        st,
        area=st.area | moved_area,
        ins=st.ins + new_ins,
        outs=st.outs + new_outs,
        gates=st.gates + ((p, g.name),),
    ).validate()


def ff_add_gate(st: FFState, g: GateDef, p) -> FFState:
    """Add a gate whose inputs all match pending outputs, consuming them."""
    moved_area = _check_insertion(st, g, p)
    outs_by_key = {q.key(): q for q in st.outs}
    matched = []
    binding = {}
    for port in g.spec.sorted_ins():
        key = (_moved(port.pos, p), port.dir)
        q = outs_by_key.get(key)
        if q is None:
            raise FloodfillError("MissingInput", f"{g.name} at {p} needs an output at {key}")
        matched.append(q)
        binding[port.sig.name] = bind_value(q.val)
    remaining = tuple(q for q in st.outs if q not in matched)
    new_outs = tuple(
        FFPort(_moved(port.pos, p), port.dir, eval_out_expr(port.sig, binding))
        for port in g.spec.sorted_outs()
    )
    return replace(
        st,
        area=st.area | moved_area,
        outs=remaining + new_outs,
        gates=st.gates + ((p, g.name),),
    ).validate()


def _crossover_legs(g: GateDef):
    """Pair each crossover input with the output of the same direction."""
    if g.kind != CROSSOVER or len(g.spec.ins) != 2 or len(g.spec.outs) != 2:
        raise FloodfillError("kind", f"{g.name} is not a two-leg crossover")
    legs = []
    for port in g.spec.sorted_ins():
        out = next(q for q in g.spec.outs if q.dir == port.dir)
        if not isinstance(out.sig, SigInput) or out.sig.name != port.sig.name:
            raise FloodfillError("kind", f"{g.name}: crossover legs must be plain delays")
        legs.append((port, out, out.sig.delay))
    return legs


def ff_add_crossover(st: FFState, g: GateDef, p) -> FFState:
    """Place a crossover, matching whichever leg already has its input."""
    moved_area = _check_insertion(st, g, p)
    outs_by_key = {q.key(): q for q in st.outs}
    legs = _crossover_legs(g)
    for first, second in (legs, legs[::-1]):
        in_a, out_a, delay_a = first
        in_b, out_b, delay_b = second
        q = outs_by_key.get((_moved(in_a.pos, p), in_a.dir))
        if q is None:
            continue
        remaining = tuple(r for r in st.outs if r is not q)
        new_out = FFPort(_moved(out_a.pos, p), out_a.dir, v_delay(q.val, delay_a))
        pending = CrossPending(
            _moved(in_b.pos, p), _moved(out_b.pos, p), in_b.dir, delay_b
        )
        return replace(
            st,
            area=st.area | moved_area,
            outs=remaining + (new_out,),
            crosses=st.crosses + (pending,),
            gates=st.gates + ((p, g.name),),
        ).validate()
    raise FloodfillError("MissingInput", f"no pending output matches either leg of {g.name} at {p}")


def ff_finish_crossover(st: FFState) -> FFState:
    """Match the queued second leg of some crossover with a pending output."""
    outs_by_key = {q.key(): q for q in st.outs}
    for i, c in enumerate(st.crosses):
        q = outs_by_key.get((c.in_pos, c.dir))
        if q is None:
            continue
        remaining = tuple(r for r in st.outs if r is not q)
        new_out = FFPort(c.out_pos, c.dir, v_delay(q.val, c.delay))
        return replace(
            st,
            outs=remaining + (new_out,),
            crosses=st.crosses[:i] + st.crosses[i + 1:],
        ).validate()
    raise FloodfillError("NoPendingCross", "no pending output matches a queued crossover leg")


def ff_teleport(st: FFState, port_index: int, z) -> FFState:
    """Move an output by 42*z half-tiles, shifting its cell formula by z."""
    if not (0 <= port_index < len(st.outs)):
        raise FloodfillError("index", f"no output port at index {port_index}")
    q = st.outs[port_index]
    moved = FFPort(
        (q.pos[0] + FUNDAMENTAL * z[0], q.pos[1] + FUNDAMENTAL * z[1]),
        q.dir,
        translate_value(q.val, z),
    )
    outs = st.outs[:port_index] + (moved,) + st.outs[port_index + 1:]
    return replace(st, outs=outs).validate()


@dataclass(frozen=True)
class Verdict:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def ff_finalize(st: FFState):
    """Check the terminal shape: exactly two in/out pairs overlap and cancel.

    Returns (verdict, transcript_lines); the transcript records every
    remaining port's final value.
    """
    lines = []
    for q in sorted(st.ins, key=lambda q: q.key()):
        lines.append(f"final in  {q}")
    for q in sorted(st.outs, key=lambda q: q.key()):
        lines.append(f"final out {q}")
    if st.crosses:
        return Verdict(False, f"{len(st.crosses)} unfinished crossover legs"), lines
    if len(st.ins) != 2 or len(st.outs) != 2:
        extra = [repr(q) for q in list(st.ins) + list(st.outs)]
        return Verdict(False, "leftover unmatched ports: " + "; ".join(extra)), lines
    outs_by_key = {q.key(): q for q in st.outs}
    for q in st.ins:
        match = outs_by_key.get(q.key())
        if match is None:
            return Verdict(False, f"dangling input {q}"), lines
        if not refines(match.val, q.val):
            return (
                Verdict(
                    False,
                    f"value mismatch at {q.key()}: out {value_text(match.val)} "
                    f"does not refine in {value_text(q.val)}",
                ),
                lines,
            )
    if not any(
        isinstance(q.val, Exact) and q.val.e == THIS and q.val.n == -15 for q in st.ins
    ):
        return Verdict(False, "no input carries this@-15"), lines
    return Verdict(True, "two canceling pairs"), lines


def ff_check_run_conditions(st: FFState) -> Verdict:
    """The tiled-run side conditions on the 42-periodic quotient."""
    for q in st.ins:
        if pos_plus(q.pos, q.dir) not in st.area:
            return Verdict(False, f"condition (1): input {q} does not face a claimed tile")
    for q in st.outs:
        if pos_minus(q.pos, q.dir) not in st.area:
            return Verdict(False, f"condition (2): output {q} does not leave a claimed tile")
    for ports, side in ((st.ins, "ins"), (st.outs, "outs")):
        keys = [(quot(q.pos), q.dir) for q in ports]
        if len(keys) != len(set(keys)):
            return Verdict(False, f"duplicate quotient key among {side}")
    area_quot = {quot(a) for a in st.area}

    def find_partner(ports, pos, d):
        for q in ports:
            if q.dir != d:
                continue
            dx = q.pos[0] - pos[0]
            dy = q.pos[1] - pos[1]
            if dx % FUNDAMENTAL == 0 and dy % FUNDAMENTAL == 0:
                return q, (dx // FUNDAMENTAL, dy // FUNDAMENTAL)
        return None, None

    for q in st.ins:
        if quot(pos_minus(q.pos, q.dir)) in area_quot:
            partner, z = find_partner(st.outs, q.pos, q.dir)
            if partner is None:
                return Verdict(False, f"condition (3): no tiled output matches input {q}")
            if not values_equal(partner.val, translate_value(q.val, z)):
                return Verdict(
                    False,
                    f"condition (3): value mismatch for {q}: {value_text(partner.val)}"
                    f" vs {value_text(translate_value(q.val, z))}",
                )
    for q in st.outs:
        if quot(pos_plus(q.pos, q.dir)) in area_quot:
            partner, z = find_partner(st.ins, q.pos, q.dir)
            if partner is None:
                return Verdict(False, f"condition (4): no tiled input matches output {q}")
            if not values_equal(partner.val, translate_value(q.val, z)):
                return Verdict(
                    False,
                    f"condition (4): value mismatch for {q}",
                )
    return Verdict(True, "run conditions hold")
