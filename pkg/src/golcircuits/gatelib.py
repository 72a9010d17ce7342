"""Gate library: manifest files, oriented gate definitions, certificates.

A library directory holds one ``<name>.spec`` text file per gate (area,
ports, signal expressions) and, for gates whose initial pattern is known,
a ``<name>.rle`` pattern file.  An empty pattern is a real pattern (wires
and crossovers work on empty space); a *missing* .rle marks the gate as
spec-only external data that can drive the assembler but cannot be stamped.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from pathlib import Path

from .circuits import CircuitSpec, PortSpec, spec
from .core import WorldState
from .errors import SpecError
from .rle import rle_decode, rle_encode
from .signals import SigInput, parse_sig, sig_text

GATE = "gate"
CROSSOVER = "crossover"


@dataclass(frozen=True)
class GateDef:
    """A gate in library-relative coordinates (anchor tile at (0, 0))."""

    name: str
    spec: CircuitSpec
    kind: str = GATE
    pattern: WorldState = None  # None: external, spec-only
    offset: tuple = (0, 0)  # cell offset of the .rle pattern within the gate frame

    @property
    def has_pattern(self) -> bool:
        return self.pattern is not None

    def input_names(self):
        names = []
        for p in self.spec.sorted_ins():
            if not isinstance(p.sig, SigInput) or p.sig.delay:
                raise SpecError(f"gate {self.name}: inputs must be bare names")
            names.append(p.sig.name)
        return names


def parse_gate_spec(name: str, text: str, pattern=None) -> GateDef:
    kind = GATE
    area = []
    ins = []
    outs = []
    offset = (0, 0)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            key, _, rest = line.partition(":")
            key = key.strip()
            rest = rest.strip()
            if key == "kind":
                if rest not in (GATE, CROSSOVER):
                    raise ValueError(f"unknown kind {rest!r}")
                kind = rest
            elif key == "area":
                for tok in rest.replace("(", " ").replace(")", " ").split():
                    x, y = tok.split(",")
                    area.append((int(x), int(y)))
            elif key == "offset":
                x, y = rest.strip("() ").split(",")
                offset = (int(x), int(y))
            elif key in ("in", "out"):
                pos_txt, d, sig_txt = rest.split(None, 2)
                x, y = pos_txt.strip("()").split(",")
                port = PortSpec((int(x), int(y)), d, parse_sig(sig_txt))
                (ins if key == "in" else outs).append(port)
            else:
                raise ValueError(f"unknown directive {key!r}")
        except (ValueError, SpecError) as err:
            raise SpecError(f"{name}.spec line {lineno}: {err}") from err
    return GateDef(name, spec(area, ins, outs), kind, pattern, offset)


def gate_spec_text(g: GateDef) -> str:
    lines = []
    if g.kind != GATE:
        lines.append(f"kind: {g.kind}")
    lines.append("area: " + " ".join(f"({x},{y})" for x, y in sorted(g.spec.area)))
    if g.offset != (0, 0):
        lines.append(f"offset: ({g.offset[0]},{g.offset[1]})")
    for p in g.spec.sorted_ins():
        lines.append(f"in: ({p.pos[0]},{p.pos[1]}) {p.dir} {sig_text(p.sig)}")
    for p in g.spec.sorted_outs():
        lines.append(f"out: ({p.pos[0]},{p.pos[1]}) {p.dir} {sig_text(p.sig)}")
    return "\n".join(lines) + "\n"


class GateLibrary:
    def __init__(self, gates=()):
        self.gates = {g.name: g for g in gates}

    def __contains__(self, name):
        return name in self.gates

    def __getitem__(self, name) -> GateDef:
        if name not in self.gates:
            raise SpecError(f"gate {name!r} not in library")
        return self.gates[name]

    def names(self):
        return sorted(self.gates)

    def missing_patterns(self, names):
        return sorted({n for n in names if not self[n].has_pattern})


def load_library(directory) -> GateLibrary:
    directory = Path(directory)
    gates = []
    for spec_file in sorted(directory.glob("*.spec")):
        name = spec_file.stem
        pattern = None
        rle_file = directory / f"{name}.rle"
        if rle_file.exists():
            pattern, _, _ = rle_decode(rle_file.read_text())
        gates.append(parse_gate_spec(name, spec_file.read_text(), pattern))
    return GateLibrary(gates)


def builtin_library() -> GateLibrary:
    root = importlib.resources.files("golcircuits").joinpath("data/gates")
    with importlib.resources.as_file(root) as path:
        return load_library(path)


def write_gate(directory, g: GateDef):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{g.name}.spec").write_text(gate_spec_text(g))
    if g.pattern is not None:
        (directory / f"{g.name}.rle").write_text(rle_encode(g.pattern))
