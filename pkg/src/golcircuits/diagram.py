"""ASCII circuit diagrams: placement tokens on a 21x21 logical tile grid.

Grid cell (column i, row j) anchors a tile at half-tile coordinates
(2i, 2j).  Tokens are whitespace separated:

    .        empty tile
    <L><o>   gate letter plus orientation, where <o> is the direction of
             the primary output: > east, ^ north, < west, v south.
             Letters: W wire, S slow wire, L left turn, R right turn,
             F fanout (side tap left of flow), G fanout (tap right),
             N not, A and, O or, B/Q mirrored and/or (side input on the
             opposite edge), H half-adder (2x2)
    X<o>     crossover; X> legs E+N, X^ legs N+W, X< legs W+S, Xv legs S+E
    #        continuation cell of a 2x2 gate (anchored at its top-left)

Directive lines may precede or follow the grid:

    seed: (x,y) DIR <value>    initial input port value (exact values only)

``#`` at the start of a line begins a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DiagramError
from .values import parse_value

ORIENT_SUFFIXES = {">": "e", "^": "n", "<": "w", "v": "s"}

GATE_LETTERS = {
    "W": "wire",
    "S": "slow",
    "L": "turnl",
    "R": "turnr",
    "F": "fanl",
    "G": "fanr",
    "N": "not",
    "A": "and",
    "O": "or",
    "B": "andm",
    "Q": "orm",
    "H": "ha",
}

CROSS_NAMES = {">": "cross_en", "^": "cross_nw", "<": "cross_ws", "v": "cross_se"}

TWO_TILE = {"H"}

GRID_SIZE = 21


@dataclass(frozen=True)
class Placement:
    anchor: tuple  # half-tile coordinates, double-even
    gate: str  # library gate name
    token: str
    span: int = 1  # tiles per side


@dataclass(frozen=True)
class Diagram:
    placements: tuple
    seeds: tuple  # (pos, dir, value)

    def by_anchor(self):
        return {p.anchor: p for p in self.placements}

    def occupancy(self):
        """Map every claimed tile anchor to its placement."""
        occ = {}
        for p in self.placements:
            for dx in range(p.span):
                for dy in range(p.span):
                    occ[(p.anchor[0] + 2 * dx, p.anchor[1] + 2 * dy)] = p
        return occ


def _token_to_gate(tok: str, row: int, col: int) -> tuple:
    if len(tok) == 2 and tok[0] == "X" and tok[1] in CROSS_NAMES:
        return CROSS_NAMES[tok[1]], 1
    if len(tok) == 2 and tok[0] in GATE_LETTERS and tok[1] in ORIENT_SUFFIXES:
        base = GATE_LETTERS[tok[0]]
        name = f"{base}_{ORIENT_SUFFIXES[tok[1]]}"
        return name, (2 if tok[0] in TWO_TILE else 1)
    raise DiagramError(f"unknown token {tok!r}", row=row, col=col)


def parse_diagram(text: str) -> Diagram:
    placements = []
    seeds = []
    continuations = set()
    claimed = {}
    row = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("seed:"):
            rest = line[len("seed:"):].strip()
            try:
                pos_txt, d, val_txt = rest.split(None, 2)
                x, y = pos_txt.strip("()").split(",")
                seeds.append(((int(x), int(y)), d, parse_value(val_txt)))
            except ValueError as err:
                raise DiagramError(f"bad seed line: {err}") from err
            continue
        tokens = line.split()
        if len(tokens) > GRID_SIZE:
            raise DiagramError(f"more than {GRID_SIZE} tokens", row=row)
        for col, tok in enumerate(tokens):
            anchor = (2 * col, 2 * row)
            if tok == ".":
                continue
            if tok == "#":
                continuations.add(anchor)
                continue
            gate, span = _token_to_gate(tok, row, col)
            for dx in range(span):
                for dy in range(span):
                    tile = (anchor[0] + 2 * dx, anchor[1] + 2 * dy)
                    if tile in claimed:
                        raise DiagramError(
                            f"tile {tile} claimed by both {claimed[tile]} and {tok}",
                            row=row, col=col,
                        )
                    claimed[tile] = tok
            placements.append(Placement(anchor, gate, tok, span))
        row += 1
    if row > GRID_SIZE:
        raise DiagramError(f"more than {GRID_SIZE} rows")
    for p in placements:
        if p.span == 2:
            for dx, dy in ((2, 0), (0, 2), (2, 2)):
                tile = (p.anchor[0] + dx, p.anchor[1] + dy)
                if tile not in continuations:
                    raise DiagramError(
                        f"2x2 gate {p.token} at {p.anchor} missing '#' at {tile}"
                    )
    for c in continuations:
        if c not in {t for p in placements if p.span == 2
                     for t in ((p.anchor[0] + 2, p.anchor[1]),
                               (p.anchor[0], p.anchor[1] + 2),
                               (p.anchor[0] + 2, p.anchor[1] + 2))}:
            raise DiagramError(f"orphan continuation marker at {c}")
    return Diagram(tuple(placements), tuple(seeds))
