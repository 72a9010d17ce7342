"""Run-length-encoded pattern interchange (Golly-compatible B3/S23 dialect).

Dialect: header line ``x = <w>, y = <h>, rule = B3/S23``; body tokens
``<count?>b`` (dead), ``<count?>o`` (alive), ``<count?>$`` (end of row) and
``!`` (end of pattern).  ``#`` comment lines are permitted before the header
and ignored.  The encoder is canonical: runs are maximal, no trailing blank
runs are emitted, and lines are at most 70 characters.
"""

from __future__ import annotations

import re

from .core import WorldState, world
from .errors import RleError

HEADER_RE = re.compile(
    r"^\s*x\s*=\s*(\d+)\s*,\s*y\s*=\s*(\d+)\s*(?:,\s*rule\s*=\s*(\S+)\s*)?$"
)

RULE = "B3/S23"


def rle_decode(text) -> tuple[WorldState, int, int]:
    """Decode RLE text into (cells, width, height).

    The pattern is anchored at (0, 0), the top-left corner of the declared
    bounding box.  Malformed input raises RleError with line/column info.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = text.splitlines()
    header = None
    header_line = 0
    for i, line in enumerate(lines):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        header = stripped
        header_line = i
        break
    if header is None:
        raise RleError("missing RLE header")
    m = HEADER_RE.match(header)
    if m is None:
        raise RleError("malformed RLE header", line=header_line + 1)
    width, height = int(m.group(1)), int(m.group(2))
    rule = m.group(3)
    if rule is not None and rule.upper() != RULE.upper():
        raise RleError(f"unsupported rule {rule!r}", line=header_line + 1)

    cells = set()
    x = y = 0
    count = 0
    saw_end = False
    for li in range(header_line + 1, len(lines)):
        if saw_end:
            break
        line = lines[li]
        for ci, ch in enumerate(line):
            if saw_end:
                break
            if ch.isspace():
                continue
            if ch.isdigit():
                count = count * 10 + int(ch)
                continue
            run = count if count else 1
            count = 0
            if ch == "b":
                x += run
            elif ch == "o":
                if y >= height or x + run > width:
                    raise RleError(
                        "run extends past declared bounds", line=li + 1, column=ci + 1
                    )
                for k in range(run):
                    cells.add((x + k, y))
                x += run
            elif ch == "$":
                y += run
                x = 0
            elif ch == "!":
                saw_end = True
            else:
                raise RleError(f"illegal symbol {ch!r}", line=li + 1, column=ci + 1)
        if count:
            raise RleError("count split across lines", line=li + 1)
    if not saw_end:
        raise RleError("missing '!' terminator")
    if y > height:
        raise RleError("rows extend past declared bounds")
    return world(cells), width, height


def rle_encode(state: WorldState) -> str:
    """Encode a world state as canonical RLE.

    Coordinates must be non-negative; absolute positions inside the declared
    box are preserved (leading blank runs are emitted as needed), so
    ``rle_decode(rle_encode(s))[0] == s`` for any state in the first quadrant.
    """
    if not state:
        return f"x = 0, y = 0, rule = {RULE}\n!\n"
    if any(x < 0 or y < 0 for x, y in state):
        raise RleError("cannot encode negative coordinates; translate first")
    width = max(x for x, _ in state) + 1
    height = max(y for _, y in state) + 1

    tokens = []
    rows = {}
    for x, y in state:
        rows.setdefault(y, []).append(x)
    prev_row = 0
    sorted_rows = sorted(rows)
    if sorted_rows[0] > 0:
        tokens.append((sorted_rows[0], "$"))
        prev_row = sorted_rows[0]
    for yi, y in enumerate(sorted_rows):
        if yi > 0:
            tokens.append((y - prev_row, "$"))
            prev_row = y
        xs = sorted(rows[y])
        x = 0
        i = 0
        while i < len(xs):
            j = i
            while j + 1 < len(xs) and xs[j + 1] == xs[j] + 1:
                j += 1
            if xs[i] > x:
                tokens.append((xs[i] - x, "b"))
            tokens.append((j - i + 1, "o"))
            x = xs[j] + 1
            i = j + 1
    tokens.append((1, "!"))

    body_parts = []
    for run, sym in tokens:
        body_parts.append(sym if run == 1 else f"{run}{sym}")
    lines = []
    current = ""
    for part in body_parts:
        if len(current) + len(part) > 70:
            lines.append(current)
            current = ""
        current += part
    if current:
        lines.append(current)
    body = "\n".join(lines)
    return f"x = {width}, y = {height}, rule = {RULE}\n{body}\n"
