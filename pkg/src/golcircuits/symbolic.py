"""Symbolic GOL: each cell holds a boolean expression over aged stream variables.

Expressions are hash-consed so structural equality is identity and the
per-neighborhood update can be memoized.  The update rule enumerates all
assignments to the variables appearing in a 3x3 neighborhood (Shannon
expansion with greedy collapse), which stays cheap because gate simulations
only ever mix a handful of variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import WorldState, world
from .errors import VarCapError

VAR_CAP = 8

STREAMS = ("A", "B")

# node kinds
_T, _F, _V, _N, _A, _O = "T", "F", "V", "N", "A", "O"


class BExp:
    """Hash-consed boolean expression node. Construct via the factory functions."""

    __slots__ = ("kind", "a", "b", "stream", "age", "serial", "_vars")

    def __init__(self, kind, a=None, b=None, stream=None, age=None, serial=0):
        self.kind = kind
        self.a = a
        self.b = b
        self.stream = stream
        self.age = age
        self.serial = serial
        self._vars = None

    def __repr__(self):
        return bexp_text(self)


_intern: dict = {}
_serial = [0]


def _mk(key, *args, **kw):
    node = _intern.get(key)
    if node is None:
        _serial[0] += 1
        node = BExp(*args, serial=_serial[0], **kw)
        _intern[key] = node
    return node


TRUE = _mk((_T,), _T)
FALSE = _mk((_F,), _F)


def var(stream: str, age: int) -> BExp:
    if stream not in STREAMS:
        raise ValueError(f"unknown stream tag {stream!r}")
    if age < 0:
        raise ValueError("variable age must be a natural number")
    return _mk((_V, stream, age), _V, stream=stream, age=age)


def bnot(e: BExp) -> BExp:
    if e is TRUE:
        return FALSE
    if e is FALSE:
        return TRUE
    if e.kind == _N:
        return e.a
    return _mk((_N, id(e)), _N, a=e)


def band(x: BExp, y: BExp) -> BExp:
    if x is FALSE or y is FALSE:
        return FALSE
    if x is TRUE:
        return y
    if y is TRUE:
        return x
    if x is y:
        return x
    if (x.kind == _N and x.a is y) or (y.kind == _N and y.a is x):
        return FALSE
    return _mk((_A, id(x), id(y)), _A, a=x, b=y)


def bor(x: BExp, y: BExp) -> BExp:
    if x is TRUE or y is TRUE:
        return TRUE
    if x is FALSE:
        return y
    if y is FALSE:
        return x
    if x is y:
        return x
    if (x.kind == _N and x.a is y) or (y.kind == _N and y.a is x):
        return TRUE
    return _mk((_O, id(x), id(y)), _O, a=x, b=y)


def bexp_vars(e: BExp) -> frozenset:
    """Set of (stream, age) variables syntactically present."""
    if e._vars is None:
        if e.kind in (_T, _F):
            e._vars = frozenset()
        elif e.kind == _V:
            e._vars = frozenset({(e.stream, e.age)})
        elif e.kind == _N:
            e._vars = bexp_vars(e.a)
        else:
            e._vars = bexp_vars(e.a) | bexp_vars(e.b)
    return e._vars


def bexp_eval(e: BExp, sigma) -> bool:
    """Evaluate under an assignment mapping (stream, age) -> bool."""
    if e is TRUE:
        return True
    if e is FALSE:
        return False
    if e.kind == _V:
        key = (e.stream, e.age)
        if key not in sigma:
            raise KeyError(f"unbound variable {e.stream}{e.age}")
        return bool(sigma[key])
    if e.kind == _N:
        return not bexp_eval(e.a, sigma)
    if e.kind == _A:
        return bexp_eval(e.a, sigma) and bexp_eval(e.b, sigma)
    return bexp_eval(e.a, sigma) or bexp_eval(e.b, sigma)


_cofactor_cache: dict = {}


def cofactor(e: BExp, v, value: bool) -> BExp:
    """Substitute a constant for variable ``v`` and simplify."""
    if v not in bexp_vars(e):
        return e
    key = (id(e), v, value)
    out = _cofactor_cache.get(key)
    if out is None:
        if e.kind == _V:
            out = TRUE if value else FALSE
        elif e.kind == _N:
            out = bnot(cofactor(e.a, v, value))
        elif e.kind == _A:
            out = band(cofactor(e.a, v, value), cofactor(e.b, v, value))
        else:
            out = bor(cofactor(e.a, v, value), cofactor(e.b, v, value))
        _cofactor_cache[key] = out
    return out


_age_cache: dict = {}


def age_bexp(e: BExp, delta: int = 1) -> BExp:
    """Replace every Var(s, k) with Var(s, k + delta)."""
    if not bexp_vars(e):
        return e
    key = (id(e), delta)
    out = _age_cache.get(key)
    if out is None:
        if e.kind == _V:
            out = var(e.stream, e.age + delta)
        elif e.kind == _N:
            out = bnot(age_bexp(e.a, delta))
        elif e.kind == _A:
            out = band(age_bexp(e.a, delta), age_bexp(e.b, delta))
        else:
            out = bor(age_bexp(e.a, delta), age_bexp(e.b, delta))
        _age_cache[key] = out
    return out


_equiv_cache: dict = {}


def equiv(e1: BExp, e2: BExp, var_cap: int = VAR_CAP) -> bool:
    """Semantic equality by truth-table enumeration."""
    if e1 is e2:
        return True
    key = (id(e1), id(e2)) if id(e1) < id(e2) else (id(e2), id(e1))
    out = _equiv_cache.get(key)
    if out is None:
        vs = sorted(bexp_vars(e1) | bexp_vars(e2))
        if len(vs) > var_cap:
            raise VarCapError(len(vs), var_cap)
        out = True
        for bits in range(1 << len(vs)):
            sigma = {v: bool(bits >> i & 1) for i, v in enumerate(vs)}
            if bexp_eval(e1, sigma) != bexp_eval(e2, sigma):
                out = False
                break
        _equiv_cache[key] = out
    return out


def gol_rule(center: bool, live_neighbors: int) -> bool:
    return live_neighbors == 3 or (center and live_neighbors == 2)


_next_cache: dict = {}


def next_cell_expr(center: BExp, nbrs, var_cap: int = VAR_CAP, cell=None) -> BExp:
    """Symbolic successor of one cell from its 8 neighbor expressions.

    Logically equivalent to enumerating every assignment of the variables in
    the neighborhood and applying B3/S23 to the evaluated bits.
    """
    nbrs = tuple(nbrs)
    if len(nbrs) != 8:
        raise ValueError("need exactly 8 neighbor expressions")
    exprs = (center,) + nbrs
    key = tuple(id(e) for e in exprs)
    out = _next_cache.get(key)
    if out is not None:
        return out
    vs = set()
    for e in exprs:
        vs |= bexp_vars(e)
    if len(vs) > var_cap:
        raise VarCapError(len(vs), var_cap, cell=cell)
    out = _shannon(exprs, sorted(vs))
    _next_cache[key] = out
    return out


def _shannon(exprs, vs) -> BExp:
    if not vs:
        # all constants
        center = exprs[0] is TRUE
        count = sum(e is TRUE for e in exprs[1:])
        return TRUE if gol_rule(center, count) else FALSE
    v, rest = vs[0], vs[1:]
    hi = _shannon(tuple(cofactor(e, v, True) for e in exprs), rest)
    lo = _shannon(tuple(cofactor(e, v, False) for e in exprs), rest)
    if hi is lo:
        return hi
    vv = var(*v)
    if hi is TRUE and lo is FALSE:
        return vv
    if hi is FALSE and lo is TRUE:
        return bnot(vv)
    return bor(band(vv, hi), band(bnot(vv), lo))


def bexp_text(e: BExp) -> str:
    if e is TRUE:
        return "true"
    if e is FALSE:
        return "false"
    if e.kind == _V:
        return f"{e.stream}{e.age}"
    if e.kind == _N:
        return f"!{_paren(e.a)}"
    op = " & " if e.kind == _A else " | "
    return op.join(_paren(x) for x in (e.a, e.b))


def _paren(e: BExp) -> str:
    if e.kind in (_A, _O):
        return f"({bexp_text(e)})"
    return bexp_text(e)


@dataclass
class SymGrid:
    """Rectangular symbolic state; cells outside the bounds are False.

    ``cells`` stores only non-False expressions.  ``bounds`` is the declared
    rectangle (x0, y0, x1, y1), inclusive of x0/y0 and exclusive of x1/y1.
    """

    bounds: tuple
    cells: dict = field(default_factory=dict)

    def __post_init__(self):
        x0, y0, x1, y1 = self.bounds
        for (x, y), e in self.cells.items():
            if e is FALSE:
                raise ValueError("cells dict must not store False entries")
            if not (x0 <= x < x1 and y0 <= y < y1):
                raise ValueError(f"cell {(x, y)} outside declared bounds")

    def get(self, x: int, y: int) -> BExp:
        return self.cells.get((x, y), FALSE)

    def support(self):
        return self.cells.keys()

    def grid_vars(self) -> frozenset:
        out = set()
        for e in self.cells.values():
            out |= bexp_vars(e)
        return frozenset(out)


def grid_from_world(state: WorldState, margin: int = 0) -> SymGrid:
    from .core import bounding_box

    if not state:
        return SymGrid((0, 0, 0, 0), {})
    x0, y0, x1, y1 = bounding_box(state)
    bounds = (x0 - margin, y0 - margin, x1 + 1 + margin, y1 + 1 + margin)
    return SymGrid(bounds, {c: TRUE for c in state})


def sym_step(g: SymGrid, var_cap: int = VAR_CAP) -> SymGrid:
    """One symbolic generation; the declared rectangle grows by 1 per side."""
    x0, y0, x1, y1 = g.bounds
    new_bounds = (x0 - 1, y0 - 1, x1 + 1, y1 + 1)
    candidates = set()
    for (x, y) in g.cells:
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                candidates.add((x + dx, y + dy))
    new_cells = {}
    for (x, y) in candidates:
        nbrs = tuple(
            g.get(x + dx, y + dy)
            for dx, dy in (
                (-1, -1), (0, -1), (1, -1),
                (-1, 0), (1, 0),
                (-1, 1), (0, 1), (1, 1),
            )
        )
        e = next_cell_expr(g.get(x, y), nbrs, var_cap=var_cap, cell=(x, y))
        if e is not FALSE:
            new_cells[(x, y)] = e
    return SymGrid(new_bounds, new_cells)


def age_grid(g: SymGrid, delta: int = 1) -> SymGrid:
    aged = {}
    for c, e in g.cells.items():
        aged[c] = age_bexp(e, delta)
    return SymGrid(g.bounds, aged)


def concretize(g: SymGrid, sigma) -> WorldState:
    return world(c for c, e in g.cells.items() if bexp_eval(e, sigma))


def grids_equiv(g1: SymGrid, g2: SymGrid, var_cap: int = VAR_CAP) -> bool:
    for c in set(g1.cells) | set(g2.cells):
        if not equiv(g1.cells.get(c, FALSE), g2.cells.get(c, FALSE), var_cap):
            return False
    return True


def dump_grid(g: SymGrid) -> str:
    """Glyph rendering: '.' False, '#' True, 'a'/'b' pure single variables,
    '?' for anything else.  Used in golden tests."""
    x0, y0, x1, y1 = g.bounds
    if not g.cells:
        return ""
    xs = [x for x, _ in g.cells]
    ys = [y for _, y in g.cells]
    x0, x1 = min(xs), max(xs) + 1
    y0, y1 = min(ys), max(ys) + 1
    rows = []
    for y in range(y0, y1):
        row = []
        for x in range(x0, x1):
            e = g.get(x, y)
            if e is FALSE:
                row.append(".")
            elif e is TRUE:
                row.append("#")
            elif e.kind == _V:
                row.append(e.stream.lower())
            else:
                row.append("?")
        rows.append("".join(row))
    return "\n".join(rows)
