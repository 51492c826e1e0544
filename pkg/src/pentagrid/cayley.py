"""Four-coloring of pentagon sides that turns the pentagrid into a Cayley graph.

Colors are ``a``, ``b``, ``c`` and ``d``.  A coloring is valid when each side
has one color seen from both tiles, the four sides meeting at any vertex carry
four different colors, and every tile reads ``d β γ β γ`` counterclockwise for
some ``{β, γ} ⊂ {a, b, c}``.  Reading each color as an involutive generator
then makes the tiles the elements of a group generated by four involutions.

A pattern lists the five side colors of a tile starting from the side shared
with its father (for the central tile, the side facing sector 1).  The type
of a tile is the 1-based position of ``d`` in its pattern; its shade is black
for 2-nodes and white for 3-nodes of the standard tree.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional, Sequence

from .fibtree import STANDARD, NodeKind, status
from .grid import BALL_CAP, CENTER, Ball, Tile, ball, parse_tile

COLORS = ("a", "b", "c", "d")

Pattern = tuple[str, ...]

CENTER_PATTERN: Pattern = ("d", "a", "b", "a", "b")
ROOT_PATTERNS: tuple[Pattern, ...] = (
    ("d", "a", "b", "a", "b"),
    ("a", "c", "a", "c", "d"),
    ("b", "c", "b", "c", "d"),
    ("a", "c", "a", "c", "d"),
    ("b", "c", "b", "d", "c"),
)


class ColoringError(RuntimeError):
    """The propagation ran out of choices."""


class Shade(str, enum.Enum):
    WHITE = "white"
    BLACK = "black"


class NodeType(NamedTuple):
    type: int
    shade: Shade = Shade.WHITE

    def __str__(self) -> str:
        return f"{self.type}_b" if self.shade is Shade.BLACK else str(self.type)


def is_alpha_pattern(p: Sequence[str]) -> bool:
    """True for rotations of ``d β γ β γ`` with β, γ distinct colors of {a, b, c}."""
    if len(p) != 5 or list(p).count("d") != 1:
        return False
    i = list(p).index("d")
    beta, gamma = p[(i + 1) % 5], p[(i + 2) % 5]
    return (
        beta != gamma
        and "d" not in (beta, gamma)
        and p[(i + 3) % 5] == beta
        and p[(i + 4) % 5] == gamma
        and all(col in COLORS for col in p)
    )


def alpha_of(p: Sequence[str]) -> str:
    """The letter α of an α-tile: the color among a, b, c missing from it."""
    if not is_alpha_pattern(p):
        raise ValueError(f"{''.join(p)} is not a d-beta-gamma-beta-gamma pattern")
    (missing,) = set("abc") - set(p)
    return missing


def node_type(p: Sequence[str], shade: Shade = Shade.WHITE) -> NodeType:
    n = list(p).count("d")
    if n != 1:
        raise ValueError(f"pattern {''.join(p)} has {n} sides colored d, expected one")
    return NodeType(list(p).index("d") + 1, Shade(shade))


def shade_of(t: Tile) -> Shade:
    if t.is_center:
        return Shade.WHITE
    return Shade.BLACK if status(t.node, STANDARD) is NodeKind.TWO else Shade.WHITE


# -- the table of son types --------------------------------------------------------

class Signature(NamedTuple):
    """Type and shade of a node with the types on its lower sides.

    For a white node these are its neighbours 2..5: its three sons and the
    first son of the next node.  A black node lists neighbours 3..5.  In
    table entries ``x`` and ``y`` stand for any type.
    """

    shade: Shade
    type: int
    below: str

    def matches(self, other: "Signature") -> bool:
        return (
            self.shade is other.shade
            and self.type == other.type
            and len(self.below) == len(other.below)
            and all(a in "xy" or b in "xy" or a == b for a, b in zip(self.below, other.below))
        )

    def __str__(self) -> str:
        head = f"{self.type}_b" if self.shade is Shade.BLACK else str(self.type)
        return f"{head}:{self.below}"


@dataclass(frozen=True)
class TableRow:
    number: int
    pattern: str
    entries: tuple[Signature, ...]
    raises: tuple[int, ...]


def _row(number, pattern, entries, raises=()):
    sigs = []
    for item in entries.split():
        head, below = item.split(":")
        shade = Shade.BLACK if head.endswith("b") else Shade.WHITE
        sigs.append(Signature(shade, int(head[0]), below))
    return TableRow(number, pattern, tuple(sigs), tuple(raises))


SON_TABLE: tuple[TableRow, ...] = (
    _row(1, "5 5", "5:x222 5:2222", (6,)),
    _row(2, "5 5_b", "5:x222 5b:222", (6,)),
    _row(3, "5_b 5", "5b:x22 5:2222", (6,)),
    _row(4, "5 4", "5:x222 4:2215", (8,)),
    _row(5, "4 1 5", "4:x215 1:5554 5:4222", (9, 13)),
    _row(6, "2 2 2_b", "2:1551 2:1555 2b:55x", (12,)),
    _row(7, "2_b 2 1", "2b:551 2:1555 1:555x"),
    _row(8, "2 1 5_b", "2:1555 1:5555 5b:542", (11,)),
    _row(9, "5 4_b 2", "5:x222 4b:211 2:155y", (10, 14)),
    _row(10, "2_b 1 1_b", "2b:555 1:5555 1b:55x"),
    _row(11, "5_b 4 2_b", "5b:x22 4:2215 2b:55y", (7,)),
    _row(12, "5 1_b 5", "5:x222 1b:223 5:3222", (15,)),
    _row(13, "5 4_b 2", "5:x222 4b:211 2:155y", (10, 14)),
    _row(14, "1 1_b 5", "1:5555 1b:554 5:4222", (13,)),
    _row(15, "2 3_b 2", "2:1551 3b:151 2:155x", (12,)),
)


def table_rows_for(sig: Signature) -> list[int]:
    return [row.number for row in SON_TABLE if any(e.matches(sig) for e in row.entries)]


def _lower_slots(t: Tile) -> slice:
    return slice(1, 5) if shade_of(t) is Shade.WHITE else slice(2, 5)


# -- side and vertex bookkeeping ---------------------------------------------------

@dataclass(frozen=True)
class _Skeleton:
    """Sides and vertices of a ball, with sides named canonically."""

    edge: dict  # (tile, side) -> canonical side id
    vertex_edges: dict  # vertex id -> set of side ids
    edge_vertices: dict  # side id -> list of vertex ids
    rings: list  # interior vertices as corner rings


def _skeleton(b: Ball) -> _Skeleton:
    edge = {}
    for t in b.tiles:
        for s, u in enumerate(b.neighbors(t)):
            edge[(t, s)] = (t, s) if u is None else min((t, s), (u, b.side_toward(u, t)))
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # corner c of a tile sits between its sides c and c+1
    for t in b.tiles:
        for c in range(5):
            u = b.neighbors(t)[(c + 1) % 5]
            if u is not None:
                parent[find((t, c))] = find((u, b.side_toward(u, t)))
    vertex_edges: dict = {}
    for t in b.tiles:
        for c in range(5):
            vertex_edges.setdefault(find((t, c)), set()).update(
                (edge[(t, c)], edge[(t, (c + 1) % 5)])
            )
    edge_vertices: dict = {}
    for v, es in vertex_edges.items():
        for e in es:
            edge_vertices.setdefault(e, []).append(v)
    return _Skeleton(edge, vertex_edges, edge_vertices, b.vertices())


# -- colorings ----------------------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    ball: Ball
    sides: Mapping[Tile, Pattern] = field(repr=False)

    def __getitem__(self, t: Tile) -> Pattern:
        return self.sides[t]

    def node_type(self, t: Tile) -> NodeType:
        return node_type(self.sides[t], shade_of(t))

    def signature(self, t: Tile) -> Optional[Signature]:
        """The table signature of t, or None when its lower sides leave the ball."""
        if t.is_center:
            return None
        lower = self.ball.neighbors(t)[_lower_slots(t)]
        if any(u is None or u not in self.sides for u in lower):
            return None
        below = "".join(str(self.sides[u].index("d") + 1) for u in lower)
        return Signature(shade_of(t), self.sides[t].index("d") + 1, below)

    def to_json(self) -> str:
        return json.dumps(
            [{"tile": str(t), "sides": list(self.sides[t])} for t in self.ball.tiles if t in self.sides],
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "Coloring":
        data = json.loads(text)
        sides = {parse_tile(item["tile"]): tuple(item["sides"]) for item in data}
        radius = max((t.level for t in sides), default=0)
        return cls(ball(max(radius, 0)), sides)


def observed_signatures(coloring: Coloring) -> Counter:
    out: Counter = Counter()
    for t in coloring.ball.tiles:
        sig = coloring.signature(t)
        if sig is not None:
            out[sig] += 1
    return out


def signatures_outside_table(coloring: Coloring) -> list[Signature]:
    return sorted((s for s in observed_signatures(coloring) if not table_rows_for(s)), key=str)


@dataclass
class ColoringReport:
    side_mismatches: list = field(default_factory=list)
    vertex_defects: list = field(default_factory=list)
    pattern_defects: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.side_mismatches or self.vertex_defects or self.pattern_defects)

    def __len__(self) -> int:
        return len(self.side_mismatches) + len(self.vertex_defects) + len(self.pattern_defects)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "side_mismatches": [[str(t), j + 1, str(u), k + 1] for t, j, u, k in self.side_mismatches],
            "vertex_defects": [[[str(t), c] for t, c in ring] for ring in self.vertex_defects],
            "pattern_defects": [str(t) for t in self.pattern_defects],
        }


def verify_coloring(coloring: Coloring) -> ColoringReport:
    """List every violated condition; an empty report means the coloring is valid."""
    b = coloring.ball
    sides = coloring.sides
    missing = [t for t in b.tiles if t not in sides]
    if missing:
        raise ValueError(f"coloring does not cover the ball; first missing tile {missing[0]}")
    report = ColoringReport()
    for t, j, u, k in b.edges():
        if sides[t][j] != sides[u][k]:
            report.side_mismatches.append((t, j, u, k))
    for ring in b.vertices():
        views = Counter()
        for t, c in ring:
            views[sides[t][c]] += 1
            views[sides[t][(c + 1) % 5]] += 1
        if any(views[col] != 2 for col in COLORS):
            report.vertex_defects.append(ring)
    for t in b.tiles:
        if not is_alpha_pattern(sides[t]):
            report.pattern_defects.append(t)
    return report


def initial_coloring() -> Coloring:
    """The central tile and the five sector roots."""
    sides = {CENTER: CENTER_PATTERN}
    for s, pat in enumerate(ROOT_PATTERNS, start=1):
        sides[Tile(s, 1)] = pat
    return Coloring(ball(0), sides)


def _rotations(d_pref: Sequence[int]) -> list[Pattern]:
    out = []
    for pos in d_pref:
        for beta, gamma in itertools.permutations("abc", 2):
            pat = [""] * 5
            for i, col in enumerate(("d", beta, gamma, beta, gamma)):
                pat[(pos + i) % 5] = col
            out.append(tuple(pat))
    return out


# d on side 2 first, then 5, 1, 4, 3; colors lexicographic inside
_CANDIDATES = _rotations((1, 4, 0, 3, 2))


def extend_coloring(radius: int, cap: int = BALL_CAP) -> Coloring:
    """Color ball(radius) level by level, keeping every son signature in the table.

    Tiles are visited in level order.  Each takes the first admissible
    pattern, d on side 2 being tried first; on a dead end the search backs up.
    """
    b = ball(radius, STANDARD, cap)
    sk = _skeleton(b)
    order = list(b.tiles)
    index = {t: i for i, t in enumerate(order)}
    fixed = initial_coloring().sides
    # a node's signature becomes checkable once its last lower neighbour is placed
    due: dict[int, list[Tile]] = {}
    for t in order:
        if t.is_center:
            continue
        lower = b.neighbors(t)[_lower_slots(t)]
        if all(u is not None for u in lower):
            due.setdefault(max(index[u] for u in lower), []).append(t)

    color: dict = {}
    seen_at: dict = {v: set() for v in sk.vertex_edges}
    placed: dict[Tile, Pattern] = {}
    trail: list[list] = []
    choice = [0] * len(order)

    def undo(newly):
        for e in newly:
            for v in sk.edge_vertices[e]:
                seen_at[v].discard(color[e])
            del color[e]

    def signature_ok(t: Tile) -> bool:
        lower = b.neighbors(t)[_lower_slots(t)]
        below = "".join(str(placed[u].index("d") + 1) for u in lower)
        return bool(table_rows_for(Signature(shade_of(t), placed[t].index("d") + 1, below)))

    i = 0
    while i < len(order):
        t = order[i]
        cands = [fixed[t]] if t in fixed else _CANDIDATES
        ok = False
        while choice[i] < len(cands) and not ok:
            pat = cands[choice[i]]
            choice[i] += 1
            newly = []
            ok = True
            for s in range(5):
                e = sk.edge[(t, s)]
                col = pat[s]
                if e in color:
                    if color[e] != col:
                        ok = False
                        break
                    continue
                if any(col in seen_at[v] for v in sk.edge_vertices[e]):
                    ok = False
                    break
                color[e] = col
                newly.append(e)
                for v in sk.edge_vertices[e]:
                    seen_at[v].add(col)
            if ok:
                placed[t] = pat
                if not all(signature_ok(u) for u in due.get(i, ())):
                    ok = False
                    del placed[t]
            if ok:
                trail.append(newly)
            else:
                undo(newly)
        if ok:
            i += 1
            continue
        choice[i] = 0
        i -= 1
        if i < 0:
            raise ColoringError(f"no admissible coloring around tile {t}")
        undo(trail.pop())
        del placed[order[i]]
    return Coloring(b, placed)
