"""Whole-pentagrid addressing: a central tile surrounded by five sector trees.

Sectors are numbered 1..5 counterclockwise around the central tile.  Inside a
sector, tiles are addressed by their node number in the sector's Fibonacci
tree.  Across sector borders the trees behave as if the five copies of a
level formed one cyclic row: the node before the leftmost node of sector ``s``
is the rightmost node of sector ``s-1`` on the same level, and the node after
the rightmost one is the leftmost node of sector ``s+1``.  The neighbour
formulas of :mod:`pentagrid.fibtree` then resolve every border entry by
wrapping it into the adjacent sector.  This rule was read off the geometric
layout and is checked against it in the test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

from . import fibtree
from .fibtree import STANDARD, TreeFlavor, level, level_first, level_last, level_size

BALL_CAP = 10
SECTORS = 5


class Tile(NamedTuple):
    """A tile address; ``Tile(0, 0)`` is the central tile."""

    sector: int
    node: int

    def __str__(self) -> str:
        return "C" if self.sector == 0 else f"{self.sector}:{self.node}"

    @property
    def is_center(self) -> bool:
        return self.sector == 0

    @property
    def level(self) -> int:
        """Tree level of the tile; the central tile sits at level -1."""
        return -1 if self.sector == 0 else level(self.node)


CENTER = Tile(0, 0)


def tile(sector: int, node: int) -> Tile:
    if not 1 <= sector <= SECTORS:
        raise ValueError(f"sector must be in 1..{SECTORS}, got {sector}")
    if node < 1:
        raise ValueError(f"node numbers start at 1, got {node}")
    return Tile(sector, node)


def parse_tile(text: str) -> Tile:
    text = text.strip()
    if text == "C":
        return CENTER
    sector, sep, node = text.partition(":")
    if not sep:
        raise ValueError(f"tile address must be 'C' or 's:n', got {text!r}")
    return tile(int(sector), _parse_node(node))


def _parse_node(text: str) -> int:
    from .fibcode import decode, is_standard

    if text.startswith("z:"):
        rep = text[2:]
        if not is_standard(rep):
            raise ValueError(f"{rep!r} is not a standard Fibonacci representation")
        return decode(rep)
    return int(text)


def _shift_sector(s: int, delta: int) -> int:
    return (s - 1 + delta) % SECTORS + 1


def _resolve(sector: int, value: int, lvl: int) -> Tile:
    if lvl < 0:
        return CENTER
    if value < level_first(lvl):
        return Tile(_shift_sector(sector, -1), value + level_size(lvl))
    if value > level_last(lvl):
        return Tile(_shift_sector(sector, 1), value - level_size(lvl))
    return Tile(sector, value)


def father_of(a: Tile, flavor: TreeFlavor = STANDARD) -> Optional[Tile]:
    if a.is_center:
        return None
    up = fibtree.father(a.node, flavor)
    return CENTER if up is None else Tile(a.sector, up)


@lru_cache(maxsize=1 << 16)
def neighbors_full(a: Tile, flavor: TreeFlavor = STANDARD) -> tuple[Tile, ...]:
    """The five neighbours of ``a`` counterclockwise, the father first.

    The central tile lists the five sector roots in sector order.
    """
    if a.is_center:
        return tuple(Tile(s, 1) for s in range(1, SECTORS + 1))
    if not 1 <= a.sector <= SECTORS:
        raise ValueError(f"invalid sector index {a.sector}")
    k = level(a.node)
    out = [_resolve(a.sector, v, k + off) for v, off in fibtree.neighbor_terms(a.node, flavor)]
    up = father_of(a, flavor)
    i = out.index(up)
    return tuple(out[i:] + out[:i])


def ball_tiles(radius: int) -> Iterator[Tile]:
    """Tiles of ball(radius) level by level, each level as one cyclic row."""
    yield CENTER
    for k in range(radius + 1):
        for s in range(1, SECTORS + 1):
            for n in range(level_first(k), level_last(k) + 1):
                yield Tile(s, n)


def ball_size(radius: int) -> int:
    return 1 + SECTORS * sum(level_size(k) for k in range(radius + 1))


@dataclass(frozen=True)
class Ball:
    """Central tile plus every sector tile down to tree level ``radius``.

    ``adjacency[t][j]`` is the neighbour across side ``j+1`` of ``t`` or
    ``None`` when that neighbour lies outside the ball.
    """

    radius: int
    flavor: TreeFlavor
    tiles: tuple[Tile, ...]
    adjacency: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.tiles)

    def __contains__(self, t) -> bool:
        return t in self.adjacency

    def neighbors(self, t: Tile) -> tuple[Optional[Tile], ...]:
        return self.adjacency[t]

    def side_toward(self, t: Tile, u: Tile) -> int:
        """0-based index of the side of ``t`` shared with ``u``."""
        return self.adjacency[t].index(u)

    def is_interior(self, t: Tile) -> bool:
        return None not in self.adjacency[t]

    def edges(self) -> Iterator[tuple[Tile, int, Tile, int]]:
        """Each shared side once, as ``(t, side_of_t, u, side_of_u)``."""
        index = {t: i for i, t in enumerate(self.tiles)}
        for t in self.tiles:
            for j, u in enumerate(self.adjacency[t]):
                if u is not None and index[u] > index[t]:
                    yield t, j, u, self.adjacency[u].index(t)

    def vertices(self) -> list[tuple[tuple[Tile, int], ...]]:
        """Interior vertices as the four (tile, corner) pairs meeting there.

        Corner ``j`` of a tile sits between its sides ``j`` and ``j+1``
        (0-based, mod 5).  Only vertices whose four tiles all lie in the ball
        are returned.
        """
        seen = set()
        out = []
        for t in self.tiles:
            for j in range(5):
                if (t, j) in seen:
                    continue
                ring = self._corner_ring(t, j)
                if ring is None:
                    continue
                seen.update(ring)
                out.append(tuple(ring))
        return out

    def _corner_ring(self, t: Tile, j: int):
        ring = [(t, j)]
        cur, c = t, j
        for _ in range(4):
            u = self.adjacency[cur][(c + 1) % 5]
            if u is None:
                return None
            k = self.adjacency[u].index(cur)
            cur, c = u, k
            if (cur, c) == ring[0]:
                break
            ring.append((cur, c))
        else:
            return None
        return ring if len(ring) == 4 else None


def ball(radius: int, flavor: TreeFlavor = STANDARD, cap: int = BALL_CAP) -> Ball:
    if radius < 0:
        raise ValueError("ball radius must be non-negative")
    if radius > cap:
        raise ValueError(f"ball radius {radius} exceeds cap {cap}")
    if flavor.kind not in ("standard", "best"):
        raise ValueError(f"no neighbour rule is known for the {flavor.kind} tree")
    tiles = tuple(ball_tiles(radius))
    members = set(tiles)
    adjacency = {}
    for t in tiles:
        adjacency[t] = tuple(u if u in members else None for u in neighbors_full(t, flavor))
    return Ball(radius, flavor, tiles, adjacency)
