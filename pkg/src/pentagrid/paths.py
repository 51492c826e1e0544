"""Closed paths in the pentagrid and the pumping argument against automaticity.

The family P_n lives in the subtree B of sector 1 rooted at G, the leftmost
son of the sector root.  P_n walks down B's leftmost branch to depth n,
crosses that level from left to right and climbs B's rightmost branch back
to G.  Two tiles on one level never share a side.  The crossing therefore
steps through the father of the left tile, which also touches the next tile
on the level.

Pumping repeats a stretch of the leftmost branch.  The rest of the path is
carried along by the map sending the subtree below one branch tile onto the
subtree below a deeper one.  Every standard-tree subtree rooted at a 2-node
has the same shape, so that map is exact on addresses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Optional, Sequence

from . import fibtree
from .fibtree import STANDARD, NodeKind
from .grid import BALL_CAP, Tile, neighbors_full, parse_tile

SECTOR = 1
G = Tile(SECTOR, 2)


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    """Tiles T_0..T_n; ``spine`` is the index of the last leftmost-branch tile."""

    tiles: tuple[Tile, ...]
    spine: Optional[int] = None

    def __post_init__(self):
        if not self.tiles:
            raise PathError("a path has at least one tile")
        check_path(self.tiles)

    def __len__(self) -> int:
        """Length in steps, one less than the number of tiles."""
        return len(self.tiles) - 1

    @property
    def start(self) -> Tile:
        return self.tiles[0]

    @property
    def end(self) -> Tile:
        return self.tiles[-1]

    def to_json(self) -> str:
        return json.dumps([str(t) for t in self.tiles])

    @classmethod
    def from_json(cls, text: str) -> "Path":
        return cls(tuple(parse_tile(s) for s in json.loads(text)))


def adjacent(a: Tile, b: Tile) -> bool:
    return b in neighbors_full(a, STANDARD)


def check_path(tiles: Sequence[Tile]) -> None:
    for i in range(len(tiles) - 1):
        if not adjacent(tiles[i], tiles[i + 1]):
            raise PathError(f"tiles {tiles[i]} and {tiles[i + 1]} (steps {i}, {i + 1}) share no side")


def is_closed(p: Path) -> bool:
    return p.start == p.end


# -- the family P_n -----------------------------------------------------------------

def _first_son(n: int) -> int:
    return fibtree.sons(n, STANDARD)[0]


def _last_son(n: int) -> int:
    return fibtree.sons(n, STANDARD)[-1]


def leftmost_branch(root: int, depth: int) -> list[int]:
    out = [root]
    for _ in range(depth):
        out.append(_first_son(out[-1]))
    return out


def rightmost_branch(root: int, depth: int) -> list[int]:
    out = [root]
    for _ in range(depth):
        out.append(_last_son(out[-1]))
    return out


def _crossing(left: int, right: int) -> list[int]:
    """Walk along one level from left to right, through fathers."""
    out = [left]
    for m in range(left, right):
        up = fibtree.father(m, STANDARD)
        out.extend((up, m + 1))
    return out


def _pn_nodes(root: int, n: int) -> tuple[list[int], int]:
    lam = leftmost_branch(root, n)
    rho = rightmost_branch(root, n)
    nodes = lam[:-1] + _crossing(lam[-1], rho[-1]) + rho[-2::-1]
    return nodes, n


def build_Pn(n: int, cap: int = BALL_CAP) -> Path:
    """The closed path P_n starting and ending at G."""
    if n < 1:
        raise ValueError("P_n is defined for n >= 1")
    if n + 1 > cap:
        raise ValueError(f"P_{n} reaches tree level {n + 1}, beyond the cap {cap}")
    nodes, spine = _pn_nodes(G.node, n)
    return Path(tuple(Tile(SECTOR, v) for v in nodes), spine)


# -- pumping ------------------------------------------------------------------------

def subtree_map(src: int, dst: int) -> Callable[[int], int]:
    """Address map from the subtree at src onto the subtree at dst.

    Both roots must have the same status.  Each level of a subtree is a
    contiguous run of node numbers, so the map is a shift per level.
    """
    if fibtree.status(src, STANDARD) is not fibtree.status(dst, STANDARD):
        raise PathError(f"subtrees at {src} and {dst} have different shapes")
    base = fibtree.level(src)
    src_left, dst_left = [src], [dst]

    def image(n: int) -> int:
        depth = fibtree.level(n) - base
        if depth < 0:
            raise PathError(f"node {n} is not below {src}")
        while len(src_left) <= depth:
            src_left.append(_first_son(src_left[-1]))
            dst_left.append(_first_son(dst_left[-1]))
        return dst_left[depth] + (n - src_left[depth])

    return image


def pump(p: Path, i: int, j: int, m: int) -> Path:
    """Insert m extra copies of T_{i+1}..T_j and translate the tail to match."""
    if p.spine is None:
        raise PathError("path carries no leftmost-branch segment to pump")
    if not 0 <= i < j <= p.spine:
        raise PathError(f"pump sites must satisfy 0 <= i < j <= {p.spine}, got i={i}, j={j}")
    if m < 0:
        raise ValueError("repetition count must be non-negative")
    if m == 0:
        return p
    k = j - i
    lam_j = p.tiles[j].node
    deeper = leftmost_branch(lam_j, k * m)
    tau = subtree_map(p.tiles[0].node, leftmost_branch(p.tiles[0].node, k * m)[-1])
    head = list(p.tiles[: j + 1])
    inserted = [Tile(SECTOR, v) for v in deeper[1:]]
    tail = [Tile(SECTOR, tau(t.node)) for t in p.tiles[j + 1 :]]
    return Path(tuple(head + inserted + tail), p.spine + k * m)


@dataclass(frozen=True)
class PumpingWitness:
    n: int
    k: int
    m: int
    start: Tile
    end: Tile
    closed: bool
    length: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "start": str(self.start),
            "end": str(self.end),
            "closed": self.closed,
            "length": self.length,
        }


def pumping_witness(n: int, k: int, m: int, i: int = 0) -> PumpingWitness:
    """Pump P_n with period k from spine index i and compare its endpoints."""
    if k < 1 or i + k > n:
        raise PathError(f"period {k} from index {i} does not fit the spine of P_{n}")
    q = pump(build_Pn(n), i, i + k, m)
    return PumpingWitness(n, k, m, q.start, q.end, is_closed(q), len(q))


# -- automata -----------------------------------------------------------------------

@dataclass(frozen=True)
class PathDFA:
    states: tuple
    alphabet: tuple
    delta: Mapping[tuple, Hashable] = field(repr=False)
    start: Hashable
    accept: frozenset

    def __post_init__(self):
        if self.start not in self.states:
            raise ValueError(f"start state {self.start!r} is not a state")
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.delta:
                    raise ValueError(f"missing transition from {q!r} on {a!r}")
                if self.delta[(q, a)] not in self.states:
                    raise ValueError(f"transition from {q!r} on {a!r} leaves the state set")

    @classmethod
    def from_dict(cls, data: Mapping) -> "PathDFA":
        delta = {}
        for q, row in data["delta"].items():
            for a, target in row.items():
                delta[(q, a)] = target
        return cls(tuple(data["states"]), tuple(data["alphabet"]), delta, data["start"],
                   frozenset(data["accept"]))

    @classmethod
    def accept_all(cls, alphabet: Sequence) -> "PathDFA":
        return cls(("q",), tuple(alphabet), {("q", a): "q" for a in alphabet}, "q", frozenset({"q"}))


@dataclass(frozen=True)
class DFARun:
    accepted: bool
    trace: tuple
    repeat: Optional[tuple[int, int]]  # two spine indices with equal (symbol, state)


def run_dfa(d: PathDFA, p: Path, symbols: Mapping[Tile, Hashable]) -> DFARun:
    """Run d over the symbols of p's tiles; trace[t] is the state before tile t."""
    state = d.start
    trace = [state]
    first_seen: dict = {}
    repeat = None
    for t_index, tile in enumerate(p.tiles):
        try:
            a = symbols[tile]
        except KeyError:
            raise ValueError(f"no symbol given for tile {tile}") from None
        if p.spine is not None and t_index <= p.spine and repeat is None:
            key = (a, state)
            if key in first_seen:
                repeat = (first_seen[key], t_index)
            else:
                first_seen[key] = t_index
        try:
            state = d.delta[(state, a)]
        except KeyError:
            raise ValueError(f"malformed automaton: no move from {state!r} on {a!r}") from None
        trace.append(state)
    return DFARun(state in d.accept, tuple(trace), repeat)


def status_symbols(p: Path) -> dict[Tile, str]:
    """Label each tile of p by its tree status, '2' or '3'."""
    return {t: str(int(fibtree.status(t.node, STANDARD))) for t in p.tiles}
