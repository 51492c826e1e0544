"""Navigation inside one sector tree of the pentagrid.

Nodes are numbered breadth-first from 1 (the root), left to right on each
level.  Every flavor of Fibonacci tree has the same level sizes, so the
numbering and the standard representations are shared; only the position of
the 2-node among the sons differs.  Status, father, sons and neighbours are
read off the standard representation for the standard and best trees.  The
central and random trees are answered from an explicitly built tree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

from .fibcode import decode, encode, fib

ORACLE_LEVEL_CAP = 14

_MASK64 = (1 << 64) - 1


class NodeKind(enum.IntEnum):
    TWO = 2
    THREE = 3

    def __str__(self) -> str:
        return str(int(self))


@dataclass(frozen=True)
class TreeFlavor:
    kind: str
    seed: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("standard", "central", "best", "random"):
            raise ValueError(f"unknown tree flavor {self.kind!r}")
        if self.kind == "random" and self.seed is None:
            raise ValueError("random flavor needs a seed")
        if self.kind != "random" and self.seed is not None:
            raise ValueError(f"flavor {self.kind!r} takes no seed")

    @classmethod
    def random(cls, seed: int) -> "TreeFlavor":
        return cls("random", seed & _MASK64)

    @classmethod
    def parse(cls, text: str, seed: Optional[int] = None) -> "TreeFlavor":
        name, _, tail = text.partition(":")
        if name == "random":
            if tail:
                seed = int(tail, 0)
            if seed is None:
                raise ValueError("random flavor needs a seed (random:<seed> or --seed)")
            return cls.random(seed)
        if tail:
            raise ValueError(f"flavor {name!r} takes no seed")
        return cls(name)

    def __str__(self) -> str:
        return self.kind if self.seed is None else f"random:{self.seed}"


STANDARD = TreeFlavor("standard")
CENTRAL = TreeFlavor("central")
BEST = TreeFlavor("best")

T, H = NodeKind.TWO, NodeKind.THREE

# son statuses, left to right
_RULES = {
    "standard": {T: (T, H), H: (T, H, H)},
    "central": {T: (T, H), H: (H, T, H)},
    "best": {T: (H, T), H: (H, T, H)},
}
_ROOT_RULES = {
    "standard": (T, H, H),
    "central": (H, T, H),
    "best": (H, H, T),
}


# -- levels ------------------------------------------------------------------

def level_first(k: int) -> int:
    return fib(2 * k)


def level_size(k: int) -> int:
    return fib(2 * k + 1)


def level_last(k: int) -> int:
    return fib(2 * k + 2) - 1


def level(n: int) -> int:
    """The level k of node n, i.e. level_first(k) <= n <= level_last(k)."""
    _check_node(n)
    # level k spans the words of 2k and 2k+1 digits
    return len(encode(n)) // 2


def _check_node(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"node numbers start at 1, got {n!r}")


# -- continuators --------------------------------------------------------------

def continuator(n: int) -> int:
    _check_node(n)
    return decode(encode(n) + "00")


def co_continuator(n: int) -> int:
    _check_node(n)
    rep = encode(n)
    return decode(rep[:-2]) if len(rep) >= 3 else 0


# -- splitmix dice -------------------------------------------------------------

def _splitmix64(state: int) -> tuple[int, int]:
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def dice(seed: int, count: int) -> list[int]:
    """``count`` throws of a six-sided die driven by splitmix64 from ``seed``."""
    out = []
    state = seed & _MASK64
    for _ in range(count):
        state, z = _splitmix64(state)
        out.append(1 + z % 6)
    return out


def _random_rule(kind: NodeKind, r: int) -> tuple[NodeKind, ...]:
    if kind is T:
        return (T, H) if r < 4 else (H, T)
    if r < 3:
        return (T, H, H)
    if r < 5:
        return (H, T, H)
    return (H, H, T)


# -- explicit trees ------------------------------------------------------------

class OracleNode(NamedTuple):
    number: int
    kind: NodeKind
    father: Optional[int]
    sons: tuple[int, ...]


@dataclass(frozen=True)
class OracleTree:
    flavor: TreeFlavor
    levels: tuple[tuple[OracleNode, ...], ...]

    def __len__(self) -> int:
        return sum(len(lv) for lv in self.levels)

    def node(self, n: int) -> OracleNode:
        k = level(n)
        if k >= len(self.levels):
            raise KeyError(n)
        return self.levels[k][n - level_first(k)]

    def nodes(self):
        for lv in self.levels:
            yield from lv

    def level_sizes(self) -> list[int]:
        return [len(lv) for lv in self.levels]


def build_oracle(flavor: TreeFlavor, levels: int, cap: int = ORACLE_LEVEL_CAP) -> OracleTree:
    """Materialize levels 0..levels of a tree purely from its son rules."""
    if levels < 0:
        raise ValueError("levels must be non-negative")
    if levels > cap:
        raise ValueError(f"oracle depth {levels} exceeds cap {cap}")
    return _build_oracle(flavor, levels)


@lru_cache(maxsize=32)
def _build_oracle(flavor: TreeFlavor, levels: int) -> OracleTree:
    rng_state = None if flavor.seed is None else flavor.seed
    kinds: list[NodeKind] = [H]
    fathers: list[Optional[int]] = [None]
    out_levels = []
    start = 1
    for k in range(levels + 1):
        stop = start + len(kinds)
        next_kinds: list[NodeKind] = []
        next_fathers: list[int] = []
        son_lists = []
        nxt = stop
        for offset, kind in enumerate(kinds):
            n = start + offset
            if flavor.kind == "random":
                rng_state, z = _splitmix64(rng_state)
                rule = _random_rule(kind, 1 + z % 6)
            elif n == 1:
                rule = _ROOT_RULES[flavor.kind]
            else:
                rule = _RULES[flavor.kind][kind]
            son_lists.append(tuple(range(nxt, nxt + len(rule))))
            nxt += len(rule)
            next_kinds.extend(rule)
            next_fathers.extend([n] * len(rule))
        out_levels.append(tuple(
            OracleNode(start + i, kinds[i], fathers[i], son_lists[i]) for i in range(len(kinds))
        ))
        start, kinds, fathers = stop, next_kinds, next_fathers
    return OracleTree(flavor, tuple(out_levels))


def _oracle_for(flavor: TreeFlavor, n: int) -> OracleTree:
    k = level(n)
    if k > ORACLE_LEVEL_CAP:
        raise ValueError(f"node {n} lies beyond the oracle cap (level {ORACLE_LEVEL_CAP})")
    # grow in coarse steps so nearby queries share one table
    return _build_oracle(flavor, min(ORACLE_LEVEL_CAP, max(k, 8)))


# -- representation-based navigation -------------------------------------------

def _ending(n: int) -> str:
    rep = encode(n)
    return ("0" + rep)[-2:] if len(rep) < 2 else rep[-2:]


def status(n: int, flavor: TreeFlavor = STANDARD) -> NodeKind:
    _check_node(n)
    if n == 1:
        return H
    if flavor.kind == "standard":
        end = _ending(n)
        if end == "10":
            return T
        if end == "01":
            return H
        return H if _ending(n - 1) == "10" else T
    if flavor.kind == "best":
        return T if _ending(n) == "01" else H
    return _oracle_for(flavor, n).node(n).kind


def father(n: int, flavor: TreeFlavor = STANDARD) -> Optional[int]:
    _check_node(n)
    if n == 1:
        return None
    if flavor.kind == "standard":
        up = co_continuator(n)
        if status(n, flavor) is T and _ending(n) == "10":
            return up + 1
        return up
    if flavor.kind == "best":
        return 1 if n == 2 else co_continuator(n)
    if flavor.kind == "central":
        return _oracle_for(flavor, n).node(n).father
    raise ValueError("random trees have no representation rules; use build_oracle")


def sons(n: int, flavor: TreeFlavor = STANDARD) -> tuple[int, ...]:
    _check_node(n)
    if n == 1:
        return (2, 3, 4)
    c = continuator(n)
    kind = status(n, flavor)
    if flavor.kind == "standard":
        return (c - 1, c, c + 1) if kind is H else (c, c + 1)
    if flavor.kind == "best":
        return (c, c + 1, c + 2) if kind is H else (c, c + 1)
    if flavor.kind == "central":
        return _oracle_for(flavor, n).node(n).sons
    raise ValueError("random trees have no representation rules; use build_oracle")


def _after_two_node(up: int) -> bool:
    # In the best tree a 3-node ending in 00 touches the node just before its
    # father exactly when that node is a 2-node.  Levels are read cyclically,
    # so before the leftmost node comes the rightmost one (of the next sector
    # over, in the whole grid); on every level but 0 that one is a 2-node.
    k = level(up)
    prev = up - 1 if up > level_first(k) else level_last(k)
    return prev != 1 and _ending(prev) == "01"


def neighbor_terms(n: int, flavor: TreeFlavor = STANDARD) -> tuple[tuple[int, int], ...]:
    """The neighbour 5-tuple with the level offset (-1 or +1) each entry aims at."""
    _check_node(n)
    if flavor.kind not in ("standard", "best"):
        raise ValueError(f"no neighbour rule is known for the {flavor.kind} tree")
    c = continuator(n)
    up = co_continuator(n)
    if n == 1:
        return ((up, -1), (c - 1, 1), (c, 1), (c + 1, 1), (c + 2, 1))
    kind = status(n, flavor)
    end = _ending(n)
    if flavor.kind == "standard":
        if kind is T and end == "00":
            return ((up, -1), (up - 1, -1), (c, 1), (c + 1, 1), (c + 2, 1))
        if kind is T:
            return ((up + 1, -1), (up, -1), (c, 1), (c + 1, 1), (c + 2, 1))
        return ((up, -1), (c - 1, 1), (c, 1), (c + 1, 1), (c + 2, 1))
    if kind is H and end == "10":
        return ((up, -1), (c, 1), (c + 1, 1), (c + 2, 1), (up + 1, -1))
    if kind is T or not _after_two_node(up):
        return ((up, -1), (c - 1, 1), (c, 1), (c + 1, 1), (c + 2, 1))
    return ((up, -1), (up - 1, -1), (c, 1), (c + 1, 1), (c + 2, 1))


def neighbors(n: int, flavor: TreeFlavor = STANDARD) -> tuple[int, ...]:
    """Neighbour numbers listed anticlockwise; border entries are left unresolved."""
    return tuple(v for v, _ in neighbor_terms(n, flavor))


def path_to_root(n: int, flavor: TreeFlavor = STANDARD) -> list[int]:
    path = [n]
    while True:
        up = father(path[-1], flavor)
        if up is None:
            break
        path.append(up)
    path.reverse()
    return path
