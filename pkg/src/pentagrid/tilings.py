"""Tilings of the pentagrid by copies of one pentagon with coloured sides.

A tile carries five labels, read counterclockwise from its side 1.  Copies
may be turned but not flipped, so every tile shows a rotation of one contour
word, and two tiles sharing a side must show the same label there.

``enumerate`` counts the labelings of ball(depth) in which the central tile
shows the word itself, every shared side matches and every tile of the next
level can still be placed.  A word that differs from its mirror image up to
rotation is counted once per handedness.  Such a mirror tiling is made of the
mirrored tile, and that tile is the same assortment once its colours are
renamed.

The count is exact.  Tiles on one level never share a side, so a tile of the
next level only constrains its neighbours one level up.  Those constraints
become local factors on the ball.  The ball's labelings are then counted by a
sweep over the tiles in tree order, keeping only the assignments of tiles
that still have unvisited neighbours.
"""

from __future__ import annotations

import builtins
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from . import fibtree
from .grid import CENTER, SECTORS, Ball, Tile, ball

TILING_CAP = 6
LABELS = "12345"


class TilingError(ValueError):
    pass


# -- assortments --------------------------------------------------------------------

def rotations(word: str) -> list[str]:
    return [word[i:] + word[:i] for i in range(len(word))]


@dataclass(frozen=True)
class Assortment:
    """Five side labels up to circular permutation; ``word`` is the least rotation."""

    word: str

    def __post_init__(self):
        w = self.word
        if len(w) != 5 or any(ch not in LABELS for ch in w):
            raise TilingError(f"an assortment is 5 labels from {LABELS!r}, got {w!r}")
        object.__setattr__(self, "word", min(rotations(w)))

    def __str__(self) -> str:
        return self.word

    @property
    def mirror(self) -> "Assortment":
        return Assortment(self.word[::-1])

    @property
    def chiral(self) -> bool:
        return self.mirror != self

    def placements(self) -> tuple[str, ...]:
        """Distinct labelings a copy can show, starting with the word itself."""
        seen = dict.fromkeys(rotations(self.word))
        return tuple(seen)


def _as_assortment(a: Union[Assortment, str]) -> Assortment:
    return a if isinstance(a, Assortment) else Assortment(a)


# -- counting -----------------------------------------------------------------------

@dataclass(frozen=True)
class _Problem:
    order: tuple[Tile, ...]
    # factors[i]: constraints checked once order[i] is assigned; each is
    # (earlier indices, allowed tuples of placement indices incl. order[i]'s)
    factors: tuple[tuple[tuple[tuple[int, ...], frozenset], ...], ...]
    last_use: tuple[int, ...]


def _tree_order(radius: int) -> list[Tile]:
    """Depth-first order: sectors in turn, sons left to right."""
    out = [CENTER]

    def visit(s: int, n: int) -> None:
        out.append(Tile(s, n))
        if fibtree.level(n) < radius:
            for m in fibtree.sons(n):
                visit(s, m)

    for s in range(1, SECTORS + 1):
        visit(s, 1)
    return out


def _build_problem(word: str, radius: int) -> _Problem:
    outer = ball(radius + 1)
    order = _tree_order(radius)
    index = {t: i for i, t in builtins.enumerate(order)}
    places = tuple(dict.fromkeys(rotations(word)))
    factors: list[list] = [[] for _ in order]
    last_use = list(range(len(order)))

    def add(scope: list[int], allowed: set) -> None:
        last = max(scope)
        factors[last].append((tuple(scope), frozenset(allowed)))
        for v in scope:
            last_use[v] = max(last_use[v], last)

    n = len(places)
    for t, j, u, k in outer.edges():
        if t in index and u in index:
            a, b = sorted((index[t], index[u]))
            sa, sb = (j, k) if a == index[t] else (k, j)
            add([a, b], {(p, q) for p in range(n) for q in range(n) if places[p][sa] == places[q][sb]})
    for x in outer.tiles:
        if x in index:
            continue
        inner = [(j, u) for j, u in builtins.enumerate(outer.neighbors(x)) if u in index]
        scope = sorted(index[u] for _, u in inner)
        side_of = {index[u]: (j, outer.side_toward(u, x)) for j, u in inner}
        allowed = set()
        for combo in _product(n, len(scope)):
            for px in places:
                if all(px[side_of[v][0]] == places[c][side_of[v][1]] for v, c in zip(scope, combo)):
                    allowed.add(combo)
                    break
        add(scope, allowed)
    return _Problem(tuple(order), tuple(tuple(f) for f in factors), tuple(last_use))


def _product(n: int, r: int) -> Iterator[tuple[int, ...]]:
    if r == 0:
        yield ()
        return
    for head in _product(n, r - 1):
        for c in range(n):
            yield head + (c,)


def _count_fixed_center(word: str, radius: int) -> int:
    """Labelings of ball(radius) with the centre showing ``word`` exactly."""
    prob = _build_problem(word, radius)
    n = len(dict.fromkeys(rotations(word)))
    # state: tuple of (var, value) for live variables
    states: dict[tuple, int] = {(): 1}
    for i in range(len(prob.order)):
        domain = (0,) if i == 0 else range(n)
        nxt: dict[tuple, int] = defaultdict(int)
        for state, ways in states.items():
            env = dict(state)
            for c in domain:
                env[i] = c
                if all(tuple(env[v] for v in scope) in allowed for scope, allowed in prob.factors[i]):
                    key = tuple((v, env[v]) for v in sorted(env) if prob.last_use[v] > i)
                    nxt[key] += ways
            env.pop(i, None)
        states = nxt
        if not states:
            return 0
    return sum(states.values())


@lru_cache(maxsize=None)
def _enumerate(word: str, depth: int) -> int:
    a = Assortment(word)
    total = _count_fixed_center(a.word, depth)
    if a.chiral:
        total += _count_fixed_center(a.mirror.word, depth)
    return total


def enumerate(a: Union[Assortment, str], depth: int, cap: int = TILING_CAP) -> int:
    """Number of extendable labelings of ball(depth) for the assortment ``a``."""
    a = _as_assortment(a)
    if depth < 0:
        raise TilingError("depth must be non-negative")
    if depth > cap:
        raise TilingError(f"depth {depth} exceeds cap {cap}")
    return _enumerate(a.word, depth)


def find_tiling(a: Union[Assortment, str], depth: int, cap: int = TILING_CAP) -> Optional[dict[Tile, str]]:
    """One extendable labeling of ball(depth), or None when there is none."""
    a = _as_assortment(a)
    if not 0 <= depth <= cap:
        raise TilingError(f"depth must lie in 0..{cap}, got {depth}")
    prob = _build_problem(a.word, depth)
    places = tuple(dict.fromkeys(rotations(a.word)))
    env: dict[int, int] = {}

    def search(i: int) -> bool:
        if i == len(prob.order):
            return True
        for c in ((0,) if i == 0 else range(len(places))):
            env[i] = c
            if all(tuple(env[v] for v in scope) in allowed for scope, allowed in prob.factors[i]):
                if search(i + 1):
                    return True
        del env[i]
        return False

    if not search(0):
        return None
    return {t: places[env[i]] for i, t in builtins.enumerate(prob.order)}


# -- brute-force oracle -------------------------------------------------------------

def brute_force_count(a: Union[Assortment, str], depth: int) -> int:
    """Plain backtracking over ball(depth) with an existence search one level out.

    Independent of the factor sweep; only practical for depth <= 1 on the
    rows with many solutions.
    """
    a = _as_assortment(a)
    words = [a.word] + ([a.mirror.word] if a.chiral else [])
    return sum(_brute_fixed(w, depth) for w in words)


def _brute_fixed(word: str, depth: int) -> int:
    b: Ball = ball(depth + 1)
    order = list(b.tiles)
    idx = {t: i for i, t in builtins.enumerate(order)}
    checks = [[(s, idx[u], b.side_toward(u, t)) for s, u in builtins.enumerate(b.neighbors(t))
               if u is not None and idx[u] < i] for i, t in builtins.enumerate(order)]
    places = list(dict.fromkeys(rotations(word)))
    ncore = sum(1 for t in order if t.level <= depth)
    lab: list[Optional[str]] = [None] * len(order)

    def fits(i: int) -> bool:
        return all(lab[i][s] == lab[j][k] for s, j, k in checks[i])

    def extends(i: int) -> bool:
        if i == len(order):
            return True
        for p in places:
            lab[i] = p
            if fits(i) and extends(i + 1):
                return True
        lab[i] = None
        return False

    found = 0

    def core(i: int) -> None:
        nonlocal found
        if i == ncore:
            found += extends(i)
            return
        for p in ([word] if i == 0 else places):
            lab[i] = p
            if fits(i):
                core(i + 1)
        lab[i] = None

    core(0)
    return found


# -- classification -----------------------------------------------------------------

@dataclass(frozen=True)
class NoSolution:
    depth: int
    counts: tuple[int, ...]

    name = "NoSolution"


@dataclass(frozen=True)
class Finite:
    count: int
    depth_stable: int
    counts: tuple[int, ...]

    name = "Finite"


@dataclass(frozen=True)
class Growing:
    counts: tuple[int, ...]

    name = "Growing"


@dataclass(frozen=True)
class Inconclusive:
    counts: tuple[int, ...]

    name = "Inconclusive"


Outcome = Union[NoSolution, Finite, Growing, Inconclusive]


def classify_counts(counts: Sequence[int]) -> Outcome:
    counts = tuple(counts)
    if 0 in counts:
        return NoSolution(counts.index(0), counts[: counts.index(0) + 1])
    if len(counts) >= 2 and counts[-1] == counts[-2]:
        stable = len(counts) - 2
        while stable > 0 and counts[stable - 1] == counts[-1]:
            stable -= 1
        return Finite(counts[-1], stable, counts)
    if len(counts) >= 3 and counts[-3] < counts[-2] < counts[-1]:
        return Growing(counts)
    return Inconclusive(counts)


def classify_assortment(a: Union[Assortment, str], max_depth: int, cap: int = TILING_CAP) -> Outcome:
    """Count depths 0..max_depth, stopping early once no labeling survives."""
    a = _as_assortment(a)
    if max_depth > cap:
        raise TilingError(f"depth {max_depth} exceeds cap {cap}")
    counts = []
    for d in range(max_depth + 1):
        counts.append(enumerate(a, d, cap))
        if counts[-1] == 0:
            break
    return classify_counts(counts)


def outcome_to_dict(a: Assortment, outcome: Outcome) -> dict:
    counts = list(outcome.counts)
    out = {
        "assortment": a.word,
        "depths": list(range(len(counts))),
        "counts": counts,
        "outcome": outcome.name,
    }
    if isinstance(outcome, Finite):
        out["solutions"] = outcome.count
    return out
