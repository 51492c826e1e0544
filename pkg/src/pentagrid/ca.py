"""Synchronous cellular automata on a ball of the pentagrid.

A rule reads ``fa n1 n2 n3 n4 old -> new``: the father's state, the four
other neighbours counterclockwise after the father, and the cell's own state.
Cells outside the ball are quiescent for all time.

The central cell has no father and five neighbours.  It is matched as
``Q r1 r2 r3 r4 old`` for each of the five windows of four consecutive
sector roots, ``Q`` being the quiescent state.  All five lookups must exist
and agree, so rules used at the centre have to be invariant under rotation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .grid import CENTER, Ball, Tile, parse_tile

QUIESCENT = "Q"

Key = tuple[str, str, str, str, str, str]


class RuleError(ValueError):
    """A malformed rule file; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class CAError(ValueError):
    pass


@dataclass(frozen=True)
class RuleTable:
    rules: Mapping[Key, str]

    def __len__(self) -> int:
        return len(self.rules)

    def __getitem__(self, key: Key) -> str:
        return self.rules[key]

    def __contains__(self, key) -> bool:
        return key in self.rules

    def states(self) -> set[str]:
        out = set(self.rules.values())
        for key in self.rules:
            out.update(key)
        return out

    def to_text(self) -> str:
        return "".join(f"{' '.join(k)} -> {v}\n" for k, v in sorted(self.rules.items()))


_TOKEN = re.compile(r"\S+")


def parse_rules(text: str) -> RuleTable:
    rules: dict[Key, str] = {}
    where: dict[Key, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
        if not tokens:
            continue
        arrows = [i for i, (tok, _) in enumerate(tokens) if tok in ("->", "→")]
        if len(arrows) != 1:
            raise RuleError("expected exactly one '->'", lineno, tokens[0][1])
        a = arrows[0]
        if a != 6:
            col = tokens[a][1] if a < 6 else tokens[6][1]
            raise RuleError(f"expected 6 states before '->', found {a}", lineno, col)
        if len(tokens) != 8:
            col = tokens[-1][1] if len(tokens) > 8 else tokens[a][1]
            raise RuleError(f"expected 1 state after '->', found {len(tokens) - 7}", lineno, col)
        key = tuple(tok for tok, _ in tokens[:6])
        new = tokens[7][0]
        if key in rules and rules[key] != new:
            raise RuleError(
                f"conflicts with line {where[key]}: {' '.join(key)} gives both {rules[key]} and {new}",
                lineno, tokens[0][1])
        rules[key] = new
        where.setdefault(key, lineno)
    return RuleTable(rules)


@dataclass(frozen=True)
class Configuration:
    ball: Ball
    states: Mapping[Tile, str]
    quiescent: str = QUIESCENT

    def __post_init__(self):
        missing = [t for t in self.ball.tiles if t not in self.states]
        if missing:
            raise CAError(f"configuration has no state for tile {missing[0]}")
        extra = [t for t in self.states if t not in self.ball]
        if extra:
            raise CAError(f"tile {extra[0]} is outside ball({self.ball.radius})")

    def __getitem__(self, t: Tile) -> str:
        return self.states[t]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return (self.ball.radius, self.quiescent, dict(self.states)) == (
            other.ball.radius, other.quiescent, dict(other.states))

    def support(self, state: str) -> set[Tile]:
        return {t for t, s in self.states.items() if s == state}

    @classmethod
    def uniform(cls, b: Ball, state: str = QUIESCENT, quiescent: str = QUIESCENT) -> "Configuration":
        return cls(b, {t: state for t in b.tiles}, quiescent)

    def with_states(self, changes: Mapping[Tile, str]) -> "Configuration":
        states = dict(self.states)
        states.update(changes)
        return Configuration(self.ball, states, self.quiescent)

    def to_dict(self) -> dict[str, str]:
        return {str(t): s for t, s in self.states.items()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, b: Ball, data: Mapping[str, str], quiescent: str = QUIESCENT,
                  default: Optional[str] = None) -> "Configuration":
        """Read ``{address: state}``; tiles left out get ``default`` when one is given."""
        states = {t: default for t in b.tiles} if default is not None else {}
        for addr, s in data.items():
            states[parse_tile(addr)] = str(s)
        return cls(b, states, quiescent)


def _key_for(c: Configuration, t: Tile) -> list[Key]:
    q = c.quiescent
    look = [q if u is None else c.states[u] for u in c.ball.neighbors(t)]
    old = c.states[t]
    if t == CENTER:
        return [(q, *[look[(i + j) % 5] for j in range(4)], old) for i in range(5)]
    return [(look[0], look[1], look[2], look[3], look[4], old)]


def _new_state(c: Configuration, r: RuleTable, t: Tile) -> str:
    results = set()
    for key in _key_for(c, t):
        if key not in r.rules:
            raise CAError(f"no rule for tile {t}: {' '.join(key)}")
        results.add(r.rules[key])
    if len(results) > 1:
        raise CAError(f"rules disagree under rotation at the central tile: {sorted(results)}")
    return results.pop()


def step(c: Configuration, r: RuleTable, order: Optional[Sequence[Tile]] = None) -> Configuration:
    """One synchronous update; ``order`` only changes the evaluation sequence."""
    tiles = c.ball.tiles if order is None else order
    new = {t: _new_state(c, r, t) for t in tiles}
    if len(new) != len(c.ball.tiles):
        raise CAError("evaluation order must list every tile of the ball once")
    return Configuration(c.ball, new, c.quiescent)


def run(c0: Configuration, r: RuleTable, steps: int) -> list[Configuration]:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    trace = [c0]
    for _ in range(steps):
        trace.append(step(trace[-1], r))
    return trace


def all_keys(states: Iterable[str]) -> list[Key]:
    states = sorted(set(states))
    keys: list[tuple] = [()]
    for _ in range(6):
        keys = [k + (s,) for k in keys for s in states]
    return keys


def identity_table(states: Iterable[str]) -> RuleTable:
    return RuleTable({k: k[5] for k in all_keys(states)})


def infection_table(infected: str = "X", quiescent: str = QUIESCENT) -> RuleTable:
    """A cell turns ``infected`` once it or any neighbour is."""
    return RuleTable({k: infected if infected in k else quiescent
                      for k in all_keys((quiescent, infected))})
