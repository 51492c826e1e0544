"""Fibonacci number system used for node coordinates.

Fibonacci numbers follow the convention ``f_0 = f_1 = 1``.  A representation
is a string of ``'0'``/``'1'`` digits written most-significant first; the
rightmost digit carries weight ``f_1``.  The standard (Zeckendorf) form has no
two adjacent ``1`` digits and no leading ``0``; zero is the empty word.
"""

from __future__ import annotations

from bisect import bisect_right
from functools import lru_cache

EMPTY_SYMBOL = "ε"


@lru_cache(maxsize=None)
def fib(i: int) -> int:
    if i < 0:
        raise ValueError(f"Fibonacci index must be non-negative, got {i}")
    a, b = 1, 1
    for _ in range(i):
        a, b = b, a + b
    return a


# digit weights f_1, f_2, ... from the rightmost digit; grown on demand
_WEIGHTS = [1, 2]


def _weights_upto(n: int) -> list[int]:
    while _WEIGHTS[-1] <= n:
        _WEIGHTS.append(_WEIGHTS[-1] + _WEIGHTS[-2])
    return _WEIGHTS


@lru_cache(maxsize=1 << 19)
def encode(n: int) -> str:
    """Return the standard representation of ``n`` (greedy, largest weight first)."""
    if n < 0:
        raise ValueError(f"cannot encode negative number {n}")
    if n == 0:
        return ""
    weights = _WEIGHTS if n < _WEIGHTS[-1] else _weights_upto(n)
    bits = 0
    rest = n
    while rest:
        i = bisect_right(weights, rest) - 1
        bits |= 1 << i
        rest -= weights[i]
    return format(bits, "b")


def _block_table(width: int) -> list[tuple[int, int]]:
    # for each block of digits: its value, and its value with every weight moved down one place
    table = [(0, 0)]
    for p in range(width):
        hi, lo = fib(p + 1), fib(p)
        table += [(a + hi, b + lo) for a, b in table]
    return table


_BLOCK = 16
_TABLE = _block_table(_BLOCK)
_MASK = (1 << _BLOCK) - 1
# (F(16k), F(16k+1)) for block k, with F(0) = 0 and F(1) = 1
_SHIFT = [(0, 1)]


def decode(rep: str) -> int:
    """Positional sum of a 0/1 word; standardness is not required."""
    if rep.strip("01"):
        bad = next(ch for ch in rep if ch not in "01")
        raise ValueError(f"invalid digit {bad!r} in Fibonacci word {rep!r}")
    if not rep:
        return 0
    x = int(rep, 2)
    total = k = 0
    while x:
        if k == len(_SHIFT):
            lo, hi = _SHIFT[-1]
            for _ in range(_BLOCK):
                lo, hi = hi, lo + hi
            _SHIFT.append((lo, hi))
        a, b = _TABLE[x & _MASK]
        lo, hi = _SHIFT[k]
        # a block moved up s places is worth a * F(s+1) + b * F(s)
        total += a * hi + b * lo
        x >>= _BLOCK
        k += 1
    return total


def is_standard(rep: str) -> bool:
    if rep == "":
        return True
    if any(ch not in "01" for ch in rep):
        return False
    return rep[0] == "1" and "11" not in rep


def format_rep(rep: str) -> str:
    return rep if rep else EMPTY_SYMBOL


def parse_rep(text: str) -> str:
    text = text.strip()
    if text in (EMPTY_SYMBOL, ""):
        return ""
    if any(ch not in "01" for ch in text):
        raise ValueError(f"not a Fibonacci word: {text!r}")
    return text
