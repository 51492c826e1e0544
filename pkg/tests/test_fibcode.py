import itertools

import pytest
from hypothesis import given, strategies as st

from pentagrid.fibcode import EMPTY_SYMBOL, decode, encode, fib, format_rep, is_standard, parse_rep


def fib_oracle(i):
    # f_0 = f_1 = 1, unrolled independently of the module
    seq = [1, 1]
    while len(seq) <= i:
        seq.append(seq[-1] + seq[-2])
    return seq[i]


def standard_words_shortlex(max_len):
    """All words without '11' and without a leading 0, shortest first then lexicographic."""
    yield ""
    for length in range(1, max_len + 1):
        for tail in itertools.product("01", repeat=length - 1):
            w = "1" + "".join(tail)
            if "11" not in w:
                yield w


@pytest.mark.parametrize("i, expected", [(0, 1), (1, 1), (6, 13)])
def test_fib_examples(i, expected):
    assert fib(i) == expected


def test_fib_matches_recurrence():
    for i in range(60):
        assert fib(i) == fib_oracle(i)


def test_fib_is_exact_for_large_index():
    assert fib(100) == fib_oracle(100)
    assert fib(100) > 2**64


def test_fib_rejects_negative():
    with pytest.raises(ValueError):
        fib(-1)


@pytest.mark.parametrize("n, rep", [(0, ""), (1, "1"), (12, "10101")])
def test_encode_examples(n, rep):
    assert encode(n) == rep


@pytest.mark.parametrize("rep, n", [("", 0), ("1000", 5), ("101000", 18)])
def test_decode_examples(rep, n):
    assert decode(rep) == n


def test_decode_accepts_non_standard_words():
    # positional sum: f_3 + f_2 = 3 + 2
    assert decode("110") == 5


@given(st.text(alphabet="01", max_size=300))
def test_decode_is_positional_sum(word):
    # any 0/1 word, leading zeros and adjacent ones included, across block boundaries
    expected = sum(fib_oracle(i + 1) for i, ch in enumerate(reversed(word)) if ch == "1")
    assert decode(word) == expected


@pytest.mark.parametrize("word", ["102", "1 0", "1_0", "+10", "10\n"])
def test_decode_rejects_bad_digit(word):
    with pytest.raises(ValueError):
        decode(word)


def test_encode_rejects_negative():
    with pytest.raises(ValueError):
        encode(-3)


@pytest.mark.parametrize("rep, ok", [("101", True), ("110", False), ("", True), ("0101", False), ("12", False)])
def test_is_standard_examples(rep, ok):
    assert is_standard(rep) is ok


def test_encode_agrees_with_shortlex_enumeration():
    # the n-th standard word in shortlex order represents n
    for n, w in enumerate(standard_words_shortlex(16)):
        assert encode(n) == w


def test_standard_words_are_unique():
    seen = {}
    for w in standard_words_shortlex(25):
        v = decode(w)
        assert v not in seen, (w, seen.get(v))
        seen[v] = w


@given(st.integers(min_value=0, max_value=10**30))
def test_round_trip(n):
    rep = encode(n)
    assert decode(rep) == n
    assert is_standard(rep)


@given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=0, max_value=10**9))
def test_shortlex_monotone(n, m):
    a, b = encode(n), encode(m)
    assert (n < m) == ((len(a), a) < (len(b), b))


def test_format_and_parse_rep():
    assert format_rep("") == EMPTY_SYMBOL
    assert format_rep("1010") == "1010"
    assert parse_rep(EMPTY_SYMBOL) == ""
    assert parse_rep(" 1001 ") == "1001"
    with pytest.raises(ValueError):
        parse_rep("10a")
