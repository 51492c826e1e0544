import pytest
from hypothesis import given, settings, strategies as st

from pentagrid import tilings as T
from pentagrid.grid import ball

NO_SOLUTION = ["12345", "12134", "12312", "12313"]
FINITE = {"11111": 1, "11234": 2, "11223": 4}
GROWING = ["11123", "11213", "11232", "11112", "11122", "11212"]


def test_assortment_canonical_form():
    assert T.Assortment("23451").word == "12345"
    assert T.Assortment("21111") == T.Assortment("11112")
    with pytest.raises(T.TilingError):
        T.Assortment("1234")
    with pytest.raises(T.TilingError):
        T.Assortment("12306")


def test_chirality():
    assert not T.Assortment("11111").chiral
    assert not T.Assortment("11232").chiral
    assert T.Assortment("11234").chiral
    assert T.Assortment("11234").mirror == T.Assortment("11432")


def test_placements():
    assert T.Assortment("11111").placements() == ("11111",)
    assert len(T.Assortment("11223").placements()) == 5


@pytest.mark.parametrize("word", NO_SOLUTION)
def test_no_solution_rows(word):
    assert T.enumerate(word, 2) == 0


@pytest.mark.parametrize("word, count", FINITE.items())
def test_finite_rows(word, count):
    assert [T.enumerate(word, d) for d in range(4)] == [count] * 4


def test_uniform_tile_every_depth():
    for d in range(6):
        assert T.enumerate("11111", d) == 1


@pytest.mark.parametrize("word", GROWING)
def test_growing_rows_increase(word):
    counts = [T.enumerate(word, d) for d in range(3)]
    assert counts[0] < counts[1] < counts[2]


@pytest.mark.parametrize("word", ["11111", "11234", "11223", "12345", "12134", "11123", "11232", "11212", "11213"])
def test_matches_brute_force_depth0(word):
    assert T.enumerate(word, 0) == T.brute_force_count(word, 0)


@pytest.mark.parametrize("word", ["11111", "11234", "12345", "12312"])
def test_matches_brute_force_depth1(word):
    assert T.enumerate(word, 1) == T.brute_force_count(word, 1)


@settings(max_examples=25, deadline=None)
@given(st.text(alphabet="123", min_size=5, max_size=5), st.integers(0, 4))
def test_rotation_invariance(word, shift):
    rotated = word[shift:] + word[:shift]
    for d in (0, 1):
        assert T.enumerate(word, d) == T.enumerate(rotated, d)


@settings(max_examples=15, deadline=None)
@given(st.text(alphabet="1234", min_size=5, max_size=5))
def test_renaming_labels_keeps_count(word):
    swap = word.translate(str.maketrans("12", "21"))
    assert T.enumerate(word, 1) == T.enumerate(swap, 1)


def test_stable_counts_do_not_rise_again():
    for word in list(FINITE) + NO_SOLUTION:
        counts = [T.enumerate(word, d) for d in range(4)]
        assert all(b <= a for a, b in zip(counts, counts[1:]))


def test_cap():
    with pytest.raises(T.TilingError):
        T.enumerate("11111", 7)
    with pytest.raises(T.TilingError):
        T.enumerate("11111", -1)
    with pytest.raises(T.TilingError):
        T.classify_assortment("11111", 7)


def test_classify_examples():
    assert isinstance(T.classify_assortment("11234", 3), T.Finite)
    assert T.classify_assortment("11234", 3).count == 2
    assert isinstance(T.classify_assortment("11112", 2), T.Growing)
    out = T.classify_assortment("12134", 3)
    assert isinstance(out, T.NoSolution) and out.depth == 0


def test_classify_counts_rules():
    assert isinstance(T.classify_counts([3, 2, 2]), T.Finite)
    assert T.classify_counts([3, 2, 2]).depth_stable == 1
    assert isinstance(T.classify_counts([1, 2, 3]), T.Growing)
    assert isinstance(T.classify_counts([5, 0]), T.NoSolution)
    assert isinstance(T.classify_counts([1, 3, 2]), T.Inconclusive)
    assert isinstance(T.classify_counts([4]), T.Inconclusive)


def test_find_tiling_is_valid():
    for word in ["11223", "11112", "11234"]:
        found = T.find_tiling(word, 3)
        b = ball(3)
        assert set(found) == set(b.tiles)
        placements = set(T.rotations(found[b.tiles[0]]))
        for t, j, u, k in b.edges():
            assert found[t][j] == found[u][k]
        assert all(found[t] in placements for t in b.tiles)
    assert T.find_tiling("12345", 2) is None


def test_outcome_dict():
    a = T.Assortment("11223")
    d = T.outcome_to_dict(a, T.classify_assortment(a, 2))
    assert d == {"assortment": "11223", "depths": [0, 1, 2], "counts": [4, 4, 4],
                 "outcome": "Finite", "solutions": 4}
