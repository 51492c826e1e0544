import pytest
from hypothesis import given, settings, strategies as st

from pentagrid import fibtree
from pentagrid.grid import Tile, neighbors_full
from pentagrid import paths as P


def subtree_levels(root, depth):
    """Nodes of the standard subtree at root, level by level, from the oracle."""
    oracle = fibtree.build_oracle(fibtree.STANDARD, fibtree.level(root) + depth)
    sons = {nd.number: nd.sons for nd in oracle.nodes()}
    out = [[root]]
    for _ in range(depth):
        out.append([s for n in out[-1] for s in sons[n]])
    return out


def test_pn_closed_and_valid():
    for n in range(1, 9):
        p = P.build_Pn(n)
        assert P.is_closed(p)
        assert p.start == P.G
        P.check_path(p.tiles)


def test_p1_visits_level_one_of_b():
    p = P.build_Pn(1)
    assert set(p.tiles) == {Tile(1, v) for lv in subtree_levels(2, 1) for v in lv}


def test_p3_length_from_census():
    # down n, up n, and two steps per gap along the level-n row of B
    for n in (3, 5):
        width = len(subtree_levels(2, n)[-1])
        assert len(P.build_Pn(n)) == 2 * n + 2 * (width - 1)


def test_pn_cap():
    with pytest.raises(ValueError):
        P.build_Pn(0)
    with pytest.raises(ValueError):
        P.build_Pn(10)


def test_is_closed_trivial_cases():
    assert P.is_closed(P.Path((Tile(1, 1),)))
    assert not P.is_closed(P.Path((Tile(1, 1), Tile(1, 2))))
    with pytest.raises(P.PathError):
        P.Path((Tile(1, 1), Tile(1, 9)))


def test_pump_zero_is_identity():
    p = P.build_Pn(6)
    assert P.pump(p, 0, 2, 0) == p


def test_pump_keeps_adjacency_and_opens_path():
    q = P.pump(P.build_Pn(6), 1, 3, 1)
    P.check_path(q.tiles)
    assert not P.is_closed(q)


@pytest.mark.parametrize("n, k, m, closed", [(6, 2, 1, False), (6, 2, 0, True), (8, 3, 2, False)])
def test_witness_examples(n, k, m, closed):
    w = P.pumping_witness(n, k, m)
    assert w.closed is closed
    assert w.start == P.G


def test_witness_ends_on_translated_branch():
    w = P.pumping_witness(8, 3, 2)
    # the tail climbs back to the image of G, k*m levels below G on the leftmost branch
    assert w.end.node == P.leftmost_branch(2, 6)[-1]


def test_pump_site_validation():
    p = P.build_Pn(4)
    with pytest.raises(P.PathError):
        P.pump(p, 2, 2, 1)
    with pytest.raises(P.PathError):
        P.pump(p, 0, 5, 1)
    with pytest.raises(ValueError):
        P.pump(p, 0, 1, -1)
    with pytest.raises(P.PathError):
        P.pump(P.Path(p.tiles), 0, 1, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(1, 3), st.integers(1, 2), st.integers(0, 2))
def test_pumped_paths_never_close(n, k, m, i):
    if i + k > n:
        return
    w = P.pumping_witness(n, k, m, i)
    assert not w.closed


def test_subtree_map_against_son_paths():
    tau = P.subtree_map(2, 5)
    lv_src, lv_dst = subtree_levels(2, 4), subtree_levels(5, 4)
    for a, b in zip(lv_src, lv_dst):
        assert [tau(v) for v in a] == b
    with pytest.raises(P.PathError):
        P.subtree_map(2, 3)


def test_path_json_round_trip():
    p = P.build_Pn(2)
    assert P.Path.from_json(p.to_json()).tiles == p.tiles


# -- automata -----------------------------------------------------------------------

def test_accept_all():
    p = P.build_Pn(3)
    d = P.PathDFA.accept_all(["2", "3"])
    run = P.run_dfa(d, p, P.status_symbols(p))
    assert run.accepted
    assert len(run.trace) == len(p.tiles) + 1


def test_single_tile_run():
    p = P.Path((Tile(1, 1),))
    run = P.run_dfa(P.PathDFA.accept_all(["2", "3"]), p, P.status_symbols(p))
    assert len(run.trace) == 2


def test_pigeonhole_repeat_on_spine():
    # N states over r symbols: P_{rN+2} has more spine tiles than (symbol, state) pairs
    states = ("p", "q", "s")
    alphabet = ("2", "3")
    delta = {(q, a): states[(states.index(q) + int(a)) % 3] for q in states for a in alphabet}
    d = P.PathDFA(states, alphabet, delta, "p", frozenset({"p"}))
    n = len(alphabet) * len(states) + 2
    if n > 9:
        n = 9
    p = P.build_Pn(n)
    run = P.run_dfa(d, p, P.status_symbols(p))
    assert run.repeat is not None
    i, j = run.repeat
    assert i < j <= p.spine


def test_malformed_dfa():
    with pytest.raises(ValueError):
        P.PathDFA(("q",), ("a",), {}, "q", frozenset())
    with pytest.raises(ValueError):
        P.PathDFA(("q",), ("a",), {("q", "a"): "z"}, "q", frozenset())
    data = {"states": ["q"], "alphabet": ["2", "3"], "delta": {"q": {"2": "q", "3": "q"}},
            "start": "q", "accept": ["q"]}
    assert P.PathDFA.from_dict(data).accept == frozenset({"q"})


def test_missing_symbol():
    p = P.build_Pn(1)
    with pytest.raises(ValueError):
        P.run_dfa(P.PathDFA.accept_all(["2"]), p, {})
