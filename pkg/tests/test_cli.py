import itertools
import json

import pytest

from pentagrid import cli, fibcode, fibtree


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_locate_example(capsys):
    code, out, _ = run(capsys, "locate", "7", "--tree", "standard")
    assert code == 0
    got = json.loads(out)
    assert got["rep"] == "1010" and got["status"] == 2 and got["father"] == 3
    assert got["neighbors"] == [3, 2, 18, 19, 20]
    assert got["path"] == [1, 3, 7]


def test_locate_accepts_representation(capsys):
    _, a, _ = run(capsys, "locate", "z:1010")
    _, b, _ = run(capsys, "locate", "7")
    assert a == b


@pytest.mark.parametrize("n", [1, 2, 13, 100, 4181])
def test_locate_agrees_with_library(capsys, n):
    _, out, _ = run(capsys, "locate", str(n), "--tree", "best")
    got = json.loads(out)
    assert got["rep"] == fibcode.encode(n)
    assert got["father"] == fibtree.father(n, fibtree.BEST)


def test_locate_usage_errors(capsys):
    assert run(capsys, "locate", "0")[0] == 2
    assert run(capsys, "locate", "z:0110")[0] == 2
    assert run(capsys, "locate", "5", "--tree", "oak")[0] == 2


def test_unknown_subcommand(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and "usage" in err


def test_ball(capsys):
    code, out, _ = run(capsys, "ball", "1")
    got = json.loads(out)
    assert code == 0 and got["size"] == 21 == len(got["tiles"])
    assert got["tiles"][0] == {"tile": "C", "neighbors": ["1:1", "2:1", "3:1", "4:1", "5:1"]}
    assert run(capsys, "ball", "11")[0] == 1


def test_render_to_file(capsys, tmp_path):
    out = tmp_path / "b.svg"
    code, _, _ = run(capsys, "render", "--levels", "1", "--coloring", "cayley", "--out", str(out))
    svg = out.read_text()
    assert code == 0 and svg.startswith("<?xml") and svg.count('class="tile"') == 21


def test_render_assortment(capsys):
    code, out, _ = run(capsys, "render", "--levels", "1", "--coloring", "assortment:11223")
    assert code == 0 and out.count('class="side"') == 21 * 5
    assert run(capsys, "render", "--levels", "1", "--coloring", "assortment:12345")[0] == 1
    assert run(capsys, "render", "--levels", "1", "--coloring", "plaid")[0] == 2


def test_cayley_verify(capsys):
    code, out, _ = run(capsys, "cayley", "verify", "--levels", "3")
    got = json.loads(out)
    assert code == 0 and got["ok"] and got["levels"] == 3


def test_tilings_classify(capsys):
    code, out, _ = run(capsys, "tilings", "classify", "12345", "--depth", "3")
    assert code == 0 and json.loads(out)["outcome"] == "NoSolution"
    _, out, _ = run(capsys, "tilings", "classify", "22311", "--depth", "2")
    got = json.loads(out)
    assert got["assortment"] == "11223" and got["counts"] == [4, 4, 4]
    assert run(capsys, "tilings", "classify", "1234", "--depth", "2")[0] == 1


def test_paths_pump(capsys):
    code, out, _ = run(capsys, "paths", "pump", "--n", "6", "--k", "2", "--m", "1")
    got = json.loads(out)
    assert code == 0 and got["closed"] is False and got["start"] == "1:2"
    _, out, _ = run(capsys, "paths", "pump", "--n", "6", "--k", "2", "--m", "0")
    assert json.loads(out)["closed"] is True
    assert run(capsys, "paths", "pump", "--n", "3", "--k", "4", "--m", "1")[0] == 1


def test_ca_run(capsys, tmp_path):
    rules = tmp_path / "r.txt"
    rules.write_text("".join(f"{' '.join(k)} -> {'X' if 'X' in k else 'Q'}\n"
                             for k in itertools.product("QX", repeat=6)))
    init = tmp_path / "i.json"
    init.write_text(json.dumps({"C": "X"}))
    code, out, _ = run(capsys, "ca", "run", "--rules", str(rules), "--init", str(init), "--steps", "2")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and [x["step"] for x in lines] == [0, 1, 2]
    assert [sum(s == "X" for s in x["states"].values()) for x in lines] == [1, 6, 21]


def test_ca_run_errors(capsys, tmp_path):
    rules = tmp_path / "r.txt"
    rules.write_text("Q Q Q Q Q -> Q\n")
    init = tmp_path / "i.json"
    init.write_text("{}")
    code, _, err = run(capsys, "ca", "run", "--rules", str(rules), "--init", str(init), "--steps", "1")
    assert code == 1 and "line 1" in err
    code, _, _ = run(capsys, "ca", "run", "--rules", str(tmp_path / "none"), "--init", str(init), "--steps", "1")
    assert code == 1


def test_verify_motions(capsys):
    code, out, _ = run(capsys, "verify", "motions")
    got = json.loads(out)
    assert code == 0 and got["ok"] and len(got["cases"]) == 8
    assert all(c["angle"] != 1 for c in got["cases"])


def test_locate_random_tree_reads_the_oracle(capsys):
    code, out, _ = run(capsys, "locate", "40", "--tree", "random", "--seed", "7")
    got = json.loads(out)
    node = fibtree.build_oracle(fibtree.TreeFlavor.random(7), 5).node(40)
    assert code == 0 and got["tree"] == "random:7"
    assert (got["father"], got["sons"], got["neighbors"]) == (node.father, list(node.sons), None)
    assert got["path"][0] == 1 and got["path"][-1] == 40 and len(got["path"]) == 5
    _, again, _ = run(capsys, "locate", "40", "--tree", "random:7")
    assert again == out
    assert run(capsys, "locate", "40", "--tree", "random")[0] == 2


def test_locate_central_tree(capsys):
    code, out, _ = run(capsys, "locate", "5", "--tree", "central")
    got = json.loads(out)
    assert code == 0 and got["neighbors"] is None
    assert got["father"] == fibtree.father(5, fibtree.CENTRAL)
