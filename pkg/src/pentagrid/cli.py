"""Command-line interface: ``pentagrid <command> ...``.

Data goes to stdout as JSON (or SVG), diagnostics to stderr.  Exit status is
0 on success, 1 when the input is well-formed but the computation refuses it,
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import ca, cayley, fibcode, fibtree, geometry, grid, paths, tilings
from .fibtree import TreeFlavor


class DomainError(Exception):
    pass


def _node(text: str) -> int:
    try:
        if text.startswith("z:"):
            rep = fibcode.parse_rep(text[2:])
            if not fibcode.is_standard(rep):
                raise ValueError
            return fibcode.decode(rep)
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a node number or z:<representation>: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"node numbers start at 1, got {n}")
    return n


def _count(text: str) -> int:
    n = _node(text) if text.startswith("z:") else int(text)
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return n


def _coloring(text: str) -> str:
    kind, _, word = text.partition(":")
    if kind in ("none", "cayley") and not word or kind == "assortment" and word:
        return text
    raise argparse.ArgumentTypeError(f"unknown coloring {text!r}; use none, cayley or assortment:<word>")


def _flavor(args) -> TreeFlavor:
    return args.flavor


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


# -- commands -----------------------------------------------------------------------

def _locate_from_oracle(n: int, flavor: TreeFlavor) -> dict:
    # random trees have no digit rules and no neighbour rule; read the materialized tree
    oracle = fibtree.build_oracle(flavor, fibtree.level(n) + 1)
    node = oracle.node(n)
    path = [n]
    while oracle.node(path[-1]).father is not None:
        path.append(oracle.node(path[-1]).father)
    return {"status": int(node.kind), "father": node.father, "sons": list(node.sons),
            "neighbors": None, "path": path[::-1]}


def cmd_locate(args) -> None:
    flavor = _flavor(args)
    n = args.node
    out = {"node": n, "tree": str(flavor), "rep": fibcode.encode(n), "level": fibtree.level(n)}
    if flavor.kind == "random":
        out.update(_locate_from_oracle(n, flavor))
    else:
        out.update({
            "status": int(fibtree.status(n, flavor)),
            "father": fibtree.father(n, flavor),
            "sons": list(fibtree.sons(n, flavor)),
            # no neighbour rule is known for the central tree
            "neighbors": list(fibtree.neighbors(n, flavor)) if flavor.kind != "central" else None,
            "path": fibtree.path_to_root(n, flavor),
        })
    _emit(out)


def cmd_ball(args) -> None:
    b = grid.ball(args.levels, _flavor(args))
    _emit({
        "radius": b.radius,
        "tree": b.flavor.kind,
        "size": len(b),
        "tiles": [{"tile": str(t), "neighbors": [None if u is None else str(u) for u in b.neighbors(t)]}
                  for t in b.tiles],
    })


def cmd_render(args) -> None:
    b = grid.ball(args.levels)
    palette = geometry.DEFAULT_PALETTE
    kind, _, word = args.coloring.partition(":")
    if kind == "none":
        coloring = None
    elif kind == "cayley":
        coloring = cayley.extend_coloring(args.levels).sides
    elif kind == "assortment":
        found = tilings.find_tiling(word, args.levels)
        if found is None:
            raise DomainError(f"assortment {tilings.Assortment(word)} admits no tiling of ball({args.levels})")
        coloring = {t: list(labels) for t, labels in found.items()}
        palette = TILING_PALETTE
    svg = geometry.render_svg(b, coloring, palette)
    if args.out == "-":
        sys.stdout.write(svg)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
        print(f"wrote {args.out}", file=sys.stderr)


TILING_PALETTE = {"1": "#d62728", "2": "#1f77b4", "3": "#2ca02c", "4": "#ff7f0e", "5": "#9467bd"}


def cmd_cayley_verify(args) -> None:
    coloring = cayley.extend_coloring(args.levels)
    report = cayley.verify_coloring(coloring)
    out = report.to_dict()
    out["levels"] = args.levels
    out["outside_table"] = [str(s) for s in cayley.signatures_outside_table(coloring)]
    _emit(out)
    if not report.ok or out["outside_table"]:
        raise DomainError("coloring failed verification")


def cmd_tilings_classify(args) -> None:
    a = tilings.Assortment(args.word)
    _emit(tilings.outcome_to_dict(a, tilings.classify_assortment(a, args.depth)))


def cmd_paths_pump(args) -> None:
    _emit(paths.pumping_witness(args.n, args.k, args.m, args.i).to_dict())


def cmd_ca_run(args) -> None:
    with open(args.rules, encoding="utf-8") as fh:
        table = ca.parse_rules(fh.read())
    with open(args.init, encoding="utf-8") as fh:
        data = json.load(fh)
    b = grid.ball(args.levels)
    c0 = ca.Configuration.from_dict(b, data, args.quiescent, default=args.quiescent)
    c = c0
    _emit({"step": 0, "states": c.to_dict()})
    for k in range(1, args.steps + 1):
        c = ca.step(c, table)
        _emit({"step": k, "states": c.to_dict()})


def cmd_verify_motions(args) -> None:
    cases = geometry.verify_motion_table(args.tol)
    _emit({
        "ok": all(c.ok for c in cases),
        "cases": [{"arrangement": c.arrangement, "g1": c.g1, "g2": c.g2, "angle": c.angle,
                   "expected": c.expected, "ok": c.ok} for c in cases],
    })
    if not all(c.ok for c in cases):
        raise DomainError("motion table not reproduced")


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pentagrid", description="Navigation, tilings and automata on the pentagrid.")
    sub = p.add_subparsers(dest="command", required=True)

    def tree_opts(q):
        q.add_argument("--tree", default="standard", help="standard, best, central or random[:seed]")
        q.add_argument("--seed", type=int, help="seed for the random tree")

    q = sub.add_parser("locate", help="representation, status, father, neighbours and path of a node")
    q.add_argument("node", type=_node)
    tree_opts(q)
    q.set_defaults(func=cmd_locate)

    q = sub.add_parser("ball", help="tiles of ball(L) with their neighbours")
    q.add_argument("levels", type=_count)
    tree_opts(q)
    q.set_defaults(func=cmd_ball)

    q = sub.add_parser("render", help="SVG drawing of ball(L) in the disc")
    q.add_argument("--levels", type=_count, required=True)
    q.add_argument("--coloring", type=_coloring, default="none", help="none, cayley or assortment:<word>")
    q.add_argument("--out", default="-")
    q.set_defaults(func=cmd_render)

    q = sub.add_parser("cayley", help="side colorings")
    csub = q.add_subparsers(dest="action", required=True)
    r = csub.add_parser("verify")
    r.add_argument("--levels", type=_count, required=True)
    r.set_defaults(func=cmd_cayley_verify)

    q = sub.add_parser("tilings", help="single-tile tilings")
    tsub = q.add_subparsers(dest="action", required=True)
    r = tsub.add_parser("classify")
    r.add_argument("word")
    r.add_argument("--depth", type=_count, default=3)
    r.set_defaults(func=cmd_tilings_classify)

    q = sub.add_parser("paths", help="closed paths and pumping")
    psub = q.add_subparsers(dest="action", required=True)
    r = psub.add_parser("pump")
    r.add_argument("--n", type=_count, required=True)
    r.add_argument("--k", type=_count, required=True)
    r.add_argument("--m", type=_count, required=True)
    r.add_argument("--i", type=_count, default=0, help="spine index where the pumped stretch starts")
    r.set_defaults(func=cmd_paths_pump)

    q = sub.add_parser("ca", help="cellular automata")
    asub = q.add_subparsers(dest="action", required=True)
    r = asub.add_parser("run")
    r.add_argument("--rules", required=True)
    r.add_argument("--init", required=True, help="JSON {address: state}; tiles left out are quiescent")
    r.add_argument("--steps", type=_count, required=True)
    r.add_argument("--levels", type=_count, default=3)
    r.add_argument("--quiescent", default=ca.QUIESCENT)
    r.set_defaults(func=cmd_ca_run)

    q = sub.add_parser("verify", help="self-checks")
    vsub = q.add_subparsers(dest="action", required=True)
    r = vsub.add_parser("motions")
    r.add_argument("--tol", type=float, default=geometry.GEOM_TOL)
    r.set_defaults(func=cmd_verify_motions)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if hasattr(args, "tree"):
            try:
                args.flavor = TreeFlavor.parse(args.tree, args.seed)
            except ValueError as exc:
                parser.error(f"--tree: {exc}")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (DomainError, ValueError, RuntimeError, OSError) as exc:
        print(f"pentagrid: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
