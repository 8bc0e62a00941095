"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import catalog
from .cover import INFINITY, enumerate_minimum_covers, greedy_cover
from .dsl import build
from .errors import CapExceeded, ExprSyntaxError, GroupCoverError, InvalidPermutation, InvalidTable
from .group import DEFAULT_ORDER_CAP, Group, is_cyclic, read_table
from .lattice import all_subgroups, maximal_subgroups
from .product_maximals import all_maximals_product
from .theorem import classify_cover, sigma_of, sigma_product

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(GroupCoverError):
    pass


USAGE_ERRORS = (UsageError, ExprSyntaxError, CapExceeded, InvalidTable, InvalidPermutation)


def _load(args) -> tuple[Group, str]:
    if args.table:
        G = read_table(args.table, seed=args.seed)
        return G, args.table
    if not args.expr:
        raise UsageError("give a group expression or --table FILE")
    G = build(args.expr, order_cap=args.order_cap, seed=args.seed)
    return G, args.expr


def _usage(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _value(v) -> str:
    return "infinity" if v is INFINITY else str(v)


def _print_cover(cover, indent: str = "  ") -> None:
    for k, h in enumerate(cover.members):
        print(f"{indent}[{k}] order {h.size}, index {h.index}, mask {h.hex()}")


def cmd_sigma(args) -> int:
    G, label = _load(args)
    if is_cyclic(G):
        if args.json:
            print(json.dumps({"group": label, "sigma": "infinity", "members": [], "method": "oracle"}))
        else:
            print("sigma = infinity (cyclic)")
        return EXIT_OK
    ps = G.structure
    primary = sigma_product(ps.left, ps.right, ps) if ps is not None else sigma_of(G)
    oracle = sigma_of(G) if args.check and ps is not None else None
    mismatch = oracle is not None and oracle.value != primary.value
    if args.json:
        out = primary.to_dict(label)
        if oracle is not None:
            out["check"] = oracle.to_dict(label)
            out["agree"] = not mismatch
        print(json.dumps(out))
    else:
        print(f"sigma = {_value(primary.value)}")
        print(f"method: {primary.method}")
        _print_cover(primary.witness)
        if args.check:
            if oracle is not None:
                print(f"theorem: {_value(primary.value)}")
                print(f"oracle:  {_value(oracle.value)}")
            greedy = greedy_cover(G, maximal_subgroups(G))
            print(f"greedy upper bound: {len(greedy)}")
            if mismatch:
                print("MISMATCH between theorem and oracle")
    return EXIT_FAIL if mismatch else EXIT_OK


def cmd_maximals(args) -> int:
    G, label = _load(args)
    if G.structure is not None:
        pairs = all_maximals_product(G.structure)
        if args.json:
            rows = [dict(d.to_dict(), mask=h.hex(), order=h.size) for d, h in pairs]
            print(json.dumps({"group": label, "maximals": rows}))
            return EXIT_OK
        n_diag = sum(d.is_diagonal for d, _ in pairs)
        print(f"{len(pairs)} maximal subgroups ({len(pairs) - n_diag} standard, {n_diag} diagonal)")
        for k, (d, h) in enumerate(pairs):
            print(f"  [{k}] index {d.index_in_G:>3}  {d.describe()}")
        return EXIT_OK
    maximals = maximal_subgroups(G)
    if args.json:
        rows = [{"type": "lattice", "index": h.index, "order": h.size, "mask": h.hex()} for h in maximals]
        print(json.dumps({"group": label, "maximals": rows}))
        return EXIT_OK
    print(f"{len(maximals)} maximal subgroups")
    for k, h in enumerate(maximals):
        print(f"  [{k}] index {h.index:>3}  order {h.size}, mask {h.hex()}")
    return EXIT_OK


def cmd_classify(args) -> int:
    G, label = _load(args)
    ps = G.structure
    if ps is None:
        raise UsageError("classify needs a direct product expression such as 'S3 x C5'")
    if is_cyclic(G):
        print("sigma = infinity (cyclic); no covers to classify")
        return EXIT_OK
    sigma = sigma_of(G).value
    pool = [h for h in all_subgroups(G) if h.is_proper] if args.all_subgroups else maximal_subgroups(G)
    covers = enumerate_minimum_covers(G, pool, cap=args.cap, sigma=sigma)
    results = [classify_cover(ps, c, sigma) for c in covers]
    unclassified = sum(not r.classified for r in results)
    if args.json:
        rows = [dict(r.to_dict(), members=[h.hex() for h in c.members]) for r, c in zip(results, covers)]
        print(json.dumps({"group": label, "sigma": sigma, "covers": rows}))
    else:
        print(f"sigma = {sigma}; {len(covers)} minimum covers")
        for k, (r, c) in enumerate(zip(results, covers)):
            d = r.to_dict()
            if r.case == 3:
                text = f"case 3 (p={r.p}, |N1|={d['n1_order']}, |N2|={d['n2_order']})"
            elif r.classified:
                text = f"case {int(r.case)} (factor cover of size {d['factor_cover_size']})"
            else:
                text = "UNCLASSIFIED"
            print(f"  cover {k}: {text}  {[h.hex() for h in c.members]}")
        if unclassified:
            print(f"{unclassified} cover(s) fit none of the three product shapes")
    return EXIT_FAIL if unclassified else EXIT_OK


def _run_one(name: str, max_order: Optional[int], seed: int):
    return catalog.run_checks([name], max_order=max_order, seed=seed)[0]


def cmd_verify(args) -> int:
    checks = list(catalog.TIERS[args.tier])
    if args.stretch:
        checks.append(catalog.check_stretch)
    names = [fn.__name__ for fn in checks]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, names, [args.max_order] * len(names), [args.seed] * len(names)))
    else:
        results = catalog.run_checks(names, max_order=args.max_order, seed=args.seed)
    gating = [r for r in results if r.number != 10]
    ok = all(r.passed for r in gating)
    if args.json:
        print(json.dumps({"passed": ok, "criteria": [r.to_dict() for r in results]}))
    else:
        for r in results:
            print(r.line())
            for note in r.notes[:1]:
                print(f"      note: {note}")
        print("verification " + ("passed" if ok else "FAILED"))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP, help="largest group order to build")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled associativity checks")

    parser = argparse.ArgumentParser(
        prog="groupcover", description="Minimal covers of finite groups and their direct products.", parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def group_command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, parents=[common])
        p.add_argument("expr", nargs="?", help="group expression, e.g. 'S3 x C5'")
        p.add_argument("--table", metavar="FILE", help="read a Cayley table instead of an expression")
        p.add_argument("--json", action="store_true")
        return p

    p = group_command("sigma", "compute sigma(G) with a witness cover")
    p.add_argument("--check", action="store_true", help="also run the brute-force oracle on products")
    p.set_defaults(func=cmd_sigma)

    p = group_command("maximals", "list maximal subgroups")
    p.set_defaults(func=cmd_maximals)

    p = group_command("classify", "enumerate and classify the minimum covers of a product")
    p.add_argument("--all-subgroups", action="store_true", help="draw cover members from every proper subgroup")
    p.add_argument("--cap", type=int, default=10_000, help="give up above this many minimum covers")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the catalog verification sweep", parents=[common])
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--tier", choices=sorted(catalog.TIERS), default="full")
    p.add_argument("--stretch", action="store_true", help="include the A5 / A5 x A5 stretch check")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        return _usage(f"{getattr(args, 'expr', '') or ''}: {exc}".lstrip(": "))
    except GroupCoverError as exc:
        print(f"error: {getattr(args, 'expr', '') or ''}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
