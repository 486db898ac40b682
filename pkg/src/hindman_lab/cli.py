"""Command line front end.

Exit codes, uniformly: 0 for a positive verdict or a produced artifact,
1 for a definite negative (no tree, fip fails, axiom report fails, no
threshold in range), 2 when a guided construction broke down on the finite
surrogate, 3 for unusable input or blown caps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    CapExceededError,
    DigestMismatchError,
    EmptyFamilyError,
    LabError,
    NotFoundError,
    NoTreeError,
    PreconditionFailedError,
    SurrogateBreakdown,
    TooLargeError,
    UsageError,
)
from .families import (
    DEFAULT_CLOSURE_BUDGET,
    SetFamily,
    is_semigroup,
    pfip,
    semigroup_closure,
)
from .largeness import LargenessConfig
from .oracle import colorings_oracle, pfip_oracle, tree_oracle
from .props import HitSet, axiom_report, prop_from_json
from .sets import Universe
from .trees import (
    Coloring,
    TreeCert,
    build_tree_guided,
    find_tree_exact,
    threshold,
    verify_tree,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); remap
        raise UsageError(message)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("HINDMAN_LAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(
                f"HINDMAN_LAB_SEED must be an integer, got {env!r}") from None
    return 0


def _build_parser() -> _Parser:
    p = _Parser(prog="hindman-lab",
                description="Finite laboratory for dense sum trees")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    q = sub.add_parser("props", help="property axiom checks")
    qs = q.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    c = qs.add_parser("check", help="run the axiom report for a property")
    c.add_argument("--prop", required=True, help="property JSON file")
    c.add_argument("--n", type=int, help="universe size (defaults to the "
                   "witness universe for HITSET)")
    c.add_argument("--samples", type=int, default=1000)
    c.add_argument("--seed", type=int, default=None)

    q = sub.add_parser("fip", help="family intersection checks")
    qs = q.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    c = qs.add_parser("check", help="fip and semigroup verdicts for a family")
    c.add_argument("--family", required=True, help="family JSON file")
    c.add_argument("--prop", required=True)

    q = sub.add_parser("semigroup", help="family closure")
    qs = q.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    c = qs.add_parser("close", help="grow a family into a semigroup-like one")
    c.add_argument("--family", required=True)
    c.add_argument("--prop", required=True)
    c.add_argument("--budget", type=int, default=DEFAULT_CLOSURE_BUDGET)
    c.add_argument("--out")

    q = sub.add_parser("tree", help="tree search and verification")
    qs = q.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    c = qs.add_parser("search", help="find a certificate for a coloring")
    c.add_argument("--coloring", required=True, help="coloring JSON file")
    c.add_argument("--prop", required=True)
    c.add_argument("--depth", type=int, required=True)
    c.add_argument("--mode", choices=("exact", "guided"), default="exact")
    c.add_argument("--color", type=int, default=None,
                   help="restrict exact search to one color")
    c.add_argument("--game-depth", type=int, default=1,
                   help="adversary lookahead for guided mode")
    c.add_argument("--jobs", type=int, default=None)
    c.add_argument("--out")
    c = qs.add_parser("verify", help="re-check a certificate")
    c.add_argument("--cert", required=True)
    c.add_argument("--coloring", required=True)

    c = sub.add_parser("threshold", help="least n forcing a tree for every "
                       "coloring")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--depth", type=int, required=True)
    c.add_argument("--prop", required=True)
    c.add_argument("--n-max", type=int, required=True)
    c.add_argument("--jobs", type=int, default=None)

    q = sub.add_parser("oracle", help="slow exhaustive referees")
    qs = q.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    c = qs.add_parser("pfip", help="subfamily-by-subfamily fip check")
    c.add_argument("--family", required=True)
    c.add_argument("--prop", required=True)
    c = qs.add_parser("tree", help="exhaustive tree existence, tiny inputs")
    c.add_argument("--coloring", required=True)
    c.add_argument("--prop", required=True)
    c.add_argument("--color", type=int, required=True)
    c.add_argument("--depth", type=int, required=True)
    c = qs.add_parser("colorings", help="sweep every coloring of a segment")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--depth", type=int, required=True)
    c.add_argument("--prop", required=True)

    return p


def _cmd_props_check(args) -> int:
    prop = prop_from_json(_load_json(args.prop))
    if args.n is not None:
        u = Universe(args.n)
    elif isinstance(prop, HitSet):
        u = prop.witness.universe
    else:
        raise UsageError("--n is required for this property variant")
    report = axiom_report(prop, u, samples=args.samples,
                          seed=_resolve_seed(args.seed))
    _emit(report.to_json(), None)
    return 0 if report.passed else 1


def _cmd_fip_check(args) -> int:
    family = SetFamily.from_json(_load_json(args.family))
    prop = prop_from_json(_load_json(args.prop))
    if len(family) == 0:
        raise UsageError("family is empty")
    verdict = pfip(family, prop)
    _emit({"pfip": verdict, "semigroup": is_semigroup(family, prop),
           "members": len(family)}, None)
    return 0 if verdict else 1


def _cmd_semigroup_close(args) -> int:
    family = SetFamily.from_json(_load_json(args.family))
    prop = prop_from_json(_load_json(args.prop))
    closed = semigroup_closure(family, prop, budget=args.budget)
    _emit(closed.to_json(), args.out)
    return 0


def _cmd_tree_search(args) -> int:
    coloring = Coloring.from_json(_load_json(args.coloring))
    prop = prop_from_json(_load_json(args.prop))
    if args.mode == "guided":
        if args.color is not None:
            raise UsageError("guided mode picks its own color")
        cfg = LargenessConfig(depth=args.game_depth)
        cert = build_tree_guided(coloring, prop, args.depth, cfg)
    else:
        cert = find_tree_exact(coloring, prop, args.depth, color=args.color,
                               jobs=args.jobs)
    _emit(cert.to_json(), args.out)
    return 0


def _cmd_tree_verify(args) -> int:
    cert = TreeCert.from_json(_load_json(args.cert))
    coloring = Coloring.from_json(_load_json(args.coloring))
    ok = verify_tree(cert, coloring)
    _emit({"ok": ok, "color": cert.color, "nodes": len(cert.nodes),
           "depth": cert.tree_depth}, None)
    return 0 if ok else 1


def _cmd_threshold(args) -> int:
    prop = prop_from_json(_load_json(args.prop))
    n = threshold(args.r, args.depth, prop, args.n_max, jobs=args.jobs)
    _emit({"threshold": n, "r": args.r, "depth": args.depth}, None)
    return 0


def _cmd_oracle_pfip(args) -> int:
    family = SetFamily.from_json(_load_json(args.family))
    prop = prop_from_json(_load_json(args.prop))
    verdict = pfip_oracle(family, prop)
    _emit({"pfip": verdict, "members": len(family)}, None)
    return 0 if verdict else 1


def _cmd_oracle_tree(args) -> int:
    coloring = Coloring.from_json(_load_json(args.coloring))
    prop = prop_from_json(_load_json(args.prop))
    verdict = tree_oracle(coloring, args.color, prop, args.depth)
    _emit({"exists": verdict}, None)
    return 0 if verdict else 1


def _cmd_oracle_colorings(args) -> int:
    prop = prop_from_json(_load_json(args.prop))
    doc = colorings_oracle(args.n, args.r, args.depth, prop)
    _emit(doc, None)
    return 0 if doc["all_admit"] else 1


def _dispatch(argv) -> int:
    args = _build_parser().parse_args(argv)
    key = (args.cmd, getattr(args, "sub", None))
    table = {
        ("props", "check"): _cmd_props_check,
        ("fip", "check"): _cmd_fip_check,
        ("semigroup", "close"): _cmd_semigroup_close,
        ("tree", "search"): _cmd_tree_search,
        ("tree", "verify"): _cmd_tree_verify,
        ("threshold", None): _cmd_threshold,
        ("oracle", "pfip"): _cmd_oracle_pfip,
        ("oracle", "tree"): _cmd_oracle_tree,
        ("oracle", "colorings"): _cmd_oracle_colorings,
    }
    return table[key](args)


def main(argv=None) -> int:
    try:
        return _dispatch(argv)
    except (UsageError, TooLargeError, CapExceededError, DigestMismatchError,
            PreconditionFailedError, EmptyFamilyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SurrogateBreakdown as exc:
        print(f"breakdown: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (NoTreeError, NotFoundError) as exc:
        print(f"negative: {exc}", file=sys.stderr)
        return 1
    except LabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
