"""Command line interface: ``sandwich-forge <subcommand> ...``.

Results go to stdout (text, or JSON with ``--json``); progress goes to
stderr.  Exit status: 0 when every check passes, 2 when a verification
fails, 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import _kernels
from .caps import CapExceeded
from .eqdsl import DSLSyntaxError, check, parse, sandwich_laws, search_models
from .funcmaps import classify, function_from_json
from .groups import GroupValidationError, build_group, group_to_json, sandwich_of
from .magma import Magma, MagmaError, NotASandwichError, axiom_profile, derived_identities
from .natmap import natural_map
from .search import embed_in_group_sandwich, enumerate_sandwiches, find_magma
from .tables import dumps_magma, format_table_text, loads, magma_to_json

OK, USAGE, FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(USAGE)


@dataclass
class RunConfig:
    command: str
    seed: int
    jobs: int
    json: bool

    def stamp(self, payload: dict) -> dict:
        return {**payload, "config": {"command": self.command, "seed": self.seed, "jobs": self.jobs,
                                      "backend": _kernels.BACKEND}}


def _read_magma(path: str) -> Magma:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return Magma(loads(text)["table"])
    except (MagmaError, ValueError, KeyError) as e:
        raise UsageError(f"{path}: malformed table: {e}") from None


def _laws(path: str | None):
    if path is None:
        return sandwich_laws()
    try:
        return parse(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except DSLSyntaxError as e:
        raise UsageError(f"{path}: {e}") from None


def _names(text: str | None) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()] if text else []


def _emit(cfg: RunConfig, payload: dict, text: str):
    if cfg.json:
        print(json.dumps(cfg.stamp(payload), indent=2))
    else:
        print(text.rstrip("\n"))


def cmd_check(args, cfg):
    m = _read_magma(args.table)
    prof = axiom_profile(m)
    lines = []
    for key in ("ld", "ii", "li", "ls", "lc", "right_zero", "right_cancellative"):
        if getattr(prof, key):
            lines.append(f"{key.upper()}: PASS")
        else:
            w = prof.witnesses[key]
            letters = "abc"[: len(w)]
            lines.append(f"{key.upper()}: FAIL witness " + " ".join(f"{v}={x}" for v, x in zip(letters, w)))
    lines.append(f"sandwich: {'yes' if prof.is_sandwich else 'no'}")
    payload = {"table": magma_to_json(m), "profile": prof.to_dict()}
    if prof.is_sandwich:
        ids = derived_identities(m)
        payload["derived_identities"] = {k: (list(v) if v else None) for k, v in ids.items()}
    _emit(cfg, payload, "\n".join(lines))
    return OK if prof.is_sandwich else FAILED


def cmd_group(args, cfg):
    try:
        g = build_group(args.name)
    except (ValueError, GroupValidationError) as e:
        raise UsageError(str(e)) from None
    if args.what == "sandwich":
        s = sandwich_of(g)
        _emit(cfg, {"group": g.name, **magma_to_json(s)}, format_table_text(s.table, f"sandwich of {g.name}"))
    else:
        _emit(cfg, group_to_json(g),
              format_table_text(g.table, g.name, identity=g.identity, inverse=g.inverse))
    return OK


def cmd_classify(args, cfg):
    try:
        f = function_from_json(json.loads(Path(args.function).read_text()))
    except OSError as e:
        raise UsageError(f"cannot read {args.function}: {e.strerror}") from None
    except (ValueError, KeyError, GroupValidationError) as e:
        raise UsageError(f"{args.function}: malformed function: {e}") from None
    c = classify(f)
    text = "\n".join(
        f"{k}: {'yes' if v else 'no'}" + (f" (witness {list(c.witnesses[k])})" if not v else "")
        for k, v in c.flags().items()
    )
    _emit(cfg, {"domain": f.domain.name, "codomain": f.codomain.name, **c.to_dict()}, text)
    return OK


def cmd_natmap(args, cfg):
    m = _read_magma(args.table)
    res = natural_map(m)
    text = (
        f"classes: {' '.join('{' + ','.join(map(str, c)) + '}' for c in res.classes)}\n"
        f"image order: {res.image_order}\n"
        f"eq2 verified: {res.eq2_verified}\ninjective: {res.injective}\n"
        + format_table_text(res.image_magma.table, "image sandwich")
    )
    _emit(cfg, res.to_json(), text)
    return OK if res.eq2_verified else FAILED


def _progress(explored, found):
    print(f"explored={explored} found={found}", file=sys.stderr, flush=True)


def _report_text(rep) -> str:
    out = [f"{rep.query}: count {rep.count} ({rep.nodes_explored} nodes, {rep.elapsed:.3f}s)"]
    for i, m in enumerate(rep.representatives):
        out.append(format_table_text(m.table, f"#{i}").rstrip())
    for w in rep.witnesses:
        out.append(f"witness: {json.dumps(w)}")
    for k, v in rep.details.items():
        out.append(f"{k}: {v}")
    return "\n".join(out)


def cmd_enumerate(args, cfg):
    rep = enumerate_sandwiches(args.order, "oracle" if args.oracle else "pruned", jobs=cfg.jobs, progress=_progress)
    _progress(rep.nodes_explored, rep.count)
    _emit(cfg, rep.to_json(), _report_text(rep))
    return OK


def cmd_find(args, cfg):
    rep = find_magma(_names(args.require), _names(args.forbid), args.max_order, all_models=args.all)
    _emit(cfg, rep.to_json(), _report_text(rep))
    return OK if rep.count else FAILED


def cmd_embed(args, cfg):
    m = _read_magma(args.table)
    groups = None
    if args.group:
        try:
            groups = [build_group(g) for g in args.group]
        except (ValueError, GroupValidationError) as e:
            raise UsageError(str(e)) from None
    rep = embed_in_group_sandwich(m, args.max_group_order, groups=groups, full_carrier=args.full_carrier)
    _emit(cfg, rep.to_json(), _report_text(rep))
    return OK if rep.witnesses else FAILED


def cmd_dsl(args, cfg):
    laws = _laws(args.laws)
    if args.action == "check":
        if not args.table:
            raise UsageError("dsl check needs a table")
        m = _read_magma(args.table)
        res = check(laws, m)
        text = "\n".join(
            f"{k}: PASS" if v is None else f"{k}: FAIL " + " ".join(f"{a}={x}" for a, x in v.items())
            for k, v in res.items()
        )
        _emit(cfg, {"results": res}, text)
        return OK if all(v is None for v in res.values()) else FAILED
    try:
        req = laws.select(_names(args.require) or laws.names)
        forb = laws.select(_names(args.forbid))
    except KeyError as e:
        raise UsageError(f"unknown law {e}") from None
    models, nodes = search_models(req, forb, args.order, limit=1)
    if models:
        _emit(cfg, {"order": args.order, "found": True, "nodes": nodes, "model": magma_to_json(models[0])},
              dumps_magma(models[0], comment=f"model of order {args.order}"))
        return OK
    _emit(cfg, {"order": args.order, "found": False, "nodes": nodes},
          f"no model of order {args.order} (exhausted, {nodes} nodes)")
    return FAILED


def cmd_verify(args, cfg):
    from .verify import run_all

    results = run_all(seed=cfg.seed, echo=None if cfg.json else print)
    passed = sum(r.passed for r in results)
    if cfg.json:
        payload = {"claims": [{"key": r.key, "claim": r.claim, "passed": r.passed, "detail": r.detail,
                               "elapsed": round(r.elapsed, 3)} for r in results]}
        print(json.dumps(cfg.stamp(payload), indent=2, default=str))
    else:
        print(f"{passed}/{len(results)} claims verified")
    return OK if passed == len(results) else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sandwich-forge", description="Sandwich algebra toolkit.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps (default 0)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    # the same flags are accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    s = sub.add_parser("check", help="axiom profile of a table")
    s.add_argument("table")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("group", help="print a catalog group or its sandwich")
    s.add_argument("name")
    s.add_argument("what", choices=["sandwich", "table"])
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("classify", help="classify a function between groups (JSON)")
    s.add_argument("function")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("natmap", help="natural map report for a sandwich")
    s.add_argument("table")
    s.set_defaults(func=cmd_natmap)

    s = sub.add_parser("enumerate", help="sandwiches of one order up to isomorphism")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="brute-force sweep instead of pruned search")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("find", help="smallest magma with a given axiom profile")
    s.add_argument("--require", default="", help="comma separated, from LD,II,LI,LS,LC")
    s.add_argument("--forbid", default="")
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--all", action="store_true", help="collect every model at the smallest order")
    s.set_defaults(func=cmd_find)

    s = sub.add_parser("embed", help="search for the sandwich inside a group sandwich")
    s.add_argument("table")
    s.add_argument("--max-group-order", type=int, default=16)
    s.add_argument("--group", action="append", help="search only these groups (repeatable)")
    s.add_argument("--full-carrier", action="store_true", help="only groups of the same order")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("dsl", help="check laws against a table or find a model")
    s.add_argument("action", choices=["check", "find"])
    s.add_argument("table", nargs="?")
    s.add_argument("--laws", help="law file (default: bundled sandwich.laws)")
    s.add_argument("--require", default="", help="law names to require (default: all)")
    s.add_argument("--forbid", default="", help="law names to violate")
    s.add_argument("--order", type=int, default=2)
    s.set_defaults(func=cmd_dsl)

    s = sub.add_parser("verify-paper", help="run every reproduced claim and print pass/fail")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return USAGE
    cfg = RunConfig(args.command, args.seed, args.jobs, args.json)
    try:
        return args.func(args, cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except NotASandwichError as e:
        print(f"error: {e}", file=sys.stderr)
        return FAILED
    except (CapExceeded, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
