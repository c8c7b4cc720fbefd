"""Command line entry point.

Exit status: 0 all checks hold, 1 a mathematical check failed, 2 usage or parse
error, 3 a mandatory computation exceeded its budget.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness
from .betti import DEFAULT_BUDGET, BudgetExceeded, depth_of_quotient
from .bounds import BoundsError
from .graph import GraphError, is_acyclic, read_graph
from .homology import parse_field
from .monomials import edge_ideal, power_sequence

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _field(text: str):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default="Q", help="Q, F2 or Fp:P")
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="cap on candidate multidegrees per oracle call")
    common.add_argument("--out", help="write the report here (TSV gets a .json sidecar)")
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common.add_argument("-v", "--verbose", action="store_true")

    campaign = argparse.ArgumentParser(add_help=False)
    campaign.add_argument("--seed", type=int, default=0)
    campaign.add_argument("--count", type=_positive, default=100)
    campaign.add_argument("--max-vertices", type=_positive, default=8)
    campaign.add_argument("--t-max", type=_positive, default=2)
    campaign.add_argument("--jobs", type=_positive, default=1)

    p = argparse.ArgumentParser(prog="edgedepth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", parents=[common], help="bound table for one forest")
    s.add_argument("--graph", required=True)
    s.add_argument("--t-max", type=_positive, default=4)
    s.add_argument("--no-oracle", action="store_true", help="skip the oracle column")

    s = sub.add_parser("verify", parents=[common, campaign],
                       help="random forest campaign: bounds against the oracle")
    s.add_argument("--mode", choices=("bounds", "identities", "ass", "full"), default="bounds")
    s.add_argument("--graph", action="append", default=[],
                   help="extra instance (non-forests get oracle-only rows)")
    s.add_argument("--cross-field", action="store_true",
                   help="also compute over F2 and log disagreements")

    sub.add_parser("identities", parents=[common, campaign], help="ideal identity suites")

    s = sub.add_parser("ass", parents=[common], help="associated primes of powers")
    s.add_argument("--graph", required=True)
    s.add_argument("--t-max", type=_positive, default=3)

    s = sub.add_parser("paper-examples", parents=[common], help="the two worked tree examples")
    s.add_argument("--t-max", type=_positive, default=6)
    s.add_argument("--extended", action="store_true",
                   help="run the oracle past the desk-scale caps (budget permitting)")

    s = sub.add_parser("depth", parents=[common], help="oracle depth of R/I^t")
    s.add_argument("--graph", required=True)
    s.add_argument("--t-max", type=_positive, default=1)
    s.add_argument("--betti", action="store_true", help="emit the Betti table TSV")
    return p


def _emit(args, text_tsv: str, text_json: str, summary: dict | None = None):
    body = text_json if args.format == "json" else text_tsv
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
        if args.format == "tsv" and summary is not None:
            with open(args.out + ".json", "w", encoding="utf-8") as fh:
                json.dump(summary, fh, indent=2, sort_keys=True)
                fh.write("\n")
    else:
        sys.stdout.write(body)


def _emit_rows(args, rows, config: dict) -> int:
    summary = {"config": config, "summary": harness.summarize(rows)}
    _emit(args, harness.rows_to_tsv(rows), harness.rows_to_json(rows, config), summary)
    s = summary["summary"]
    print(f"{args.command}: {s['rows']} rows, {s['checks']} checks, {s['failed']} failed, "
          f"{s['budget_exceeded']} budget-exceeded", file=sys.stderr)
    return EXIT_FAIL if s["failed"] else EXIT_OK


def _config(args, mode="bounds") -> harness.CampaignConfig:
    return harness.CampaignConfig(seed=args.seed, count=args.count,
                                  max_vertices=args.max_vertices, max_power=args.t_max,
                                  field=args.field, budget=args.budget, mode=mode,
                                  jobs=args.jobs, cross_field=getattr(args, "cross_field", False))


def cmd_bounds(args) -> int:
    g = read_graph(args.graph)
    if not is_acyclic(g):
        raise UsageError("bounds needs a forest; the graph has a cycle")
    reports = harness.bounds_table(g, args.t_max, args.field, args.budget, not args.no_oracle)
    missing = "-" if args.no_oracle else harness.BUDGET_EXCEEDED
    doc = {"graph": args.graph, "field": str(args.field), "t_max": args.t_max,
           "rows": [r.as_dict() for r in reports]}
    text_json = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    consistent = all(r.consistent() for r in reports)
    summary = {"config": {k: doc[k] for k in ("graph", "field", "t_max")},
               "summary": {"rows": len(reports), "consistent": consistent}}
    _emit(args, harness.bounds_to_tsv(reports, missing), text_json, summary)
    return EXIT_OK if consistent else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = _config(args, args.mode)
    extra = [read_graph(path) for path in args.graph]
    rows = []
    if args.mode in ("bounds", "full"):
        rows += harness.run_bounds_campaign(cfg, extra)
    if args.mode in ("identities", "full"):
        rows += harness.run_identity_campaign(cfg)
    if args.mode == "full":
        rows += harness.run_depth_lemma_campaign(cfg)
    if args.mode in ("ass", "full"):
        rows += harness.run_ass_campaign(cfg)
    return _emit_rows(args, rows, cfg.echo())


def cmd_identities(args) -> int:
    cfg = _config(args, "identities")
    return _emit_rows(args, harness.run_identity_campaign(cfg), cfg.echo())


def cmd_ass(args) -> int:
    g = read_graph(args.graph)
    if not g.edges:
        raise UsageError("ass needs at least one edge")
    rows = harness.ass_rows(g, args.t_max, args.field, args.budget)
    return _emit_rows(args, rows, {"graph": args.graph, "t_max": args.t_max,
                                   "field": str(args.field)})


def cmd_paper_examples(args) -> int:
    rows = harness.worked_example_rows(args.t_max, args.extended, args.field, args.budget)
    code = _emit_rows(args, rows, {"t_max": args.t_max, "extended": args.extended,
                                   "field": str(args.field), "budget": args.budget})
    if code == EXIT_OK and any(r.t == 1 and r.oracle == harness.BUDGET_EXCEEDED for r in rows):
        return EXIT_BUDGET
    return code


def cmd_depth(args) -> int:
    g = read_graph(args.graph)
    lines = ["t\tdepth\tpd\twitness\tfield"]
    tables = []
    if g.edges:
        powers = power_sequence(edge_ideal(g), args.t_max)
    else:
        powers = [edge_ideal(g)] * args.t_max
    for t, it in enumerate(powers, 1):
        res = depth_of_quotient(it, args.field, args.budget)
        witness = ",".join(map(str, res.witness_degree))
        lines.append(f"{t}\t{res.depth}\t{res.projective_dimension}\t{witness}\t{res.field}")
        tables.append((t, res))
    text = "\n".join(lines) + "\n"
    if args.betti:
        for t, res in tables:
            text += f"# betti t={t}\n" + res.betti.to_tsv()
    doc = {"graph": args.graph, "field": str(args.field),
           "rows": [{"t": t, "depth": r.depth, "projective_dimension": r.projective_dimension,
                     "witness_degree": list(r.witness_degree)} for t, r in tables]}
    _emit(args, text, json.dumps(doc, indent=2, sort_keys=True) + "\n", None)
    return EXIT_OK


COMMANDS = {
    "bounds": cmd_bounds,
    "verify": cmd_verify,
    "identities": cmd_identities,
    "ass": cmd_ass,
    "paper-examples": cmd_paper_examples,
    "depth": cmd_depth,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, UsageError, BoundsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
