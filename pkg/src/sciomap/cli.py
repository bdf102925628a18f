"""Command-line front end: one subcommand per pipeline stage plus `run`.

Every subcommand takes the same options; values given on the command line
override the config file. Stage subcommands expect the previous stages'
outputs to exist under the output directory, so composing them in order is
exactly equivalent to `run`.
"""

from __future__ import annotations

import argparse
import sys

from .pipeline import (
    STAGES,
    load_config,
    parse_q,
    parse_r,
    parse_window,
    run_pipeline,
    run_stage,
)

_STAGE_HELP = {
    "ingest": "parse the raw mention export into canonical mentions.csv",
    "enrich": "fill in missing ISSNs via page lookups (cached)",
    "link": "match mentions to cataloged journals and their specialties",
    "dedupe": "collapse repeated citations of an article within an entry",
    "filter": "apply the discipline and year-window rules",
    "summary": "corpus-level counts and language shares",
    "cocite": "build the co-citation graph(s)",
    "prune": "threshold, drop isolates, normalize, keep largest component",
    "pathfinder": "scale the pruned graph(s) into PFNETs",
    "centrality": "degree and betweenness on pruned graphs and PFNETs",
    "cluster": "greedy modularity communities on the PFNET",
    "tables": "emit the distribution/specialty/journal/coverage tables",
    "plot": "render the annual citation chart",
    "export": "write Pajek, GEXF, dot and node-attribute files",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sciomap",
        description="Map a citation corpus into pruned, scaled co-citation networks.",
        epilog="The SCIOMAP_CACHE environment variable relocates the ISSN lookup cache.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="TOML configuration file")
    # Flag defaults stay None so only explicitly passed flags override the file.
    common.add_argument("--out", default=None, metavar="DIR", help="output directory")
    common.add_argument(
        "--min-weight", default=None, type=float, metavar="N",
        help="co-citation threshold (default 6)",
    )
    common.add_argument(
        "--window", default=None, metavar="Y1:Y2",
        help="inclusive year window (default 2007:2017)",
    )
    common.add_argument("--counting", default=None, choices=["entries", "pairs"])
    common.add_argument("--level", default=None, choices=["journal", "specialty", "both"])
    common.add_argument("--r", default=None, metavar="inf|NUMBER", help="Minkowski exponent")
    common.add_argument("--q", default=None, metavar="N|max", help="max path length in edges")
    common.add_argument("--seed", default=None, type=int, metavar="N")
    common.add_argument(
        "--top-k", default=None, type=int, metavar="N", help="journal ranking size (default 25)"
    )
    common.add_argument(
        "--offline", action="store_true", default=None,
        help="use bundled lookup fixtures instead of the live endpoint",
    )
    common.add_argument("--jobs", default=None, type=int, metavar="N", help="worker threads")

    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, _dirname in STAGES:
        subparsers.add_parser(name, parents=[common], help=_STAGE_HELP[name])
    subparsers.add_parser("run", parents=[common], help="run every stage and write manifest.json")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    out: dict = {}
    if args.out is not None:
        out["out_dir"] = args.out
    if args.min_weight is not None:
        out["min_weight"] = args.min_weight
    if args.window is not None:
        out["window"] = parse_window(args.window)
    if args.counting is not None:
        out["counting"] = args.counting
    if args.level is not None:
        out["level"] = args.level
    if args.r is not None:
        out["r"] = parse_r(args.r)
    if args.q is not None:
        out["q"] = parse_q(args.q)
    if args.seed is not None:
        out["seed"] = args.seed
    if args.top_k is not None:
        out["top_k"] = args.top_k
    if args.offline:
        out["offline"] = True
    if args.jobs is not None:
        out["jobs"] = args.jobs
    return out


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, _overrides(args))
    except (OSError, ValueError) as exc:
        print(f"sciomap: bad configuration: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "run":
            manifest = run_pipeline(cfg)
            print(f"wrote {manifest}")
        else:
            run_stage(cfg, args.command)
            dirname = dict(STAGES)[args.command]
            print(f"wrote {cfg.stage_dir(dirname)}")
    except Exception as exc:  # any stage failure -> nonzero, partials retained
        print(f"sciomap: {args.command} failed: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
