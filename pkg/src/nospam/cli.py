"""Command-line interface.

Exit codes: 0 success, 1 runtime failure (unreadable or empty input, I/O),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import logging
import secrets
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .catalog import dump_catalog
from .census import census
from .graph import EdgeListError, LoadOptions, load_edge_list, write_edge_list, write_label_map
from .output import write_census, write_profiles
from .profiler import ConfigError, EnsembleConfig, profiles_from_ensemble, run_ensemble
from .randomizer import SwitchBudget, randomize_with_stats

log = logging.getLogger("nospam")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class _Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    def __call__(self, name):
        timer = self

        class _Stage:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.stages[name] = round(time.perf_counter() - self.t0, 6)

        return _Stage()


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


def _load(args):
    g, report = load_edge_list(args.input, LoadOptions(allow_extra_columns=args.allow_extra_columns))
    info = {
        "path": str(args.input),
        "sha256": _sha256(Path(args.input)),
        "nodes": g.n_nodes,
        "arcs": g.n_arcs,
        "uni_dyads": len(g.uni_dyads),
        "bi_dyads": len(g.bi_dyads),
        "load_report": dataclasses.asdict(report),
    }
    log.info(
        "loaded %s: %d nodes, %d arcs (%d self-loops, %d duplicates dropped)",
        args.input,
        g.n_nodes,
        g.n_arcs,
        report.self_loops_dropped,
        report.duplicates_dropped,
    )
    return g, info


def _write_manifest(out_dir: Path, command: str, started: float, timer: _Timer, **fields) -> None:
    manifest = {
        "tool": "nospam",
        "version": __version__,
        "command": command,
        "argv": sys.argv[1:],
        "started_at": datetime.fromtimestamp(started, timezone.utc).isoformat(),
        "wall_clock_s": round(time.time() - started, 6),
        "timings_s": timer.stages,
        **fields,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def cmd_catalog(args) -> int:
    formats = ["csv", "json"] if args.format == "both" else [args.format]
    files = {}
    for fmt in formats:
        files.update(dump_catalog(fmt))
    if args.out_dir is None:
        for name, text in files.items():
            sys.stdout.write(f"# {name}\n{text}")
        return EXIT_OK
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_census(args) -> int:
    started = time.time()
    timer = _Timer()
    with timer("load"):
        g, info = _load(args)
    with timer("census"):
        node_counts, reg_counts = census(g)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with timer("write"):
        files = write_census(out, g.labels, node_counts, reg_counts)
        write_label_map(g, out / "labels.csv")
    _write_manifest(out, "census", started, timer, input=info, outputs=files + ["labels.csv"])
    return EXIT_OK


def _resolve_seed(args) -> tuple[int, str]:
    if args.seed is None:
        return secrets.randbits(63), "generated"
    return args.seed, "user"


def cmd_nospam(args) -> int:
    started = time.time()
    timer = _Timer()
    seed, seed_source = _resolve_seed(args)
    cfg = EnsembleConfig(
        instances=args.instances,
        budget=SwitchBudget(args.switches_per_edge),
        seed=seed,
        workers=args.workers,
        max_attempt_factor=args.max_attempt_factor,
    )
    with timer("load"):
        g, info = _load(args)

    step = max(1, cfg.instances // 20)

    def progress(done, total):
        if done % step == 0 or done == total:
            log.info("instances completed: %d/%d", done, total)

    with timer("ensemble"):
        ens = run_ensemble(g, cfg, progress)
    with timer("statistics"):
        prof = profiles_from_ensemble(ens)
    if prof.all_degenerate:
        log.warning("every Z-score is degenerate: the randomized ensemble shows no variation")
    out = Path(args.out_dir)
    with timer("write"):
        files = write_profiles(out, g.labels, prof, bins=args.bins)
        write_label_map(g, out / "labels.csv")
    _write_manifest(
        out,
        "nospam",
        started,
        timer,
        input=info,
        config={
            "instances": cfg.instances,
            "switches_per_edge": cfg.budget.switches_per_edge,
            "switches_per_instance": cfg.budget.total(g.n_arcs),
            "seed": seed,
            "seed_source": seed_source,
            "workers": cfg.workers,
            "max_attempt_factor": cfg.max_attempt_factor,
            "histogram_bins": args.bins,
        },
        ensemble={
            "switches": ens.switches,
            "attempts": ens.attempts,
            "instances_below_budget": ens.short_instances,
            "all_degenerate": prof.all_degenerate,
        },
        outputs=files + ["labels.csv"],
    )
    return EXIT_OK


def cmd_randomize(args) -> int:
    started = time.time()
    timer = _Timer()
    seed, seed_source = _resolve_seed(args)
    if args.max_attempt_factor <= 0:
        raise ConfigError("--max-attempt-factor must be positive")
    budget = SwitchBudget(args.switches_per_edge)
    with timer("load"):
        g, info = _load(args)
    with timer("randomize"):
        rg, stats = randomize_with_stats(g, budget, seed, args.instance_index, args.max_attempt_factor)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_edge_list(rg, out / "randomized.txt")
    _write_manifest(
        out,
        "randomize",
        started,
        timer,
        input=info,
        config={
            "seed": seed,
            "seed_source": seed_source,
            "instance_index": args.instance_index,
            "switches_per_edge": args.switches_per_edge,
            "max_attempt_factor": args.max_attempt_factor,
        },
        randomization=stats,
        outputs=["randomized.txt"],
    )
    return EXIT_OK


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nospam", description="Node-specific triad pattern mining.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-q", "--quiet", action="store_true", help="only log warnings")
    sub = parser.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", help="triad class catalog")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    dump = cat_sub.add_parser("dump", help="write the class catalog")
    dump.add_argument("--format", choices=["csv", "json", "both"], default="both")
    dump.add_argument("--out-dir", default=None, help="directory to write to (default: stdout)")
    dump.set_defaults(func=cmd_catalog)

    def input_args(p):
        p.add_argument("input", help="edge list file: one 'src dst' pair per line")
        p.add_argument("--out-dir", required=True)
        p.add_argument(
            "--allow-extra-columns", action="store_true", help="ignore tokens after the first two"
        )

    def switch_args(p):
        p.add_argument("--switches-per-edge", type=_positive_float, default=5.0)
        p.add_argument("--seed", type=_seed, default=None, help="RNG seed (recorded in the manifest)")
        p.add_argument("--max-attempt-factor", type=_positive_float, default=1000.0)

    cen = sub.add_parser("census", help="node-specific and regular triad census")
    input_args(cen)
    cen.set_defaults(func=cmd_census)

    nsp = sub.add_parser("nospam", help="node-specific triad Z-scores")
    input_args(nsp)
    switch_args(nsp)
    nsp.add_argument("--instances", type=int, default=1000)
    nsp.add_argument("--workers", type=int, default=1)
    nsp.add_argument("--bins", type=int, default=20, help="FFL score histogram bins")
    nsp.set_defaults(func=cmd_nospam)

    rnd = sub.add_parser("randomize", help="write one randomized instance")
    input_args(rnd)
    switch_args(rnd)
    rnd.add_argument("--instance-index", type=int, default=0)
    rnd.set_defaults(func=cmd_randomize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    if getattr(args, "bins", 1) < 1:
        parser.error("--bins must be >= 1")
    if getattr(args, "instance_index", 0) < 0:
        parser.error("--instance-index must be >= 0")
    try:
        return args.func(args)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (EdgeListError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
