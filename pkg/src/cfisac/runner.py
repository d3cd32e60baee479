"""Command-line entry points: validate configs, run the closed-form versus
oracle conformance suite, and run the power-split / array-size sweeps.

Exit codes: 0 success, 2 usage or invalid config, 3 violated precondition
(e.g. too few trials), 4 conformance failure.

Every run writes a JSON manifest next to its CSVs -- also on failure, with
an error note -- listing the command, the full config snapshot, the seed,
the package version, timestamps, and every output file.  All files are
written to a temporary name and atomically renamed, so no output is ever
partially written.  For a fixed config and seed the CSV bytes are
identical across runs and across worker-thread counts.

In the default mode the conformance report checks the corrected closed
forms and appends informational "(printed)" rows wherever the published
text differs (see docs/CONFORMANCE.md); --strict-as-printed checks the
published forms themselves instead, which is expected to fail.
"""

import argparse
import dataclasses
import json
import math
import os
import sys
import time

from . import __version__
from .closedform import sinr_cpu, sinr_monitor, sinr_ue
from .config import (ConfigError, SystemConfig, apply_overrides,
                     default_config, load_config, validate)
from .metrics import (SWEEP_CSV_HEADER, draw_scene, sweep_npm, sweep_rows,
                      sweep_theta)
from .oracle import MIN_TRIALS, estimate_terms
from .power import full_power_coefficients

CONFORMANCE_CSV_HEADER = ("term", "closed_form", "oracle_mean",
                          "oracle_stderr", "z_score")
Z_LIMIT = 4.0
EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_CONFORMANCE = 0, 2, 3, 4


class PreconditionError(RuntimeError):
    pass


def _atomic_write(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _csv_text(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for col in header:
            v = row[col]
            cells.append(repr(float(v)) if isinstance(v, float) else str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


class _Manifest:
    def __init__(self, command: str, cfg: SystemConfig | None, seed, out_dir):
        self.data = {
            "command": command,
            "config": dataclasses.asdict(cfg) if cfg is not None else None,
            "seed": seed,
            "version": __version__,
            "started": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            "finished": None,
            "outputs": [],
            "status": "running",
            "error": None,
        }
        self.out_dir = out_dir

    def add_output(self, path: str) -> None:
        self.data["outputs"].append(os.path.basename(path))

    def finish(self, status: str, error: str | None = None) -> None:
        self.data["finished"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        self.data["status"] = status
        self.data["error"] = error
        os.makedirs(self.out_dir, exist_ok=True)
        _atomic_write(os.path.join(self.out_dir, "manifest.json"),
                      json.dumps(self.data, indent=2, default=repr) + "\n")


def _load(args) -> SystemConfig:
    cfg = load_config(args.config) if args.config else default_config()
    if args.set:
        cfg = apply_overrides(cfg, args.set)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    problems = validate(cfg)
    if problems:
        raise ConfigError("invalid config:\n  " + "\n  ".join(problems))
    return cfg


def _z_score(closed: float, mean: float, stderr: float) -> float:
    if stderr > 0.0:
        return (mean - closed) / stderr
    scale = max(abs(closed), abs(mean), 1e-300)
    if abs(mean - closed) <= 1e-9 * scale:
        return 0.0
    return math.copysign(math.inf, mean - closed)


def _breakdowns(ls, est, pa, cfg, variant):
    return {"monitor": sinr_monitor(ls, est, pa, cfg, variant=variant),
            "ue1": sinr_ue(1, ls, est, pa, cfg, variant=variant),
            "cpu": sinr_cpu(ls, est, pa, cfg, variant=variant)}


def cmd_conformance(args) -> int:
    cfg = _load(args)
    out = args.out
    manifest = _Manifest("conformance", cfg, cfg.seed, out)
    try:
        if args.trials < MIN_TRIALS:
            raise PreconditionError(
                f"conformance needs at least {MIN_TRIALS} trials, "
                f"got {args.trials}")
        os.makedirs(out, exist_ok=True)
        failures = []
        for i in range(args.topologies):
            topo, ls, est = draw_scene(cfg, cfg.seed, i)
            pa = full_power_coefficients(ls, cfg)
            corrected = _breakdowns(ls, est, pa, cfg, "corrected")
            printed = _breakdowns(ls, est, pa, cfg, "printed")
            for receiver in ("monitor", "ue1", "cpu"):
                print(f"conformance: topology {i + 1}/{args.topologies} "
                      f"{receiver} ({args.trials} trials)", flush=True)
                est_terms = estimate_terms(
                    receiver, cfg, topo, ls, est, pa, args.trials, cfg.seed,
                    topo_index=i, n_threads=args.threads)
                primary = printed if args.strict_as_printed else corrected
                cf_map = {"DS": primary[receiver].ds_mean,
                          **primary[receiver].terms}
                alt_map = {"DS": printed[receiver].ds_mean,
                           **printed[receiver].terms}
                rows = []
                for term, cf in cf_map.items():
                    te = est_terms[term]
                    z = _z_score(cf, te.mean, te.std_err)
                    rows.append({"term": term, "closed_form": cf,
                                 "oracle_mean": te.mean,
                                 "oracle_stderr": te.std_err, "z_score": z})
                    if abs(z) > Z_LIMIT:
                        failures.append(
                            f"{receiver} topology {i} term {term}: "
                            f"|z| = {abs(z):.1f} > {Z_LIMIT:g}")
                if not args.strict_as_printed:
                    for term, cf in alt_map.items():
                        if cf == cf_map[term]:
                            continue
                        te = est_terms[term]
                        z = _z_score(cf, te.mean, te.std_err)
                        rows.append({"term": f"{term} (printed)",
                                     "closed_form": cf,
                                     "oracle_mean": te.mean,
                                     "oracle_stderr": te.std_err,
                                     "z_score": z})
                suffix = "" if i == 0 else f"_topo{i}"
                path = os.path.join(out, f"conformance_{receiver}{suffix}.csv")
                _atomic_write(path, _csv_text(CONFORMANCE_CSV_HEADER, rows))
                manifest.add_output(path)
        if failures:
            for line in failures:
                print(f"conformance failure: {line}", file=sys.stderr)
            manifest.finish("conformance-failure", "; ".join(failures))
            return EXIT_CONFORMANCE
        manifest.finish("ok")
        return EXIT_OK
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        manifest.finish("precondition-failure", str(exc))
        return EXIT_PRECONDITION
    except Exception as exc:
        manifest.finish("error", f"{type(exc).__name__}: {exc}")
        raise


def cmd_sweep(args) -> int:
    cfg = _load(args)
    if args.sweep not in ("theta", "npm"):
        print(f"error: unknown sweep {args.sweep!r} (choose theta or npm)",
              file=sys.stderr)
        return EXIT_USAGE
    manifest = _Manifest(f"sweep {args.sweep}", cfg, cfg.seed, args.out)
    try:
        os.makedirs(args.out, exist_ok=True)
        variant = "printed" if args.strict_as_printed else "corrected"
        print(f"sweep {args.sweep}: {args.topologies} topologies per point",
              flush=True)
        if args.sweep == "theta":
            points = sweep_theta(cfg, n_topologies=args.topologies,
                                 seed=cfg.seed, variant=variant,
                                 n_threads=args.threads)
        else:
            points = sweep_npm(cfg, n_topologies=args.topologies,
                               seed=cfg.seed, variant=variant,
                               n_threads=args.threads)
        rows = sweep_rows(args.sweep, points)
        path = os.path.join(args.out, f"sweep_{args.sweep}.csv")
        _atomic_write(path, _csv_text(SWEEP_CSV_HEADER, rows))
        manifest.add_output(path)
        manifest.finish("ok")
        print(f"wrote {path}", flush=True)
        return EXIT_OK
    except Exception as exc:
        manifest.finish("error", f"{type(exc).__name__}: {exc}")
        raise


def cmd_validate(args) -> int:
    cfg = load_config(args.config) if args.config else default_config()
    if args.set:
        cfg = apply_overrides(cfg, args.set)
    problems = validate(cfg)
    if problems:
        for p in problems:
            print(f"config violation: {p}", file=sys.stderr)
        return EXIT_USAGE
    print("config ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cfisac",
        description="Cell-free ISAC simulator: conformance and sweeps.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p, trials=False):
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config field (repeatable)")
        p.add_argument("--seed", type=int, help="override the master seed")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads (results are thread-count "
                            "independent)")
        p.add_argument("--strict-as-printed", action="store_true",
                       help="use the published closed forms verbatim, "
                            "without the documented corrections")

    p = sub.add_parser("conformance",
                       help="closed forms versus Monte Carlo oracle")
    common(p)
    p.add_argument("--trials", type=int, default=100_000,
                   help="Monte Carlo trials per receiver")
    p.add_argument("--topologies", type=int, default=1,
                   help="independent topology draws to check")
    p.set_defaults(func=cmd_conformance)

    p = sub.add_parser("sweep", help="run the theta or npm experiment")
    common(p)
    p.add_argument("--sweep", required=True, help="theta or npm")
    p.add_argument("--topologies", type=int, default=500,
                   help="topology draws per grid point")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="check a config file")
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
