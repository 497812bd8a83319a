"""Command-line front end: verify scenarios, dump tables, manage goldens.

Exit codes: 0 all checks pass, 1 verification failure or golden diff,
2 usage or configuration error.  Reports are deterministic for a given
(config, seed): no timestamps or timings go into the output files, so two
runs with different worker counts are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .parallel import default_jobs
from .reports import canonical_json
from .scenarios import (
    SCENARIO_NAMES,
    ScenarioError,
    default_config,
    run_scenario,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _load_config(name, args):
    cfg = default_config(name, jobs=args.jobs, seed=args.seed,
                         sample_count=args.sample_count)
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                overrides = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ScenarioError(f"cannot read config {args.config}: {exc}")
        for key, value in overrides.items():
            if key == "name":
                continue
            if not hasattr(cfg, key):
                raise ScenarioError(f"unknown config field {key!r}")
            if key == "subset":
                value = tuple(value)
            setattr(cfg, key, value)
    return cfg


def _write_out(args, payload):
    text = canonical_json(payload)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_verify(args):
    cfg = _load_config(args.scenario, args)
    t0 = time.time()
    result = run_scenario(args.scenario, jobs=args.jobs, mutate=args.mutate,
                          config=cfg)
    wall = time.time() - t0
    _write_out(args, result.envelope(__version__))
    if args.verbosity >= 1:
        for line in result.report.summary_lines():
            print(line, file=sys.stderr)
        print(f"# wall time {wall:.1f}s jobs={args.jobs}", file=sys.stderr)
    n_fail = len([c for c in result.report.checks if not c.passed and not c.skipped])
    n_skip = len([c for c in result.report.checks if c.skipped])
    status = "PASS" if result.passed else (
        f"FAIL ({n_fail} checks" + (f", {n_skip} skipped)" if n_skip else ")"))
    print(f"{args.scenario}: {status}", file=sys.stderr)
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_table(args):
    result = run_scenario(args.scenario, jobs=args.jobs, full=False)
    objs = result.objects
    kind = args.object
    if kind == "crossed-product":
        cp = objs["cp"]
        rows = []
        for i in range(cp.dim):
            for j in range(cp.dim):
                prod = cp.product_basis(i, j, cache=False)
                rows.append({
                    "left": cp.labels[i],
                    "right": cp.labels[j],
                    "product": [[cp.labels[k], v.to_json()] for k, v in sorted(prod.items())],
                })
        payload = {"scenario": args.scenario, "object": kind,
                   "dim": cp.dim, "rows": rows}
    elif kind == "hopf":
        H = objs.get("H1") or objs.get("H")
        payload = {"scenario": args.scenario, "object": kind, "dim": H.dim,
                   "hopf": H.to_json()}
    elif kind == "action":
        tpa = objs["tpa"]
        payload = {
            "scenario": args.scenario, "object": kind,
            "rows": [
                [tpa.hopf.labels[h], tpa.carrier.labels[a],
                 [[tpa.carrier.labels[k], v.to_json()] for k, v in sorted(col.items())]]
                for (h, a), col in sorted(tpa.action.items())
            ],
        }
    elif kind == "omega":
        tpa = objs["tpa"]
        payload = {
            "scenario": args.scenario, "object": kind,
            "rows": [
                [tpa.hopf.labels[h], tpa.hopf.labels[l],
                 [[tpa.carrier.labels[k], v.to_json()] for k, v in sorted(col.items())]]
                for (h, l), col in sorted(tpa.omega.items())
            ],
        }
    else:
        print(f"unknown object {kind!r}", file=sys.stderr)
        return EXIT_USAGE
    _write_out(args, payload)
    return EXIT_OK


def _golden_path(args):
    if args.path:
        return Path(args.path)
    return Path("goldens") / f"{args.scenario}.golden.json"


def _json_diff(a, b, path=""):
    diffs = []
    if isinstance(a, dict) and isinstance(b, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a:
                diffs.append(f"{path}.{k}: only in current")
            elif k not in b:
                diffs.append(f"{path}.{k}: only in golden")
            else:
                diffs.extend(_json_diff(a[k], b[k], f"{path}.{k}"))
    elif isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            diffs.append(f"{path}: length {len(b)} vs {len(a)}")
        for i, (x, y) in enumerate(zip(a, b)):
            diffs.extend(_json_diff(x, y, f"{path}[{i}]"))
    elif a != b:
        diffs.append(f"{path}: {b!r} -> {a!r}")
    return diffs


def cmd_golden(args):
    path = _golden_path(args)
    result = run_scenario(args.scenario, jobs=args.jobs)
    envelope = result.envelope(__version__)
    text = canonical_json(envelope)
    if args.action == "record":
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        print(f"recorded {path}", file=sys.stderr)
        return EXIT_OK if result.passed else EXIT_FAIL
    if not path.exists():
        print(f"missing golden file {path}", file=sys.stderr)
        return EXIT_USAGE
    golden_text = path.read_text(encoding="utf-8")
    if golden_text == text:
        print(f"{args.scenario}: golden match", file=sys.stderr)
        return EXIT_OK
    try:
        golden_obj = json.loads(golden_text)
        for line in _json_diff(envelope, golden_obj)[:50]:
            print(f"diff {line}", file=sys.stderr)
    except json.JSONDecodeError:
        print("golden file is not valid JSON", file=sys.stderr)
    print(f"{args.scenario}: golden MISMATCH", file=sys.stderr)
    return EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="hopf-partial",
                                description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: HOPF_PARTIAL_JOBS or CPU count)")
        sp.add_argument("--out", default=None, help="write JSON output to this path")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--sample-count", type=int, default=10_000)
        sp.add_argument("--verbosity", type=int, default=0)

    sp = sub.add_parser("verify", help="run a scenario's full verification stack")
    sp.add_argument("scenario")
    sp.add_argument("--config", default=None, help="JSON file with config overrides")
    sp.add_argument("--mutate", default=None,
                    help="inject a single-entry mutation target:op:index")
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("table", help="dump a structure-constant table")
    sp.add_argument("scenario")
    sp.add_argument("object", choices=["crossed-product", "hopf", "action", "omega"])
    common(sp)
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("golden", help="record or check the golden report")
    sp.add_argument("scenario")
    sp.add_argument("action", choices=["record", "check"])
    sp.add_argument("--path", default=None)
    common(sp)
    sp.set_defaults(fn=cmd_golden)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already
        raise exc
    if args.jobs is None:
        args.jobs = default_jobs()
    if getattr(args, "scenario", None) and args.scenario not in SCENARIO_NAMES:
        print(f"unknown scenario {args.scenario!r}; choose from {SCENARIO_NAMES}",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except ScenarioError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
