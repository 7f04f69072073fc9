"""Command line front end.

Exit codes: 0 success, 1 an expectation or task failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .scenario import EXPECTATIONS, TASKS, ConfigError, load_scenario, run_scenario

log = logging.getLogger("nullcone")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def bundled_scenarios() -> list:
    """Paths of the scenario files shipped with the package, sorted by name."""
    root = resources.files("nullcone") / "scenarios"
    return sorted(str(p) for p in root.iterdir() if p.name.endswith(".yaml"))


def _short(value) -> str:
    text = json.dumps(value, sort_keys=True)
    return text if len(text) <= 80 else text[:77] + "..."


def render_text(report: dict, verbose: bool = False) -> str:
    lines = [f"scenario {report['scenario']}: dim {report['ambient_dim']}, "
             f"degree bound {report['degree_bound']}, headroom {report['headroom']}"]
    for t in report["tasks"]:
        if t["status"] != "ok":
            lines.append(f"  [{t['task']}] ERROR {t['error']}")
            continue
        res = t["results"]
        lines.append(f"  [{t['task']}] " + _task_line(t["task"], res))
        if verbose:
            for key, val in res.items():
                lines.append(f"      {key}: {_short(val)}")
    for c in report["expectations"]:
        mark = "PASS" if c["passed"] else "FAIL"
        detail = "" if c["passed"] else f" (expected {_short(c['expected'])}, got {_short(c['actual'])})"
        lines.append(f"  {mark} {c['key']}{detail}")
    lines.append(f"  => {'passed' if report['passed'] else 'FAILED'}")
    return "\n".join(lines)


def _task_line(task: str, res: dict) -> str:
    if task == "invariants":
        return "generators " + ", ".join(res["generators"])
    if task == "nullcone":
        rs = res["regular_sequence"]
        return f"piece dims {res['piece_dims']}, regular sequence: {rs['verdict']}"
    if task == "stabilizer":
        out = f"dim g0 = {res['annihilator']['dimension']}, dim h0 = {res['ideal_stabilizer']['dimension']}"
        if "commutant_check" in res:
            out += f", commutant check {res['commutant_check']}"
        return out
    if task == "reductivity":
        return ", ".join(f"{k}: {v['verdict']} (radical {v['radical_dim']})" for k, v in res.items())
    if task == "fiber":
        gc = res["graded_comparison"]
        aff = res["affine_stabilizer"]
        cmp = f"equal up to {gc['bound']}" if gc["result"] == "EqualUpTo" else \
            f"witness {gc['form']} in degree {gc['degree']}"
        return (f"leading forms vs null cone: {cmp}; affine stabilizer dim {aff['dimension']} "
                f"(effective {aff['effective_dimension']})")
    if task == "check-map":
        return ", ".join(f"{m['name']} -> {m['target']}: {m['preserved']}" for m in res["maps"])
    return ""


def _run_path(path: str, overrides: dict) -> dict:
    return run_scenario(load_scenario(path, **overrides))


def verify_suite(paths: list, overrides: dict | None = None, jobs: int = 1) -> list:
    """Run scenario files; reports come back in the order of ``paths``."""
    overrides = overrides or {}
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_run_path, paths, [overrides] * len(paths)))
    return [_run_path(p, overrides) for p in paths]


def suite_report(reports: list) -> dict:
    failed = [f"{r['scenario']}:{c['key']}" for r in reports for c in r["expectations"] if not c["passed"]]
    failed += [f"{r['scenario']}:{t['task']}" for r in reports for t in r["tasks"] if t["status"] != "ok"]
    return {
        "scenarios": reports,
        "expectations": sum(len(r["expectations"]) for r in reports),
        "failed": len(failed),
        "failures": failed,
        "passed": not failed,
    }


def _write(out: str | None, payload: dict) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--degree-bound", type=int, help="override the scenario's degree bound")
    common.add_argument("--headroom", type=int, help="override the multiplier headroom")
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(prog="nullcone", description="Null cone ideals and their stabilizers.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="run a scenario file")
    run.add_argument("--config", required=True)
    run.add_argument("--task", action="append", choices=TASKS, help="task to run (repeatable)")
    for task in TASKS:
        p = sub.add_parser(task, parents=[common], help=f"run only the {task} task of a scenario")
        p.add_argument("--config", required=True)
    vp = sub.add_parser("verify-paper", parents=[common], help="run every bundled scenario")
    vp.add_argument("--jobs", type=int, default=1, help="scenarios to run in parallel")
    return parser


def main(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    overrides = {"degree_bound": args.degree_bound, "headroom": args.headroom}
    for key in ("degree_bound", "headroom"):
        if overrides[key] is not None and overrides[key] < 0:
            print(f"error: --{key.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_INPUT

    if args.command == "verify-paper":
        try:
            reports = verify_suite(bundled_scenarios(), overrides, args.jobs)
        except ConfigError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        for r in reports:
            print(render_text(r, args.verbose))
        suite = suite_report(reports)
        print(f"{len(reports)} scenarios, {suite['expectations']} expectations, {suite['failed']} failed")
        _write(args.out, suite)
        return EXIT_OK if suite["passed"] else EXIT_FAILED

    tasks = args.task if args.command == "run" else [args.command]
    try:
        sc = load_scenario(args.config, tasks=tasks, **overrides)
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except ConfigError as exc:
        print(f"error: {args.config}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command != "run" or args.task:
        # a restricted run checks only the expectations of the tasks it ran
        chosen = set(tasks)
        sc.expect = {k: v for k, v in sc.expect.items() if EXPECTATIONS[k].task in chosen}
        if "check-map" not in chosen:
            sc.maps = [m for m in sc.maps if m.expect is None]
        if "nullcone" not in chosen:
            sc.membership = [m for m in sc.membership if m["expect"] is None]
    log.info("running %s: tasks %s", sc.name, ", ".join(sc.tasks))
    report = run_scenario(sc)
    print(render_text(report, args.verbose))
    _write(args.out, report)
    return EXIT_OK if report["passed"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
