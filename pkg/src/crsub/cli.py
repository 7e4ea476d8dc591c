"""``crsub`` command line: list, describe, check and suite.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
3 the level set could not be sampled.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import scenarios
from .crverify import SuiteResult, suite
from .errors import InvalidParams, SamplingExhausted, UnknownScenario
from .numlin import ToleranceProfile

REPORT_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SAMPLING = 0, 1, 2, 3

TOL_KEYS = {
    "rank": "rank_rel_tol",
    "check": "check_tol",
    "fd": "fd_step",
    "newton": "newton_tol",
    "newton_iter": "newton_max_iter",
}


class UsageError(Exception):
    pass


def _default_seed() -> int:
    env = os.environ.get("CRSUB_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CRSUB_SEED must be an integer, got {env!r}") from None


def parse_tolerances(items) -> ToleranceProfile:
    changes = {}
    for item in items or []:
        key, _, value = item.partition("=")
        if key not in TOL_KEYS or not value:
            raise UsageError(f"bad --tol {item!r}; use one of {', '.join(k + '=VALUE' for k in TOL_KEYS)}")
        field = TOL_KEYS[key]
        try:
            changes[field] = int(value) if field == "newton_max_iter" else float(value)
        except ValueError:
            raise UsageError(f"bad --tol value {item!r}") from None
    try:
        return ToleranceProfile().replace(**changes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def report_dict(result: SuiteResult) -> dict:
    inst = result.scenario
    return {
        "report_version": REPORT_VERSION,
        "scenario": inst.id,
        "params": inst.params,
        "points": len(result.points),
        "seed": result.seed,
        "tolerances": {k: getattr(result.tol, v) for k, v in TOL_KEYS.items()},
        "printed_mu": inst.momentum.formula,
        "mu_note": inst.momentum.note,
        "declared_scale": inst.momentum.scale,
        "calibration_scale": result.calibration_scale,
        "level": inst.level.to_dict(),
        "printed_level": inst.printed_level,
        "structure_class": result.structure_class,
        "passed": result.passed,
        "points_passed": result.points_passed,
        "checks": [c.to_dict() for c in result.checks],
        "facts": [f.to_dict() for f in result.facts],
        "notes": inst.notes,
        "per_point": [
            {"index": i, **rep.to_dict(), "regularity": reg.to_dict()}
            for i, (rep, reg) in enumerate(zip(result.reports, result.regularities))
        ],
    }


def render_text(result: SuiteResult) -> str:
    inst = result.scenario
    lines = [
        f"scenario {inst.id} {scenarios.get(inst.id).title}  params={json.dumps(inst.params)}",
        f"  printed mu: {inst.momentum.formula}",
        f"  calibration scale: {result.calibration_scale:.12g} (declared {inst.momentum.scale:g})",
        f"  structure class: {result.structure_class}",
        f"  points: {result.points_passed}/{len(result.points)} passed all CR checks (seed {result.seed})",
    ]
    for c in result.checks:
        mark = "PASS" if c.passed else "FAIL"
        lines.append(f"  [{mark}] {c.name:40s} {c.max_residual:.3e}  (tol {c.tolerance:.1e})")
    for f in result.facts:
        mark = "PASS" if f.passed else "FAIL"
        lines.append(f"  [{mark}] fact {f.name}: {f.detail}")
    for note in inst.notes:
        lines.append(f"  note: {note}")
    lines.append(f"  overall: {'PASS' if result.passed else 'FAIL'}")
    return "\n".join(lines)


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_list(args) -> int:
    for spec in scenarios.REGISTRY.values():
        params = " ".join(p.describe() for p in spec.params)
        print(f"{spec.id}  {spec.title:24s} {spec.description}  [{params}]")
    return EXIT_OK


def cmd_describe(args) -> int:
    spec = scenarios.get(args.scenario)
    inst = scenarios.build(spec.id)
    print(f"{spec.id}  {spec.title}")
    print(f"  {spec.description}")
    print(f"  printed mu: {inst.momentum.formula}")
    if inst.momentum.note:
        print(f"  implemented: {inst.momentum.note}")
    print(f"  declared scale kappa: {inst.momentum.scale:g}")
    print(f"  level: {inst.level.kind} {list(inst.level.vector)} (printed: {inst.printed_level})")
    print(f"  ambient dim: {inst.ambient_dim}, group dim: {inst.lie_dim}, structure: {inst.structure_class}")
    print("  params:")
    for p in spec.params:
        print(f"    {p.describe()}  {p.doc}".rstrip())
    print(f"  expected: {json.dumps(inst.expected)}")
    for note in inst.notes:
        print(f"  note: {note}")
    return EXIT_OK


def _run(sid, overrides, points, seed, tol) -> SuiteResult:
    params = dict(scenarios.parse_param(sid, item) for item in overrides or [])
    return suite(scenarios.build(sid, params), seed=seed, count=points, tol=tol)


def cmd_check(args) -> int:
    tol = parse_tolerances(args.tol)
    seed = args.seed if args.seed is not None else _default_seed()
    result = _run(args.scenario, args.param, args.points, seed, tol)
    if args.format == "json":
        _emit(_dump(report_dict(result)), args.output)
    else:
        _emit(render_text(result) + "\n", args.output)
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_suite(args) -> int:
    if not args.all:
        raise UsageError("suite currently requires --all")
    tol = parse_tolerances(args.tol)
    seed = args.seed if args.seed is not None else _default_seed()
    results = [_run(sid, [], args.points, seed, tol) for sid in scenarios.REGISTRY]
    ok = all(r.passed for r in results)
    if args.format == "json":
        _emit(_dump({"report_version": REPORT_VERSION, "passed": ok,
                     "reports": [report_dict(r) for r in results]}), args.output)
    else:
        text = "\n\n".join(render_text(r) for r in results)
        text += f"\n\nsuite: {sum(r.passed for r in results)}/{len(results)} scenarios passed\n"
        _emit(text, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list registered scenarios").set_defaults(func=cmd_list)

    p = sub.add_parser("describe", help="describe one scenario")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_describe)

    def run_options(p):
        p.add_argument("--points", type=_positive_int, default=100)
        p.add_argument("--seed", type=_seed, default=None, help="default 42, or $CRSUB_SEED")
        p.add_argument("--tol", action="append", metavar="KEY=VALUE",
                       help="override a tolerance: " + ", ".join(TOL_KEYS))
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("check", help="run the full suite on one scenario")
    p.add_argument("scenario")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    run_options(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("suite", help="run every scenario at its defaults")
    p.add_argument("--all", action="store_true")
    run_options(p)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, InvalidParams, UnknownScenario) as exc:
        print(f"crsub: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SamplingExhausted as exc:
        print(f"crsub: error: SamplingExhausted: {exc}", file=sys.stderr)
        return EXIT_SAMPLING


if __name__ == "__main__":
    sys.exit(main())
