"""Command-line entry point: validate, analyze, dynamics, globalize, generate.

Exit codes: 0 success, 1 input or validation problem, 2 internal
cross-check disagreement (a bug, never bad input).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import dynamics as dyn
from .analysis import analyze, render_text
from .errors import (
    DualRouteMismatch,
    OracleDisagreement,
    ParseError,
    ValidationError,
    WorkbenchError,
)
from .generate import exhaustive_instances, random_stream
from .instances import canonical_dumps, parse_instance, serialize_instance
from .simplicity import DEFAULT_ORACLE_CAP


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--oracle", choices=("auto", "force", "off"), default="auto")
    parser.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP,
                        help="cap on p^d for full oracle enumeration")
    parser.add_argument("--subset-cap", type=int, default=16,
                        help="cap on the point count for subset enumeration")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcross",
        description="Exact workbench for twisted partial actions and their crossed products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="axiom-check instance files")
    p_validate.add_argument("files", nargs="+")
    p_validate.add_argument("--format", choices=("text", "json"), default="text")

    p_analyze = sub.add_parser("analyze", help="full pipeline on instance files")
    p_analyze.add_argument("files", nargs="+")
    _add_common(p_analyze)

    p_dyn = sub.add_parser("dynamics", help="dynamics block only")
    p_dyn.add_argument("files", nargs="+")
    p_dyn.add_argument("--format", choices=("text", "json"), default="text")
    p_dyn.add_argument("--subset-cap", type=int, default=16)

    p_glob = sub.add_parser("globalize", help="enveloping action of the dynamics")
    p_glob.add_argument("files", nargs="+")
    p_glob.add_argument("--format", choices=("text", "json"), default="text")

    p_gen = sub.add_parser("generate", help="emit instances as JSON lines")
    p_gen.add_argument("--groups", default="c2,c3", help="comma list: c2, c3, c2xc2, s3, ...")
    p_gen.add_argument("--max-size", type=int, default=2)
    p_gen.add_argument("--field", default="f3", help="f2, f3, f5, rational")
    p_gen.add_argument("--exhaustive", action="store_true")
    p_gen.add_argument("--dedupe", action="store_true", help="drop relabel-equivalent systems")
    p_gen.add_argument("--count", type=int, default=10, help="random mode: number of instances")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument(
        "--twists", default="none", help="random mode: comma list of none, units, mixed"
    )
    p_gen.add_argument("--out-dir", default=None, help="write one file per instance instead")
    return parser


def _field_json(name: str) -> dict:
    from .fields import field_from_name

    return field_from_name(name).to_json()


def _cmd_validate(args) -> int:
    status = 0
    for path in args.files:
        try:
            instance = parse_instance(path, validate=False)
        except ParseError as exc:
            print(f"{path}: parse error: {exc}")
            status = 1
            continue
        except ValidationError as exc:
            print(f"{path}: {exc}")
            status = 1
            continue
        system_report, twisted_report = instance.validate()
        ok = system_report.ok and twisted_report is not None and twisted_report.ok
        if args.format == "json":
            print(
                json.dumps(
                    {
                        "name": instance.name,
                        "ok": ok,
                        "system": system_report.to_json(),
                        "twisted": twisted_report.to_json() if twisted_report else None,
                    },
                    sort_keys=True,
                )
            )
        else:
            print(f"{instance.name}: {'ok' if ok else 'INVALID'}")
            source = system_report if not system_report.ok else twisted_report
            if not ok and source is not None:
                for failure in source.failures:
                    print(f"  {failure.to_json()}")
        if not ok:
            status = 1
    return status


def _cmd_analyze(args) -> int:
    for path in args.files:
        instance = parse_instance(path, validate=False)
        report = analyze(
            instance, oracle=args.oracle, oracle_cap=args.cap, subset_cap=args.subset_cap
        )
        if args.format == "json":
            sys.stdout.write(canonical_dumps(report.to_json()))
        else:
            sys.stdout.write(render_text(report))
    return 0


def _cmd_dynamics(args) -> int:
    for path in args.files:
        instance = parse_instance(path)
        system = instance.system
        block = {
            "name": instance.name,
            "orbits": [sorted(dyn.partial_orbit(system, x)) for x in range(system.size)],
            "transitive": dyn.is_transitive(system),
            "transitivity_criterion": dyn.transitivity_criterion(system),
            "minimal": dyn.is_minimal(system),
            "topologically_free": dyn.is_topologically_free(system),
            "periodic_points": sorted(dyn.periodic_points(system)),
        }
        try:
            block["invariant_subsets"] = [
                sorted(S) for S in dyn.invariant_subsets(system, cap=args.subset_cap)
            ]
        except WorkbenchError:
            block["invariant_subsets"] = None
        if args.format == "json":
            sys.stdout.write(canonical_dumps(block))
        else:
            for key, value in block.items():
                print(f"{key}: {value}")
    return 0


def _cmd_globalize(args) -> int:
    for path in args.files:
        instance = parse_instance(path)
        env = dyn.globalize(instance.system)
        payload = {"name": instance.name, **env.to_json()}
        if args.format == "json":
            sys.stdout.write(canonical_dumps(payload))
        else:
            print(f"{instance.name}: {env.size} classes")
            print(f"  embed: {list(env.embed)}")
            for g, row in enumerate(env.beta):
                print(f"  beta[{g}]: {list(row)}")
    return 0


def _cmd_generate(args) -> int:
    group_names = [s for s in args.groups.split(",") if s]
    field_json = _field_json(args.field)
    if args.exhaustive:
        instances = exhaustive_instances(
            field_json, group_names, args.max_size, dedupe_relabel=args.dedupe
        )
    else:
        twist_modes = tuple(s for s in args.twists.split(",") if s)
        instances = random_stream(
            args.seed, args.count, field_json, group_names, args.max_size, twist_modes
        )
    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for instance in instances:
            (out_dir / f"{instance.name}.json").write_text(serialize_instance(instance))
    else:
        for instance in instances:
            sys.stdout.write(json.dumps(instance.to_json(), sort_keys=True) + "\n")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "validate": _cmd_validate,
        "analyze": _cmd_analyze,
        "dynamics": _cmd_dynamics,
        "globalize": _cmd_globalize,
        "generate": _cmd_generate,
    }
    try:
        return handlers[args.command](args)
    except (DualRouteMismatch, OracleDisagreement) as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return 2
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
