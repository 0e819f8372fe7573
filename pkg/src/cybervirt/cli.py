"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when at least one fails (or the two
collision engines disagree under ``--cross-check``), 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Sequence

from . import __version__
from .io import (
    ExportError,
    build_report,
    component_dict,
    dump_yaml,
    export_scene_trace,
    load_scenario,
    report_entry,
    report_json,
    report_text,
)
from .scenario import CollisionCheck, Scenario, ScenarioError
from .simulate import SimulationResult, run
from .typecheck import Verdict, Witness, WitnessKind, conforms
from .verify import CellBudgetExceeded, check_collision_grid, run_check

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cybervirt", description="Spatial behavioral type checks and cyber-virtual co-simulation")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def scenario_cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("scenario", help="scenario file")
        sp.add_argument("--horizon", type=int, help="override the scenario horizon (ticks)")
        return sp

    def with_checks(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--cell-size", type=int, default=1, help="grid engine cell size in mm")
        sp.add_argument("--cross-check", action="store_true", help="also run the grid engine for collisions")
        sp.add_argument("--report-out", help="write the JSON report here")

    def with_sim(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--seed", type=int, help="override the scenario seed")
        sp.add_argument("--tick-ms", type=int, help="override the tick length in ms")
        sp.add_argument("--scene-out", help="write the scene trace (JSON lines) here")

    sp = scenario_cmd("run", "simulate, then run checks and conformance")
    with_sim(sp)
    with_checks(sp)
    sp = scenario_cmd("check", "run the scenario's checks without simulating")
    with_checks(sp)
    scenario_cmd("replicate", "print the components derived by replication directives")
    sp = scenario_cmd("export", "simulate and write the scene trace")
    with_sim(sp)
    scenario_cmd("validate", "parse and validate only")
    return p


def _agree(a: Verdict, b: Verdict) -> bool:
    if a.status is not b.status:
        return False
    return a.witness is None or a.witness.tick == b.witness.tick


def _check_entries(scenario: Scenario, args: argparse.Namespace) -> list[dict]:
    checks = scenario.checks or (CollisionCheck(),)
    entries = []
    for chk in checks:
        v = run_check(scenario, chk)
        if args.cross_check and isinstance(chk, CollisionCheck):
            g = check_collision_grid(scenario, cell_size=args.cell_size)
            engines = {"sweep": v, "grid": g}
            if not _agree(v, g):
                tick = min(x.witness.tick for x in (v, g) if x.witness is not None)
                v = Verdict.fail(
                    Witness(tick, WitnessKind.OCCUPANCY),
                    f"engine disagreement: sweep {v.status}, grid {g.status}",
                )
            entries.append(report_entry(chk, v, "both", engines))
        else:
            entries.append(report_entry(chk, v, "sweep"))
    return entries


def _conformance_entries(scenario: Scenario, result: SimulationResult) -> list[dict]:
    entries = []
    for c in sorted(scenario.all_components(), key=lambda c: c.id):
        if c.bt is None:
            continue
        v = conforms(result.traces[c.id], c.bt, result.horizon)
        entries.append(
            {
                "check": f"conformance {c.id}",
                "kind": "conformance",
                "status": str(v.status),
                "engine": "sweep",
                "witness": None if v.witness is None else {"tick": v.witness.tick, "kind": str(v.witness.kind)},
                "explanation": v.explanation,
            }
        )
    return entries


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise ExportError(f"cannot write {path}: {e}") from e


def _emit_report(report: dict, args: argparse.Namespace) -> int:
    sys.stdout.write(report_text(report))
    if args.report_out:
        _write(args.report_out, report_json(report))
    return EXIT_FAIL if report["status"] == "Fail" else EXIT_PASS


def _simulate(scenario: Scenario, args: argparse.Namespace) -> SimulationResult:
    result = run(scenario, seed=args.seed)
    if args.scene_out:
        try:
            with open(args.scene_out, "w", encoding="utf-8", newline="\n") as f:
                export_scene_trace(result, f)
        except OSError as e:
            raise ExportError(f"cannot write {args.scene_out}: {e}") from e
    return result


def _dispatch(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    if args.horizon is not None:
        if args.horizon < 0:
            raise ScenarioError("--horizon must be >= 0")
        scenario = scenario.with_horizon(args.horizon).validate()
    if getattr(args, "tick_ms", None) is not None:
        scenario = replace(scenario, tick_ms=args.tick_ms).validate()

    if args.command == "validate":
        print(
            f"ok: {scenario.name}: {len(scenario.components)} components, "
            f"{len(scenario.replicas())} replicas, {len(scenario.checks)} checks"
        )
        return EXIT_PASS

    if args.command == "replicate":
        by_id = {b.id: b for b in scenario.behaviors}
        sys.stdout.write(dump_yaml({"replicas": [component_dict(c, by_id) for c in scenario.replicas()]}))
        return EXIT_PASS

    if args.command == "export":
        result = _simulate(scenario, args)
        if not args.scene_out:
            n = export_scene_trace(result, sys.stdout)
            print(f"{n} records", file=sys.stderr)
        return EXIT_PASS

    meta = dict(scenario=scenario.name, horizon=scenario.horizon, tick_ms=scenario.tick_ms,
                cell_size=args.cell_size if args.cross_check else None)
    if args.command == "check":
        report = build_report(_check_entries(scenario, args), seed=scenario.seed, **meta)
        return _emit_report(report, args)

    # run
    result = _simulate(scenario, args)
    entries = _conformance_entries(scenario, result) + _check_entries(scenario, args)
    report = build_report(entries, seed=result.seed, **meta)
    report["simulation"] = {
        "messages": len(result.messages),
        "dropped": sum(m.dropped for m in result.messages),
        "components": len(result.traces),
    }
    return _emit_report(report, args)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "cell_size", 1) <= 0:
            parser.error("--cell-size must be positive")
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _dispatch(args)
    except (ScenarioError, CellBudgetExceeded) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ExportError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
