"""Scenario files, scene-trace export and verdict reports.

Scenario files are YAML. Boxes are written ``[[x0, y0, z0], [x1, y1, z1]]`` in
integer millimetres and regions are lists of boxes. A minimal file::

    scenario: demo
    horizon: 0
    sites: [L_A]
    behaviors:
      - id: cell
        modes: [run]
        clauses:
          - {ticks: [0, 0], occupy: [[[0, 0, 0], [1, 1, 1]]]}
    components:
      - {id: A, type: AType, site: L_A, behavior: cell}

Errors raised while reading carry the line of the offending mapping and a
dotted field path.
"""

from __future__ import annotations

import json
from typing import IO, Any, Iterable, Mapping

import yaml

from . import __version__
from .btmodel import (
    BehaviorType,
    Clause,
    Emits,
    ModeSchedule,
    Occupy,
    SensorCoverage,
    Trace,
    TraceRecord,
)
from .geometry import Box, Region
from .scenario import (
    CheckSpec,
    CollisionCheck,
    Component,
    InvariantViolation,
    Link,
    ReplacementCheck,
    ReplicationDirective,
    Scenario,
    ScenarioError,
    ScenarioSchemaError,
    ScenarioSyntaxError,
    SensorCoverageCheck,
    ToolWorkpieceCheck,
    UnresolvedReference,
)
from .simulate import SimulationResult
from .typecheck import Verdict, Witness


class ExportError(OSError):
    """Writing a scene trace or report failed."""


# --- YAML with line numbers ---------------------------------------------------


class _Map(dict):
    line: int | None = None


class _Loader(yaml.SafeLoader):
    pass


def _construct_map(loader: _Loader, node: yaml.MappingNode) -> _Map:
    m = _Map(loader.construct_mapping(node, deep=True))
    m.line = node.start_mark.line + 1
    return m


_Loader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_map)


class _Reader:
    """Typed field access that raises located schema errors."""

    def __init__(self, data: Mapping, path: str, line: int | None) -> None:
        self.data = data
        self.path = path
        self.line = getattr(data, "line", None) or line

    @classmethod
    def wrap(cls, obj: Any, path: str, line: int | None) -> _Reader:
        if not isinstance(obj, Mapping):
            raise ScenarioSchemaError(f"expected a mapping, got {type(obj).__name__}", field=path, line=line)
        return cls(obj, path, line)

    def err(self, cls: type[ScenarioError], msg: str, key: str | None = None) -> ScenarioError:
        where = f"{self.path}.{key}" if key and self.path else (key or self.path)
        return cls(msg, field=where, line=self.line)

    def sub(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def only(self, allowed: Iterable[str]) -> None:
        extra = sorted(set(self.data) - set(allowed))
        if extra:
            raise self.err(ScenarioSchemaError, f"unknown field(s) {extra}")

    def get(self, key: str, kind: type | tuple[type, ...], default: Any = ...) -> Any:
        if key not in self.data:
            if default is ...:
                raise self.err(ScenarioSchemaError, "missing required field", key)
            return default
        v = self.data[key]
        if isinstance(v, bool) and bool not in (kind if isinstance(kind, tuple) else (kind,)):
            raise self.err(ScenarioSchemaError, f"expected {_kname(kind)}, got bool", key)
        if not isinstance(v, kind):
            raise self.err(ScenarioSchemaError, f"expected {_kname(kind)}, got {type(v).__name__}", key)
        return v

    def ident(self, key: str, default: Any = ...) -> str:
        v = self.get(key, str, default)
        if v is not None and not v:
            raise self.err(ScenarioSchemaError, "identifier must be non-empty", key)
        return v


def _kname(kind: type | tuple[type, ...]) -> str:
    if isinstance(kind, tuple):
        return " or ".join(k.__name__ for k in kind)
    return kind.__name__


def _int(v: Any, where: str, line: int | None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScenarioSchemaError(f"expected integer, got {v!r}", field=where, line=line)
    return v


def _vec(v: Any, where: str, line: int | None) -> tuple[int, int, int]:
    if not isinstance(v, list) or len(v) != 3:
        raise ScenarioSchemaError(f"expected [x, y, z], got {v!r}", field=where, line=line)
    return tuple(_int(c, where, line) for c in v)  # type: ignore[return-value]


def _box(v: Any, where: str, line: int | None) -> Box:
    if not isinstance(v, list) or len(v) != 2:
        raise ScenarioSchemaError(f"expected [[x,y,z], [x,y,z]], got {v!r}", field=where, line=line)
    lo, hi = _vec(v[0], where, line), _vec(v[1], where, line)
    if any(l > h for l, h in zip(lo, hi)):
        raise InvariantViolation(f"box min {list(lo)} exceeds max {list(hi)}", field=where, line=line)
    return Box(lo, hi)


def _region(v: Any, where: str, line: int | None) -> Region:
    if not isinstance(v, list):
        raise ScenarioSchemaError(f"expected a list of boxes, got {v!r}", field=where, line=line)
    return Region(_box(b, f"{where}[{i}]", line) for i, b in enumerate(v))


def _interval(v: Any, where: str, line: int | None) -> tuple[int, int]:
    if not isinstance(v, list) or len(v) != 2:
        raise ScenarioSchemaError(f"expected [t0, t1], got {v!r}", field=where, line=line)
    a, b = _int(v[0], where, line), _int(v[1], where, line)
    if not 0 <= a <= b:
        raise InvariantViolation(f"bad tick interval [{a}, {b}]", field=where, line=line)
    return a, b


def _list(r: _Reader, key: str, default: Any = ...) -> list:
    return r.get(key, list, [] if default is ... else default)


def _strings(v: list, where: str, line: int | None) -> list[str]:
    for s in v:
        if not isinstance(s, str) or not s:
            raise ScenarioSchemaError(f"expected identifiers, got {s!r}", field=where, line=line)
    return v


# --- parse --------------------------------------------------------------------

_EFFECTS = ("occupy", "sense", "emit")


def _parse_clause(obj: Any, path: str, line: int | None, modes: list[str]) -> Clause:
    r = _Reader.wrap(obj, path, line)
    r.only(("ticks", "modes", *_EFFECTS))
    t0, t1 = _interval(r.get("ticks", list), r.sub("ticks"), r.line)
    cmodes = _strings(r.get("modes", list, modes), r.sub("modes"), r.line)
    if not cmodes:
        raise r.err(InvariantViolation, "mode set must be non-empty", "modes")
    given = [k for k in _EFFECTS if k in r.data]
    if len(given) != 1:
        raise r.err(ScenarioSchemaError, "clause needs exactly one of occupy, sense, emit")
    key = given[0]
    if key == "emit":
        effect: Any = Emits(r.ident("emit"))
    else:
        reg = _region(r.get(key, list), r.sub(key), r.line)
        if reg.is_empty:
            raise r.err(InvariantViolation, "effect region must be non-empty", key)
        effect = Occupy(reg) if key == "occupy" else SensorCoverage(reg)
    undeclared = set(cmodes) - set(modes)
    if undeclared:
        raise r.err(UnresolvedReference, f"undeclared modes {sorted(undeclared)}", "modes")
    return Clause(t0, t1, frozenset(cmodes), effect)


def _parse_behavior(obj: Any, path: str, line: int | None) -> BehaviorType:
    r = _Reader.wrap(obj, path, line)
    r.only(("id", "modes", "schedule", "clauses", "frame", "horizon"))
    bid = r.ident("id")
    modes = _strings(_list(r, "modes", ["run"]), r.sub("modes"), r.line)
    if not modes:
        raise r.err(InvariantViolation, "a behavior declares at least one mode", "modes")
    sched_raw = r.get("schedule", list, None)
    if sched_raw is None:
        pieces: list[tuple[int, str]] = [(0, modes[0])]
    else:
        pieces = []
        for i, p in enumerate(sched_raw):
            w = f"{r.sub('schedule')}[{i}]"
            if not isinstance(p, list) or len(p) != 2 or not isinstance(p[1], str):
                raise ScenarioSchemaError(f"expected [tick, mode], got {p!r}", field=w, line=r.line)
            pieces.append((_int(p[0], w, r.line), p[1]))
            if p[1] not in modes:
                raise UnresolvedReference(f"undeclared mode {p[1]!r}", field=w, line=r.line)
    try:
        schedule = ModeSchedule(tuple(pieces))
    except ValueError as e:
        raise r.err(InvariantViolation, str(e), "schedule") from None
    clauses = [
        _parse_clause(c, f"{r.sub('clauses')}[{i}]", r.line, modes)
        for i, c in enumerate(_list(r, "clauses"))
    ]
    frame = _vec(r.get("frame", list, [0, 0, 0]), r.sub("frame"), r.line)
    horizon = r.get("horizon", int, None)
    try:
        return BehaviorType(bid, frozenset(modes), schedule, tuple(clauses), frame, horizon)
    except ValueError as e:
        raise r.err(InvariantViolation, str(e)) from None


def _parse_script(raw: list, path: str, line: int | None, cid: str) -> Trace:
    per_tick: dict[int, list] = {}
    for i, seg in enumerate(raw):
        r = _Reader.wrap(seg, f"{path}[{i}]", line)
        r.only(("ticks", "occupy", "sense", "emit"))
        t0, t1 = _interval(r.get("ticks", list), r.sub("ticks"), r.line)
        occ = _region(_list(r, "occupy"), r.sub("occupy"), r.line)
        sen = _region(_list(r, "sense"), r.sub("sense"), r.line)
        evs = _strings(_list(r, "emit"), r.sub("emit"), r.line)
        for t in range(t0, t1 + 1):
            acc = per_tick.setdefault(t, [[], [], set()])
            acc[0].extend(occ.boxes)
            acc[1].extend(sen.boxes)
            acc[2].update(evs)
    return Trace(
        cid,
        tuple(
            TraceRecord(t, Region(o), Region(s), frozenset(e))
            for t, (o, s, e) in sorted(per_tick.items())
        ),
    )


def _parse_check(obj: Any, path: str, line: int | None) -> CheckSpec:
    if obj == "collision":
        return CollisionCheck()
    r = _Reader.wrap(obj, path, line)
    kind = r.get("kind", str)
    if kind == "collision":
        r.only(("kind",))
        return CollisionCheck()
    if kind == "sensor_coverage":
        r.only(("kind", "target", "ticks"))
        target = _region(r.get("target", list), r.sub("target"), r.line)
        ticks = tuple(_interval(v, r.sub("ticks"), r.line) for v in _list(r, "ticks"))
        return SensorCoverageCheck(target, ticks)
    if kind == "tool_workpiece":
        r.only(("kind", "tool", "workpiece", "schedule"))
        sched = tuple(_interval(v, r.sub("schedule"), r.line) for v in _list(r, "schedule"))
        return ToolWorkpieceCheck(r.ident("tool"), r.ident("workpiece"), sched)
    if kind == "replacement":
        r.only(("kind", "old", "new"))
        return ReplacementCheck(r.ident("old"), r.ident("new"))
    raise r.err(ScenarioSchemaError, f"unknown check kind {kind!r}", "kind")


def scenario_from_dict(doc: Any) -> Scenario:
    root = _Reader.wrap(doc, "", None)
    root.only(
        ("scenario", "horizon", "tick_ms", "seed", "sites", "behaviors", "components",
         "replications", "links", "checks")
    )
    name = root.ident("scenario")
    horizon = root.get("horizon", int)
    tick_ms = root.get("tick_ms", int, 100)
    seed = root.get("seed", int, 0)
    sites = _strings(root.get("sites", list), "sites", root.line)
    behaviors = [
        _parse_behavior(b, f"behaviors[{i}]", root.line) for i, b in enumerate(_list(root, "behaviors"))
    ]
    by_id = {b.id: b for b in behaviors}

    components = []
    for i, c in enumerate(_list(root, "components")):
        r = _Reader.wrap(c, f"components[{i}]", root.line)
        r.only(("id", "type", "site", "behavior", "script", "placement"))
        cid = r.ident("id")
        bref = r.ident("behavior", None)
        if bref is not None and bref not in by_id:
            raise r.err(UnresolvedReference, f"unknown behavior {bref!r}", "behavior")
        script_raw = r.get("script", list, None)
        script = None if script_raw is None else _parse_script(script_raw, r.sub("script"), r.line, cid)
        placement = _vec(r.get("placement", list, [0, 0, 0]), r.sub("placement"), r.line)
        components.append(
            Component(cid, r.ident("site"), r.ident("type"), by_id.get(bref) if bref else None, script, placement)
        )

    replications = []
    for i, d in enumerate(_list(root, "replications")):
        r = _Reader.wrap(d, f"replications[{i}]", root.line)
        r.only(("source", "site", "count", "placements"))
        ps = [_vec(p, r.sub("placements"), r.line) for p in r.get("placements", list)]
        count = r.get("count", int, len(ps))
        if count != len(ps):
            raise r.err(InvariantViolation, f"count {count} != {len(ps)} placements", "count")
        try:
            replications.append(ReplicationDirective(r.ident("source"), tuple(ps), r.ident("site")))
        except ScenarioError as e:
            raise r.err(type(e), str(e)) from None

    links = []
    for i, l in enumerate(_list(root, "links")):
        r = _Reader.wrap(l, f"links[{i}]", root.line)
        r.only(("from", "to", "latency", "jitter", "drop"))
        drop = r.get("drop", (int, float), 0.0)
        try:
            links.append(
                Link(r.ident("from"), r.ident("to"), r.get("latency", int, 0), r.get("jitter", int, 0), float(drop))
            )
        except ScenarioError as e:
            raise r.err(type(e), str(e)) from None

    checks = [_parse_check(c, f"checks[{i}]", root.line) for i, c in enumerate(_list(root, "checks"))]
    scenario = Scenario(name, horizon, tuple(sites), tuple(behaviors), tuple(components),
                        tuple(replications), tuple(links), tuple(checks), tick_ms, seed)
    try:
        return scenario.validate()
    except ScenarioError as e:
        if e.line is None:
            raise type(e)(e.message, field=e.field, line=_line_for(doc, e.field)) from None
        raise


def _line_for(doc: Any, field: str | None) -> int | None:
    """Best-effort line of the mapping a dotted/indexed field path points into."""
    if not field:
        return getattr(doc, "line", None)
    node, line = doc, getattr(doc, "line", None)
    for part in field.replace("]", "").replace("[", ".").split("."):
        try:
            node = node[int(part)] if part.isdigit() else node[part]
        except (KeyError, IndexError, TypeError, ValueError):
            break
        line = getattr(node, "line", line)
    return line


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document."""
    try:
        doc = yaml.load(text, Loader=_Loader)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        raise ScenarioSyntaxError(
            str(getattr(e, "problem", None) or e), line=mark.line + 1 if mark else None
        ) from None
    if doc is None:
        raise ScenarioSchemaError("empty document")
    try:
        return scenario_from_dict(doc)
    except ScenarioError:
        raise
    except (ValueError, TypeError) as e:
        raise InvariantViolation(str(e)) from None


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as f:
        return parse_scenario(f.read())


# --- serialize ----------------------------------------------------------------


class _Flow(list):
    pass


class _Dumper(yaml.SafeDumper):
    pass


_Dumper.add_representer(_Flow, lambda d, v: d.represent_sequence("tag:yaml.org,2002:seq", v, flow_style=True))


def _flow_region(r: Region) -> _Flow:
    return _Flow(_Flow([_Flow(b.min), _Flow(b.max)]) for b in r.boxes)


def _clause_dict(c: Clause, modes: frozenset[str]) -> dict:
    d: dict[str, Any] = {"ticks": _Flow([c.t0, c.t1])}
    if c.modes != modes:
        d["modes"] = _Flow(sorted(c.modes))
    eff = c.effect
    if isinstance(eff, Occupy):
        d["occupy"] = _flow_region(eff.region)
    elif isinstance(eff, SensorCoverage):
        d["sense"] = _flow_region(eff.region)
    else:
        d["emit"] = eff.event
    return d


def _behavior_dict(bt: BehaviorType) -> dict:
    d: dict[str, Any] = {
        "id": bt.id,
        "modes": _Flow(sorted(bt.modes)),
        "schedule": [_Flow([t, m]) for t, m in bt.schedule.pieces],
    }
    if bt.frame != (0, 0, 0):
        d["frame"] = _Flow(bt.frame)
    if bt.horizon is not None:
        d["horizon"] = bt.horizon
    d["clauses"] = [_clause_dict(c, bt.modes) for c in bt.clauses]
    return d


def _script_list(tr: Trace) -> list:
    """Script segments; runs of consecutive identical records share one segment."""
    out: list[dict] = []
    prev: tuple | None = None
    for rec in tr.records:
        key = (rec.occupied.boxes, rec.sensed.boxes, rec.events)
        if out and key == prev and out[-1]["ticks"][1] == rec.tick - 1:
            out[-1]["ticks"][1] = rec.tick
            continue
        seg: dict[str, Any] = {"ticks": _Flow([rec.tick, rec.tick])}
        if rec.occupied:
            seg["occupy"] = _flow_region(rec.occupied)
        if rec.sensed:
            seg["sense"] = _flow_region(rec.sensed)
        if rec.events:
            seg["emit"] = _Flow(sorted(rec.events))
        out.append(seg)
        prev = key
    return out


def _check_dict(c: CheckSpec) -> Any:
    if isinstance(c, CollisionCheck):
        return "collision"
    if isinstance(c, SensorCoverageCheck):
        return {"kind": "sensor_coverage", "target": _flow_region(c.target),
                "ticks": [_Flow(iv) for iv in c.ticks]}
    if isinstance(c, ToolWorkpieceCheck):
        return {"kind": "tool_workpiece", "tool": c.tool, "workpiece": c.workpiece,
                "schedule": [_Flow(iv) for iv in c.schedule]}
    return {"kind": "replacement", "old": c.old, "new": c.new}


def component_dict(c: Component, behavior_ids: Mapping[str, BehaviorType] | None = None) -> dict:
    d: dict[str, Any] = {"id": c.id, "type": c.type_name, "site": c.site}
    if c.behavior is not None:
        if behavior_ids is not None and behavior_ids.get(c.behavior.id) != c.behavior:
            raise ValueError(f"component {c.id!r} uses undeclared behavior {c.behavior.id!r}")
        d["behavior"] = c.behavior.id
    if c.placement != (0, 0, 0):
        d["placement"] = _Flow(c.placement)
    if c.replica_of is not None:
        d["replica_of"] = c.replica_of
    if c.script is not None:
        d["script"] = _script_list(c.script)
    return d


def scenario_to_dict(s: Scenario) -> dict:
    by_id = {b.id: b for b in s.behaviors}
    d: dict[str, Any] = {
        "scenario": s.name,
        "horizon": s.horizon,
        "tick_ms": s.tick_ms,
        "seed": s.seed,
        "sites": _Flow(s.sites),
        "behaviors": [_behavior_dict(b) for b in s.behaviors],
        "components": [component_dict(c, by_id) for c in s.components],
        "replications": [
            {"source": r.source, "site": r.site, "count": r.count,
             "placements": [_Flow(p) for p in r.placements]}
            for r in s.replications
        ],
        "links": [
            {"from": l.src, "to": l.dst, "latency": l.latency, "jitter": l.jitter, "drop": l.drop}
            for l in s.links
        ],
        "checks": [_check_dict(c) for c in s.checks],
    }
    return d


def dump_yaml(doc: Any) -> str:
    return yaml.dump(doc, Dumper=_Dumper, sort_keys=False, width=100, allow_unicode=True)


def serialize_scenario(s: Scenario) -> str:
    return dump_yaml(scenario_to_dict(s))


# --- scene trace ---------------------------------------------------------------


def scene_records(result: SimulationResult) -> list[dict]:
    rows = []
    for cid in sorted(result.traces):
        for rec in result.traces[cid].records:
            rows.append(
                {
                    "tick": rec.tick,
                    "component": cid,
                    "site": result.sites[cid],
                    "occupied": rec.occupied.to_list(),
                    "sensed": rec.sensed.to_list(),
                    "events": sorted(rec.events),
                }
            )
    rows.sort(key=lambda r: (r["tick"], r["component"]))
    return rows


def export_scene_trace(result: SimulationResult, sink: IO[str]) -> int:
    """Write one JSON object per (tick, component) line; returns the record count."""
    rows = scene_records(result)
    try:
        for row in rows:
            sink.write(json.dumps(row, separators=(",", ":")) + "\n")
    except (OSError, ValueError) as e:
        raise ExportError(f"scene trace write failed: {e}") from e
    return len(rows)


def message_dict(m) -> dict:
    payload = m.payload.to_list() if isinstance(m.payload, Region) else m.payload
    return {
        "kind": str(m.kind),
        "payload": payload,
        "send_tick": m.send_tick,
        "sender": m.sender,
        "receiver": m.receiver,
        "link": m.link,
        "seq": m.seq,
        "delivery_tick": m.delivery_tick,
    }


def serialize_result(result: SimulationResult) -> str:
    """Canonical JSON of a whole simulation result (traces, inboxes, message log)."""

    def trace_rows(tr: Trace) -> list:
        return [[r.tick, r.occupied.to_list(), r.sensed.to_list(), sorted(r.events)] for r in tr.records]

    doc = {
        "scenario": result.scenario,
        "horizon": result.horizon,
        "seed": result.seed,
        "tick_ms": result.tick_ms,
        "traces": {cid: trace_rows(result.traces[cid]) for cid in sorted(result.traces)},
        "incoming": {cid: trace_rows(result.incoming[cid]) for cid in sorted(result.incoming)},
        "messages": [message_dict(m) for m in result.messages],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


# --- reports -------------------------------------------------------------------


def witness_dict(w: Witness | None) -> dict | None:
    if w is None:
        return None
    d: dict[str, Any] = {"tick": w.tick, "kind": str(w.kind)}
    if w.components:
        d["components"] = list(w.components)
    if w.region is not None:
        d["region"] = w.region.to_list()
    if w.event is not None:
        d["event"] = w.event
    if w.relation is not None:
        d["relation"] = str(w.relation)
    if w.cell is not None:
        d["cell"] = list(w.cell)
    return d


def check_label(c: CheckSpec) -> str:
    if isinstance(c, SensorCoverageCheck):
        return "sensor_coverage"
    if isinstance(c, ToolWorkpieceCheck):
        return f"tool_workpiece {c.tool}/{c.workpiece}"
    if isinstance(c, ReplacementCheck):
        return f"replacement {c.old} -> {c.new}"
    return "collision"


def report_entry(check: CheckSpec, verdict: Verdict, engine: str, engines: Mapping[str, Verdict] | None = None) -> dict:
    d: dict[str, Any] = {
        "check": check_label(check),
        "kind": check.kind.value,
        "status": str(verdict.status),
        "engine": engine,
        "witness": witness_dict(verdict.witness),
        "explanation": verdict.explanation,
    }
    if engines:
        d["engines"] = {
            k: {"status": str(v.status), "witness": witness_dict(v.witness)} for k, v in engines.items()
        }
    return d


def build_report(entries: list[dict], *, scenario: str, seed: int, horizon: int, tick_ms: int,
                 cell_size: int | None = None) -> dict:
    meta: dict[str, Any] = {
        "scenario": scenario,
        "seed": seed,
        "horizon": horizon,
        "tick_ms": tick_ms,
        "tool_version": __version__,
    }
    if cell_size is not None:
        meta["cell_size"] = cell_size
    status = "Fail" if any(e["status"] == "Fail" for e in entries) else "Pass"
    return {"status": status, "metadata": meta, "checks": entries}


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def report_text(report: dict) -> str:
    m = report["metadata"]
    lines = [
        f"scenario {m['scenario']}  horizon={m['horizon']}  seed={m['seed']}  tick={m['tick_ms']}ms",
    ]
    for e in report["checks"]:
        line = f"[{e['status'].upper()}] {e['check']} ({e['engine']})"
        w = e["witness"]
        if w is not None:
            line += f" at tick {w['tick']}"
            if "components" in w:
                line += f" [{', '.join(w['components'])}]"
        lines.append(line)
        lines.append(f"    {e['explanation']}")
    lines.append(f"overall: {report['status'].upper()}")
    return "\n".join(lines) + "\n"


def parse_report_text_status(text: str) -> str:
    """Overall status as rendered by :func:`report_text`."""
    for line in reversed(text.splitlines()):
        if line.startswith("overall: "):
            return line.split(": ", 1)[1].capitalize()
    raise ValueError("no overall status line")
