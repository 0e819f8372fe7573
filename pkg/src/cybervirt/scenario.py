"""Scenario data model: sites, components, replication directives, links and
the checks to run against them."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Union

from .btmodel import (
    BehaviorType,
    Trace,
    TraceRecord,
    bt_from_trace,
    events_at,
    execute_bt,
    occupancy_at,
    sensor_coverage_at,
    translate_bt,
)
from .geometry import EMPTY, Region, Vec3, as_vec3


class ScenarioError(ValueError):
    """A scenario is malformed. ``where`` locates the problem (line and/or field)."""

    def __init__(self, message: str, *, field: str | None = None, line: int | None = None) -> None:
        self.message = message
        self.field = field
        self.line = line
        loc = []
        if line is not None:
            loc.append(f"line {line}")
        if field:
            loc.append(field)
        self.where = ", ".join(loc)
        super().__init__(f"{self.where}: {message}" if loc else message)


class ScenarioSyntaxError(ScenarioError):
    """The document is not well-formed structured text."""


class ScenarioSchemaError(ScenarioError):
    """A field is missing, unknown or of the wrong shape."""


class UnresolvedReference(ScenarioError):
    """A reference names a site, component or behavior that does not exist."""


class InvariantViolation(ScenarioError):
    """Values are well-typed but break a model invariant."""


class ComponentKind(Enum):
    PHYSICAL = "physical"
    VIRTUAL = "virtual"


@dataclass(frozen=True)
class Component:
    """A physical (scripted playback) or virtual (BT-executing) component.

    ``behavior`` is the component's declared BT; for a physical component it
    is optional and ``script`` carries the recorded trace. Both are given in
    local coordinates and shifted by ``placement``.
    """

    id: str
    site: str
    type_name: str
    behavior: BehaviorType | None = None
    script: Trace | None = None
    placement: Vec3 = (0, 0, 0)
    replica_of: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "placement", as_vec3(self.placement))

    @property
    def kind(self) -> ComponentKind:
        if self.script is not None and self.replica_of is None:
            return ComponentKind.PHYSICAL
        return ComponentKind.VIRTUAL

    @property
    def bt(self) -> BehaviorType | None:
        """Declared BT in world coordinates."""
        if self.behavior is None:
            return None
        return translate_bt(self.behavior, self.placement)

    @property
    def world_script(self) -> Trace | None:
        if self.script is None:
            return None
        return self.script.translate(self.placement, self.id)

    def envelope(self) -> BehaviorType:
        """BT describing what this component actually does, in world coordinates."""
        script = self.world_script
        if script is not None:
            return bt_from_trace(script, self.id)
        assert self.bt is not None
        return self.bt

    def occupancy(self, t: int) -> Region:
        if self.script is not None:
            return self.script.at(t).occupied.translate(self.placement)
        return occupancy_at(self.bt, t) if self.behavior is not None else EMPTY

    def sensed(self, t: int) -> Region:
        if self.script is not None:
            return self.script.at(t).sensed.translate(self.placement)
        return sensor_coverage_at(self.bt, t) if self.behavior is not None else EMPTY

    def events(self, t: int) -> frozenset[str]:
        if self.script is not None:
            return self.script.at(t).events
        return events_at(self.bt, t) if self.behavior is not None else frozenset()

    def trace(self, horizon: int) -> Trace:
        if self.script is not None:
            return Trace(
                self.id,
                tuple(
                    TraceRecord(t, self.occupancy(t), self.sensed(t), self.events(t))
                    for t in range(horizon + 1)
                ),
            )
        if self.behavior is None:
            return Trace(self.id, tuple())
        return execute_bt(self.bt, horizon, self.id)


@dataclass(frozen=True)
class ReplicationDirective:
    source: str
    placements: tuple[Vec3, ...]
    site: str

    def __post_init__(self) -> None:
        ps = tuple(as_vec3(p) for p in self.placements)
        if not ps:
            raise InvariantViolation(f"replication of {self.source!r} needs at least one placement")
        if len(set(ps)) != len(ps):
            raise InvariantViolation(f"replication of {self.source!r} has duplicate placements")
        object.__setattr__(self, "placements", ps)

    @property
    def count(self) -> int:
        return len(self.placements)


@dataclass(frozen=True)
class Link:
    src: str
    dst: str
    latency: int = 0
    jitter: int = 0
    drop: float = 0.0

    def __post_init__(self) -> None:
        if self.latency < 0 or self.jitter < 0:
            raise InvariantViolation(f"link {self.id}: latency and jitter must be >= 0")
        if not 0.0 <= self.drop <= 1.0:
            raise InvariantViolation(f"link {self.id}: drop probability outside [0, 1]")

    @property
    def id(self) -> str:
        return f"{self.src}->{self.dst}"


class CheckKind(Enum):
    COLLISION = "collision"
    SENSOR_COVERAGE = "sensor_coverage"
    TOOL_WORKPIECE = "tool_workpiece"
    REPLACEMENT = "replacement"


Interval = tuple[int, int]


@dataclass(frozen=True)
class CollisionCheck:
    kind = CheckKind.COLLISION


@dataclass(frozen=True)
class SensorCoverageCheck:
    target: Region
    ticks: tuple[Interval, ...]
    kind = CheckKind.SENSOR_COVERAGE

    def required_ticks(self) -> list[int]:
        return sorted({t for a, b in self.ticks for t in range(a, b + 1)})


@dataclass(frozen=True)
class ToolWorkpieceCheck:
    tool: str
    workpiece: str
    schedule: tuple[Interval, ...]
    kind = CheckKind.TOOL_WORKPIECE


@dataclass(frozen=True)
class ReplacementCheck:
    old: str
    new: str  # id of a declared behavior
    kind = CheckKind.REPLACEMENT


CheckSpec = Union[CollisionCheck, SensorCoverageCheck, ToolWorkpieceCheck, ReplacementCheck]


def _replica_id(source: str, k: int) -> str:
    return f"{source}#{k}"


@dataclass(frozen=True)
class Scenario:
    name: str
    horizon: int
    sites: tuple[str, ...]
    behaviors: tuple[BehaviorType, ...] = ()
    components: tuple[Component, ...] = ()
    replications: tuple[ReplicationDirective, ...] = ()
    links: tuple[Link, ...] = ()
    checks: tuple[CheckSpec, ...] = ()
    tick_ms: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        for f in ("sites", "behaviors", "components", "replications", "links", "checks"):
            object.__setattr__(self, f, tuple(getattr(self, f)))

    def behavior(self, bid: str) -> BehaviorType:
        for bt in self.behaviors:
            if bt.id == bid:
                return bt
        raise UnresolvedReference(f"no behavior {bid!r}")

    def component(self, cid: str) -> Component:
        for c in self.all_components():
            if c.id == cid:
                return c
        raise UnresolvedReference(f"no component {cid!r}")

    def replicas(self) -> list[Component]:
        out = []
        by_id = {c.id: c for c in self.components}
        for d in self.replications:
            if d.source not in by_id:
                raise UnresolvedReference(f"replication source {d.source!r} does not exist")
            out.extend(replicate(by_id[d.source], d))
        return out

    def all_components(self) -> list[Component]:
        return list(self.components) + self.replicas()

    def deployment(self) -> list[Component]:
        """Components present in the shared deployment world.

        A replication source is a template whose replicas stand in for it, so
        it is left out; everything else, replicas included, is present.
        """
        sources = {d.source for d in self.replications}
        return [c for c in self.components if c.id not in sources] + self.replicas()

    def with_horizon(self, horizon: int) -> Scenario:
        return replace(self, horizon=horizon)

    def substitute(self, old: str, new_bt: BehaviorType) -> Scenario:
        """Replace component ``old`` by a virtual component executing ``new_bt``.

        ``new_bt`` is taken in world coordinates.
        """
        if old not in {c.id for c in self.components}:
            raise UnresolvedReference(f"no component {old!r} to replace")
        comps = tuple(
            replace(c, behavior=new_bt, script=None, placement=(0, 0, 0)) if c.id == old else c
            for c in self.components
        )
        return replace(self, components=comps)

    def validate(self) -> Scenario:
        """Check cross references and invariants; returns self for chaining."""
        if self.horizon < 0:
            raise InvariantViolation("horizon must be >= 0", field="horizon")
        if self.tick_ms <= 0:
            raise InvariantViolation("tick_ms must be > 0", field="tick_ms")
        if len(set(self.sites)) != len(self.sites):
            raise InvariantViolation("site ids must be unique", field="sites")
        bids = [b.id for b in self.behaviors]
        if len(set(bids)) != len(bids):
            raise InvariantViolation("behavior ids must be unique", field="behaviors")
        sites = set(self.sites)
        seen: set[str] = set()
        for i, c in enumerate(self.components):
            where = f"components[{i}]"
            if c.id in seen:
                raise InvariantViolation(f"duplicate component id {c.id!r}", field=where)
            if "#" in c.id:
                raise InvariantViolation(f"component id {c.id!r} may not contain '#'", field=where)
            seen.add(c.id)
            if c.site not in sites:
                raise UnresolvedReference(f"unknown site {c.site!r}", field=f"{where}.site")
            if c.behavior is None and c.script is None:
                raise InvariantViolation("component needs a behavior or a script", field=where)
            if c.behavior is not None and c.behavior.horizon is not None and c.behavior.horizon < self.horizon:
                raise InvariantViolation("behavior horizon shorter than scenario", field=f"{where}.behavior")
        for i, d in enumerate(self.replications):
            where = f"replications[{i}]"
            if d.source not in seen:
                raise UnresolvedReference(f"unknown source component {d.source!r}", field=f"{where}.source")
            if d.site not in sites:
                raise UnresolvedReference(f"unknown site {d.site!r}", field=f"{where}.site")
        for i, l in enumerate(self.links):
            for end in (l.src, l.dst):
                if end not in sites:
                    raise UnresolvedReference(f"unknown site {end!r}", field=f"links[{i}]")
        if len({l.id for l in self.links}) != len(self.links):
            raise InvariantViolation("duplicate link", field="links")
        all_ids = {c.id for c in self.all_components()}
        for i, chk in enumerate(self.checks):
            where = f"checks[{i}]"
            if isinstance(chk, ToolWorkpieceCheck):
                for ref in (chk.tool, chk.workpiece):
                    if ref not in all_ids:
                        raise UnresolvedReference(f"unknown component {ref!r}", field=where)
                _check_intervals(chk.schedule, self.horizon, where)
            elif isinstance(chk, SensorCoverageCheck):
                _check_intervals(chk.ticks, self.horizon, where)
            elif isinstance(chk, ReplacementCheck):
                if chk.old not in seen:
                    raise UnresolvedReference(f"unknown component {chk.old!r}", field=where)
                if chk.new not in bids:
                    raise UnresolvedReference(f"unknown behavior {chk.new!r}", field=where)
        return self


def _check_intervals(ivs: Iterable[Interval], horizon: int, where: str) -> None:
    for a, b in ivs:
        if not 0 <= a <= b <= horizon:
            raise InvariantViolation(f"tick interval [{a}, {b}] outside [0, {horizon}]", field=where)


def replicate(source: Component, directive: ReplicationDirective) -> list[Component]:
    """Frame-shifted virtual copies of ``source``, one per placement, ids ``source#k``."""
    if directive.source != source.id:
        raise ValueError(f"directive is for {directive.source!r}, not {source.id!r}")
    out = []
    for k, p in enumerate(directive.placements, start=1):
        rid = _replica_id(source.id, k)
        offset = as_vec3(a + b for a, b in zip(source.placement, p))
        script = source.script.translate((0, 0, 0), rid) if source.script is not None else None
        if script is not None:
            # validate coordinates up front so overflow surfaces here
            script.translate(offset)
        behavior = source.behavior
        if behavior is not None:
            translate_bt(behavior, offset)
        out.append(
            Component(
                id=rid,
                site=directive.site,
                type_name=source.type_name,
                behavior=behavior,
                script=script,
                placement=offset,
                replica_of=source.id,
            )
        )
    return out
