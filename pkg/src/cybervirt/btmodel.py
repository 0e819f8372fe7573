"""Spatial behavioral types and traces.

A behavioral type (BT) is a set of guarded clauses over discrete ticks and a
fixed mode schedule. Each clause fires when the tick falls inside its interval
and the scheduled mode is one of its modes; it then contributes an occupied
region, a sensed region, or an emitted event. Effects of all firing clauses
are unioned.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Union

from .geometry import EMPTY, Region, Vec3, as_vec3, region_union


class TickOutOfRange(ValueError):
    """A tick beyond the behavior's horizon was requested."""


@dataclass(frozen=True)
class Occupy:
    region: Region


@dataclass(frozen=True)
class SensorCoverage:
    region: Region


@dataclass(frozen=True)
class Emits:
    event: str


Effect = Union[Occupy, SensorCoverage, Emits]


@dataclass(frozen=True)
class Clause:
    """``t0 <= t <= t1`` and ``mode in modes`` implies ``effect``."""

    t0: int
    t1: int
    modes: frozenset[str]
    effect: Effect

    def __post_init__(self) -> None:
        object.__setattr__(self, "modes", frozenset(self.modes))
        if not 0 <= self.t0 <= self.t1:
            raise ValueError(f"clause interval [{self.t0}, {self.t1}] is invalid")
        if not self.modes:
            raise ValueError("clause mode set must be non-empty")
        if isinstance(self.effect, (Occupy, SensorCoverage)) and self.effect.region.is_empty:
            raise ValueError("clause region must be non-empty")

    def fires(self, t: int, mode: str) -> bool:
        return self.t0 <= t <= self.t1 and mode in self.modes


@dataclass(frozen=True)
class ModeSchedule:
    """Piecewise-constant tick -> mode map, given as ``(start_tick, mode)`` pieces."""

    pieces: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        pieces = tuple((int(t), str(m)) for t, m in self.pieces)
        if not pieces or pieces[0][0] != 0:
            raise ValueError("mode schedule must start at tick 0")
        starts = [t for t, _ in pieces]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ValueError("mode schedule starts must be strictly increasing")
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def constant(cls, mode: str) -> ModeSchedule:
        return cls(((0, mode),))

    def mode_at(self, t: int) -> str:
        mode = self.pieces[0][1]
        for start, m in self.pieces:
            if start > t:
                break
            mode = m
        return mode

    @property
    def modes(self) -> frozenset[str]:
        return frozenset(m for _, m in self.pieces)


@dataclass(frozen=True)
class BehaviorType:
    id: str
    modes: frozenset[str]
    schedule: ModeSchedule
    clauses: tuple[Clause, ...] = ()
    frame: Vec3 = (0, 0, 0)
    horizon: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "modes", frozenset(self.modes))
        object.__setattr__(self, "clauses", tuple(self.clauses))
        object.__setattr__(self, "frame", as_vec3(self.frame))
        if not self.modes:
            raise ValueError(f"BT {self.id!r} declares no modes")
        undeclared = self.schedule.modes - self.modes
        if undeclared:
            raise ValueError(f"BT {self.id!r} schedules undeclared modes {sorted(undeclared)}")
        for c in self.clauses:
            if not c.modes <= self.modes:
                raise ValueError(
                    f"BT {self.id!r} clause uses undeclared modes {sorted(c.modes - self.modes)}"
                )
        if self.horizon is not None and self.horizon < 0:
            raise ValueError("horizon must be non-negative")

    @classmethod
    def simple(
        cls,
        id: str,
        clauses: Iterable[Clause] = (),
        *,
        mode: str = "run",
        frame: Iterable[int] = (0, 0, 0),
        horizon: int | None = None,
    ) -> BehaviorType:
        """Single-mode BT; clauses must use ``mode``."""
        return cls(id, frozenset({mode}), ModeSchedule.constant(mode), tuple(clauses), as_vec3(frame), horizon)

    def settle_tick(self) -> int:
        """First tick from which behavior no longer changes."""
        marks = [c.t1 + 1 for c in self.clauses] + [t for t, _ in self.schedule.pieces]
        return max(marks, default=0)

    def _firing(self, t: int) -> list[Clause]:
        if t < 0:
            raise TickOutOfRange(f"negative tick {t}")
        if self.horizon is not None and t > self.horizon:
            raise TickOutOfRange(f"tick {t} beyond horizon {self.horizon} of BT {self.id!r}")
        mode = self.schedule.mode_at(t)
        return [c for c in self.clauses if c.fires(t, mode)]


def always(effect: Effect, horizon: int, modes: Iterable[str] = ("run",)) -> Clause:
    return Clause(0, horizon, frozenset(modes), effect)


def occupancy_at(bt: BehaviorType, t: int) -> Region:
    regions = [c.effect.region for c in bt._firing(t) if isinstance(c.effect, Occupy)]
    return region_union(regions).translate(bt.frame)


def sensor_coverage_at(bt: BehaviorType, t: int) -> Region:
    regions = [c.effect.region for c in bt._firing(t) if isinstance(c.effect, SensorCoverage)]
    return region_union(regions).translate(bt.frame)


def events_at(bt: BehaviorType, t: int) -> frozenset[str]:
    return frozenset(c.effect.event for c in bt._firing(t) if isinstance(c.effect, Emits))


def translate_bt(bt: BehaviorType, offset: Iterable[int]) -> BehaviorType:
    d = as_vec3(offset)
    # validate the shifted frame and every shifted box up front
    frame = as_vec3(f + o for f, o in zip(bt.frame, d))
    for c in bt.clauses:
        if isinstance(c.effect, (Occupy, SensorCoverage)):
            c.effect.region.translate(frame)
    return replace(bt, frame=frame)


# --- traces -------------------------------------------------------------------


@dataclass(frozen=True)
class TraceRecord:
    tick: int
    occupied: Region = EMPTY
    sensed: Region = EMPTY
    events: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", frozenset(self.events))
        if self.tick < 0:
            raise ValueError("trace ticks are non-negative")

    def translate(self, offset: Iterable[int]) -> TraceRecord:
        return replace(self, occupied=self.occupied.translate(offset), sensed=self.sensed.translate(offset))


@dataclass(frozen=True)
class Trace:
    component_id: str
    records: tuple[TraceRecord, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        ticks = [r.tick for r in self.records]
        if any(b <= a for a, b in zip(ticks, ticks[1:])):
            raise ValueError(f"trace {self.component_id!r}: ticks must be strictly increasing")

    def at(self, t: int) -> TraceRecord:
        """Record at tick ``t``; an empty record when the trace has none."""
        for r in self.records:
            if r.tick == t:
                return r
            if r.tick > t:
                break
        return TraceRecord(t)

    def translate(self, offset: Iterable[int], component_id: str | None = None) -> Trace:
        return Trace(component_id or self.component_id, tuple(r.translate(offset) for r in self.records))

    def __len__(self) -> int:
        return len(self.records)


def execute_bt(bt: BehaviorType, horizon: int, component_id: str | None = None) -> Trace:
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    return Trace(
        component_id or bt.id,
        tuple(
            TraceRecord(t, occupancy_at(bt, t), sensor_coverage_at(bt, t), events_at(bt, t))
            for t in range(horizon + 1)
        ),
    )


def bt_from_trace(trace: Trace, id: str | None = None) -> BehaviorType:
    """The tightest single-mode BT a trace conforms to: one clause per record effect."""
    clauses = []
    for r in trace.records:
        if r.occupied:
            clauses.append(Clause(r.tick, r.tick, frozenset({"run"}), Occupy(r.occupied)))
        if r.sensed:
            clauses.append(Clause(r.tick, r.tick, frozenset({"run"}), SensorCoverage(r.sensed)))
        for e in sorted(r.events):
            clauses.append(Clause(r.tick, r.tick, frozenset({"run"}), Emits(e)))
    return BehaviorType.simple(id or trace.component_id, clauses)
