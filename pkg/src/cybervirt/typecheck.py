"""Relations between behavioral types: conformance, refinement, compatibility
and composition."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Callable, Sequence

from .btmodel import (
    BehaviorType,
    Clause,
    ModeSchedule,
    Occupy,
    SensorCoverage,
    Trace,
    events_at,
    occupancy_at,
    sensor_coverage_at,
    translate_bt,
)
from .geometry import (
    Region,
    RccRelation,
    Vec3,
    region_contains,
    region_intersection,
    region_overlap_volume_positive,
    uncovered_box,
)


class Status(Enum):
    PASS = "Pass"
    FAIL = "Fail"

    def __str__(self) -> str:
        return self.value


class WitnessKind(Enum):
    OCCUPANCY = "Occupancy"
    SENSOR = "Sensor"
    EVENT = "Event"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Witness:
    tick: int
    kind: WitnessKind
    region: Region | None = None
    event: str | None = None
    components: tuple[str, ...] = ()
    relation: RccRelation | None = None
    cell: tuple[int, int, int] | None = None


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Witness | None = None
    explanation: str = ""
    details: tuple[Verdict, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.status is Status.FAIL and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @classmethod
    def ok(cls, explanation: str = "", details: Sequence[Verdict] = ()) -> Verdict:
        return cls(Status.PASS, None, explanation, tuple(details))

    @classmethod
    def fail(cls, witness: Witness, explanation: str, details: Sequence[Verdict] = ()) -> Verdict:
        return cls(Status.FAIL, witness, explanation, tuple(details))


class IncompatibleParts(ValueError):
    def __init__(self, verdict: Verdict) -> None:
        super().__init__(verdict.explanation)
        self.verdict = verdict


def _missing_event(have: frozenset[str], need: frozenset[str]) -> str | None:
    extra = sorted(need - have)
    return extra[0] if extra else None


def conforms(trace: Trace, bt: BehaviorType, horizon: int) -> Verdict:
    """Does every record of ``trace`` stay inside what ``bt`` allows at its tick?"""
    for rec in trace.records:
        t = rec.tick
        if t > horizon:
            raise ValueError(f"trace tick {t} beyond horizon {horizon}")
        allowed = occupancy_at(bt, t)
        if not region_contains(allowed, rec.occupied):
            gap = uncovered_box(allowed, rec.occupied)
            return Verdict.fail(
                Witness(t, WitnessKind.OCCUPANCY, Region.of(gap), components=(trace.component_id,)),
                f"{trace.component_id} occupies {gap} outside {bt.id} at tick {t}",
            )
        allowed = sensor_coverage_at(bt, t)
        if not region_contains(allowed, rec.sensed):
            gap = uncovered_box(allowed, rec.sensed)
            return Verdict.fail(
                Witness(t, WitnessKind.SENSOR, Region.of(gap), components=(trace.component_id,)),
                f"{trace.component_id} senses {gap} outside {bt.id} at tick {t}",
            )
        bad = _missing_event(events_at(bt, t), rec.events)
        if bad is not None:
            return Verdict.fail(
                Witness(t, WitnessKind.EVENT, event=bad, components=(trace.component_id,)),
                f"{trace.component_id} emits {bad!r} not permitted by {bt.id} at tick {t}",
            )
    return Verdict.ok(f"{trace.component_id} conforms to {bt.id}")


def refines(sub: BehaviorType, sup: BehaviorType, horizon: int) -> Verdict:
    """``sub`` may replace ``sup``: occupies no more, senses and emits no less."""
    for t in range(horizon + 1):
        so, po = occupancy_at(sub, t), occupancy_at(sup, t)
        if not region_contains(po, so):
            gap = uncovered_box(po, so)
            return Verdict.fail(
                Witness(t, WitnessKind.OCCUPANCY, Region.of(gap), components=(sub.id, sup.id)),
                f"{sub.id} occupies {gap} beyond {sup.id}'s envelope at tick {t}",
            )
        ss, ps = sensor_coverage_at(sub, t), sensor_coverage_at(sup, t)
        if not region_contains(ss, ps):
            gap = uncovered_box(ss, ps)
            return Verdict.fail(
                Witness(t, WitnessKind.SENSOR, Region.of(gap), components=(sub.id, sup.id)),
                f"{sub.id} no longer senses {gap} at tick {t}",
            )
        bad = _missing_event(events_at(sub, t), events_at(sup, t))
        if bad is not None:
            return Verdict.fail(
                Witness(t, WitnessKind.EVENT, event=bad, components=(sub.id, sup.id)),
                f"{sub.id} does not emit {bad!r} at tick {t}",
            )
    return Verdict.ok(f"{sub.id} refines {sup.id}")


OccupancyFn = Callable[[int], Region]


def first_collision(
    occ_a: OccupancyFn, occ_b: OccupancyFn, horizon: int
) -> tuple[int, Region] | None:
    """Earliest tick at which two occupancy streams overlap with positive volume."""
    for t in range(horizon + 1):
        a, b = occ_a(t), occ_b(t)
        if region_overlap_volume_positive(a, b):
            return t, region_intersection(a, b)
    return None


def collision_verdict(ids: tuple[str, str], hit: tuple[int, Region] | None) -> Verdict:
    if hit is None:
        return Verdict.ok(f"{ids[0]} and {ids[1]} never collide")
    t, overlap = hit
    return Verdict.fail(
        Witness(t, WitnessKind.OCCUPANCY, overlap, components=ids),
        f"{ids[0]} and {ids[1]} collide at tick {t} in {overlap}",
    )


def compatible(a: BehaviorType, b: BehaviorType, horizon: int) -> Verdict:
    hit = first_collision(lambda t: occupancy_at(a, t), lambda t: occupancy_at(b, t), horizon)
    return collision_verdict((a.id, b.id), hit)


def _common_horizon(bts: Sequence[BehaviorType]) -> int | None:
    hs = [bt.horizon for bt in bts if bt.horizon is not None]
    return min(hs) if hs else None


def compose(parts: Sequence[tuple[BehaviorType, Vec3]], composite_id: str) -> BehaviorType:
    """Place parts and merge them into one BT.

    Behavior of a BT is constant after its settle tick, so pairwise
    compatibility is decided by scanning up to the latest settle tick (or the
    shared horizon, whichever is smaller). The composite's mode at each tick is
    the ``|``-joined tuple of the parts' modes.
    """
    if not parts:
        raise ValueError("compose needs at least one part")
    placed = [translate_bt(bt, off) for bt, off in parts]
    horizon = _common_horizon(placed)
    scan = max(bt.settle_tick() for bt in placed)
    if horizon is not None:
        scan = min(scan, horizon)
    for a, b in combinations(placed, 2):
        v = compatible(a, b, scan)
        if not v.passed:
            raise IncompatibleParts(v)

    starts = sorted({t for bt in placed for t, _ in bt.schedule.pieces})
    labels = [tuple(bt.schedule.mode_at(t) for bt in placed) for t in starts]
    pieces: list[tuple[int, str]] = []
    for t, lab in zip(starts, labels):
        name = "|".join(lab)
        if not pieces or pieces[-1][1] != name:
            pieces.append((t, name))
    label_set = set(labels)

    clauses: list[Clause] = []
    for i, bt in enumerate(placed):
        for c in bt.clauses:
            modes = frozenset("|".join(lab) for lab in label_set if lab[i] in c.modes)
            if not modes:
                continue
            eff = c.effect
            if isinstance(eff, Occupy):
                eff = Occupy(eff.region.translate(bt.frame))
            elif isinstance(eff, SensorCoverage):
                eff = SensorCoverage(eff.region.translate(bt.frame))
            clauses.append(Clause(c.t0, c.t1, modes, eff))
    return BehaviorType(
        composite_id,
        frozenset(name for _, name in pieces) | frozenset(m for c in clauses for m in c.modes),
        ModeSchedule(tuple(pieces)),
        tuple(clauses),
        (0, 0, 0),
        horizon,
    )

