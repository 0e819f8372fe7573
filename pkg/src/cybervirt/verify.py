"""Scenario checks.

Collision freedom has two independent engines. The sweep engine scans ticks
and component pairs with exact region predicates. The grid engine rasterises
occupancy into boolean variables over (tick, cell, component), states
collision freedom as pairwise at-most-one constraints per (tick, cell), and
decides them by unit propagation; it shares no geometry code with the sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from .btmodel import BehaviorType
from .geometry import (
    Box,
    RccRelation,
    Region,
    rcc_relate,
    region_union,
    uncovered_box,
)
from .scenario import (
    CollisionCheck,
    Component,
    ReplacementCheck,
    Scenario,
    SensorCoverageCheck,
    ToolWorkpieceCheck,
    UnresolvedReference,
    CheckSpec,
)
from .typecheck import Verdict, Witness, WitnessKind, collision_verdict, first_collision, refines

DEFAULT_CELL_BUDGET = 10**6

CONTACT = frozenset({RccRelation.BOUNDARY_CONTACT, RccRelation.OVERLAPPING})


class CellBudgetExceeded(ValueError):
    pass


def _horizon(scenario: Scenario, horizon: int | None) -> int:
    return scenario.horizon if horizon is None else horizon


def _missing_behavior(c: Component) -> None:
    if c.script is None and c.behavior is None:
        raise UnresolvedReference(f"component {c.id!r} has no behavior")


# --- sweep engine ------------------------------------------------------------


def check_collision(scenario: Scenario, horizon: int | None = None) -> Verdict:
    """No two deployed components overlap with positive volume at any tick.

    The witness is the earliest colliding tick; ties break on the
    lexicographically smallest component pair.
    """
    h = _horizon(scenario, horizon)
    comps = sorted(scenario.deployment(), key=lambda c: c.id)
    for c in comps:
        _missing_behavior(c)
    best: Verdict | None = None
    for a, b in combinations(comps, 2):
        hit = first_collision(a.occupancy, b.occupancy, h if best is None else best.witness.tick)
        if hit is None:
            continue
        v = collision_verdict((a.id, b.id), hit)
        if best is None or v.witness.tick < best.witness.tick:
            best = v
    if best is None:
        return Verdict.ok(f"{len(comps)} components collision-free over [0, {h}]")
    return best


def check_sensor_coverage(
    scenario: Scenario, target: Region, required_ticks: Sequence[int], horizon: int | None = None
) -> Verdict:
    h = _horizon(scenario, horizon)
    comps = scenario.deployment()
    for t in sorted(set(required_ticks)):
        if not 0 <= t <= h:
            raise ValueError(f"required tick {t} outside [0, {h}]")
        covered = region_union(c.sensed(t) for c in comps)
        gap = uncovered_box(covered, target)
        if gap is not None:
            return Verdict.fail(
                Witness(t, WitnessKind.SENSOR, Region.of(gap)),
                f"target not covered at tick {t}: {gap} is unsensed",
            )
    return Verdict.ok("target covered at every required tick")


def _relation(tool: Region, work: Region) -> RccRelation:
    if not tool or not work:
        return RccRelation.DISCONNECTED
    return rcc_relate(tool, work)


def check_tool_workpiece(
    scenario: Scenario,
    tool_id: str,
    workpiece_id: str,
    schedule: Sequence[tuple[int, int]],
    horizon: int | None = None,
) -> Verdict:
    """Tool and workpiece touch or overlap exactly during the scheduled intervals."""
    h = _horizon(scenario, horizon)
    tool, work = scenario.component(tool_id), scenario.component(workpiece_id)
    scheduled = {t for a, b in schedule for t in range(a, b + 1)}
    for t in range(h + 1):
        rel = _relation(tool.occupancy(t), work.occupancy(t))
        if t in scheduled and rel not in CONTACT:
            why = f"expected contact at tick {t}, observed {rel}"
        elif t not in scheduled and rel is not RccRelation.DISCONNECTED:
            why = f"unscheduled {rel} at tick {t}"
        else:
            continue
        return Verdict.fail(
            Witness(t, WitnessKind.OCCUPANCY, components=(tool_id, workpiece_id), relation=rel),
            f"{tool_id}/{workpiece_id}: {why}",
        )
    return Verdict.ok(f"{tool_id}/{workpiece_id} contact matches schedule")


def run_check(scenario: Scenario, check: CheckSpec, horizon: int | None = None) -> Verdict:
    if isinstance(check, CollisionCheck):
        return check_collision(scenario, horizon)
    if isinstance(check, SensorCoverageCheck):
        return check_sensor_coverage(scenario, check.target, check.required_ticks(), horizon)
    if isinstance(check, ToolWorkpieceCheck):
        return check_tool_workpiece(scenario, check.tool, check.workpiece, check.schedule, horizon)
    if isinstance(check, ReplacementCheck):
        return check_replacement(scenario, check.old, scenario.behavior(check.new), horizon)
    raise TypeError(f"unknown check {check!r}")


def check_replacement(
    scenario: Scenario, old_id: str, new_bt: BehaviorType, horizon: int | None = None
) -> Verdict:
    """Can ``old_id`` be swapped for a component executing ``new_bt``?

    Requires ``new_bt`` to refine the old component's behavior and every other
    check of the scenario to still pass after the substitution.
    """
    h = _horizon(scenario, horizon)
    old = scenario.component(old_id)
    if old.replica_of is not None:
        raise UnresolvedReference(f"{old_id!r} is a replica; replace its source instead")
    ref = refines(new_bt, old.envelope(), h)
    swapped = scenario.substitute(old_id, new_bt)
    subs = [
        run_check(swapped, chk, h)
        for chk in scenario.checks
        if not isinstance(chk, ReplacementCheck)
    ]
    details = (ref, *subs)
    for v in details:
        if not v.passed:
            return Verdict.fail(v.witness, f"replacing {old_id} by {new_bt.id}: {v.explanation}", details)
    return Verdict.ok(f"{new_bt.id} can replace {old_id}", details)


# --- grid-SAT engine ----------------------------------------------------------


@dataclass(frozen=True)
class GridEncoding:
    """Boolean occupancy encoding over (tick, cell, component).

    Variable ids are dense, 1-based and ordered lexicographically by
    (tick, cell x, cell y, cell z, component). ``facts`` holds the unit
    clause polarity of every variable as fixed by the scenario; the
    collision-freedom constraints are pairwise at-most-one over components at
    each (tick, cell) and are enumerated lazily by :meth:`clauses`.
    """

    cell_size: int
    origin: tuple[int, int, int]
    shape: tuple[int, int, int]
    horizon: int
    components: tuple[str, ...]
    facts: np.ndarray  # bool, (ticks, nx, ny, nz, components)

    @property
    def num_vars(self) -> int:
        return int(self.facts.size)

    def var(self, tick: int, cell: tuple[int, int, int], component: str) -> int:
        k = self.components.index(component)
        idx = np.ravel_multi_index((tick, *cell, k), self.facts.shape)
        return int(idx) + 1

    def decode(self, var: int) -> tuple[int, tuple[int, int, int], str]:
        t, x, y, z, k = np.unravel_index(var - 1, self.facts.shape)
        return int(t), (int(x), int(y), int(z)), self.components[int(k)]

    def cell_box(self, cell: tuple[int, int, int]) -> Box:
        lo = tuple(o + c * self.cell_size for o, c in zip(self.origin, cell))
        return Box(lo, tuple(v + self.cell_size for v in lo))  # type: ignore[arg-type]

    def clauses(self) -> Iterator[tuple[int, ...]]:
        """CNF clauses as signed variable ids: unit facts, then at-most-one pairs."""
        flat = self.facts.reshape(-1)
        for i, v in enumerate(flat):
            yield ((i + 1) if v else -(i + 1),)
        ncomp = len(self.components)
        if ncomp < 2:
            return
        for base in range(0, flat.size, ncomp):
            for a, b in combinations(range(ncomp), 2):
                yield (-(base + a + 1), -(base + b + 1))


@dataclass(frozen=True)
class Sat:
    pass


@dataclass(frozen=True)
class Unsat:
    tick: int
    cell: tuple[int, int, int]
    components: tuple[str, ...]


def _snap_lo(v: int, c: int) -> int:
    return (v // c) * c


def _snap_hi(v: int, c: int) -> int:
    return -((-v) // c) * c


def encode_grid(
    scenario: Scenario,
    cell_size: int = 1,
    horizon: int | None = None,
    *,
    bounds: Box | None = None,
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> GridEncoding:
    """Rasterise deployed occupancy onto a grid of ``cell_size`` cubes.

    A box marks every cell its interior meets; coordinates off the grid are
    expanded outward, which over-approximates occupancy. ``bounds`` fixes the
    encoded space; by default it is the snapped bounding box of all occupancy.
    """
    if cell_size <= 0:
        raise ValueError("cell size must be positive")
    h = _horizon(scenario, horizon)
    comps = sorted(scenario.deployment(), key=lambda c: c.id)
    for c in comps:
        _missing_behavior(c)
    occ = [[c.occupancy(t) for c in comps] for t in range(h + 1)]
    boxes = [b for row in occ for r in row for b in r.boxes]
    if bounds is None:
        if not boxes:
            origin, shape = (0, 0, 0), (0, 0, 0)
        else:
            lo = [min(b.min[a] for b in boxes) for a in range(3)]
            hi = [max(b.max[a] for b in boxes) for a in range(3)]
            origin = tuple(_snap_lo(v, cell_size) for v in lo)
            shape = tuple(
                max(0, (_snap_hi(hv, cell_size) - o) // cell_size) for hv, o in zip(hi, origin)
            )
    else:
        origin = tuple(_snap_lo(v, cell_size) for v in bounds.min)
        shape = tuple(
            (_snap_hi(hv, cell_size) - o) // cell_size for hv, o in zip(bounds.max, origin)
        )
    ncells = math.prod(shape)
    if ncells * (h + 1) > cell_budget:
        raise CellBudgetExceeded(
            f"{ncells} cells x {h + 1} ticks exceeds budget {cell_budget}"
        )
    facts = np.zeros((h + 1, *shape, len(comps)), dtype=bool)
    for t, row in enumerate(occ):
        for k, r in enumerate(row):
            for b in r.boxes:
                sl = []
                for a in range(3):
                    lo = (_snap_lo(b.min[a], cell_size) - origin[a]) // cell_size
                    hi = (_snap_hi(b.max[a], cell_size) - origin[a]) // cell_size
                    sl.append(slice(max(lo, 0), max(min(hi, shape[a]), 0)))
                facts[(t, *sl, k)] = True
    return GridEncoding(cell_size, origin, shape, h, tuple(c.id for c in comps), facts)  # type: ignore[arg-type]


def solve_grid(enc: GridEncoding) -> Sat | Unsat:
    """Propagate unit facts, then look for a violated at-most-one constraint.

    All variables are fixed by unit clauses, so propagation alone decides
    satisfiability. The conflict reported is the lexicographically smallest
    (tick, cell).
    """
    if enc.facts.size == 0:
        return Sat()
    counts = enc.facts.sum(axis=-1)
    conflicts = np.argwhere(counts >= 2)
    if len(conflicts) == 0:
        return Sat()
    t, x, y, z = (int(v) for v in conflicts[0])
    who = tuple(enc.components[k] for k in np.flatnonzero(enc.facts[t, x, y, z]))
    return Unsat(t, (x, y, z), who)


def check_collision_grid(
    scenario: Scenario,
    horizon: int | None = None,
    cell_size: int = 1,
    cell_budget: int = DEFAULT_CELL_BUDGET,
) -> Verdict:
    enc = encode_grid(scenario, cell_size, horizon, cell_budget=cell_budget)
    res = solve_grid(enc)
    if isinstance(res, Sat):
        return Verdict.ok(f"grid encoding satisfiable ({enc.num_vars} variables)")
    return Verdict.fail(
        Witness(
            res.tick,
            WitnessKind.OCCUPANCY,
            Region.of(enc.cell_box(res.cell)),
            components=res.components,
            cell=res.cell,
        ),
        f"{' and '.join(res.components)} share cell {res.cell} at tick {res.tick}",
    )

