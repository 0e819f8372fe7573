"""Seeded random generators for boxes, behavioral types and scenarios."""

from __future__ import annotations

import random
from dataclasses import replace

from cybervirt.btmodel import (
    BehaviorType,
    Clause,
    Emits,
    ModeSchedule,
    Occupy,
    SensorCoverage,
    Trace,
    TraceRecord,
)
from cybervirt.geometry import Box, Region
from cybervirt.scenario import (
    CollisionCheck,
    Component,
    Link,
    ReplacementCheck,
    ReplicationDirective,
    Scenario,
    SensorCoverageCheck,
    ToolWorkpieceCheck,
)

MODES = ("idle", "busy")
EVENTS = ("e0", "e1", "e2")


def rand_box(rng: random.Random, lo: int = 0, hi: int = 8, max_size: int | None = None) -> Box:
    mn, mx = [], []
    for _ in range(3):
        if max_size is None:
            a, b = sorted((rng.randint(lo, hi), rng.randint(lo, hi)))
        else:
            a = rng.randint(lo, hi - 1)
            b = min(hi, a + rng.randint(1, max_size))
        mn.append(a)
        mx.append(b)
    return Box(tuple(mn), tuple(mx))


def rand_region(rng: random.Random, n: int | None = None, **kw) -> Region:
    n = rng.randint(1, 3) if n is None else n
    return Region(rand_box(rng, **kw) for _ in range(n))


def sub_box(rng: random.Random, b: Box) -> Box:
    mn, mx = [], []
    for lo, hi in zip(b.min, b.max):
        a, c = sorted((rng.randint(lo, hi), rng.randint(lo, hi)))
        mn.append(a)
        mx.append(c)
    return Box(tuple(mn), tuple(mx))


def rand_schedule(rng: random.Random, horizon: int) -> ModeSchedule:
    starts = sorted({0} | {rng.randint(1, max(1, horizon)) for _ in range(rng.randint(0, 3))})
    return ModeSchedule(tuple((t, rng.choice(MODES)) for t in starts))


def rand_clause(rng: random.Random, horizon: int, kinds=("occupy", "sense", "emit"), **box_kw) -> Clause:
    t0 = rng.randint(0, horizon)
    t1 = rng.randint(t0, horizon)
    modes = frozenset(rng.sample(MODES, rng.randint(1, 2)))
    kind = rng.choice(kinds)
    if kind == "occupy":
        eff = Occupy(rand_region(rng, **box_kw))
    elif kind == "sense":
        eff = SensorCoverage(rand_region(rng, **box_kw))
    else:
        eff = Emits(rng.choice(EVENTS))
    return Clause(t0, t1, modes, eff)


def rand_bt(rng: random.Random, horizon: int, bid: str = "bt", n_clauses: int | None = None, **box_kw) -> BehaviorType:
    n = rng.randint(0, 5) if n_clauses is None else n_clauses
    return BehaviorType(
        bid,
        frozenset(MODES),
        rand_schedule(rng, horizon),
        tuple(rand_clause(rng, horizon, **box_kw) for _ in range(n)),
        (0, 0, 0),
    )


def weaken(rng: random.Random, bt: BehaviorType, horizon: int, bid: str | None = None, **box_kw) -> BehaviorType:
    """A BT that refines ``bt`` by construction: smaller occupancy, more sensing and events."""
    clauses = []
    for c in bt.clauses:
        if isinstance(c.effect, Occupy):
            if rng.random() < 0.2:
                continue
            clauses.append(replace(c, effect=Occupy(Region(sub_box(rng, b) for b in c.effect.region.boxes))))
        else:
            clauses.append(c)
    for _ in range(rng.randint(0, 2)):
        clauses.append(rand_clause(rng, horizon, kinds=("sense", "emit"), **box_kw))
    return replace(bt, id=bid or f"{bt.id}'", clauses=tuple(clauses))


def collision_scenario(rng: random.Random, n_comp: int | None = None, horizon: int | None = None,
                       space: int = 16) -> Scenario:
    """Virtual-only scenario in a ``space``^3 mm cube, for engine cross-checks."""
    h = rng.randint(0, 20) if horizon is None else horizon
    n = rng.randint(1, 4) if n_comp is None else n_comp
    bts = []
    comps = []
    for i in range(n):
        bt = rand_bt(rng, h, f"bt{i}", n_clauses=rng.randint(1, 4), hi=space, max_size=6)
        bt = replace(bt, clauses=tuple(c for c in bt.clauses if isinstance(c.effect, Occupy))
                     or (Clause(0, h, frozenset(MODES), Occupy(rand_region(rng, hi=space, max_size=6))),))
        bts.append(bt)
        comps.append(Component(f"c{i}", "S", "T", bt))
    return Scenario("rand", h, ("S",), tuple(bts), tuple(comps), checks=(CollisionCheck(),))


def rand_script(rng: random.Random, horizon: int, cid: str) -> Trace:
    recs = []
    for t in range(horizon + 1):
        if rng.random() < 0.3:
            continue
        recs.append(
            TraceRecord(
                t,
                rand_region(rng) if rng.random() < 0.7 else Region(),
                rand_region(rng) if rng.random() < 0.5 else Region(),
                frozenset(rng.sample(EVENTS, rng.randint(0, 2))),
            )
        )
    return Trace(cid, tuple(recs))


def full_scenario(rng: random.Random, idx: int = 0) -> Scenario:
    """A scenario exercising every file-format feature (not necessarily passing)."""
    h = rng.randint(0, 12)
    sites = tuple(f"L{i}" for i in range(rng.randint(1, 3)))
    bts = []
    for i in range(rng.randint(1, 3)):
        bt = rand_bt(rng, h, f"bt{i}")
        if rng.random() < 0.3:
            bt = replace(bt, frame=(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-5, 5)))
        if rng.random() < 0.2:
            bt = replace(bt, horizon=h + rng.randint(0, 5))
        bts.append(bt)
    comps = []
    for i in range(rng.randint(1, 4)):
        cid = f"c{i}"
        physical = rng.random() < 0.4
        comps.append(
            Component(
                cid,
                rng.choice(sites),
                rng.choice(("AType", "BType")),
                rng.choice(bts) if (not physical or rng.random() < 0.5) else None,
                rand_script(rng, h, cid) if physical else None,
                (rng.randint(-9, 9), 0, rng.randint(-9, 9)) if rng.random() < 0.3 else (0, 0, 0),
            )
        )
    reps = []
    if rng.random() < 0.6:
        src = rng.choice(comps)
        k = rng.randint(1, 3)
        reps.append(ReplicationDirective(src.id, tuple((10 * (j + 1), 0, 0) for j in range(k)), rng.choice(sites)))
    links = []
    for a in sites:
        for b in sites:
            if a != b and rng.random() < 0.5:
                links.append(Link(a, b, rng.randint(0, 3), rng.randint(0, 2), rng.choice((0.0, 0.25, 1.0))))
    checks: list = [CollisionCheck()]
    if rng.random() < 0.5:
        checks.append(SensorCoverageCheck(rand_region(rng), ((0, h),)))
    if len(comps) >= 2 and rng.random() < 0.5:
        checks.append(ToolWorkpieceCheck(comps[0].id, comps[1].id, ((0, min(1, h)),)))
    if rng.random() < 0.4:
        checks.append(ReplacementCheck(comps[0].id, bts[0].id))
    return Scenario(f"gen{idx}", h, sites, tuple(bts), tuple(comps), tuple(reps), tuple(links),
                    tuple(checks), rng.choice((50, 100, 250)), rng.randint(0, 10**6)).validate()
