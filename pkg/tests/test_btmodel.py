import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import generators as gen
import oracles
from cybervirt.btmodel import (
    BehaviorType,
    Clause,
    Emits,
    ModeSchedule,
    Occupy,
    SensorCoverage,
    TickOutOfRange,
    Trace,
    TraceRecord,
    bt_from_trace,
    events_at,
    execute_bt,
    occupancy_at,
    sensor_coverage_at,
    translate_bt,
)
from cybervirt.geometry import Box, CoordinateOverflow, Region, region, region_contains, region_union

RUN = frozenset({"run"})


def unit():
    return Region.of(Box.cube(0, 1))


def bt_with(*clauses, horizon=20, frame=(0, 0, 0)):
    return BehaviorType.simple("bt", clauses, frame=frame, horizon=horizon)


def test_occupancy_single_clause():
    bt = bt_with(Clause(0, 10, RUN, Occupy(unit())))
    assert occupancy_at(bt, 5) == unit()


def test_occupancy_guard_miss():
    bt = bt_with(Clause(0, 10, RUN, Occupy(unit())))
    assert occupancy_at(bt, 11).is_empty


def test_occupancy_unions_matching_clauses():
    a, b = Region.of(Box.cube(0, 1)), Region.of(Box.cube(1, 2))
    bt = bt_with(Clause(0, 10, RUN, Occupy(a)), Clause(3, 8, RUN, Occupy(b)))
    # evaluate-all-clauses oracle: both guards hold at t=5
    expected = region_union([c.effect.region for c in bt.clauses if c.t0 <= 5 <= c.t1])
    assert occupancy_at(bt, 5) == expected == Region.of(Box.cube(0, 1), Box.cube(1, 2))


def test_occupancy_beyond_horizon():
    bt = bt_with(Clause(0, 10, RUN, Occupy(unit())), horizon=20)
    with pytest.raises(TickOutOfRange):
        occupancy_at(bt, 21)


def test_mode_guard():
    bt = BehaviorType(
        "m",
        frozenset({"idle", "busy"}),
        ModeSchedule(((0, "idle"), (5, "busy"))),
        (Clause(0, 20, frozenset({"busy"}), Occupy(unit())),),
    )
    assert occupancy_at(bt, 4).is_empty
    assert occupancy_at(bt, 5) == unit()


def test_sensor_no_clauses():
    bt = bt_with(Clause(0, 10, RUN, Occupy(unit())))
    assert sensor_coverage_at(bt, 0).is_empty


def test_sensor_translated_by_frame():
    bt = bt_with(Clause(0, 20, RUN, SensorCoverage(Region.of(Box.cube(0, 5)))), frame=(10, 0, 0))
    # translate-then-union oracle: shift x by 10
    assert sensor_coverage_at(bt, 0) == region([[10, 0, 0], [15, 5, 5]])


def test_sensor_disjoint_intervals():
    first, second = Region.of(Box.cube(0, 1)), Region.of(Box.cube(4, 5))
    bt = bt_with(Clause(0, 4, RUN, SensorCoverage(first)), Clause(5, 9, RUN, SensorCoverage(second)))
    assert sensor_coverage_at(bt, 7) == second


def test_translate_identity_and_shift():
    bt = bt_with(Clause(0, 20, RUN, Occupy(unit())))
    same = translate_bt(bt, (0, 0, 0))
    assert all(occupancy_at(same, t) == occupancy_at(bt, t) for t in range(21))
    assert occupancy_at(translate_bt(bt, (10, 0, 0)), 0) == region([[10, 0, 0], [11, 1, 1]])


def test_translate_overflow():
    bt = bt_with(Clause(0, 20, RUN, Occupy(unit())))
    with pytest.raises(CoordinateOverflow):
        translate_bt(bt, (2**62, 0, 0))


def test_execute_horizon_zero_and_empty_bt():
    bt = bt_with(Clause(0, 20, RUN, Emits("go")))
    tr = execute_bt(bt, 0)
    assert [r.tick for r in tr.records] == [0]
    assert tr.records[0].events == {"go"}
    empty = execute_bt(bt_with(), 5)
    assert len(empty) == 6
    assert all(r.occupied.is_empty and r.sensed.is_empty and not r.events for r in empty.records)


def test_clause_invariants():
    with pytest.raises(ValueError):
        Clause(5, 4, RUN, Emits("x"))
    with pytest.raises(ValueError):
        Clause(0, 4, frozenset(), Emits("x"))
    with pytest.raises(ValueError):
        Clause(0, 4, RUN, Occupy(Region()))
    with pytest.raises(ValueError):
        BehaviorType("b", frozenset({"a"}), ModeSchedule.constant("a"), (Clause(0, 1, RUN, Emits("x")),))
    with pytest.raises(ValueError):
        ModeSchedule(((1, "a"),))


def test_trace_ticks_strictly_increasing():
    with pytest.raises(ValueError):
        Trace("c", (TraceRecord(2), TraceRecord(2)))
    assert Trace("c", (TraceRecord(1),)).at(7) == TraceRecord(7)


def test_bt_from_trace_is_tight():
    rng = random.Random(3)
    tr = gen.rand_script(rng, 8, "c")
    bt = bt_from_trace(tr)
    for t in range(9):
        rec = tr.at(t)
        assert occupancy_at(bt, t) == rec.occupied
        assert sensor_coverage_at(bt, t) == rec.sensed
        assert events_at(bt, t) == rec.events


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_adding_a_clause_never_shrinks(seed):
    rng = random.Random(seed)
    h = rng.randint(0, 10)
    bt = gen.rand_bt(rng, h)
    bigger = BehaviorType(bt.id, bt.modes, bt.schedule, bt.clauses + (gen.rand_clause(rng, h),))
    for t in range(h + 1):
        assert region_contains(occupancy_at(bigger, t), occupancy_at(bt, t))
        assert region_contains(sensor_coverage_at(bigger, t), sensor_coverage_at(bt, t))


@settings(max_examples=60, deadline=None)
@given(seeds, st.tuples(*[st.integers(-30, 30)] * 3))
def test_translate_commutes_with_evaluation(seed, v):
    rng = random.Random(seed)
    h = rng.randint(0, 10)
    bt = gen.rand_bt(rng, h)
    moved = translate_bt(bt, v)
    back = translate_bt(moved, tuple(-c for c in v))
    for t in range(h + 1):
        assert oracles.point_set_equal(occupancy_at(moved, t), occupancy_at(bt, t).translate(v))
        assert oracles.point_set_equal(sensor_coverage_at(moved, t), sensor_coverage_at(bt, t).translate(v))
        assert occupancy_at(back, t) == occupancy_at(bt, t)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_execute_is_deterministic(seed):
    rng = random.Random(seed)
    h = rng.randint(0, 15)
    bt = gen.rand_bt(rng, h)
    a, b = execute_bt(bt, h), execute_bt(bt, h)
    assert a == b
    assert [[r.occupied.boxes, r.sensed.boxes, r.events] for r in a.records] == [
        [r.occupied.boxes, r.sensed.boxes, r.events] for r in b.records
    ]
