import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cybervirt.geometry import (
    EMPTY,
    Box,
    CoordinateOverflow,
    EmptyRegionError,
    RccRelation,
    Region,
    box_intersection,
    rcc_relate,
    region,
    region_contains,
    region_intersection,
    region_overlap_volume_positive,
    region_union,
    uncovered_box,
)

R = RccRelation


def cube(lo, hi):
    return Region.of(Box.cube(lo, hi))


coord = st.integers(0, 8)


@st.composite
def boxes(draw):
    lo, hi = [], []
    for _ in range(3):
        a, b = sorted((draw(coord), draw(coord)))
        lo.append(a)
        hi.append(b)
    return Box(tuple(lo), tuple(hi))


regions = st.lists(boxes(), min_size=1, max_size=3).map(Region)


# --- box_intersection --------------------------------------------------------


def test_intersection_identity():
    b = Box.cube(0, 2)
    assert box_intersection(b, b) == Region.of(b)


def test_intersection_separated():
    assert box_intersection(Box.cube(0, 1), Box.cube(5, 6)).is_empty


def test_intersection_partial():
    # per-axis max of mins / min of maxes: max(0,2)=2, min(4,6)=4 on every axis
    got = box_intersection(Box.cube(0, 4), Box.cube(2, 6))
    assert got.boxes == (Box.cube(2, 4),)
    assert oracles.point_set_equal(got, cube(2, 4))


def test_intersection_of_touching_faces_is_a_face():
    a = Box.cube(0, 2)
    b = Box((2, 0, 0), (4, 2, 2))
    assert box_intersection(a, b).boxes == (Box((2, 0, 0), (2, 2, 2)),)


# --- union / contains ---------------------------------------------------------


def test_union_empty():
    assert region_union([EMPTY, EMPTY]).is_empty
    assert region_union([]).is_empty


def test_union_identity():
    r = region([[0, 0, 0], [3, 1, 2]], [[1, 1, 1], [4, 4, 4]])
    assert region_union([r, EMPTY]) == r


def test_union_idempotent_point_set():
    u = region_union([cube(0, 1), cube(0, 1)])
    assert oracles.point_set_equal(u, cube(0, 1))
    assert u == cube(0, 1)


def test_contains_reflexive_and_vacuous():
    r = region([[0, 0, 0], [3, 1, 2]])
    assert region_contains(r, r)
    assert not region_contains(EMPTY, cube(0, 1))
    assert region_contains(r, EMPTY)
    assert region_contains(EMPTY, EMPTY)


def test_contains_two_inner_boxes():
    inner = Region.of(Box.cube(1, 2), Box.cube(3, 4))
    assert oracles.contains(cube(0, 4), inner)
    assert region_contains(cube(0, 4), inner)


def test_contains_needs_union_of_outer_boxes():
    # [0..4]x[0..2]^2 is covered only by the two halves together
    outer = region([[0, 0, 0], [2, 2, 2]], [[2, 0, 0], [4, 2, 2]])
    inner = region([[1, 0, 0], [3, 2, 2]])
    assert region_contains(outer, inner)
    assert not region_contains(region([[0, 0, 0], [2, 2, 2]]), inner)


def test_point_set_equality_ignores_representation():
    a = region([[0, 0, 0], [4, 2, 2]])
    b = region([[0, 0, 0], [2, 2, 2]], [[2, 0, 0], [4, 2, 2]])
    assert a == b
    assert hash(a) == hash(b)
    assert a != region([[0, 0, 0], [4, 2, 3]])


def test_uncovered_box_reports_missing_points():
    outer = cube(0, 2)
    inner = region([[1, 1, 1], [3, 2, 2]])
    gap = uncovered_box(outer, inner)
    assert gap is not None
    assert gap.volume > 0
    assert not region_contains(outer, Region.of(gap))
    assert region_contains(inner, Region.of(gap))
    assert uncovered_box(cube(0, 4), cube(1, 2)) is None


# --- overlap / rcc --------------------------------------------------------------


def test_overlap_same_box():
    assert region_overlap_volume_positive(cube(0, 1), cube(0, 1))


def test_overlap_face_contact_is_not_collision():
    a, b = cube(0, 2), region([[2, 0, 0], [4, 2, 2]])
    assert not oracles.overlap_positive(a, b)
    assert not region_overlap_volume_positive(a, b)


def test_overlap_disjoint():
    assert not region_overlap_volume_positive(cube(0, 1), cube(5, 6))


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (cube(0, 1), cube(5, 6), R.DISCONNECTED),
        (cube(0, 2), region([[2, 0, 0], [4, 2, 2]]), R.BOUNDARY_CONTACT),
        (cube(0, 4), cube(1, 2), R.CONTAINS_PROPER),
        (cube(1, 2), cube(0, 4), R.INSIDE_PROPER),
        (cube(0, 4), cube(0, 2), R.CONTAINS_TOUCHING),
        (cube(0, 2), cube(1, 3), R.OVERLAPPING),
        (cube(0, 2), region([[0, 0, 0], [1, 2, 2]], [[1, 0, 0], [2, 2, 2]]), R.EQUAL),
        (cube(0, 1), cube(1, 2), R.BOUNDARY_CONTACT),  # corner point only
    ],
)
def test_rcc_examples(a, b, expected):
    assert oracles.rcc(a, b) is expected
    assert rcc_relate(a, b) is expected


def test_rcc_inside_union_without_internal_boundary():
    # the seam between the two outer boxes is interior to their union
    outer = region([[0, 0, 0], [2, 4, 4]], [[2, 0, 0], [4, 4, 4]])
    inner = region([[1, 1, 1], [3, 3, 3]])
    assert oracles.rcc(inner, outer) is R.INSIDE_PROPER
    assert rcc_relate(inner, outer) is R.INSIDE_PROPER


def test_rcc_degenerate_face_inside_box():
    face = region([[1, 1, 2], [3, 3, 2]])
    assert rcc_relate(face, cube(0, 4)) is R.INSIDE_PROPER
    assert rcc_relate(region([[1, 1, 0], [3, 3, 0]]), cube(0, 4)) is R.INSIDE_TOUCHING


def test_rcc_empty_is_an_error():
    with pytest.raises(EmptyRegionError):
        rcc_relate(EMPTY, cube(0, 1))


def test_box_validation():
    with pytest.raises(ValueError):
        Box((1, 0, 0), (0, 1, 1))
    with pytest.raises(TypeError):
        Box((0.5, 0, 0), (1, 1, 1))
    with pytest.raises(CoordinateOverflow):
        Box.cube(0, 1).translate((2**62, 0, 0))


# --- properties against the brute-force oracle ----------------------------------


@settings(max_examples=150, deadline=None)
@given(regions, regions)
def test_rcc_matches_oracle(a, b):
    assert rcc_relate(a, b) is oracles.rcc(a, b)


@settings(max_examples=150, deadline=None)
@given(regions, regions)
def test_rcc_converse(a, b):
    assert rcc_relate(b, a) is rcc_relate(a, b).converse()


@settings(max_examples=150, deadline=None)
@given(regions, regions)
def test_predicates_match_oracle(a, b):
    assert region_contains(a, b) == oracles.contains(a, b)
    assert region_overlap_volume_positive(a, b) == oracles.overlap_positive(a, b)
    lo, hi = oracles.sample_window(a, b)
    pts = oracles.doubled_grid(lo, hi)
    assert (oracles.members(region_union([a, b]), pts) == (oracles.members(a, pts) | oracles.members(b, pts))).all()
    assert (oracles.members(region_intersection(a, b), pts) == (oracles.members(a, pts) & oracles.members(b, pts))).all()


@settings(max_examples=100, deadline=None)
@given(regions, regions, regions)
def test_contains_partial_order(a, b, c):
    assert region_contains(a, a)
    if region_contains(a, b) and region_contains(b, a):
        assert a == b
        assert rcc_relate(a, b) is R.EQUAL
    if region_contains(a, b) and region_contains(b, c):
        assert region_contains(a, c)


@settings(max_examples=150, deadline=None)
@given(regions, regions)
def test_overlap_implies_nondisjoint_relation(a, b):
    if region_overlap_volume_positive(a, b):
        assert rcc_relate(a, b) not in (R.DISCONNECTED, R.BOUNDARY_CONTACT)


@settings(max_examples=100, deadline=None)
@given(regions, st.tuples(*[st.integers(-20, 20)] * 3))
def test_translate_round_trip(r, v):
    back = tuple(-c for c in v)
    assert r.translate(v).translate(back) == r
