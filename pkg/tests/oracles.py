"""Brute-force reference implementations.

Everything here works on doubled coordinates so midpoints stay integral: a
real point ``p`` is represented by ``2p``. Predicates sample one point in
every cell of the arrangement induced by the box coordinates (each coordinate,
each midpoint between neighbours, one point past each end), which makes them
exact for closed integer boxes. ``doubled_grid`` gives the plain dense
integer and half-integer lattice for small windows.
"""

from __future__ import annotations

import itertools

import numpy as np

from cybervirt.geometry import RccRelation, Region


def doubled_grid(lo: int, hi: int) -> np.ndarray:
    """All doubled sample points in the real cube ``[lo, hi]^3``, shape (N, 3)."""
    axis = np.arange(2 * lo, 2 * hi + 1)
    return np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), -1).reshape(-1, 3)


def members(region: Region, pts: np.ndarray) -> np.ndarray:
    out = np.zeros(len(pts), dtype=bool)
    for b in region.boxes:
        lo = 2 * np.array(b.min)
        hi = 2 * np.array(b.max)
        out |= np.all((pts >= lo) & (pts <= hi), axis=1)
    return out


def sample_window(*regions: Region, pad: int = 1) -> tuple[int, int]:
    coords = [c for r in regions for b in r.boxes for c in (*b.min, *b.max)]
    if not coords:
        return 0, 0
    return min(coords) - pad, max(coords) + pad


def _axis_samples(regions: tuple[Region, ...], axis: int) -> tuple[np.ndarray, np.ndarray]:
    """Doubled sample coordinates along one axis and which of them are open.

    Samples are every box coordinate, every midpoint between consecutive
    coordinates and one point beyond each end, which hits every cell of the
    arrangement however far apart the coordinates are.
    """
    cs = sorted({c for r in regions for b in r.boxes for c in (b.min[axis], b.max[axis])}) or [0]
    vals = [2 * cs[0] - 1]
    is_open = [True]
    for i, c in enumerate(cs):
        vals.append(2 * c)
        is_open.append(False)
        vals.append(c + cs[i + 1] if i + 1 < len(cs) else 2 * c + 1)
        is_open.append(True)
    return np.array(vals), np.array(is_open)


def _grid(*regions: Region):
    """Membership grids of ``regions`` over the sample lattice, plus the all-open mask."""
    axes = [_axis_samples(regions, a) for a in range(3)]
    pts = np.stack(np.meshgrid(*(v for v, _ in axes), indexing="ij"), -1)
    shape = pts.shape[:3]
    grids = [members(r, pts.reshape(-1, 3)).reshape(shape) for r in regions]
    o = [m for _, m in axes]
    open_all = o[0][:, None, None] & o[1][None, :, None] & o[2][None, None, :]
    return grids, open_all


def contains(outer: Region, inner: Region) -> bool:
    (o, i), _ = _grid(outer, inner)
    return not np.any(i & ~o)


def shares_point(a: Region, b: Region) -> bool:
    (ga, gb), _ = _grid(a, b)
    return bool(np.any(ga & gb))


def overlap_positive(a: Region, b: Region) -> bool:
    (ga, gb), open_all = _grid(a, b)
    return bool(np.any(ga & gb & open_all))


def _touches_boundary(inner: Region, outer: Region) -> bool:
    """Some point of ``inner`` is not an interior point of ``outer``."""
    (gi, go), _ = _grid(inner, outer)
    padded = np.pad(go, 1, constant_values=False)
    nx, ny, nz = go.shape
    interior = np.ones_like(go)
    for dx, dy, dz in itertools.product((0, 1, 2), repeat=3):
        interior &= padded[dx:dx + nx, dy:dy + ny, dz:dz + nz]
    return bool(np.any(gi & ~interior))


def rcc(a: Region, b: Region) -> RccRelation:
    a_in_b, b_in_a = contains(b, a), contains(a, b)
    if a_in_b and b_in_a:
        return RccRelation.EQUAL
    if a_in_b:
        return RccRelation.INSIDE_TOUCHING if _touches_boundary(a, b) else RccRelation.INSIDE_PROPER
    if b_in_a:
        return RccRelation.CONTAINS_TOUCHING if _touches_boundary(b, a) else RccRelation.CONTAINS_PROPER
    if not shares_point(a, b):
        return RccRelation.DISCONNECTED
    if not overlap_positive(a, b):
        return RccRelation.BOUNDARY_CONTACT
    return RccRelation.OVERLAPPING


def point_set_equal(a: Region, b: Region) -> bool:
    return contains(a, b) and contains(b, a)


def first_collision_tick(occupancies: dict[str, list[Region]]) -> int | None:
    """Earliest tick at which any two streams share a unit cell (integer boxes)."""
    ids = sorted(occupancies)
    horizon = len(occupancies[ids[0]]) if ids else 0
    for t in range(horizon):
        for a, b in itertools.combinations(ids, 2):
            if overlap_positive(occupancies[a][t], occupancies[b][t]):
                return t
    return None
