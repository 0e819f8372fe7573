"""Discrete 3D regions: closed integer boxes, finite unions of them, and
qualitative (RCC-style) relations between regions.

All predicates are exact. They work on a compressed cell decomposition: the
distinct box coordinates on each axis split space into alternating point
cells and open-interval cells, and every box is a union of such cells. A
closed box therefore never straddles a cell, so membership, containment,
overlap and boundary contact reduce to boolean array algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
from scipy import ndimage

Vec3 = tuple[int, int, int]

# Coordinates are integer millimetres; anything beyond this is treated as overflow.
COORD_LIMIT = 2**62


class CoordinateOverflow(ValueError):
    """A coordinate left the representable range."""


class EmptyRegionError(ValueError):
    """An operation that needs a non-empty region was given an empty one."""


def _check_coord(v: int) -> int:
    if not -COORD_LIMIT <= v <= COORD_LIMIT:
        raise CoordinateOverflow(f"coordinate {v} outside +/-2**62")
    return v


def as_vec3(v: Iterable[int]) -> Vec3:
    items = tuple(v)
    if len(items) != 3:
        raise ValueError(f"expected 3 coordinates, got {len(items)}")
    out = []
    for c in items:
        if isinstance(c, bool) or not isinstance(c, (int, np.integer)):
            raise TypeError(f"coordinates must be integers, got {c!r}")
        out.append(_check_coord(int(c)))
    return (out[0], out[1], out[2])


@dataclass(frozen=True, order=True)
class Box:
    """Closed axis-aligned box ``[min, max]``; may be degenerate."""

    min: Vec3
    max: Vec3

    def __post_init__(self) -> None:
        lo, hi = as_vec3(self.min), as_vec3(self.max)
        if any(l > h for l, h in zip(lo, hi)):
            raise ValueError(f"box min {lo} exceeds max {hi}")
        object.__setattr__(self, "min", lo)
        object.__setattr__(self, "max", hi)

    @classmethod
    def cube(cls, lo: int, hi: int) -> Box:
        return cls((lo, lo, lo), (hi, hi, hi))

    @property
    def extents(self) -> Vec3:
        return tuple(h - l for l, h in zip(self.min, self.max))  # type: ignore[return-value]

    @property
    def volume(self) -> int:
        x, y, z = self.extents
        return x * y * z

    def contains_point(self, p: Sequence[float]) -> bool:
        return all(l <= c <= h for l, c, h in zip(self.min, p, self.max))

    def translate(self, offset: Iterable[int]) -> Box:
        d = as_vec3(offset)
        return Box(
            tuple(_check_coord(c + o) for c, o in zip(self.min, d)),  # type: ignore[arg-type]
            tuple(_check_coord(c + o) for c, o in zip(self.max, d)),  # type: ignore[arg-type]
        )

    def to_list(self) -> list[list[int]]:
        return [list(self.min), list(self.max)]

    def __repr__(self) -> str:
        return f"Box({list(self.min)}-{list(self.max)})"


class Region:
    """A finite union of closed boxes, compared as a point set.

    ``==`` is point-set equality: two regions built from different boxes are
    equal when they cover exactly the same points.
    """

    __slots__ = ("boxes",)

    def __init__(self, boxes: Iterable[Box] = ()) -> None:
        self.boxes: tuple[Box, ...] = tuple(sorted(set(boxes)))

    @classmethod
    def of(cls, *boxes: Box) -> Region:
        return cls(boxes)

    @property
    def is_empty(self) -> bool:
        return not self.boxes

    def __bool__(self) -> bool:
        return bool(self.boxes)

    def bounds(self) -> Box | None:
        if not self.boxes:
            return None
        lo = tuple(min(b.min[i] for b in self.boxes) for i in range(3))
        hi = tuple(max(b.max[i] for b in self.boxes) for i in range(3))
        return Box(lo, hi)  # type: ignore[arg-type]

    def contains_point(self, p: Sequence[float]) -> bool:
        return any(b.contains_point(p) for b in self.boxes)

    def translate(self, offset: Iterable[int]) -> Region:
        d = as_vec3(offset)
        if d == (0, 0, 0):
            return self
        return Region(b.translate(d) for b in self.boxes)

    def __or__(self, other: Region) -> Region:
        return region_union([self, other])

    def __and__(self, other: Region) -> Region:
        return region_intersection(self, other)

    def __le__(self, other: Region) -> bool:
        return region_contains(other, self)

    def __ge__(self, other: Region) -> bool:
        return region_contains(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Region):
            return NotImplemented
        if self.boxes == other.boxes:
            return True
        return region_contains(self, other) and region_contains(other, self)

    def __hash__(self) -> int:
        # bounding box is a point-set invariant, so equal regions hash equal
        return hash(self.bounds())

    def __repr__(self) -> str:
        if not self.boxes:
            return "Region()"
        return "Region(" + ", ".join(repr(b) for b in self.boxes) + ")"

    def to_list(self) -> list[list[list[int]]]:
        return [b.to_list() for b in self.boxes]


EMPTY = Region()


class RccRelation(Enum):
    DISCONNECTED = "Disconnected"
    BOUNDARY_CONTACT = "BoundaryContact"
    OVERLAPPING = "Overlapping"
    INSIDE_TOUCHING = "InsideTouching"
    INSIDE_PROPER = "InsideProper"
    CONTAINS_TOUCHING = "ContainsTouching"
    CONTAINS_PROPER = "ContainsProper"
    EQUAL = "Equal"

    def converse(self) -> RccRelation:
        return _CONVERSE.get(self, self)

    def __str__(self) -> str:
        return self.value


_CONVERSE = {
    RccRelation.INSIDE_TOUCHING: RccRelation.CONTAINS_TOUCHING,
    RccRelation.INSIDE_PROPER: RccRelation.CONTAINS_PROPER,
    RccRelation.CONTAINS_TOUCHING: RccRelation.INSIDE_TOUCHING,
    RccRelation.CONTAINS_PROPER: RccRelation.INSIDE_PROPER,
}


# --- cell decomposition -----------------------------------------------------


class _Cells:
    """Compressed cell grid shared by a handful of regions.

    Along each axis with sorted distinct coordinates ``c_0 < ... < c_{m-1}``
    cell index ``2i+1`` is the point ``c_i`` and index ``2i`` the open
    interval ``(c_{i-1}, c_i)``; indices 0 and ``2m`` are the unbounded ends.
    """

    def __init__(self, regions: Sequence[Region]) -> None:
        self.coords: list[list[int]] = []
        for axis in range(3):
            vals = {b.min[axis] for r in regions for b in r.boxes}
            vals |= {b.max[axis] for r in regions for b in r.boxes}
            self.coords.append(sorted(vals))
        self.shape = tuple(2 * len(c) + 1 for c in self.coords)
        self._index = [{v: i for i, v in enumerate(c)} for c in self.coords]

    def mask(self, region: Region) -> np.ndarray:
        out = np.zeros(self.shape, dtype=bool)
        for b in region.boxes:
            sl = tuple(
                slice(2 * self._index[a][b.min[a]] + 1, 2 * self._index[a][b.max[a]] + 2)
                for a in range(3)
            )
            out[sl] = True
        return out

    @staticmethod
    def open_cells(mask: np.ndarray) -> np.ndarray:
        """Restrict a mask to cells that are open intervals on every axis."""
        return mask[::2, ::2, ::2]

    def cell_box(self, idx: Sequence[int]) -> Box:
        """Closure of one (bounded) cell, as a box."""
        lo, hi = [], []
        for a, i in enumerate(idx):
            c = self.coords[a]
            if i % 2:
                lo.append(c[i // 2])
                hi.append(c[i // 2])
            else:
                lo.append(c[i // 2 - 1])
                hi.append(c[i // 2])
        return Box(tuple(lo), tuple(hi))  # type: ignore[arg-type]


def _interior(mask: np.ndarray) -> np.ndarray:
    # Neighbours of an interval cell along an axis are its endpoint cells, which
    # lie in the closure of the cell itself; a full 3x3x3 erosion is therefore
    # exact for unions of closed boxes.
    return ndimage.binary_erosion(mask, structure=np.ones((3, 3, 3), bool), border_value=0)


# --- operations ---------------------------------------------------------------


def box_intersection(a: Box, b: Box) -> Region:
    lo = tuple(max(x, y) for x, y in zip(a.min, b.min))
    hi = tuple(min(x, y) for x, y in zip(a.max, b.max))
    if any(l > h for l, h in zip(lo, hi)):
        return EMPTY
    return Region.of(Box(lo, hi))  # type: ignore[arg-type]


def region_union(rs: Iterable[Region]) -> Region:
    boxes: list[Box] = []
    for r in rs:
        boxes.extend(r.boxes)
    return Region(boxes)


def region_intersection(a: Region, b: Region) -> Region:
    out: list[Box] = []
    for x in a.boxes:
        for y in b.boxes:
            out.extend(box_intersection(x, y).boxes)
    return Region(out)


def region_contains(outer: Region, inner: Region) -> bool:
    """True when every point of ``inner`` lies in ``outer``."""
    if not inner.boxes:
        return True
    if not outer.boxes:
        return False
    # fast path: each inner box sits inside a single outer box
    if all(
        any(all(o.min[i] <= b.min[i] and b.max[i] <= o.max[i] for i in range(3)) for o in outer.boxes)
        for b in inner.boxes
    ):
        return True
    cells = _Cells([outer, inner])
    return not np.any(cells.mask(inner) & ~cells.mask(outer))


def uncovered_box(outer: Region, inner: Region) -> Box | None:
    """A box of points of ``inner`` missing from ``outer``, or None if covered.

    The result is the closure of the lexicographically first uncovered cell,
    preferring cells of positive volume.
    """
    if region_contains(outer, inner):
        return None
    cells = _Cells([outer, inner])
    gap = cells.mask(inner) & ~cells.mask(outer)
    open_gap = np.argwhere(_Cells.open_cells(gap))
    if len(open_gap):
        return cells.cell_box(2 * open_gap[0])
    return cells.cell_box(np.argwhere(gap)[0])


def region_overlap_volume_positive(a: Region, b: Region) -> bool:
    """True when ``a`` and ``b`` share a box of positive volume (a collision)."""
    for x in a.boxes:
        for y in b.boxes:
            if all(
                max(x.min[i], y.min[i]) < min(x.max[i], y.max[i]) for i in range(3)
            ):
                return True
    return False


def regions_touch(a: Region, b: Region) -> bool:
    """True when ``a`` and ``b`` share at least one point."""
    return any(box_intersection(x, y) for x in a.boxes for y in b.boxes)


def rcc_relate(a: Region, b: Region) -> RccRelation:
    """Classify the pair into exactly one of the eight RCC relations.

    Containment is decided first, so a degenerate region lying inside another
    is ``Inside*`` rather than ``BoundaryContact``. Otherwise: no shared point
    is ``Disconnected``, shared points without shared volume is
    ``BoundaryContact``, shared volume is ``Overlapping``. A contained region
    is ``*Touching`` when it reaches the boundary of its container.
    """
    if not a.boxes or not b.boxes:
        raise EmptyRegionError("rcc_relate needs two non-empty regions")
    cells = _Cells([a, b])
    ma, mb = cells.mask(a), cells.mask(b)
    a_in_b = not np.any(ma & ~mb)
    b_in_a = not np.any(mb & ~ma)
    if a_in_b and b_in_a:
        return RccRelation.EQUAL
    if a_in_b:
        touching = np.any(ma & ~_interior(mb))
        return RccRelation.INSIDE_TOUCHING if touching else RccRelation.INSIDE_PROPER
    if b_in_a:
        touching = np.any(mb & ~_interior(ma))
        return RccRelation.CONTAINS_TOUCHING if touching else RccRelation.CONTAINS_PROPER
    both = ma & mb
    if not np.any(both):
        return RccRelation.DISCONNECTED
    if not np.any(_Cells.open_cells(both)):
        return RccRelation.BOUNDARY_CONTACT
    return RccRelation.OVERLAPPING


def region(*boxes: Sequence[Sequence[int]]) -> Region:
    """Shorthand: ``region([[0,0,0],[1,1,1]], ...)``."""
    return Region(Box(tuple(lo), tuple(hi)) for lo, hi in boxes)  # type: ignore[arg-type]
