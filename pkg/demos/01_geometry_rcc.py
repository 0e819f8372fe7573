# %% [markdown]
# # Regions and qualitative relations
#
# Space is modelled with closed axis-aligned boxes in integer millimetres.
# A region is a finite union of boxes and compares by the points it covers,
# not by how it happens to be split into boxes.

# %%
from cybervirt.geometry import (
    Box,
    Region,
    rcc_relate,
    region,
    region_contains,
    region_intersection,
    region_overlap_volume_positive,
    region_union,
)

base = Region.of(Box.cube(0, 600))
halves = region([[0, 0, 0], [300, 600, 600]], [[300, 0, 0], [600, 600, 600]])
print("same point set:", base == halves, "| boxes:", len(base.boxes), "vs", len(halves.boxes))

# %% [markdown]
# Union and intersection stay within the box representation.

# %%
arm = region([[500, 200, 200], [900, 400, 400]])
print("union boxes:", region_union([base, arm]).boxes)
print("intersection:", region_intersection(base, arm))

# %% [markdown]
# Collision means overlap with positive volume. Two boxes sharing only a face
# touch but do not collide, which matters for a tool pressing on a workpiece.

# %%
tool = region([[600, 0, 0], [700, 600, 600]])
print("face contact collides?", region_overlap_volume_positive(base, tool))
print("relation:", rcc_relate(base, tool))

# %% [markdown]
# The eight relations, from disjoint to equal.

# %%
cases = {
    "far apart": (Region.of(Box.cube(0, 1)), Region.of(Box.cube(5, 6))),
    "sharing a corner": (Region.of(Box.cube(0, 1)), Region.of(Box.cube(1, 2))),
    "partial overlap": (Region.of(Box.cube(0, 2)), Region.of(Box.cube(1, 3))),
    "inside, touching": (Region.of(Box.cube(0, 2)), Region.of(Box.cube(0, 4))),
    "strictly inside": (Region.of(Box.cube(1, 2)), Region.of(Box.cube(0, 4))),
    "split copy": (Region.of(Box.cube(0, 600)), halves),
}
for name, (a, b) in cases.items():
    print(f"{name:18s} {rcc_relate(a, b).value:18s} converse {rcc_relate(b, a).value}")

# %% [markdown]
# Containment understands unions: a box straddling the seam of two halves is
# still covered, and the seam is interior to the union.

# %%
straddle = region([[200, 100, 100], [400, 500, 500]])
print("covered by halves:", region_contains(halves, straddle))
print("relation:", rcc_relate(straddle, halves))
