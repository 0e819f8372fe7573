# %% [markdown]
# # Behavioral types
#
# A behavioral type (BT) says, per tick and mode, which space a component may
# occupy, which space its sensors cover and which events it may emit. Clauses
# are guarded by a tick interval and a set of modes; a piecewise-constant
# schedule picks the mode at each tick.

# %%
from cybervirt.btmodel import (
    BehaviorType,
    Clause,
    Emits,
    ModeSchedule,
    Occupy,
    SensorCoverage,
    execute_bt,
    occupancy_at,
    sensor_coverage_at,
    translate_bt,
)
from cybervirt.geometry import region
from cybervirt.typecheck import IncompatibleParts, compatible, compose, conforms, refines

H = 20
ANY = frozenset({"idle", "stamping"})
STAMP = frozenset({"stamping"})

press = BehaviorType(
    "press",
    ANY,
    ModeSchedule(((0, "idle"), (4, "stamping"), (7, "idle"), (14, "stamping"), (17, "idle"))),
    (
        Clause(0, H, ANY, Occupy(region([[0, 0, 0], [400, 400, 1000]]))),
        Clause(0, H, STAMP, Occupy(region([[-300, 100, 600], [0, 300, 800]]))),
        Clause(0, H, ANY, SensorCoverage(region([[-400, 0, 0], [400, 400, 1200]]))),
        Clause(0, H, STAMP, Emits("stamp")),
    ),
)
for t in (3, 4, 7, 15):
    print(t, press.schedule.mode_at(t), occupancy_at(press, t).boxes)

# %% [markdown]
# Placing a BT in the world is a translation of its frame.

# %%
placed = translate_bt(press, (1500, 0, 0))
print(sensor_coverage_at(placed, 0))

# %% [markdown]
# Executing a BT yields a trace; a trace conforms to the BT it came from.

# %%
trace = execute_bt(press, H, "B")
print(len(trace), "records;", conforms(trace, press, H).explanation)

# %% [markdown]
# Refinement: a replacement must occupy no more space and must provide at
# least the same sensing and events. A slimmer arm with a wider sensor
# refines the original; the converse does not hold.

# %%
slim = BehaviorType(
    "press-v2",
    ANY,
    press.schedule,
    (
        Clause(0, H, ANY, Occupy(region([[0, 0, 0], [400, 400, 1000]]))),
        Clause(0, H, STAMP, Occupy(region([[-300, 150, 650], [0, 250, 750]]))),
        Clause(0, H, ANY, SensorCoverage(region([[-500, -100, 0], [500, 500, 1300]]))),
        Clause(0, H, STAMP, Emits("stamp")),
    ),
)
print("v2 refines v1:", refines(slim, press, H).passed)
v = refines(press, slim, H)
print("v1 refines v2:", v.passed, "->", v.explanation)

# %% [markdown]
# Compatibility: two BTs never occupy common space with positive volume. The
# witness is the earliest tick at which they do.

# %%
neighbour = BehaviorType.simple("neighbour", (Clause(0, H, frozenset({"run"}), Occupy(region([[-700, 0, 0], [-250, 400, 1000]]))),))
v = compatible(press, neighbour, H)
print(v.status, "at tick", v.witness.tick, v.witness.region)

# %% [markdown]
# Composition places parts into one assembly BT, rejecting parts that collide.

# %%
assembly = compose([(press, (0, 0, 0)), (press, (2000, 0, 0))], "twin-press")
print(assembly.schedule.mode_at(5), len(assembly.clauses), "clauses")
try:
    compose([(press, (0, 0, 0)), (neighbour, (0, 0, 0))], "bad")
except IncompatibleParts as e:
    print("rejected:", e)
