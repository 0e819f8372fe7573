"""Spatial behavioral types, spatio-temporal checks and cyber-virtual co-simulation
for industrial-automation workcells."""

__version__ = "0.1.0"

from .geometry import (  # noqa: E402
    Box,
    RccRelation,
    Region,
    box_intersection,
    rcc_relate,
    region,
    region_contains,
    region_overlap_volume_positive,
    region_union,
)
from .btmodel import (  # noqa: E402
    BehaviorType,
    Clause,
    Emits,
    ModeSchedule,
    Occupy,
    SensorCoverage,
    Trace,
    TraceRecord,
    execute_bt,
    occupancy_at,
    sensor_coverage_at,
    translate_bt,
)
from .typecheck import (  # noqa: E402
    IncompatibleParts,
    Status,
    Verdict,
    compatible,
    compose,
    conforms,
    refines,
)
from .scenario import Component, Link, ReplicationDirective, Scenario, replicate  # noqa: E402
from .verify import (  # noqa: E402
    check_collision,
    check_collision_grid,
    check_replacement,
    check_sensor_coverage,
    check_tool_workpiece,
    encode_grid,
    solve_grid,
)
from .simulate import composed_sensor_stream, run, step  # noqa: E402
from .io import export_scene_trace, load_scenario, parse_scenario, serialize_scenario  # noqa: E402
