# %% [markdown]
# # Scenario files, scene traces and the command line
#
# Scenarios are YAML. Parsing reports errors with a line and a field path,
# and serialising then parsing gives back an equal scenario.

# %%
import io
import json
import tempfile
from pathlib import Path

from cybervirt.cli import main
from cybervirt.io import export_scene_trace, parse_scenario, serialize_scenario
from cybervirt.scenario import ScenarioError
from cybervirt.simulate import run

text = """\
scenario: two-cells
horizon: 3
sites: [L_A, L_V]
behaviors:
  - id: cell
    clauses:
      - {ticks: [0, 3], occupy: [[[0, 0, 0], [100, 100, 100]]]}
      - {ticks: [1, 2], sense: [[[0, 0, 0], [300, 100, 100]]]}
components:
  - {id: A, type: AType, site: L_A, behavior: cell}
  - {id: V, type: AType, site: L_V, behavior: cell, placement: [100, 0, 0]}
links:
  - {from: L_V, to: L_A, latency: 1}
"""
scene = parse_scenario(text)
print(serialize_scenario(scene))
print("round trip equal:", parse_scenario(serialize_scenario(scene)) == scene)

# %% [markdown]
# Errors carry their class, line and field.

# %%
try:
    parse_scenario(text.replace("site: L_V,", "site: L_X,"))
except ScenarioError as e:
    print(type(e).__name__, "|", e)

# %% [markdown]
# The scene trace is one JSON object per (tick, component), sorted, for
# external viewers.

# %%
buf = io.StringIO()
print(export_scene_trace(run(scene), buf), "records")
print(buf.getvalue().splitlines()[2])

# %% [markdown]
# The same operations from the command line. Exit code 0 means all checks
# passed, 1 means at least one failed and 2 means bad usage or input.

# %%
with tempfile.TemporaryDirectory() as d:
    p = Path(d) / "two.yaml"
    p.write_text(text)
    print("validate ->", main(["validate", str(p)]))
    print("check    ->", main(["check", str(p), "--cross-check", "--cell-size", "100"]))
    print("run      ->", main(["run", str(p), "--seed", "3", "--report-out", str(Path(d) / "r.json")]))
    report = json.loads((Path(d) / "r.json").read_text())
    print("report metadata:", report["metadata"])
    print("bad flag ->", main(["check", str(p), "--fast"]))
