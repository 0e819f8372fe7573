"""Deterministic cyber-virtual co-simulation.

Physical components play back scripts, virtual components execute their BTs,
and replicas follow their source translated by a placement. Every tick, each
physical component's actuator events are sent to virtual components at other
sites and every virtual component's sensed region is sent to physical
components at other sites, over the declared links. Delivered sensor samples
are merged into the receiver's incoming sensor record (robot in the loop).

Randomness is stateless: the jitter and drop draw for the n-th message on a
link is a hash of (seed, link id, n), so adding a link or a component never
changes the draws of another link.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from enum import Enum
from types import MappingProxyType
from typing import Mapping, Sequence

from .btmodel import Trace, TraceRecord
from .geometry import EMPTY, Region, region_union
from .scenario import Component, ComponentKind, Link, Scenario, replicate  # noqa: F401


class MessageKind(Enum):
    ACTUATOR_EVENT = "ActuatorEvent"
    SENSOR_SAMPLE = "SensorSample"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Message:
    kind: MessageKind
    payload: str | Region
    send_tick: int
    sender: str
    receiver: str
    link: str
    seq: int
    delivery_tick: int | None  # None when dropped

    @property
    def dropped(self) -> bool:
        return self.delivery_tick is None


def draw(seed: int, link_id: str, seq: int) -> tuple[float, float]:
    """Two uniforms in [0, 1) for message ``seq`` on ``link_id``."""
    digest = hashlib.sha256(f"{seed}\x00{link_id}\x00{seq}".encode()).digest()
    a = int.from_bytes(digest[:8], "big") / 2**64
    b = int.from_bytes(digest[8:16], "big") / 2**64
    return a, b


def _delivery(link: Link, seed: int, send: int, seq: int) -> int | None:
    u_drop, u_jit = draw(seed, link.id, seq)
    if link.drop > 0 and u_drop < link.drop:
        return None
    return send + link.latency + int(u_jit * (link.jitter + 1))


def composed_sensor_stream(components: Sequence[Component], t: int) -> Region:
    """Union of what every component senses at ``t``."""
    return region_union(c.sensed(t) for c in components)


@dataclass(frozen=True)
class WorldState:
    tick: int
    components: tuple[Component, ...]
    links: Mapping[tuple[str, str], Link]
    seed: int
    traces: Mapping[str, tuple[TraceRecord, ...]]
    inbox: Mapping[str, Mapping[int, tuple[Message, ...]]]
    pending: tuple[Message, ...] = ()
    log: tuple[Message, ...] = ()
    link_seq: Mapping[str, int] = field(default_factory=dict)

    def observe(self) -> WorldState:
        """Record every component's own behavior at the current tick."""
        t = self.tick
        traces = dict(self.traces)
        for c in self.components:
            traces[c.id] = traces[c.id] + (TraceRecord(t, c.occupancy(t), c.sensed(t), c.events(t)),)
        return replace(self, traces=MappingProxyType(traces))


def _freeze(d: dict) -> Mapping:
    return MappingProxyType(d)


def initial_state(scenario: Scenario, seed: int | None = None) -> WorldState:
    scenario.validate()
    comps = tuple(sorted(scenario.all_components(), key=lambda c: c.id))
    return WorldState(
        tick=0,
        components=comps,
        links=_freeze({(l.src, l.dst): l for l in scenario.links}),
        seed=scenario.seed if seed is None else seed,
        traces=_freeze({c.id: () for c in comps}),
        inbox=_freeze({c.id: _freeze({}) for c in comps}),
        link_seq=_freeze({l.id: 0 for l in scenario.links}),
    )


def _outgoing(state: WorldState, t: int) -> list[tuple[MessageKind, str | Region, Component, Component, Link]]:
    out = []
    for src in state.components:
        for dst in state.components:
            if src.site == dst.site:
                continue
            link = state.links.get((src.site, dst.site))
            if link is None:
                continue
            if src.kind is ComponentKind.PHYSICAL and dst.kind is ComponentKind.VIRTUAL:
                for ev in sorted(src.events(t)):
                    out.append((MessageKind.ACTUATOR_EVENT, ev, src, dst, link))
            elif src.kind is ComponentKind.VIRTUAL and dst.kind is ComponentKind.PHYSICAL:
                sensed = src.sensed(t)
                if sensed:
                    out.append((MessageKind.SENSOR_SAMPLE, sensed, src, dst, link))
    return out


def step(state: WorldState, t: int) -> WorldState:
    """Advance the world from tick ``t`` to ``t + 1``.

    Observe behaviors at ``t``, send messages along links, then deliver every
    queued message due by ``t + 1`` into the receiver's inbox.
    """
    if t != state.tick:
        raise ValueError(f"state is at tick {state.tick}, asked to step {t}")
    state = state.observe()
    seq = dict(state.link_seq)
    pending = list(state.pending)
    log = list(state.log)
    for kind, payload, src, dst, link in _outgoing(state, t):
        n = seq[link.id]
        seq[link.id] = n + 1
        msg = Message(kind, payload, t, src.id, dst.id, link.id, n, _delivery(link, state.seed, t, n))
        log.append(msg)
        if not msg.dropped:
            pending.append(msg)
    inbox = {k: dict(v) for k, v in state.inbox.items()}
    keep = []
    for msg in pending:
        if msg.delivery_tick <= t + 1:
            box = inbox[msg.receiver]
            box[msg.delivery_tick] = box.get(msg.delivery_tick, ()) + (msg,)
        else:
            keep.append(msg)
    return replace(
        state,
        tick=t + 1,
        pending=tuple(keep),
        log=tuple(log),
        link_seq=_freeze(seq),
        inbox=_freeze({k: _freeze(v) for k, v in inbox.items()}),
    )


@dataclass(frozen=True)
class SimulationResult:
    scenario: str
    horizon: int
    seed: int
    tick_ms: int
    sites: Mapping[str, str]
    traces: Mapping[str, Trace]
    incoming: Mapping[str, Trace]
    messages: tuple[Message, ...]

    def trace(self, cid: str) -> Trace:
        return self.traces[cid]


def _incoming(state: WorldState, c: Component) -> Trace:
    records = []
    box = state.inbox[c.id]
    for rec in state.traces[c.id]:
        msgs = box.get(rec.tick, ())
        samples = [m.payload for m in msgs if m.kind is MessageKind.SENSOR_SAMPLE]
        events = frozenset(m.payload for m in msgs if m.kind is MessageKind.ACTUATOR_EVENT)
        records.append(TraceRecord(rec.tick, EMPTY, region_union([rec.sensed, *samples]), events))
    return Trace(c.id, tuple(records))


def run(scenario: Scenario, horizon: int | None = None, seed: int | None = None) -> SimulationResult:
    """Simulate ticks ``0..horizon``; deterministic in (scenario, horizon, seed).

    Messages still in flight at the horizon stay in the log with their
    scheduled delivery tick but reach no inbox.
    """
    h = scenario.horizon if horizon is None else horizon
    if h < 0:
        raise ValueError("horizon must be >= 0")
    state = initial_state(scenario, seed)
    for t in range(h):
        state = step(state, t)
    state = state.observe()
    return SimulationResult(
        scenario=scenario.name,
        horizon=h,
        seed=state.seed,
        tick_ms=scenario.tick_ms,
        sites=_freeze({c.id: c.site for c in state.components}),
        traces=_freeze({c.id: Trace(c.id, state.traces[c.id]) for c in state.components}),
        incoming=_freeze({c.id: _incoming(state, c) for c in state.components}),
        messages=state.log,
    )
