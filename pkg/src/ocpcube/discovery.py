"""Model discovery over an OCEL: flattening, OC-DFGs, simplified OC Petri
nets, and side-by-side model comparison.

The OC-DFG carries per-object-type activity frequencies and edge stats
(frequency plus duration aggregates of consecutive-step timestamp deltas).
The Petri net is synthesized from the DFG: per type, a unique source place
feeds the start activities, one internal place per DFG edge, end activities
feed a unique sink; subnets share transitions by activity name, and arcs
are flagged variable where the activity's events carry a non-constant
number of objects of the type.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from datetime import datetime
from typing import Mapping

from .ocel import OCEL

__all__ = [
    "TypedTrace",
    "EdgeStats",
    "TypeGraph",
    "OCDFG",
    "Arc",
    "Subnet",
    "OCPN",
    "ActivityDiff",
    "EdgeDiff",
    "ModelDiff",
    "UnknownObjectType",
    "flatten",
    "discover_ocdfg",
    "discover_ocpn",
    "compare_models",
    "ocdfg_to_json",
    "ocdfg_to_dot",
    "ocpn_to_json",
    "ocpn_to_dot",
    "diff_to_json",
]


class UnknownObjectType(Exception):
    pass


@dataclass(frozen=True)
class TypedTrace:
    """The ordered event steps of one object of one type."""

    object: str
    otype: str
    steps: tuple[tuple[str, str, datetime], ...]  # (event id, activity, timestamp)


@dataclass(frozen=True)
class EdgeStats:
    """Frequency and duration aggregates (seconds) of one DFG edge."""

    frequency: int
    mean: float
    median: float
    min: float
    max: float


@dataclass(frozen=True)
class TypeGraph:
    """Directly-follows graph of a single object type."""

    nodes: Mapping[str, int]  # activity -> distinct-event frequency
    node_incidence: Mapping[str, int]  # activity -> object-step incidence
    edges: Mapping[tuple[str, str], EdgeStats]
    starts: Mapping[str, int]
    ends: Mapping[str, int]
    trace_count: int


@dataclass(frozen=True)
class OCDFG:
    graphs: Mapping[str, TypeGraph]  # object type -> graph


@dataclass(frozen=True)
class Arc:
    source: str
    target: str
    variable: bool


@dataclass(frozen=True)
class Subnet:
    """Workflow net of one object type inside an OC Petri net."""

    otype: str
    source: str
    sink: str
    places: tuple[str, ...]
    transitions: tuple[str, ...]
    arcs: tuple[Arc, ...]


@dataclass(frozen=True)
class OCPN:
    transitions: frozenset[str]
    subnets: Mapping[str, Subnet]


def flatten(log: OCEL, otype: str) -> list[TypedTrace]:
    """One trace per object of the type appearing in at least one event."""
    if otype not in log.object_types:
        raise UnknownObjectType(f"object type {otype!r} not in log")
    steps: dict[str, list[tuple[str, str, datetime]]] = {}
    for event in log.events:
        for oid in event.omap:
            obj = log.objects.get(oid)
            if obj is not None and obj.otype == otype:
                steps.setdefault(oid, []).append(
                    (event.id, event.activity, event.timestamp)
                )
    return [
        TypedTrace(object=oid, otype=otype, steps=tuple(steps[oid]))
        for oid in sorted(steps)
    ]


def _edge_stats(durations: list[float]) -> EdgeStats:
    return EdgeStats(
        frequency=len(durations),
        mean=statistics.fmean(durations),
        median=statistics.median(durations),
        min=min(durations),
        max=max(durations),
    )


def discover_ocdfg(log: OCEL) -> OCDFG:
    """Per-type directly-follows graphs with frequency and performance."""
    graphs: dict[str, TypeGraph] = {}
    for otype in sorted(log.object_types):
        traces = flatten(log, otype)
        durations: dict[tuple[str, str], list[float]] = {}
        incidence: dict[str, int] = {}
        starts: dict[str, int] = {}
        ends: dict[str, int] = {}
        node_events: dict[str, set[str]] = {}
        for trace in traces:
            for eid, activity, _ in trace.steps:
                incidence[activity] = incidence.get(activity, 0) + 1
                node_events.setdefault(activity, set()).add(eid)
            first, last = trace.steps[0][1], trace.steps[-1][1]
            starts[first] = starts.get(first, 0) + 1
            ends[last] = ends.get(last, 0) + 1
            for (_, act_a, ts_a), (_, act_b, ts_b) in zip(trace.steps, trace.steps[1:]):
                durations.setdefault((act_a, act_b), []).append(
                    (ts_b - ts_a).total_seconds()
                )
        graphs[otype] = TypeGraph(
            nodes={a: len(eids) for a, eids in sorted(node_events.items())},
            node_incidence=dict(sorted(incidence.items())),
            edges={edge: _edge_stats(d) for edge, d in sorted(durations.items())},
            starts=dict(sorted(starts.items())),
            ends=dict(sorted(ends.items())),
            trace_count=len(traces),
        )
    return OCDFG(graphs=graphs)


def _variable_activities(log: OCEL, otype: str, activities: set[str]) -> set[str]:
    """Activities whose events carry a non-constant (!=1) count of objects
    of the type."""
    counts: dict[str, set[int]] = {a: set() for a in activities}
    for event in log.events:
        if event.activity not in counts:
            continue
        n = sum(
            1
            for oid in event.omap
            if oid in log.objects and log.objects[oid].otype == otype
        )
        counts[event.activity].add(n)
    return {a for a, seen in counts.items() if any(n != 1 for n in seen)}


def discover_ocpn(log: OCEL) -> OCPN:
    """Synthesize a workflow net per type from its DFG and merge on shared
    transition names."""
    dfg = discover_ocdfg(log)
    subnets: dict[str, Subnet] = {}
    transitions: set[str] = set()
    for otype, graph in dfg.graphs.items():
        activities = set(graph.nodes)
        if not activities:
            continue
        transitions |= activities
        variable = _variable_activities(log, otype, activities)
        source = f"{otype}:source"
        sink = f"{otype}:sink"
        places = [source]
        arcs: list[Arc] = []
        for activity in sorted(graph.starts):
            arcs.append(Arc(source, activity, activity in variable))
        for (act_a, act_b) in sorted(graph.edges):
            place = f"{otype}:({act_a})->({act_b})"
            places.append(place)
            arcs.append(Arc(act_a, place, act_a in variable))
            arcs.append(Arc(place, act_b, act_b in variable))
        for activity in sorted(graph.ends):
            arcs.append(Arc(activity, sink, activity in variable))
        places.append(sink)
        # A start/end self-edge can duplicate arcs; keep first occurrence.
        deduped: list[Arc] = []
        seen: set[tuple[str, str]] = set()
        for arc in arcs:
            if (arc.source, arc.target) not in seen:
                seen.add((arc.source, arc.target))
                deduped.append(arc)
        subnets[otype] = Subnet(
            otype=otype,
            source=source,
            sink=sink,
            places=tuple(places),
            transitions=tuple(sorted(activities)),
            arcs=tuple(deduped),
        )
    return OCPN(transitions=frozenset(transitions), subnets=subnets)


@dataclass(frozen=True)
class ActivityDiff:
    activity: str
    otype: str
    freq_left: int | None  # None = absent on that side
    freq_right: int | None
    presence: str  # "left-only" | "right-only" | "both"


@dataclass(frozen=True)
class EdgeDiff:
    edge: tuple[str, str]
    otype: str
    freq_left: int | None
    freq_right: int | None
    mean_dur_left: float | None
    mean_dur_right: float | None
    presence: str


@dataclass(frozen=True)
class ModelDiff:
    activities: tuple[ActivityDiff, ...]
    edges: tuple[EdgeDiff, ...]


def _presence(left: bool, right: bool) -> str:
    if left and right:
        return "both"
    return "left-only" if left else "right-only"


def compare_models(left: OCDFG, right: OCDFG) -> ModelDiff:
    """Union diff of two OC-DFGs, deterministically ordered."""
    activities: list[ActivityDiff] = []
    edges: list[EdgeDiff] = []
    for otype in sorted(set(left.graphs) | set(right.graphs)):
        lg = left.graphs.get(otype)
        rg = right.graphs.get(otype)
        lnodes = lg.nodes if lg else {}
        rnodes = rg.nodes if rg else {}
        for activity in sorted(set(lnodes) | set(rnodes)):
            activities.append(
                ActivityDiff(
                    activity=activity,
                    otype=otype,
                    freq_left=lnodes.get(activity),
                    freq_right=rnodes.get(activity),
                    presence=_presence(activity in lnodes, activity in rnodes),
                )
            )
        ledges = lg.edges if lg else {}
        redges = rg.edges if rg else {}
        for edge in sorted(set(ledges) | set(redges)):
            ls, rs = ledges.get(edge), redges.get(edge)
            edges.append(
                EdgeDiff(
                    edge=edge,
                    otype=otype,
                    freq_left=ls.frequency if ls else None,
                    freq_right=rs.frequency if rs else None,
                    mean_dur_left=ls.mean if ls else None,
                    mean_dur_right=rs.mean if rs else None,
                    presence=_presence(ls is not None, rs is not None),
                )
            )
    return ModelDiff(activities=tuple(activities), edges=tuple(edges))


# ---------------------------------------------------------------------------
# Serialization

_PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
]


def _type_colors(types) -> dict[str, str]:
    return {t: _PALETTE[i % len(_PALETTE)] for i, t in enumerate(sorted(types))}


def ocdfg_to_json(model: OCDFG, min_frequency: int = 0) -> dict:
    """JSON shape: per type, node/edge lists with stats."""
    out: dict = {"object_types": sorted(model.graphs), "graphs": {}}
    for otype, graph in sorted(model.graphs.items()):
        out["graphs"][otype] = {
            "nodes": [
                {
                    "activity": a,
                    "frequency": f,
                    "incidence": graph.node_incidence.get(a, 0),
                }
                for a, f in sorted(graph.nodes.items())
                if f >= min_frequency
            ],
            "edges": [
                {
                    "source": a,
                    "target": b,
                    "frequency": s.frequency,
                    "duration": {
                        "mean": s.mean,
                        "median": s.median,
                        "min": s.min,
                        "max": s.max,
                    },
                }
                for (a, b), s in sorted(graph.edges.items())
                if s.frequency >= min_frequency
            ],
            "starts": dict(sorted(graph.starts.items())),
            "ends": dict(sorted(graph.ends.items())),
            "trace_count": graph.trace_count,
        }
    return out


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def ocdfg_to_dot(model: OCDFG, min_frequency: int = 0) -> str:
    """Deterministic DOT rendering; one node per activity, per-type edges."""
    colors = _type_colors(model.graphs)
    lines = ["digraph ocdfg {", "  rankdir=LR;", '  node [shape=box, style=rounded];']
    activities: dict[str, dict[str, int]] = {}
    for otype, graph in sorted(model.graphs.items()):
        for activity, freq in sorted(graph.nodes.items()):
            if freq >= min_frequency:
                activities.setdefault(activity, {})[otype] = freq
    for activity in sorted(activities):
        per_type = ", ".join(
            f"{t}={n}" for t, n in sorted(activities[activity].items())
        )
        label = _dot_escape(f"{activity}\n{per_type}")
        lines.append(f'  "{_dot_escape(activity)}" [label="{label}"];')
    for otype, graph in sorted(model.graphs.items()):
        color = colors[otype]
        for (a, b), stats in sorted(graph.edges.items()):
            if stats.frequency < min_frequency:
                continue
            label = _dot_escape(f"{stats.frequency} ({stats.mean:.1f}s)")
            lines.append(
                f'  "{_dot_escape(a)}" -> "{_dot_escape(b)}"'
                f' [color="{color}", label="{label}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def ocpn_to_json(model: OCPN) -> dict:
    return {
        "transitions": sorted(model.transitions),
        "subnets": {
            otype: {
                "source": net.source,
                "sink": net.sink,
                "places": list(net.places),
                "transitions": list(net.transitions),
                "arcs": [
                    {"source": a.source, "target": a.target, "variable": a.variable}
                    for a in net.arcs
                ],
            }
            for otype, net in sorted(model.subnets.items())
        },
    }


def ocpn_to_dot(model: OCPN) -> str:
    colors = _type_colors(model.subnets)
    lines = ["digraph ocpn {", "  rankdir=LR;"]
    for transition in sorted(model.transitions):
        lines.append(
            f'  "{_dot_escape(transition)}" [shape=box];'
        )
    for otype, net in sorted(model.subnets.items()):
        color = colors[otype]
        for place in net.places:
            lines.append(
                f'  "{_dot_escape(place)}" [shape=circle, color="{color}", label=""];'
            )
        for arc in net.arcs:
            style = "dashed" if arc.variable else "solid"
            lines.append(
                f'  "{_dot_escape(arc.source)}" -> "{_dot_escape(arc.target)}"'
                f' [color="{color}", style={style}];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def diff_to_json(diff: ModelDiff) -> dict:
    return {
        "activities": [
            {
                "activity": d.activity,
                "object_type": d.otype,
                "freq_left": d.freq_left,
                "freq_right": d.freq_right,
                "presence": d.presence,
            }
            for d in diff.activities
        ],
        "edges": [
            {
                "source": d.edge[0],
                "target": d.edge[1],
                "object_type": d.otype,
                "freq_left": d.freq_left,
                "freq_right": d.freq_right,
                "mean_dur_left": d.mean_dur_left,
                "mean_dur_right": d.mean_dur_right,
                "presence": d.presence,
            }
            for d in diff.edges
        ],
    }
