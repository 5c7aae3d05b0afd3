"""Discovery of multiple-viewpoint models from a database event log.

A model bundles four layers built on top of each other:

* the event-to-object graph, which is the log's event/object relation as is;
* the event-to-event multigraph, one edge per pair of events that follow
  each other directly in the life of some object, weighted by the elapsed
  time;
* the activity-to-activity multigraph, which groups event-to-event edges by
  (source activity, target activity, object class) and keeps the group size
  and mean duration;
* per-class start/end activities and a signed dependency value per
  activity-to-activity edge, used to thin the drawing.

The log already keeps its events in order, so every layer comes out of a
few linear passes over the event/object relation; no pair of events is ever
compared directly.
"""

from __future__ import annotations

import json
import math
import os
from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from .errors import DomainError, LogFormatError, UnknownObjectError
from .event_log import DatabaseEventLog

__all__ = [
    "E2OGraph",
    "E2EGraph",
    "A2AGraph",
    "MvpModel",
    "related_events",
    "related_event_sequences",
    "build_e2o",
    "build_e2e",
    "build_a2a",
    "start_end_activities",
    "dependency",
    "discover",
    "filter_edges",
    "model_to_dict",
    "model_from_dict",
    "dumps_model",
    "loads_model",
    "save_model",
    "load_model",
]

E2EEdge = tuple[str, str, str]
A2AEdge = tuple[str, str, str]


@dataclass(frozen=True)
class E2OGraph:
    """Bipartite graph between events and objects; edges are ``(event, object)``."""

    events: frozenset[str]
    objects: frozenset[str]
    edges: frozenset[tuple[str, str]]

    @property
    def nodes(self) -> frozenset[str]:
        return self.events | self.objects


@dataclass(frozen=True)
class E2EGraph:
    """Directly-follows edges ``(e1, e2, object)`` between events.

    ``perf`` maps each edge to its duration in milliseconds.
    """

    nodes: frozenset[str]
    edges: frozenset[E2EEdge]
    perf: Mapping[E2EEdge, int]


@dataclass(frozen=True)
class A2AGraph:
    """Activity-level multigraph keyed by ``(a1, a2, class)``.

    ``ae`` keeps, for every edge, the event-to-event edges it aggregates.
    """

    nodes: frozenset[str]
    edges: frozenset[A2AEdge]
    count: Mapping[A2AEdge, int]
    perf: Mapping[A2AEdge, float]
    ae: Mapping[A2AEdge, frozenset[E2EEdge]]


@dataclass(frozen=True)
class MvpModel:
    log: DatabaseEventLog
    e2o: E2OGraph
    e2e: E2EGraph
    a2a: A2AGraph
    start_acts: Mapping[str, frozenset[str]]
    end_acts: Mapping[str, frozenset[str]]
    dep: Mapping[A2AEdge, float]


def related_event_sequences(log: DatabaseEventLog) -> dict[str, list[str]]:
    """Map every object to its related events in log order.

    Objects without events map to an empty list.
    """
    linked: dict[str, list[str]] = defaultdict(list)
    for e, o in log.eo:
        linked[e].append(o)
    sequences: dict[str, list[str]] = {o: [] for o in log.objects}
    for e in log.events:
        for o in linked.get(e, ()):
            sequences[o].append(e)
    return sequences


def related_events(log: DatabaseEventLog, obj: str) -> list[str]:
    """Events linked to ``obj``, sorted by the log's total order."""
    if obj not in log.objects:
        raise UnknownObjectError(f"unknown object {obj!r}")
    position = log.position()
    return sorted((e for e, o in log.eo if o == obj), key=position.__getitem__)


def build_e2o(log: DatabaseEventLog) -> E2OGraph:
    return E2OGraph(events=frozenset(log.events), objects=log.objects, edges=log.eo)


def _e2e_from_sequences(log: DatabaseEventLog, sequences: Mapping[str, list[str]]) -> E2EGraph:
    time = log.attrs
    perf: dict[E2EEdge, int] = {}
    for o, seq in sequences.items():
        for prev, cur in zip(seq, seq[1:]):
            perf[(prev, cur, o)] = time[cur]["time"] - time[prev]["time"]
    return E2EGraph(nodes=frozenset(log.events), edges=frozenset(perf), perf=perf)


def build_e2e(log: DatabaseEventLog) -> E2EGraph:
    return _e2e_from_sequences(log, related_event_sequences(log))


def build_a2a(e2e: E2EGraph, log: DatabaseEventLog) -> A2AGraph:
    """Group event-to-event edges by activity pair and object class."""
    act, cls = log.act_of, log.class_of
    groups: dict[A2AEdge, list[E2EEdge]] = defaultdict(list)
    totals: dict[A2AEdge, int] = defaultdict(int)
    for edge, duration in e2e.perf.items():
        e1, e2, o = edge
        key = (act[e1], act[e2], cls[o])
        groups[key].append(edge)
        totals[key] += duration

    count = {key: len(members) for key, members in groups.items()}
    perf = {key: totals[key] / count[key] for key in groups}
    ae = {key: frozenset(members) for key, members in groups.items()}
    return A2AGraph(
        nodes=log.activities,
        edges=frozenset(groups),
        count=count,
        perf=perf,
        ae=ae,
    )


def _start_end_from_sequences(
    log: DatabaseEventLog, sequences: Mapping[str, list[str]]
) -> tuple[dict[str, frozenset[str]], dict[str, frozenset[str]]]:
    start: dict[str, set[str]] = {c: set() for c in log.classes}
    end: dict[str, set[str]] = {c: set() for c in log.classes}
    for o, seq in sequences.items():
        if seq:
            c = log.class_of[o]
            start[c].add(log.act_of[seq[0]])
            end[c].add(log.act_of[seq[-1]])
    return (
        {c: frozenset(acts) for c, acts in start.items()},
        {c: frozenset(acts) for c, acts in end.items()},
    )


def start_end_activities(
    log: DatabaseEventLog,
) -> tuple[dict[str, frozenset[str]], dict[str, frozenset[str]]]:
    """Start and end activities of every class.

    Each class in the log gets an entry; classes whose objects have no
    events get empty sets.
    """
    return _start_end_from_sequences(log, related_event_sequences(log))


def dependency(a2a: A2AGraph) -> dict[A2AEdge, float]:
    """Signed dependency value in (-1, 1) for every activity-to-activity edge."""
    count = a2a.count
    dep = {}
    for edge in a2a.edges:
        a1, a2, c = edge
        forward = count[edge]
        backward = count.get((a2, a1, c))
        if a1 == a2 or backward is None:
            dep[edge] = forward / (forward + 1)
        else:
            dep[edge] = (forward - backward) / (forward + backward + 1)
    return dep


def discover(log: DatabaseEventLog) -> MvpModel:
    sequences = related_event_sequences(log)
    e2e = _e2e_from_sequences(log, sequences)
    a2a = build_a2a(e2e, log)
    start, end = _start_end_from_sequences(log, sequences)
    return MvpModel(
        log=log,
        e2o=build_e2o(log),
        e2e=e2e,
        a2a=a2a,
        start_acts=start,
        end_acts=end,
        dep=dependency(a2a),
    )


def check_threshold(d: float) -> float:
    if not isinstance(d, (int, float)) or math.isnan(d) or not -1.0 <= d <= 1.0:
        raise DomainError(f"dependency threshold must lie in [-1, 1], got {d!r}")
    return float(d)


def filter_edges(model: MvpModel, d: float) -> frozenset[A2AEdge]:
    """Activity-to-activity edges whose dependency value is at least ``d``."""
    check_threshold(d)
    return frozenset(edge for edge, value in model.dep.items() if value >= d)


# -- model dump -------------------------------------------------------------

FORMAT_NAME = "mvp-model"
FORMAT_VERSION = 1


def model_to_dict(model: MvpModel) -> dict[str, Any]:
    log = model.log
    position = log.position()
    objects = sorted(log.objects)
    e2o = sorted(model.e2o.edges, key=lambda pair: (position[pair[0]], pair[1]))
    e2e = sorted(
        model.e2e.edges, key=lambda edge: (position[edge[0]], position[edge[1]], edge[2])
    )
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "log": {
            "classes": sorted(log.classes),
            "activities": sorted(log.activities),
            "objects": [{"id": o, "class": log.class_of[o]} for o in objects],
            "events": [
                {
                    "id": e,
                    "activity": log.act_of[e],
                    "attrs": {k: log.attrs[e][k] for k in sorted(log.attrs[e])},
                }
                for e in log.events
            ],
        },
        "e2o": [[e, o] for e, o in e2o],
        "e2e": [
            {"source": e1, "target": e2, "object": o, "duration_ms": model.e2e.perf[(e1, e2, o)]}
            for e1, e2, o in e2e
        ],
        "a2a": [
            {
                "source": a1,
                "target": a2,
                "class": c,
                "count": model.a2a.count[(a1, a2, c)],
                "perf_ms": model.a2a.perf[(a1, a2, c)],
                "dep": model.dep[(a1, a2, c)],
            }
            for a1, a2, c in sorted(model.a2a.edges)
        ],
        "start_activities": {c: sorted(model.start_acts[c]) for c in sorted(model.start_acts)},
        "end_activities": {c: sorted(model.end_acts[c]) for c in sorted(model.end_acts)},
    }


def model_from_dict(doc: Mapping[str, Any]) -> MvpModel:
    """Rebuild a model from :func:`model_to_dict` output.

    Graph sections are read back as stored, not rediscovered; the grouping
    index of the activity graph is rebuilt from the event graph.
    """
    if doc.get("format") != FORMAT_NAME:
        raise LogFormatError("not an MVP model dump")
    if doc.get("version") != FORMAT_VERSION:
        raise LogFormatError(f"unsupported model dump version {doc.get('version')!r}")
    try:
        raw = doc["log"]
        events = tuple(ev["id"] for ev in raw["events"])
        log = DatabaseEventLog(
            events=events,
            objects=frozenset(ob["id"] for ob in raw["objects"]),
            classes=frozenset(raw["classes"]),
            activities=frozenset(raw["activities"]),
            class_of={ob["id"]: ob["class"] for ob in raw["objects"]},
            act_of={ev["id"]: ev["activity"] for ev in raw["events"]},
            attrs={ev["id"]: dict(ev["attrs"]) for ev in raw["events"]},
            eo=frozenset((e, o) for e, o in doc["e2o"]),
        )
        e2e_perf = {(d["source"], d["target"], d["object"]): d["duration_ms"] for d in doc["e2e"]}
        e2e = E2EGraph(nodes=frozenset(events), edges=frozenset(e2e_perf), perf=e2e_perf)
        grouped = build_a2a(e2e, log).ae
        edges = {(d["source"], d["target"], d["class"]): d for d in doc["a2a"]}
        if set(edges) != set(grouped):
            raise LogFormatError("a2a section disagrees with the e2e section")
        a2a = A2AGraph(
            nodes=log.activities,
            edges=frozenset(edges),
            count={k: d["count"] for k, d in edges.items()},
            perf={k: float(d["perf_ms"]) for k, d in edges.items()},
            ae=grouped,
        )
        return MvpModel(
            log=log,
            e2o=build_e2o(log),
            e2e=e2e,
            a2a=a2a,
            start_acts={c: frozenset(v) for c, v in doc["start_activities"].items()},
            end_acts={c: frozenset(v) for c, v in doc["end_activities"].items()},
            dep={k: float(d["dep"]) for k, d in edges.items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, LogFormatError):
            raise
        raise LogFormatError(f"malformed model dump: {exc}") from None


def dumps_model(model: MvpModel) -> str:
    return json.dumps(model_to_dict(model), indent=1, ensure_ascii=False) + "\n"


def loads_model(text: str) -> MvpModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LogFormatError(f"model dump is not valid JSON: {exc}") from None
    return model_from_dict(doc)


def save_model(model: MvpModel, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(model))


def load_model(path: str | os.PathLike) -> MvpModel:
    with open(path, encoding="utf-8") as fh:
        return loads_model(fh.read())
