"""Projection of an MVP model on a viewpoint (a set of object classes).

A viewpoint selects the event-to-event edges whose object belongs to one of
its classes. From that selection we derive a directly-follows graph over
activities, or a case notion that turns the database log into a classical
log whose cases may overlap.
"""

from __future__ import annotations

import hashlib
import json
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Any

from .discovery import E2EEdge, MvpModel, related_event_sequences
from .errors import DomainError
from .event_log import ClassicalEventLog

__all__ = [
    "Viewpoint",
    "Dfg",
    "CaseNotion",
    "viewpoint_edges",
    "project_dfg",
    "dfg_from_edges",
    "derive_case_notion",
    "project_log",
    "case_id",
    "dfg_to_dict",
    "dfg_from_dict",
    "dumps_dfg",
]


@dataclass(frozen=True)
class Viewpoint:
    classes: frozenset[str]

    def __init__(self, classes: Iterable[str]) -> None:
        classes = frozenset(classes)
        if not classes:
            raise DomainError("a viewpoint needs at least one class")
        object.__setattr__(self, "classes", classes)


@dataclass(frozen=True)
class Dfg:
    nodes: frozenset[str]
    edges: frozenset[tuple[str, str]]
    count: Mapping[tuple[str, str], int]


@dataclass(frozen=True)
class CaseNotion:
    cases: frozenset[frozenset[str]]

    def __post_init__(self) -> None:
        if any(not case for case in self.cases):
            raise ValueError("a case notion cannot contain an empty case")


def _check(model: MvpModel, view: Viewpoint) -> None:
    unknown = view.classes - model.log.classes
    if unknown:
        raise DomainError(
            f"unknown class(es) {', '.join(sorted(unknown))}; "
            f"known classes: {', '.join(sorted(model.log.classes)) or '(none)'}"
        )


def viewpoint_edges(model: MvpModel, view: Viewpoint) -> frozenset[E2EEdge]:
    """Event-to-event edges whose object has a class in the viewpoint."""
    _check(model, view)
    class_of = model.log.class_of
    return frozenset(edge for edge in model.e2e.edges if class_of[edge[2]] in view.classes)


def dfg_from_edges(edges: Iterable[E2EEdge], act_of: Mapping[str, str]) -> Dfg:
    """Count activity successions over a set of event-to-event edges."""
    count: dict[tuple[str, str], int] = defaultdict(int)
    for e1, e2, _ in edges:
        count[(act_of[e1], act_of[e2])] += 1
    nodes = frozenset(a for pair in count for a in pair)
    return Dfg(nodes=nodes, edges=frozenset(count), count=dict(count))


def project_dfg(model: MvpModel, view: Viewpoint) -> Dfg:
    return dfg_from_edges(viewpoint_edges(model, view), model.log.act_of)


def derive_case_notion(
    model: MvpModel, view: Viewpoint, *, transitive: bool = False
) -> CaseNotion:
    """Case notion induced by the viewpoint.

    Each in-scope object with at least one event seeds a case: the union of
    its events with those of every in-scope object sharing an event with it.
    Only direct neighbours are merged; ``transitive=True`` merges whole
    connected components instead. Identical cases collapse.
    """
    _check(model, view)
    log = model.log
    supports = {
        o: frozenset(seq)
        for o, seq in related_event_sequences(log).items()
        if seq and log.class_of[o] in view.classes
    }
    if transitive:
        return CaseNotion(_components(supports))

    holders: dict[str, list[str]] = defaultdict(list)
    for o, events in supports.items():
        for e in events:
            holders[e].append(o)
    cases = set()
    for o, events in supports.items():
        neighbours = {other for e in events for other in holders[e]}
        cases.add(frozenset().union(*(supports[n] for n in neighbours)))
    return CaseNotion(frozenset(cases))


def _components(supports: Mapping[str, frozenset[str]]) -> frozenset[frozenset[str]]:
    parent: dict[tuple[str, str], tuple[str, str]] = {}

    def find(x: tuple[str, str]) -> tuple[str, str]:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for o, events in supports.items():
        for e in events:
            a, b = find(("o", o)), find(("e", e))
            if a != b:
                parent[b] = a
    merged: dict[tuple[str, str], set[str]] = defaultdict(set)
    for o, events in supports.items():
        merged[find(("o", o))] |= events
    return frozenset(frozenset(events) for events in merged.values())


def case_id(events: Iterable[str]) -> str:
    """Stable identifier of a case, derived from its sorted event ids."""
    digest = hashlib.sha256("\x1f".join(sorted(events)).encode("utf-8")).hexdigest()
    return f"case-{digest[:16]}"


def project_log(model: MvpModel, view: Viewpoint, *, transitive: bool = False) -> ClassicalEventLog:
    """Classical log whose cases are the viewpoint's case notion."""
    log = model.log
    notion = derive_case_notion(model, view, transitive=transitive)
    case_ev = {case_id(case): case for case in notion.cases}
    return ClassicalEventLog(
        case_ids=frozenset(case_ev),
        events=log.events,
        activities=log.activities,
        act_of=log.act_of,
        attrs=log.attrs,
        case_ev=case_ev,
    )


def dfg_to_dict(dfg: Dfg) -> dict[str, Any]:
    return {
        "nodes": sorted(dfg.nodes),
        "edges": [
            {"source": a1, "target": a2, "count": dfg.count[(a1, a2)]}
            for a1, a2 in sorted(dfg.edges)
        ],
    }


def dfg_from_dict(doc: Mapping[str, Any]) -> Dfg:
    count = {(d["source"], d["target"]): d["count"] for d in doc["edges"]}
    return Dfg(nodes=frozenset(doc["nodes"]), edges=frozenset(count), count=count)


def dumps_dfg(dfg: Dfg) -> str:
    return json.dumps(dfg_to_dict(dfg), indent=1, ensure_ascii=False) + "\n"
