"""Graphviz (DOT) text for the graphs of an MVP model.

To turn the output into an image, save it as ``model.dot`` and run::

    $ dot -Tsvg model.dot > model.svg

Node identifiers are synthetic (``a0``, ``s0``, ``e0`` ...) and the real
names live in the ``label`` attribute, so arbitrary activity, event or
object names never clash with DOT syntax or with each other.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .discovery import E2EGraph, E2OGraph, MvpModel, check_threshold, filter_edges
from .errors import DomainError
from .projection import Dfg

__all__ = [
    "PALETTE",
    "RenderOptions",
    "class_colors",
    "format_duration",
    "render_mvp",
    "render_e2o",
    "render_e2e",
    "render_dfg",
]

PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
    "#393b79",
    "#ad494a",
)

DECORATIONS = ("frequency", "performance")


@dataclass(frozen=True)
class RenderOptions:
    decoration: str = "frequency"
    threshold: float = 0.0
    show_isolated: bool = False
    palette_seed: int = 0

    def __post_init__(self) -> None:
        if self.decoration not in DECORATIONS:
            raise DomainError(f"decoration must be one of {', '.join(DECORATIONS)}")
        check_threshold(self.threshold)


def _q(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _attrs(**attrs: object) -> str:
    return "[" + ", ".join(f"{k}={_q(v)}" for k, v in attrs.items()) + "]"


def class_colors(classes: Iterable[str], palette_seed: int = 0) -> dict[str, str]:
    """Palette color per class, cycling through ``PALETTE`` in sorted class order."""
    return {
        c: PALETTE[(i + palette_seed) % len(PALETTE)] for i, c in enumerate(sorted(classes))
    }


def format_duration(ms: float) -> str:
    seconds = ms / 1000
    for limit, scale, unit in ((60, 1, "s"), (3600, 60, "min"), (86_400, 3600, "h")):
        if seconds < limit:
            return f"{round(seconds / scale, 1):g}{unit}"
    return f"{round(seconds / 86_400, 1):g}d"


def render_mvp(model: MvpModel, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    kept = sorted(filter_edges(model, opts.threshold))
    colors = class_colors(model.log.classes, opts.palette_seed)
    scaffolded = [c for c in sorted(model.log.classes) if model.start_acts.get(c)]

    activities = {a for a1, a2, _ in kept for a in (a1, a2)}
    for c in scaffolded:
        activities |= model.start_acts[c] | model.end_acts[c]
    if opts.show_isolated:
        activities |= model.log.activities
    node_id = {a: f"a{i}" for i, a in enumerate(sorted(activities))}

    lines = ["digraph mvp {", "  rankdir=LR;"]
    append = lines.append
    if node_id:
        append('  node [shape=box, style="rounded,filled", fillcolor="#ffffff", fontname="Helvetica"];')
    for a, nid in node_id.items():
        append(f"  {nid} {_attrs(label=a)};")

    class_index = {c: i for i, c in enumerate(sorted(model.log.classes))}
    for c in scaffolded:
        i, color = class_index[c], colors[c]
        append(f"  s{i} {_attrs(label='', shape='circle', fillcolor=color, tooltip=f'start {c}')};")
        append(f"  t{i} {_attrs(label='', shape='doublecircle', fillcolor=color, tooltip=f'end {c}')};")
        for a in sorted(model.start_acts[c]):
            append(f"  s{i} -> {node_id[a]} {_attrs(color=color, style='dashed')};")
        for a in sorted(model.end_acts[c]):
            append(f"  {node_id[a]} -> t{i} {_attrs(color=color, style='dashed')};")

    for edge in kept:
        a1, a2, c = edge
        if opts.decoration == "frequency":
            label = f"{c} ({model.a2a.count[edge]})"
            extra = {"tooltip": f"dep={model.dep[edge]:.3f}"}
        else:
            perf = model.a2a.perf[edge]
            label = f"{c} ({format_duration(perf)})"
            extra = {"tooltip": f"{perf!r} ms"}
        append(
            f"  {node_id[a1]} -> {node_id[a2]} "
            f"{_attrs(label=label, color=colors[c], fontcolor=colors[c], **extra)};"
        )
    append("}")
    return "\n".join(lines) + "\n"


def render_e2o(e2o: E2OGraph) -> str:
    """Bipartite drawing: events are red boxes, objects white ellipses."""
    event_id = {e: f"e{i}" for i, e in enumerate(sorted(e2o.events))}
    object_id = {o: f"o{i}" for i, o in enumerate(sorted(e2o.objects))}

    lines = ["graph e2o {", "  rankdir=LR;"]
    for e, nid in event_id.items():
        lines.append(f"  {nid} {_attrs(label=e, shape='box', style='filled', fillcolor='#e53935')};")
    for o, nid in object_id.items():
        lines.append(f"  {nid} {_attrs(label=o, shape='ellipse', style='filled', fillcolor='#ffffff')};")
    for e, o in sorted(e2o.edges):
        lines.append(f"  {event_id[e]} -- {object_id[o]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_e2e(e2e: E2EGraph, events: Iterable[str] | None = None) -> str:
    """Event-to-event edges labelled with their object.

    ``events`` restricts the drawing to a subset of events and to the edges
    between them.
    """
    if events is None:
        shown = set(e2e.nodes)
    else:
        shown = set(events)
        unknown = shown - e2e.nodes
        if unknown:
            raise DomainError(f"unknown event(s): {', '.join(sorted(unknown))}")
    node_id = {e: f"n{i}" for i, e in enumerate(sorted(shown))}

    lines = ["digraph e2e {", "  rankdir=LR;"]
    for e, nid in node_id.items():
        lines.append(f"  {nid} {_attrs(label=e, shape='box')};")
    for edge in sorted(e2e.edges):
        e1, e2, o = edge
        if e1 in shown and e2 in shown:
            lines.append(
                f"  {node_id[e1]} -> {node_id[e2]} "
                f"{_attrs(label=o, tooltip=format_duration(e2e.perf[edge]))};"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_dfg(dfg: Dfg) -> str:
    node_id = {a: f"a{i}" for i, a in enumerate(sorted(dfg.nodes))}
    lines = ["digraph dfg {", "  rankdir=LR;"]
    for a, nid in node_id.items():
        lines.append(f"  {nid} {_attrs(label=a, shape='box')};")
    for a1, a2 in sorted(dfg.edges):
        lines.append(f"  {node_id[a1]} -> {node_id[a2]} {_attrs(label=dfg.count[(a1, a2)])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
