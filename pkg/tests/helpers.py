"""Independent oracles and builders shared by the test modules.

The oracles follow the textbook definitions with brute-force loops and never
call into the package's discovery code.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from pathlib import Path

from mvpmodels.event_log import DatabaseEventLog

DATA = Path(__file__).parent / "data"
ERP_FRAGMENT = DATA / "erp_fragment.csv"


def random_log(rng: random.Random, max_events: int = 50, max_classes: int = 5) -> DatabaseEventLog:
    """Small random log with timestamp ties, unlinked events and unlinked objects."""
    n_events = rng.randint(0, max_events)
    n_classes = rng.randint(1, max_classes)
    n_acts = rng.randint(1, 6)
    classes = [f"c{i}" for i in range(n_classes)]
    class_of = {}
    for c in classes:
        for j in range(rng.randint(1, 6)):
            class_of[f"{c}o{j}"] = c
    objects = sorted(class_of)
    ids = [f"ev{k:03d}" for k in range(n_events)]
    rng.shuffle(ids)
    act_of, times, eo = {}, {}, set()
    for e in ids:
        act_of[e] = f"A{rng.randrange(n_acts)}"
        times[e] = 1_000 * rng.randint(0, 3 * max(n_events, 1))
        for _ in range(rng.randint(0, 3)):
            eo.add((e, rng.choice(objects)))
    return DatabaseEventLog.create(act_of, times, class_of, eo, classes=classes)


def precedes(log: DatabaseEventLog, e1: str, e2: str) -> bool:
    """Strict total order: earlier timestamp, then smaller id."""
    return (log.time(e1), e1) < (log.time(e2), e2)


def brute_e2e(log: DatabaseEventLog) -> dict[tuple[str, str, str], int]:
    """(e1, e2, o) is an edge iff both link o, e1 < e2, and no linked e3 lies between."""
    edges = {}
    for o in log.objects:
        linked = [e for e in log.events if (e, o) in log.eo]
        for e1 in linked:
            for e2 in linked:
                if not precedes(log, e1, e2):
                    continue
                if any(precedes(log, e1, e3) and precedes(log, e3, e2) for e3 in linked):
                    continue
                edges[(e1, e2, o)] = log.time(e2) - log.time(e1)
    return edges


def naive_a2a(log: DatabaseEventLog, e2e: dict) -> tuple[dict, dict]:
    """Evaluate the grouping over every (a1, a2, class) triple; returns (count, mean)."""
    count, mean = {}, {}
    for a1 in log.activities:
        for a2 in log.activities:
            for c in log.classes:
                durations = [
                    d
                    for (e1, e2, o), d in e2e.items()
                    if log.act_of[e1] == a1 and log.act_of[e2] == a2 and log.class_of[o] == c
                ]
                if durations:
                    count[(a1, a2, c)] = len(durations)
                    mean[(a1, a2, c)] = Fraction(sum(durations), len(durations))
    return count, mean


def naive_dep(count: dict) -> dict:
    dep = {}
    for (a1, a2, c), n in count.items():
        back = count.get((a2, a1, c))
        if a1 == a2 or back is None:
            dep[(a1, a2, c)] = float(Fraction(n, n + 1))
        else:
            dep[(a1, a2, c)] = float(Fraction(n - back, n + back + 1))
    return dep


def naive_start_end(log: DatabaseEventLog) -> tuple[dict, dict]:
    start = {c: set() for c in log.classes}
    end = {c: set() for c in log.classes}
    for o in log.objects:
        linked = [e for e in log.events if (e, o) in log.eo]
        if not linked:
            continue
        first = min(linked, key=lambda e: (log.time(e), e))
        last = max(linked, key=lambda e: (log.time(e), e))
        start[log.class_of[o]].add(log.act_of[first])
        end[log.class_of[o]].add(log.act_of[last])
    return start, end


def naive_case_notion(log: DatabaseEventLog, classes: set[str]) -> set[frozenset[str]]:
    """One-hop union formula, evaluated with a double loop over in-scope objects."""
    scope = [o for o in log.objects if log.class_of[o] in classes]
    support = {o: {e for e, x in log.eo if x == o} for o in scope}
    cases = set()
    for o in scope:
        if not support[o]:
            continue
        union = set()
        for other in scope:
            if support[o] & support[other]:
                union |= support[other]
        cases.add(frozenset(union))
    return cases


# -- DOT parse-back ---------------------------------------------------------

_TOKEN = re.compile(r'"((?:[^"\\]|\\.)*)"|(->|--)|([A-Za-z_][A-Za-z0-9_]*)|(\[|\]|=|,|;|\{|\})')


def _unquote(text: str) -> str:
    return re.sub(r"\\(.)", lambda m: "\n" if m.group(1) == "n" else m.group(1), text)


def parse_dot(text: str) -> tuple[dict[str, dict[str, str]], list[tuple[str, str, dict[str, str]]]]:
    """Parse the flat DOT subset emitted by the renderer into (nodes, edges)."""
    nodes: dict[str, dict[str, str]] = {}
    edges: list[tuple[str, str, dict[str, str]]] = []
    body = text[text.index("{") + 1 : text.rindex("}")]
    for statement in body.strip().splitlines():
        statement = statement.strip()
        if not statement or "=" in statement.split("[")[0]:
            continue
        tokens = []
        for m in _TOKEN.finditer(statement):
            quoted, arrow, ident, punct = m.groups()
            tokens.append(("str", _unquote(quoted)) if quoted is not None else ("sym", arrow or ident or punct))
        attrs: dict[str, str] = {}
        if ("sym", "[") in tokens:
            at = tokens.index(("sym", "["))
            inner = [t for t in tokens[at + 1 :] if t[1] not in (",", "]", ";")]
            i = 0
            while i < len(inner):
                key, _, value = inner[i : i + 3]
                attrs[key[1]] = value[1]
                i += 3
            tokens = tokens[:at]
        names = [t[1] for t in tokens if t[1] not in (";",)]
        if names[0] in ("node", "edge", "graph"):
            continue
        if len(names) == 3 and names[1] in ("->", "--"):
            edges.append((names[0], names[2], attrs))
        else:
            nodes[names[0]] = attrs
    return nodes, edges
