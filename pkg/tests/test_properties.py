from __future__ import annotations

import random
from collections import Counter

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import parse_dot, random_log
from mvpmodels.discovery import discover, filter_edges, loads_model, dumps_model, related_event_sequences
from mvpmodels.projection import Viewpoint, derive_case_notion, project_dfg, viewpoint_edges
from mvpmodels.render import RenderOptions, render_mvp

seeds = st.integers(min_value=0, max_value=2**32 - 1)
thresholds = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)


def model_for(seed):
    return discover(random_log(random.Random(seed)))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_dependency_antisymmetry(seed):
    m = model_for(seed)
    for (a1, a2, c), value in m.dep.items():
        assert -1.0 <= value <= 1.0
        back = m.dep.get((a2, a1, c))
        if a1 != a2 and back is not None:
            assert value == -back


@settings(max_examples=60, deadline=None)
@given(seeds, thresholds, thresholds)
def test_threshold_monotonicity(seed, d1, d2):
    lo, hi = sorted((d1, d2))
    m = model_for(seed)
    assert filter_edges(m, hi) <= filter_edges(m, lo)
    assert filter_edges(m, -1.0) == m.a2a.edges


@settings(max_examples=60, deadline=None)
@given(seeds, st.data())
def test_viewpoint_monotonicity(seed, data):
    m = model_for(seed)
    classes = sorted(m.log.classes)
    big = set(data.draw(st.lists(st.sampled_from(classes), min_size=1, unique=True)))
    small = set(data.draw(st.lists(st.sampled_from(sorted(big)), min_size=1, unique=True)))
    assert viewpoint_edges(m, Viewpoint(small)) <= viewpoint_edges(m, Viewpoint(big))
    small_dfg, big_dfg = project_dfg(m, Viewpoint(small)), project_dfg(m, Viewpoint(big))
    assert all(n <= big_dfg.count[pair] for pair, n in small_dfg.count.items())


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_durations_nonnegative_and_means_consistent(seed):
    m = model_for(seed)
    assert all(d >= 0 for d in m.e2e.perf.values())
    for edge, members in m.a2a.ae.items():
        assert m.a2a.count[edge] == len(members)
        expected = sum(m.e2e.perf[x] for x in members) / len(members)
        assert abs(m.a2a.perf[edge] - expected) <= 1e-9 * max(1.0, expected)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_conservation(seed):
    m = model_for(seed)
    seqs = related_event_sequences(m.log)
    assert len(m.e2e.edges) == sum(max(len(s) - 1, 0) for s in seqs.values())
    assert sum(m.a2a.count.values()) == len(m.e2e.edges)
    for c in m.log.classes:
        dfg = project_dfg(m, Viewpoint({c}))
        per_class = Counter({(a1, a2): n for (a1, a2, k), n in m.a2a.count.items() if k == c})
        assert Counter(dfg.count) == per_class


@settings(max_examples=60, deadline=None)
@given(seeds, thresholds, st.sampled_from(["frequency", "performance"]))
def test_render_parse_back(seed, d, decoration):
    m = model_for(seed)
    nodes, edges = parse_dot(render_mvp(m, RenderOptions(decoration=decoration, threshold=d)))
    drawn = Counter(
        (nodes[a]["label"], nodes[b]["label"], attrs["label"].rsplit(" (", 1)[0])
        for a, b, attrs in edges
        if a.startswith("a") and b.startswith("a")
    )
    assert set(drawn) == filter_edges(m, d)
    assert all(n == 1 for n in drawn.values())


@settings(max_examples=60, deadline=None)
@given(seeds, st.booleans())
def test_case_coverage(seed, transitive):
    m = model_for(seed)
    view = set(m.log.classes)
    cases = derive_case_notion(m, Viewpoint(view), transitive=transitive).cases
    supports = {}
    for e, o in m.log.eo:
        supports.setdefault(o, set()).add(e)
    for o, members in supports.items():
        assert any(members <= case for case in cases)
    linked = set().union(*supports.values()) if supports else set()
    assert set().union(*cases) == linked if cases else not linked


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_dump_round_trip(seed):
    m = model_for(seed)
    text = dumps_model(m)
    assert loads_model(text) == m
    assert dumps_model(loads_model(text)) == text
