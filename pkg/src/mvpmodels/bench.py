"""Wall-clock scaling sweeps of MVP discovery on generated logs.

Each sweep varies one generator parameter while the others stay fixed,
times :func:`discover` (best of ``repeats`` runs, log generation excluded)
and summarises the growth as a doubling ratio: the factor by which the time
grows when the swept parameter doubles. Linear growth gives about 2,
quadratic growth about 4.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field, replace
from typing import Any

from .discovery import discover
from .errors import DomainError
from .generator import GeneratorParams, generate

__all__ = [
    "SWEEP_FIELDS",
    "DEFAULT_FIXED",
    "DEFAULT_POINTS",
    "EXPECTED_RATIO",
    "Sweep",
    "BenchReport",
    "validate_sweep",
    "run_sweep",
    "run_bench",
    "doubling_ratio",
]

SWEEP_FIELDS = {
    "events": "n_events",
    "activities": "n_activities",
    "classes": "n_classes",
    "objects": "n_objects_per_class",
}

# Desk-scale grids; all four sweeps together finish within a couple of minutes.
DEFAULT_FIXED = {
    "events": GeneratorParams(n_events=25_000, n_activities=40, n_classes=10, n_objects_per_class=1500),
    "activities": GeneratorParams(n_events=25_000, n_activities=40, n_classes=10, n_objects_per_class=250),
    "classes": GeneratorParams(n_events=2500, n_activities=40, n_classes=10, n_objects_per_class=1500),
    "objects": GeneratorParams(n_events=25_000, n_activities=40, n_classes=10, n_objects_per_class=250),
}
DEFAULT_POINTS = {
    "events": (25_000, 50_000, 100_000),
    "activities": (20, 40, 80),
    "classes": (5, 10, 20),
    "objects": (250, 500, 1000),
}
EXPECTED_RATIO = {"events": 2.0, "activities": 4.0, "classes": 2.0, "objects": 2.0}

MAX_EVENTS = 2_000_000
MAX_OBJECTS = 2_000_000
MAX_ACTIVITIES = 100_000
MAX_LINKS = 16


@dataclass
class Sweep:
    name: str
    parameter: str
    points: list[tuple[int, float]]
    fixed: dict[str, int]
    fit: dict[str, Any] = field(default_factory=dict)


@dataclass
class BenchReport:
    sweeps: list[Sweep]

    def to_dict(self) -> dict[str, Any]:
        return {"sweeps": [asdict(s) for s in self.sweeps]}


def validate_sweep(sweep: str, points: Sequence[int], fixed: GeneratorParams) -> list[GeneratorParams]:
    """Check a sweep before any timing and return the parameters of each point."""
    if sweep not in SWEEP_FIELDS:
        raise DomainError(f"unknown sweep {sweep!r}; choose one of {', '.join(SWEEP_FIELDS)}")
    points = list(points)
    if len(points) < 3:
        raise DomainError(f"a sweep needs at least 3 points, got {len(points)}")
    if any(b <= a for a, b in zip(points, points[1:])):
        raise DomainError("sweep points must be strictly increasing")
    grid = [replace(fixed, **{SWEEP_FIELDS[sweep]: value}) for value in points]
    for p in grid:
        if p.n_events > MAX_EVENTS:
            raise DomainError(f"n_events={p.n_events} exceeds the desk-scale limit {MAX_EVENTS}")
        if p.n_classes * p.n_objects_per_class > MAX_OBJECTS:
            raise DomainError(f"{p.n_classes * p.n_objects_per_class} objects exceed the limit {MAX_OBJECTS}")
        if p.n_activities > MAX_ACTIVITIES:
            raise DomainError(f"n_activities={p.n_activities} exceeds the limit {MAX_ACTIVITIES}")
        if p.links_per_event > MAX_LINKS:
            raise DomainError(f"links_per_event={p.links_per_event} exceeds the limit {MAX_LINKS}")
    return grid


def doubling_ratio(points: Sequence[tuple[float, float]]) -> float:
    """Growth factor per doubling, from a least-squares fit in log-log space."""
    xs = [math.log2(x) for x, _ in points]
    ys = [math.log2(t) for _, t in points]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    return 2.0**slope


def _fit(name: str, points: Sequence[tuple[int, float]]) -> dict[str, Any]:
    pairwise = [
        (t2 / t1) ** (1 / math.log2(x2 / x1)) for (x1, t1), (x2, t2) in zip(points, points[1:])
    ]
    return {
        "doubling_ratio": doubling_ratio(points),
        "pairwise_ratios": pairwise,
        "expected_ratio": EXPECTED_RATIO[name],
        "seconds_per_unit": [t / x for x, t in points],
    }


def time_discovery(params: GeneratorParams, repeats: int = 3, timer: Callable[[], float] = time.perf_counter) -> float:
    log = generate(params)
    best = math.inf
    for _ in range(repeats):
        start = timer()
        discover(log)
        best = min(best, timer() - start)
    return max(best, 1e-9)


def run_sweep(
    sweep: str,
    points: Sequence[int] | None = None,
    fixed: GeneratorParams | None = None,
    repeats: int = 3,
) -> Sweep:
    points = list(points if points is not None else DEFAULT_POINTS.get(sweep, ()))
    fixed = fixed or DEFAULT_FIXED.get(sweep)
    if fixed is None:
        raise DomainError(f"unknown sweep {sweep!r}; choose one of {', '.join(SWEEP_FIELDS)}")
    if repeats < 1:
        raise DomainError("repeats must be at least 1")
    grid = validate_sweep(sweep, points, fixed)
    timings = [(value, time_discovery(p, repeats)) for value, p in zip(points, grid)]
    fixed_fields = {k: v for k, v in asdict(fixed).items() if k != SWEEP_FIELDS[sweep]}
    return Sweep(
        name=sweep,
        parameter=SWEEP_FIELDS[sweep],
        points=timings,
        fixed=fixed_fields,
        fit=_fit(sweep, timings),
    )


def run_bench(sweeps: Sequence[str] = tuple(SWEEP_FIELDS), repeats: int = 3) -> BenchReport:
    return BenchReport([run_sweep(name, repeats=repeats) for name in sweeps])
