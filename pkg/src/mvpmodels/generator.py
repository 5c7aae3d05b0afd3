"""Seeded generator of synthetic database event logs.

Events are spaced one second apart. Each event draws its activity uniformly,
then draws ``links_per_event`` objects by picking a class uniformly and an
object of that class uniformly. Repeated draws of the same object collapse,
so an event may end up with fewer links. Every class gets exactly
``n_objects_per_class`` objects, whether or not an event references them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DomainError
from .event_log import DatabaseEventLog

__all__ = ["GeneratorParams", "generate", "BASE_TIME_MS"]

# 2019-01-01 00:00:00 UTC
BASE_TIME_MS = 1_546_300_800_000
SEED_LIMIT = 2**64


@dataclass(frozen=True)
class GeneratorParams:
    n_events: int
    n_activities: int
    n_classes: int
    n_objects_per_class: int
    seed: int = 0
    links_per_event: int = 2

    def __post_init__(self) -> None:
        for name in ("n_events", "n_activities", "n_classes", "n_objects_per_class", "links_per_event"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise DomainError(f"{name} must be a positive integer, got {value!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or not 0 <= self.seed < SEED_LIMIT:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")


def _names(prefix: str, n: int) -> list[str]:
    width = len(str(n - 1))
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


def generate(params: GeneratorParams) -> DatabaseEventLog:
    rng = random.Random(params.seed)
    activities = _names("act", params.n_activities)
    classes = _names("class", params.n_classes)
    objects = {c: _names(f"{c}_obj", params.n_objects_per_class) for c in classes}

    act_of: dict[str, str] = {}
    times: dict[str, int] = {}
    eo: set[tuple[str, str]] = set()
    n_act, n_cls, n_obj = params.n_activities, params.n_classes, params.n_objects_per_class
    for i, e in enumerate(_names("e", params.n_events)):
        act_of[e] = activities[rng.randrange(n_act)]
        times[e] = BASE_TIME_MS + 1000 * i
        for _ in range(params.links_per_event):
            cls = classes[rng.randrange(n_cls)]
            eo.add((e, objects[cls][rng.randrange(n_obj)]))

    class_of = {o: c for c, names in objects.items() for o in names}
    return DatabaseEventLog.create(act_of, times, class_of, eo, classes=classes)
