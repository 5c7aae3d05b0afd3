"""Database and classical event logs, plus their tabular (CSV) encodings.

The database log file repeats an event on one row per related object, with
the object id written in the column named after the object's class::

    event_id,event_activity,event_timestamp,supplier_order,supplier_order_line
    create_order15,create_order,2016-10-21 11:38:26,supplier_order15,
    make_order1027,make_order,2016-10-21 11:40:00,,
    make_order1027,make_order,2016-10-21 11:40:00,supplier_order15,

A blank cell or the literal ``NaN`` means "no link". Two extensions keep the
export lossless: timestamps carry a ``.fff`` millisecond suffix when the
milliseconds are nonzero, and a row with blank event fields declares an
object that no event references.
"""

from __future__ import annotations

import csv
import os
import re
from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from functools import cached_property
from typing import Any

from .errors import ConsistencyError, LogFormatError, TimestampError

__all__ = [
    "EVENT_ID",
    "EVENT_ACTIVITY",
    "EVENT_TIMESTAMP",
    "DatabaseEventLog",
    "ClassicalEventLog",
    "parse_timestamp",
    "format_timestamp",
    "load_csv",
    "export_csv",
    "export_classical_csv",
]

EVENT_ID = "event_id"
EVENT_ACTIVITY = "event_activity"
EVENT_TIMESTAMP = "event_timestamp"
RESERVED_COLUMNS = (EVENT_ID, EVENT_ACTIVITY, EVENT_TIMESTAMP)
BLANK_VALUES = frozenset({"", "NaN"})

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_TIMESTAMP_RE = re.compile(r"\d{4}-\d{2}-\d{2} \d{2}:\d{2}:\d{2}(\.\d{3})?")

PathLike = str | os.PathLike


def parse_timestamp(text: str) -> int:
    """Parse ``YYYY-MM-DD HH:MM:SS[.fff]`` (UTC) into epoch milliseconds."""
    if not _TIMESTAMP_RE.fullmatch(text):
        raise TimestampError(f"malformed timestamp {text!r}")
    try:
        moment = datetime.fromisoformat(text).replace(tzinfo=timezone.utc)
    except ValueError as exc:
        raise TimestampError(f"malformed timestamp {text!r}: {exc}") from None
    delta = moment - _EPOCH
    return (delta.days * 86_400 + delta.seconds) * 1000 + delta.microseconds // 1000


def format_timestamp(ms: int) -> str:
    moment = _EPOCH + timedelta(milliseconds=ms)
    text = moment.strftime("%Y-%m-%d %H:%M:%S")
    if ms % 1000:
        text += f".{ms % 1000:03d}"
    return text


@dataclass(frozen=True)
class DatabaseEventLog:
    """Events related to typed objects through a many-to-many relation.

    ``events`` is kept sorted by ``(time, event_id)``; position in the tuple
    is the total order on events. Instances are validated on construction
    and must not be mutated afterwards.
    """

    events: tuple[str, ...]
    objects: frozenset[str]
    classes: frozenset[str]
    activities: frozenset[str]
    class_of: Mapping[str, str]
    act_of: Mapping[str, str]
    attrs: Mapping[str, Mapping[str, Any]]
    eo: frozenset[tuple[str, str]]

    def __post_init__(self) -> None:
        events = self.events
        if len(set(events)) != len(events):
            raise ValueError("duplicate event ids")
        if set(self.act_of) != set(events) or set(self.attrs) != set(events):
            raise ValueError("act_of and attrs must be total on events")
        previous = None
        for e in events:
            t = self.attrs[e].get("time")
            if not isinstance(t, int):
                raise ValueError(f"event {e!r} has no integer 'time' attribute")
            if previous is not None and previous > (t, e):
                raise ValueError("events are not sorted by (time, event_id)")
            previous = (t, e)
        if set(self.class_of) != self.objects:
            raise ValueError("class_of must be total on objects")
        if not set(self.class_of.values()) <= self.classes:
            raise ValueError("object class outside the class set")
        if not set(self.act_of.values()) <= self.activities:
            raise ValueError("event activity outside the activity set")
        event_set = set(events)
        for e, o in self.eo:
            if e not in event_set or o not in self.objects:
                raise ValueError(f"eo pair {(e, o)!r} references an unknown event or object")

    @classmethod
    def create(
        cls,
        act_of: Mapping[str, str],
        times: Mapping[str, int],
        class_of: Mapping[str, str],
        eo: Iterable[tuple[str, str]],
        *,
        classes: Iterable[str] = (),
        activities: Iterable[str] = (),
        attrs: Mapping[str, Mapping[str, Any]] | None = None,
    ) -> DatabaseEventLog:
        """Build a log from plain mappings, sorting events into their total order.

        ``classes`` and ``activities`` add to the sets inferred from
        ``class_of`` and ``act_of``. Extra attributes in ``attrs`` are merged
        with the ``time`` taken from ``times``.
        """
        events = tuple(sorted(act_of, key=lambda e: (times[e], e)))
        merged = {}
        for e in events:
            extra = dict(attrs.get(e, {})) if attrs else {}
            extra["time"] = times[e]
            merged[e] = extra
        return cls(
            events=events,
            objects=frozenset(class_of),
            classes=frozenset(classes) | frozenset(class_of.values()),
            activities=frozenset(activities) | frozenset(act_of.values()),
            class_of=dict(class_of),
            act_of=dict(act_of),
            attrs=merged,
            eo=frozenset(eo),
        )

    def time(self, event: str) -> int:
        return self.attrs[event]["time"]

    def position(self) -> dict[str, int]:
        """Index of every event in the total order."""
        return {e: i for i, e in enumerate(self.events)}


@dataclass(frozen=True)
class ClassicalEventLog:
    """A log where each case identifier maps onto a nonempty set of events.

    Cases may share events. ``events`` keeps the database log's order.
    """

    case_ids: frozenset[str]
    events: tuple[str, ...]
    activities: frozenset[str]
    act_of: Mapping[str, str]
    attrs: Mapping[str, Mapping[str, Any]]
    case_ev: Mapping[str, frozenset[str]]

    def __post_init__(self) -> None:
        if set(self.case_ev) != self.case_ids:
            raise ValueError("case_ev must be defined exactly on case_ids")
        event_set = set(self.events)
        for case, members in self.case_ev.items():
            if not members:
                raise ValueError(f"case {case!r} is empty")
            if not members <= event_set:
                raise ValueError(f"case {case!r} references unknown events")

    @cached_property
    def _position(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.events)}

    def trace(self, case: str) -> list[str]:
        """Events of ``case`` in log order."""
        return sorted(self.case_ev[case], key=self._position.__getitem__)


def load_csv(path: PathLike) -> DatabaseEventLog:
    """Read a database event log from its one-row-per-link CSV layout."""
    with open(path, newline="", encoding="utf-8") as fh:
        return _parse_rows(csv.reader(fh), path)


def _parse_rows(rows, path: PathLike) -> DatabaseEventLog:
    header = next(rows, None)
    if header is None:
        raise LogFormatError(f"{path}: missing header row")
    header = [name.strip() for name in header]
    missing = [name for name in RESERVED_COLUMNS if name not in header]
    if missing:
        raise LogFormatError(f"{path}: header lacks column(s) {', '.join(missing)}")
    if len(set(header)) != len(header):
        raise LogFormatError(f"{path}: duplicate column names in header")

    id_col, act_col, ts_col = (header.index(name) for name in RESERVED_COLUMNS)
    class_cols = [(i, name) for i, name in enumerate(header) if name not in RESERVED_COLUMNS]

    act_of: dict[str, str] = {}
    times: dict[str, int] = {}
    class_of: dict[str, str] = {}
    eo: set[tuple[str, str]] = set()
    parsed: dict[str, int] = {}

    for line_no, row in enumerate(rows, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise LogFormatError(f"row {line_no}: expected {len(header)} cells, got {len(row)}")
        cells = [cell.strip() for cell in row]
        links = [(name, cells[i]) for i, name in class_cols if cells[i] not in BLANK_VALUES]
        if len(links) > 1:
            raise LogFormatError(f"row {line_no}: more than one non-blank class cell")

        for cls, obj in links:
            known = class_of.setdefault(obj, cls)
            if known != cls:
                raise ConsistencyError(
                    f"row {line_no}: object {obj!r} appears under classes {known!r} and {cls!r}"
                )

        event, activity, stamp = cells[id_col], cells[act_col], cells[ts_col]
        if not event:
            if activity or stamp or not links:
                raise LogFormatError(f"row {line_no}: blank event_id outside an object declaration")
            continue
        if not activity or not stamp:
            raise LogFormatError(f"row {line_no}: event {event!r} lacks activity or timestamp")

        ms = parsed.get(stamp)
        if ms is None:
            try:
                ms = parse_timestamp(stamp)
            except TimestampError as exc:
                raise TimestampError(f"row {line_no}: {exc}") from None
            parsed[stamp] = ms

        if event in act_of:
            if act_of[event] != activity or times[event] != ms:
                raise ConsistencyError(
                    f"row {line_no}: event {event!r} repeated with a different activity or timestamp"
                )
        else:
            act_of[event] = activity
            times[event] = ms
        for _, obj in links:
            eo.add((event, obj))

    return DatabaseEventLog.create(
        act_of, times, class_of, eo, classes=(name for _, name in class_cols)
    )


def export_csv(log: DatabaseEventLog, path: PathLike) -> None:
    """Write ``log`` in the layout read by :func:`load_csv`.

    Only the ``time`` attribute is persisted.
    """
    classes = sorted(log.classes)
    column = {cls: i for i, cls in enumerate(classes, start=3)}
    width = 3 + len(classes)

    linked: dict[str, list[str]] = defaultdict(list)
    for e, o in log.eo:
        linked[e].append(o)

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([EVENT_ID, EVENT_ACTIVITY, EVENT_TIMESTAMP, *classes])
        for e in log.events:
            head = [e, log.act_of[e], format_timestamp(log.time(e))]
            objs = sorted(linked.get(e, ()))
            if not objs:
                writer.writerow(head + [""] * len(classes))
            for o in objs:
                row = head + [""] * len(classes)
                row[column[log.class_of[o]]] = o
                writer.writerow(row)
        referenced = {o for _, o in log.eo}
        for o in sorted(log.objects - referenced):
            row = [""] * width
            row[column[log.class_of[o]]] = o
            writer.writerow(row)


def export_classical_csv(log: ClassicalEventLog, path: PathLike) -> None:
    """One ``case_id,activity,timestamp`` row per (case, event) membership.

    Cases are written in identifier order, events within a case in log
    order; an event shared by several cases is repeated for each.
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["case_id", "activity", "timestamp"])
        for case in sorted(log.case_ids):
            for e in log.trace(case):
                writer.writerow([case, log.act_of[e], format_timestamp(log.attrs[e]["time"])])
