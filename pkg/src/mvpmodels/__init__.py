"""Multiple-viewpoint (MVP) process models discovered from database event logs."""

from .discovery import (
    A2AGraph,
    E2EGraph,
    E2OGraph,
    MvpModel,
    build_a2a,
    build_e2e,
    build_e2o,
    dependency,
    discover,
    filter_edges,
    load_model,
    related_events,
    save_model,
    start_end_activities,
)
from .errors import ConsistencyError, DomainError, LogFormatError, MvpError, TimestampError
from .event_log import ClassicalEventLog, DatabaseEventLog, export_classical_csv, export_csv, load_csv
from .generator import GeneratorParams, generate
from .projection import CaseNotion, Dfg, Viewpoint, derive_case_notion, project_dfg, project_log, viewpoint_edges
from .render import RenderOptions, render_dfg, render_e2e, render_e2o, render_mvp

__version__ = "0.1.0"
