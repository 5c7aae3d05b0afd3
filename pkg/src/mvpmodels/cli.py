"""Command-line entry point: ``mvpmodels <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from . import bench as bench_mod
from .discovery import discover, load_model, save_model
from .errors import DomainError, MvpError
from .event_log import export_classical_csv, export_csv, load_csv
from .generator import GeneratorParams, generate
from .projection import Viewpoint, dumps_dfg, project_dfg, project_log
from .render import RenderOptions, render_dfg, render_e2e, render_e2o, render_mvp

PROG = "mvpmodels"
GRAPHS = ("mvp", "e2o", "e2e", "dfg")


def cmd_discover(input: str | Path, output: str | Path) -> None:
    save_model(discover(load_csv(input)), output)


def cmd_project(
    model: str | Path,
    classes: Sequence[str],
    kind: str,
    output: str | Path,
    transitive: bool = False,
) -> None:
    mvp = load_model(model)
    view = Viewpoint(classes)
    if kind == "dfg":
        text = dumps_dfg(project_dfg(mvp, view))
        Path(output).write_text(text, encoding="utf-8")
    elif kind == "log":
        export_classical_csv(project_log(mvp, view, transitive=transitive), output)
    else:
        raise DomainError(f"unknown projection kind {kind!r}; use dfg or log")


def cmd_generate(params: GeneratorParams, output: str | Path) -> None:
    export_csv(generate(params), output)


def cmd_render(
    model: str | Path,
    graph: str,
    opts: RenderOptions | None = None,
    output: str | Path | None = None,
    classes: Sequence[str] | None = None,
    events: Sequence[str] | None = None,
) -> Path:
    """Write the DOT text of one graph; returns the path written.

    Without ``output`` the file goes next to the model as
    ``<stem>.<graph>.dot``.
    """
    mvp = load_model(model)
    if graph == "mvp":
        text = render_mvp(mvp, opts)
    elif graph == "e2o":
        text = render_e2o(mvp.e2o)
    elif graph == "e2e":
        text = render_e2e(mvp.e2e, events)
    elif graph == "dfg":
        view = Viewpoint(classes if classes else mvp.log.classes)
        text = render_dfg(project_dfg(mvp, view))
    else:
        raise DomainError(f"unknown graph {graph!r}; choose one of {', '.join(GRAPHS)}")
    path = Path(output) if output else Path(model).with_name(f"{Path(model).stem}.{graph}.dot")
    path.write_text(text, encoding="utf-8")
    return path


def cmd_bench(
    sweep: str,
    points: Sequence[int] | None,
    fixed: GeneratorParams | None,
    output: str | Path | None,
    repeats: int = 3,
) -> bench_mod.BenchReport:
    report = bench_mod.BenchReport([bench_mod.run_sweep(sweep, points, fixed, repeats)])
    if output:
        Path(output).write_text(json.dumps(report.to_dict(), indent=1) + "\n", encoding="utf-8")
    return report


def _csv_list(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(item) for item in _csv_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_generator_flags(parser: argparse.ArgumentParser, required: bool) -> None:
    for flag in ("--n-events", "--n-activities", "--n-classes", "--n-objects-per-class"):
        parser.add_argument(flag, type=int, required=required)
    parser.add_argument("--seed", type=int, default=None if not required else 0)
    parser.add_argument("--links-per-event", type=int, default=None if not required else 2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Discover and project multiple-viewpoint process models.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discover", help="discover an MVP model from a CSV database log")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)

    p = sub.add_parser("project", help="project a stored model on a viewpoint")
    p.add_argument("--model", required=True)
    p.add_argument("--classes", type=_csv_list, required=True)
    p.add_argument("--kind", choices=("dfg", "log"), default="dfg")
    p.add_argument("--transitive", action="store_true", help="merge connected objects into one case (log only)")
    p.add_argument("--output", required=True)

    p = sub.add_parser("generate", help="generate a synthetic database log")
    _add_generator_flags(p, required=True)
    p.add_argument("--output", required=True)

    p = sub.add_parser("render", help="write a Graphviz DOT file for one graph of a model")
    p.add_argument("--model", required=True)
    p.add_argument("--graph", choices=GRAPHS, default="mvp")
    p.add_argument("--decoration", choices=("frequency", "performance"), default="frequency")
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument("--show-isolated", action="store_true")
    p.add_argument("--palette-seed", type=int, default=0)
    p.add_argument("--classes", type=_csv_list, help="viewpoint for --graph dfg (default: all classes)")
    p.add_argument("--events", type=_csv_list, help="event subset for --graph e2e")
    p.add_argument("--output")

    p = sub.add_parser("bench", help="time discovery while sweeping one generator parameter")
    p.add_argument("--sweep", choices=tuple(bench_mod.SWEEP_FIELDS), required=True)
    p.add_argument("--points", type=_int_list)
    p.add_argument("--repeats", type=int, default=3)
    _add_generator_flags(p, required=False)
    p.add_argument("--output")
    return parser


def _bench_fixed(args: argparse.Namespace) -> GeneratorParams:
    fixed = bench_mod.DEFAULT_FIXED[args.sweep]
    overrides = {
        name: getattr(args, name)
        for name in ("n_events", "n_activities", "n_classes", "n_objects_per_class", "seed", "links_per_event")
        if getattr(args, name) is not None
    }
    return GeneratorParams(**{**fixed.__dict__, **overrides})


def _run(args: argparse.Namespace) -> None:
    if args.command == "discover":
        cmd_discover(args.input, args.output)
    elif args.command == "project":
        cmd_project(args.model, args.classes, args.kind, args.output, args.transitive)
    elif args.command == "generate":
        params = GeneratorParams(
            n_events=args.n_events,
            n_activities=args.n_activities,
            n_classes=args.n_classes,
            n_objects_per_class=args.n_objects_per_class,
            seed=args.seed,
            links_per_event=args.links_per_event,
        )
        cmd_generate(params, args.output)
    elif args.command == "render":
        opts = RenderOptions(args.decoration, args.threshold, args.show_isolated, args.palette_seed)
        path = cmd_render(args.model, args.graph, opts, args.output, args.classes, args.events)
        print(path)
    elif args.command == "bench":
        report = cmd_bench(args.sweep, args.points, _bench_fixed(args), args.output, args.repeats)
        for sweep in report.sweeps:
            for value, seconds in sweep.points:
                print(f"{sweep.parameter}={value}\t{seconds:.4f}s")
            print(
                f"doubling ratio {sweep.fit['doubling_ratio']:.2f} "
                f"(expected about {sweep.fit['expected_ratio']:.0f})"
            )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _run(args)
    except (MvpError, OSError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
