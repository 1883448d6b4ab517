"""Command-line driver: ``sct FILE... [--depth D] [--bound B] ...``.

Exit status is 0 when every group of every file is proved terminating, 1 when
some group is not, and 2 on usage, parse, validation or analysis errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import build_cfg
from .approx import DEFAULT_BOUNDS, Bounds
from .engine import TERMINATING, check
from .errors import SctError
from .frontend import desugar, parse, validate
from .subst import render_subst

SCHEMA = "sct-report/1"
DEFAULT_GRID = tuple(Bounds(D, B) for D in range(4) for B in range(1, 4))


def load_program(source: str):
    """Parse, desugar and validate; raise SctError on any problem."""
    program = desugar(parse(source))
    problems = validate(program)
    if problems:
        raise SctError("\n".join(str(p) for p in problems))
    return program


def group_bounds(group, depth=None, bound=None) -> Bounds:
    """Flags override pragmas, which override the defaults."""
    D = depth if depth is not None else group.depth
    B = bound if bound is not None else group.bound
    return Bounds(DEFAULT_BOUNDS.D if D is None else D,
                  DEFAULT_BOUNDS.B if B is None else B)


def analyze(program, depth=None, bound=None, subsume=True):
    return [check(build_cfg(program, g), group_bounds(g, depth, bound), subsume)
            for g in program.groups]


def sweep(program, grid=DEFAULT_GRID):
    """Verdict of every group for every bounds in ``grid``.

    Returns ``{group name: {(D, B): verdict}}``.
    """
    table = {}
    for g in program.groups:
        cfg = build_cfg(program, g)
        table[g.name] = {(b.D, b.B): check(cfg, b).verdict for b in grid}
    return table


# rendering


def witness_record(w):
    if w is None:
        return None
    return {"param": w.param, "path": w.render(), "drop": w.drop}


def group_record(report, show_graph=False, show_paths=False):
    rec = {
        "name": report.name,
        "verdict": report.verdict,
        "bounds": {"depth": report.bounds.D, "bound": report.bounds.B},
        "arcs": len(report.graph.arcs),
        "loops": len(report.loops),
        "coherent_loops": [
            {"function": l.arc.source, "label": render_subst(l.arc.label),
             "witness": witness_record(l.witness)}
            for l in report.coherent],
    }
    if show_graph:
        rec["graph"] = [str(a) for a in report.cfg.arcs]
    if show_paths:
        rec["paths"] = [str(a) for a in report.graph.arcs]
    return rec


def render_text(path, reports, show_graph=False, show_paths=False):
    lines = [path]
    for r in reports:
        lines.append("  %s [%s]: %s (%d arcs, %d loops, %d coherent)"
                     % (r.name, r.bounds, r.verdict, len(r.graph.arcs),
                        len(r.loops), len(r.coherent)))
        if show_graph:
            lines.append("    control-flow graph:")
            lines.extend("      " + str(a) for a in r.cfg.arcs)
        if show_paths:
            lines.append("    graph of paths:")
            lines.extend("      " + str(a) for a in r.graph.arcs)
        for l in r.coherent:
            if l.witness is None:
                lines.append("    no decreasing parameter for %s" % l.arc)
            elif show_paths:
                lines.append("    %s: %s" % (l.arc, l.witness))
    return "\n".join(lines)


def render_sweep_text(path, table):
    lines = [path]
    for name, cells in table.items():
        depths = sorted({d for d, _ in cells})
        bounds = sorted({b for _, b in cells})
        lines.append("  %s" % name)
        header = "".join(("B=%d" % b).ljust(13) for b in bounds)
        lines.append(("    " + "D\\B".ljust(5) + header).rstrip())
        for d in depths:
            row = "".join(cells.get((d, b), "-").ljust(13) for b in bounds)
            lines.append(("    " + ("D=%d" % d).ljust(5) + row).rstrip())
    return "\n".join(lines)


def sweep_record(table):
    return [{"name": name,
             "sweep": [{"depth": d, "bound": b, "verdict": v}
                       for (d, b), v in sorted(cells.items())]}
            for name, cells in table.items()]


# entry point


def build_parser():
    ap = argparse.ArgumentParser(
        prog="sct",
        description="Size-change termination checker with constructor-aware "
                    "abstract call arguments.")
    ap.add_argument("files", nargs="*", metavar="FILE", help="source files to check")
    ap.add_argument("--depth", type=int, metavar="D",
                    help="depth bound D >= 0 (overrides pragmas; default 2)")
    ap.add_argument("--bound", type=int, metavar="B",
                    help="weight bound B >= 1 (overrides pragmas; default 1)")
    ap.add_argument("--show-graph", action="store_true",
                    help="print the control-flow graph of each group")
    ap.add_argument("--show-paths", action="store_true",
                    help="print the saturated graph of paths of each group")
    ap.add_argument("--sweep", action="store_true",
                    help="check every group over a grid of bounds "
                         "(D in 0..3, B in 1..3) and print a verdict table")
    ap.add_argument("--format", choices=("text", "json"), default="text",
                    help="report format")
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if not args.files:
        ap.print_usage(err)
        print("sct: error: no input files", file=err)
        return 2
    try:
        if args.depth is not None or args.bound is not None:
            Bounds(args.depth if args.depth is not None else 0,
                   args.bound if args.bound is not None else 1)
    except ValueError as exc:
        print("sct: error: %s" % exc, file=err)
        return 2

    status = 0
    records = []
    texts = []
    for path in args.files:
        try:
            with open(path, encoding="utf-8") as fh:
                program = load_program(fh.read())
            if args.sweep:
                table = sweep(program)
                records.append({"path": path, "groups": sweep_record(table)})
                texts.append(render_sweep_text(path, table))
                continue
            reports = analyze(program, args.depth, args.bound)
        except (OSError, SctError, ValueError) as exc:
            print("%s: error: %s" % (path, exc), file=err)
            return 2
        if any(r.verdict != TERMINATING for r in reports):
            status = 1
        records.append({"path": path,
                        "groups": [group_record(r, args.show_graph, args.show_paths)
                                   for r in reports]})
        texts.append(render_text(path, reports, args.show_graph, args.show_paths))

    if args.format == "json":
        json.dump({"schema": SCHEMA, "files": records}, out, indent=2)
        out.write("\n")
    else:
        out.write("\n".join(texts) + "\n")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
