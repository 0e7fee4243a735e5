"""
SkewBetti: entry point.

Subcommands:
  - ferrers {decompose,betti,pdreg}: skew Ferrers diagrams from (lambda, mu)
  - graph {betti,nu,blocks}: arbitrary simple graphs (Hochster oracle only)
  - closed: closed labeling, mu-vector, blocks and the extremal prediction,
            verified against the Betti table of in(J_G)
  - fuzz: seeded cross-check of every engine on random diagrams

Usage:
    python -m src.main ferrers decompose --lambda 7,6,6,5,4,3,2 --mu 4,4,2,2,2,1,0
    python -m src.main ferrers betti --lambda 2,2 --crosscheck --json
    python -m src.main graph betti --edges 1-2,2-3,3-4,4-5,5-6
    python -m src.main closed --edges 1-2,1-3,2-3,2-4,3-4
    python -m src.main fuzz --seed 1 --count 100 --max-rows 6 --max-cols 6

Structured output (--json) goes to stdout; logs and errors go to stderr.
Exit codes: 0 ok, 2 invalid input or refused work, 3 a check failed,
4 an internal consistency assertion failed.
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from src.betti import (
    corso_nagel_betti, extremal_betti_closed, hochster_betti, initial_ideal_betti,
    last_column_concentrated, nagel_reiner_betti, pd_reg_spherical,
    unique_extremal_corner,
)
from src.diagram import (
    ferrers_shape, new_skew_ferrers, parse_int_list, rectangular_decomposition,
    render_diagram,
)
from src.fuzz import PRESETS, run_fuzz
from src.graph import (
    analyze_closed, blocks, count_max_induced_matchings, cut_vertices,
    find_closed_labeling, graph_of_diagram, induced_matching_number,
    is_closed_labeling, parse_edges,
)
from src.homology import Field
from src.models.betti import BettiTable
from src.models.graph import format_vertex, vertex_to_json
from src.models.report import Computation, RunReport
from src.utils.config import Config
from src.utils.constants import (
    DEFAULT_MAX_VERTICES, EXIT_CHECK_FAILED, EXIT_OK, EXIT_STRUCTURAL, EXIT_VALIDATION,
)
from src.utils.errors import (
    CheckFailure, SizeLimitError, StructuralError, ValidationError,
)

logger = logging.getLogger(__name__)

FIELD_CHOICES = ["gf2", "rational", "both"]
METHOD_CHOICES = ["hochster", "nagel-reiner", "corso-nagel", "all"]


def setup_logging(verbose: bool = False):
    """Configure logging for the application."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%H:%M:%S",
    )


@dataclass
class RunOptions:
    """Settings shared by every subcommand (flags over config over defaults)."""
    field: str = "gf2"
    method: str = "all"
    crosscheck: bool = False
    threads: int = 1
    max_vertices: int = DEFAULT_MAX_VERTICES

    @property
    def fields(self) -> list[Field]:
        if self.field == "both":
            return [Field.GF2, Field.RATIONAL]
        return [Field(self.field)]


def _computation(method: str, field: str, table: BettiTable) -> Computation:
    return Computation(
        method=method,
        field=field,
        table=table,
        concentrated=last_column_concentrated(table),
        extremal=unique_extremal_corner(table),
    )


# =============================================================================
# ferrers
# =============================================================================

def cmd_ferrers(lam: tuple[int, ...], mu: tuple[int, ...], action: str,
                options: RunOptions) -> RunReport:
    """Decompose a skew Ferrers diagram or compute its Betti table / pd / reg."""
    report = RunReport(command=f"ferrers {action}",
                       inputs={"lambda": list(lam), "mu": list(mu)})
    diagram = new_skew_ferrers(lam, mu)
    decomposition = rectangular_decomposition(diagram)
    report.text.append(render_diagram(diagram))

    if diagram.is_empty:
        report.details = decomposition.to_dict()
        report.notes.append("diagram has no cells: rect 0, vacuously spherical (degenerate); "
                            "its edge ideal is zero")
        return report

    if action == "decompose":
        report.details = {"cells": diagram.num_cells, **decomposition.to_dict()}
        for k, piece in enumerate(decomposition.pieces, start=1):
            report.text.append(
                f"piece {k}: top (x{piece.top_cell[0]}, y{piece.top_cell[1]}), "
                f"X'={{{', '.join(f'x{r}' for r in piece.rows)}}}, "
                f"Y'={{{', '.join(f'y{c}' for c in piece.cols)}}}, {len(piece.cells)} cells"
            )
        for empty in decomposition.empties:
            report.text.append(f"empty {empty.kind.value} rectangle {empty}")
        report.text.append(f"rect = {decomposition.rect}, spherical = {decomposition.spherical}")
        return report

    graph = graph_of_diagram(diagram)
    lam_shape = ferrers_shape(diagram)

    if action == "pdreg":
        pd, reg = pd_reg_spherical(diagram)
        report.details = {"pd": pd, "reg": reg, "rect": decomposition.rect}
        report.text.append(f"pd = {pd}, reg = {reg}")
        if options.crosscheck:
            for field in options.fields:
                table = hochster_betti(graph, field, options.threads, options.max_vertices)
                report.computations.append(_computation("hochster", field.value, table))
                if (table.pd, table.reg) != (pd, reg):
                    report.ok = False
                    report.notes.append(f"oracle over {field.value} gives pd={table.pd}, "
                                        f"reg={table.reg}")
        return report

    methods = {options.method} if options.method != "all" else {"hochster", "nagel-reiner", "corso-nagel"}
    if options.crosscheck:
        methods |= {"hochster", "nagel-reiner"}
        if lam_shape is not None:
            methods.add("corso-nagel")

    if "hochster" in methods:
        for field in options.fields:
            table = hochster_betti(graph, field, options.threads, options.max_vertices)
            report.computations.append(_computation("hochster", field.value, table))
    if "nagel-reiner" in methods:
        report.computations.append(
            _computation("nagel-reiner", "n/a", nagel_reiner_betti(diagram)))
    if "corso-nagel" in methods:
        if lam_shape is None:
            if options.method == "corso-nagel":
                raise ValidationError("--method corso-nagel needs mu = 0 and no empty rows")
            report.notes.append("closed form skipped: skew shape")
        else:
            totals = corso_nagel_betti(diagram)
            report.details["closed_form"] = totals.to_dict()
            report.computations.append(_computation("corso-nagel", "n/a", totals.as_table()))

    report.details.update({"cells": diagram.num_cells, "rect": decomposition.rect,
                           "spherical": decomposition.spherical})
    report.compute_agreement()
    if report.agreement is False:
        report.ok = False
    return report


# =============================================================================
# graph
# =============================================================================

def cmd_graph(edges: str, action: str, options: RunOptions) -> RunReport:
    """Betti table, induced matchings or blocks of an arbitrary graph."""
    graph = parse_edges(edges)
    report = RunReport(command=f"graph {action}", inputs={"edges": graph.to_dict()["edges"]})

    if action == "betti":
        for field in options.fields:
            table = hochster_betti(graph, field, options.threads, options.max_vertices)
            report.computations.append(_computation("hochster", field.value, table))
        report.compute_agreement()
        if report.agreement is False:
            report.ok = False
    elif action == "nu":
        nu = induced_matching_number(graph)
        count = count_max_induced_matchings(graph)
        report.details = {"nu": nu, "count": count}
        report.text.append(f"nu = {nu} ({count} maximum induced matchings)")
    elif action == "blocks":
        found = blocks(graph)
        cuts = cut_vertices(graph)
        report.details = {
            "cut_vertices": [vertex_to_json(v) for v in cuts],
            "blocks": [[vertex_to_json(v) for v in b.vertices] for b in found],
        }
        report.text.append(f"cut vertices: {', '.join(map(format_vertex, cuts)) or 'none'}")
        for k, b in enumerate(found, start=1):
            report.text.append(f"block {k}: {', '.join(map(format_vertex, b.vertices))}")
    return report


# =============================================================================
# closed
# =============================================================================

def cmd_closed(edges: str, labeling: Optional[str], options: RunOptions) -> RunReport:
    """Closed-graph analysis with the prediction checked against in(J_G)."""
    graph = parse_edges(edges)
    report = RunReport(command="closed", inputs={"edges": graph.to_dict()["edges"]})

    if labeling is not None:
        order = parse_int_list(labeling, "--labeling")
        report.inputs["labeling"] = list(order)
        if not is_closed_labeling(graph, order):
            report.details = {"closed": False}
            report.notes.append("the given labeling is not closed")
            return report
    else:
        order = find_closed_labeling(graph)
        if order is None:
            report.details = {"closed": False}
            report.notes.append("graph is not closed")
            return report

    analysis = analyze_closed(graph, order)
    report.details = {"closed": True, **analysis.to_dict()}
    report.text.append(f"labeling: {', '.join(map(format_vertex, analysis.labeling))}")
    report.text.append(f"mu = {analysis.mu}, s = {analysis.s}")
    report.text.append(f"cut vertices: {', '.join(map(format_vertex, analysis.cut_vertices)) or 'none'}")

    prediction = None
    if nx.is_connected(graph.nx_graph):
        prediction = extremal_betti_closed(graph, analysis.labeling)
        report.details["prediction"] = prediction.to_dict()
        if prediction.applicable:
            report.text.append(f"predicted extremal: beta_{prediction.p},{prediction.p + prediction.r}"
                               f" = {prediction.value} (reg {prediction.r})")
        else:
            report.notes.append(f"block product formula not applicable: {prediction.reason}")
    else:
        report.notes.append("disconnected graph: no block product prediction")

    try:
        for field in options.fields:
            table = initial_ideal_betti(graph, field, analysis.labeling, options.threads,
                                        options.max_vertices, crosscheck=options.crosscheck)
            report.computations.append(_computation("hochster+join", field.value, table))
    except SizeLimitError as e:
        report.notes.append(f"Betti table of in(J_G) skipped: {e}")
        return report
    report.compute_agreement()
    if report.agreement is False:
        report.ok = False

    if prediction is not None and prediction.applicable:
        table = report.computations[0].table
        verified = (table.pd == prediction.p and table.reg == prediction.r
                    and table.get(prediction.p, prediction.p + prediction.r) == prediction.value)
        report.details["prediction_verified"] = verified
        if not verified:
            report.ok = False
            report.notes.append(
                f"prediction ({prediction.p}, {prediction.r}, {prediction.value}) does not match "
                f"the table (pd {table.pd}, reg {table.reg})"
            )
    report.notes.append("beta(J_G) agrees with beta(in(J_G)) at the extremal corner; "
                        "J_G itself is not resolved")
    return report


# =============================================================================
# fuzz
# =============================================================================

def cmd_fuzz(seed: int, count: int, max_rows: int, max_cols: int, options: RunOptions,
             presets: Optional[list[str]] = None, strict: bool = False) -> RunReport:
    """Seeded cross-check of every engine on random skew Ferrers diagrams.

    Engine disagreements fail the run. Counterexamples to the structural
    claims are reported and only fail the run with strict.
    """
    report = RunReport(command="fuzz", inputs={
        "seed": seed, "count": count, "max_rows": max_rows, "max_cols": max_cols,
        "presets": presets or list(PRESETS),
    })
    result = run_fuzz(seed, count, max_rows, max_cols, presets,
                      options.threads, options.max_vertices)
    report.ok = result.ok and (result.claims_hold or not strict)
    report.details = {
        "checked": result.checked,
        "failure": result.failure.to_dict() if result.failure else None,
        "counterexamples": [c.to_dict() for c in result.counterexamples],
    }
    report.text.append(f"{result.checked} of {count} instances checked")
    for found in [*result.counterexamples, *filter(None, [result.failure])]:
        label = "COUNTEREXAMPLE" if found.violation.kind == "counterexample" else "FAILED"
        report.text.append(f"{label} {found.violation.prop}: {found.violation.message}")
        report.text.append(f"  instance {found.instance.index}: lambda={found.instance.lam} "
                           f"mu={found.instance.mu}")
        report.text.append(f"  reproducer: {found.reproducer_command()}")
    for found in result.counterexamples:
        report.notes.append(f"instance {found.instance.index} refutes the {found.violation.prop} "
                            f"claim; every engine agrees on its table")
    if result.failure:
        report.notes.append(f"engines disagree on {result.failure.violation.prop}")
    elif result.claims_hold:
        report.text.append("all properties hold")
    else:
        report.text.append("engines agree on every instance")
    return report


# =============================================================================
# Entry point
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=FIELD_CHOICES, default=None,
                        help="Coefficient field for homology (default: from config, gf2)")
    common.add_argument("--threads", type=int, default=None,
                        help="Worker threads for the Hochster sum (default: 1)")
    common.add_argument("--max-vertices", type=int, default=None,
                        help="Vertex ceiling for the Hochster oracle (default: 14)")
    common.add_argument("--json", action="store_true",
                        help="Print one structured document on stdout")
    common.add_argument("--timing", action="store_true",
                        help="Include wall-clock time in the structured output")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="Enable debug logging")

    parser = argparse.ArgumentParser(
        description="Exact graded Betti numbers of skew Ferrers graphs and "
                    "initial ideals of closed graphs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    ferrers = commands.add_parser("ferrers", parents=[common],
                                  help="Skew Ferrers diagram from (lambda, mu)")
    ferrers.add_argument("action", choices=["decompose", "betti", "pdreg"])
    ferrers.add_argument("--lambda", dest="lam", required=True,
                         help="Nonincreasing positive integers, e.g. 7,6,6,5,4,3,2")
    ferrers.add_argument("--mu", default=None,
                         help="Nonincreasing nonnegative integers (default: all zero)")
    ferrers.add_argument("--method", choices=METHOD_CHOICES, default=None,
                         help="Betti engine (default: from config, all)")
    ferrers.add_argument("--crosscheck", action="store_true",
                         help="Run the oracle and the counting formula and compare")

    graph = commands.add_parser("graph", parents=[common], help="Arbitrary simple graph")
    graph.add_argument("action", choices=["betti", "nu", "blocks"])
    graph.add_argument("--edges", required=True, help='Edge list, e.g. "1-2,2-3,3-4"')

    closed = commands.add_parser("closed", parents=[common],
                                 help="Closed graph: labeling, mu-vector, extremal Betti number")
    closed.add_argument("--edges", required=True, help='Edge list, e.g. "1-2,1-3,2-3"')
    closed.add_argument("--labeling", default=None,
                        help="Vertices in label order (first listed gets label 1)")
    closed.add_argument("--crosscheck", action="store_true",
                        help="Also run the oracle on the union of the block graphs")

    fuzz = commands.add_parser("fuzz", parents=[common], help="Seeded cross-check harness")
    fuzz.add_argument("--seed", type=int, default=None)
    fuzz.add_argument("--count", type=int, default=None)
    fuzz.add_argument("--max-rows", type=int, default=None)
    fuzz.add_argument("--max-cols", type=int, default=None)
    fuzz.add_argument("--preset", action="append", choices=sorted(PRESETS), default=None,
                      help="Shape preset (repeatable; default: all, cycled)")
    fuzz.add_argument("--strict", action="store_true",
                      help="Exit 3 on counterexamples to structural claims too")
    return parser


def _options(args, config: Config) -> RunOptions:
    return RunOptions(
        field=args.field or config.get("field", "gf2"),
        method=getattr(args, "method", None) or config.get("method", "all"),
        crosscheck=getattr(args, "crosscheck", False),
        threads=args.threads if args.threads is not None else int(config.get("threads", 1)),
        max_vertices=(args.max_vertices if args.max_vertices is not None
                      else Config.get_max_vertices()),
    )


def run(args) -> RunReport:
    """Dispatch parsed arguments to a subcommand."""
    config = Config()
    options = _options(args, config)
    if options.threads < 1:
        raise ValidationError(f"--threads must be >= 1, got {options.threads}")
    if options.max_vertices < 1:
        raise ValidationError(f"--max-vertices must be >= 1, got {options.max_vertices}")

    if args.command == "ferrers":
        lam = parse_int_list(args.lam, "--lambda")
        mu = parse_int_list(args.mu, "--mu") if args.mu is not None else (0,) * len(lam)
        return cmd_ferrers(lam, mu, args.action, options)
    if args.command == "graph":
        return cmd_graph(args.edges, args.action, options)
    if args.command == "closed":
        return cmd_closed(args.edges, args.labeling, options)
    return cmd_fuzz(
        seed=args.seed if args.seed is not None else int(config.get("fuzz_seed", 1)),
        count=args.count if args.count is not None else int(config.get("fuzz_count", 100)),
        max_rows=args.max_rows if args.max_rows is not None else int(config.get("fuzz_max_rows", 6)),
        max_cols=args.max_cols if args.max_cols is not None else int(config.get("fuzz_max_cols", 6)),
        options=options,
        presets=args.preset,
        strict=args.strict,
    )


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)

    started = time.perf_counter()
    try:
        report = run(args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except CheckFailure as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except StructuralError as e:
        print(f"internal consistency error: {e}", file=sys.stderr)
        return EXIT_STRUCTURAL
    report.elapsed_s = time.perf_counter() - started
    logger.info(f"{report.command}: {'ok' if report.ok else 'FAILED'} "
                f"in {report.elapsed_s:.3f}s")

    if args.json:
        print(json.dumps(report.to_dict(include_timing=args.timing), indent=2))
    else:
        print(report.render_text())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
