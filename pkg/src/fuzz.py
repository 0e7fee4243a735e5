"""
Seeded cross-check harness for skew Ferrers diagrams.

Generates pseudo-random (lambda, mu) pairs from a handful of shape
presets and runs two kinds of property on each:

  - Engine agreements: the oracle over both fields, spherical counting and
    the Ferrers closed form must give the same numbers. A violation here is
    a bug in one of the engines and stops the run.
  - Structural claims: last-column concentration, the matching count at
    pd + 2 = reg, rect = nu, reg = rect + 1 and the pd witnesses. A
    violation with all engines agreeing is a counterexample to the claim;
    it is recorded and the run goes on.

Every violation is shrunk by dropping rows and columns while the same
property keeps failing, and reported with (lambda, mu) of the shrunken
diagram.

Same seed, same bounds: same instances, same order, same report.
"""

import logging
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from src.betti import (
    corso_nagel_betti, hochster_betti, last_column_concentrated, nagel_reiner_betti,
    pd_reg_spherical, pd_witness_rects,
)
from src.diagram import (
    ferrers_shape, new_skew_ferrers, rectangular_decomposition, restrict, to_parameters,
)
from src.graph import count_max_induced_matchings, graph_of_diagram, induced_matching_number
from src.homology import Field
from src.models.diagram import CellDiagram
from src.utils.constants import FUZZ_MAX_SIDE, MAX_HOCHSTER_VERTICES
from src.utils.errors import SizeLimitError, ValidationError

logger = logging.getLogger(__name__)


# Shape presets: how far mu may lag behind lambda in each row
PRESETS = {
    "skew": {
        "description": "Arbitrary skew shapes",
        "ferrers": False,
        "band": None,           # mu_i anywhere in [mu_{i+1}, lambda_i]
    },
    "ferrers": {
        "description": "Honest Ferrers shapes (mu = 0)",
        "ferrers": True,
        "band": None,
    },
    "narrow": {
        "description": "Skew shapes with at most two cells per row",
        "ferrers": False,
        "band": 2,
    },
    "wide": {
        "description": "Skew shapes keeping most of each row",
        "ferrers": False,
        "band": -1,             # mu_i as small as the staircase allows
    },
}

ENGINE_PROPERTIES = (
    "field-independence",
    "oracle-vs-counting",
    "closed-form",
)

CLAIM_PROPERTIES = (
    "last-column",
    "matching-count",
    "rect-nu",
    "pd-reg",
    "pd-witness",
)

PROPERTIES = ENGINE_PROPERTIES + CLAIM_PROPERTIES


@dataclass(frozen=True)
class FuzzInstance:
    """One generated diagram."""
    index: int
    preset: str
    lam: tuple[int, ...]
    mu: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"index": self.index, "preset": self.preset,
                "lambda": list(self.lam), "mu": list(self.mu)}


@dataclass(frozen=True)
class Violation:
    """A property that failed on a diagram."""
    prop: str
    message: str

    @property
    def kind(self) -> str:
        """"disagreement" between engines, or "counterexample" to a structural claim."""
        return "disagreement" if self.prop in ENGINE_PROPERTIES else "counterexample"

    def describe(self) -> str:
        if self.kind == "disagreement":
            return f"engines disagree on {self.prop}: {self.message}"
        return (f"counterexample to the {self.prop} claim (every engine agrees "
                f"on the table): {self.message}")


@dataclass
class FuzzFailure:
    """A violation found on one instance, with its shrunken reproducer."""
    instance: FuzzInstance
    violation: Violation
    reproducer: tuple[tuple[int, ...], tuple[int, ...]]

    def reproducer_command(self) -> str:
        lam, mu = self.reproducer
        return ("skewbetti ferrers betti --crosscheck "
                f"--lambda {','.join(map(str, lam))} --mu {','.join(map(str, mu))}")

    def to_dict(self) -> dict:
        lam, mu = self.reproducer
        return {
            "instance": self.instance.to_dict(),
            "kind": self.violation.kind,
            "property": self.violation.prop,
            "message": self.violation.message,
            "reproducer": {"lambda": list(lam), "mu": list(mu)},
            "command": self.reproducer_command(),
        }


@dataclass
class FuzzResult:
    """Outcome of a fuzz run.

    failure holds the engine disagreement that stopped the run, if any;
    counterexamples collects every structural claim refuted on the way.
    """
    seed: int
    checked: int = 0
    instances: list[FuzzInstance] = field(default_factory=list)
    failure: Optional[FuzzFailure] = None
    counterexamples: list[FuzzFailure] = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def ok(self) -> bool:
        """No engine disagreement."""
        return self.failure is None

    @property
    def claims_hold(self) -> bool:
        return not self.counterexamples


# =============================================================================
# Generation
# =============================================================================

def random_parameters(rng: random.Random, max_rows: int, max_cols: int,
                      preset: str = "skew") -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Draw (lambda, mu) with at most max_rows rows and max_cols columns.

    mu is built from the last row upward so that every mu_i lies in
    [mu_{i+1}, lambda_i].
    """
    settings = PRESETS[preset]
    n = rng.randint(1, max_rows)
    m = rng.randint(1, max_cols)
    lam = [m] + sorted((rng.randint(1, m) for _ in range(n - 1)), reverse=True)
    if settings["ferrers"]:
        return tuple(lam), (0,) * n

    band = settings["band"]
    mu = [0] * n
    floor = 0
    for i in range(n - 1, -1, -1):
        low = floor
        if band is not None and band > 0:
            low = max(floor, lam[i] - band)
        high = lam[i] if band != -1 else min(lam[i], floor + 1)
        mu[i] = rng.randint(low, max(low, high))
        floor = mu[i]
    return tuple(lam), tuple(mu)


def generate_instances(seed: int, count: int, max_rows: int, max_cols: int,
                       presets: Optional[list[str]] = None) -> list[FuzzInstance]:
    """Deterministic instance list; presets are cycled in order.

    Raises:
        ValidationError: For a negative count, non-positive bounds or an
                         unknown preset.
        SizeLimitError: For bounds above FUZZ_MAX_SIDE.
    """
    if count < 0:
        raise ValidationError(f"--count must be >= 0, got {count}")
    if max_rows < 1 or max_cols < 1:
        raise ValidationError("--max-rows and --max-cols must be >= 1")
    if max_rows > FUZZ_MAX_SIDE or max_cols > FUZZ_MAX_SIDE:
        raise SizeLimitError(
            f"fuzzing is limited to {FUZZ_MAX_SIDE} rows and {FUZZ_MAX_SIDE} columns, "
            f"got {max_rows}x{max_cols}"
        )
    presets = list(presets or PRESETS)
    for name in presets:
        if name not in PRESETS:
            raise ValidationError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")

    rng = random.Random(seed)
    out = []
    for index in range(count):
        preset = presets[index % len(presets)]
        while True:
            lam, mu = random_parameters(rng, max_rows, max_cols, preset)
            if any(a > b for a, b in zip(lam, mu)):
                break
        out.append(FuzzInstance(index, preset, lam, mu))
    return out


# =============================================================================
# Properties
# =============================================================================

def check_diagram(diagram: CellDiagram, threads: int = 1,
                  max_vertices: int = MAX_HOCHSTER_VERTICES) -> Optional[Violation]:
    """Run every property on one nonempty diagram; return the first violation.

    Engine agreements are checked before any structural claim, so a
    counterexample is only reported once every engine agrees on the table.
    """
    graph = graph_of_diagram(diagram)
    oracle = hochster_betti(graph, Field.GF2, threads, max_vertices)

    rational = hochster_betti(graph, Field.RATIONAL, threads, max_vertices)
    if rational != oracle:
        return Violation("field-independence",
                         f"GF(2) table {oracle.entries} != rational table {rational.entries}")

    counted = nagel_reiner_betti(diagram)
    if counted != oracle:
        return Violation("oracle-vs-counting",
                         f"oracle {oracle.entries} != spherical counting {counted.entries}")

    pd, reg = oracle.pd, oracle.reg
    if ferrers_shape(diagram) is not None:
        closed = corso_nagel_betti(diagram)
        if closed.totals != oracle.totals() or closed.pd != pd or not oracle.is_linear():
            return Violation("closed-form",
                             f"closed form {closed.totals} (pd {closed.pd}) vs oracle "
                             f"{oracle.totals()} (pd {pd})")

    if not last_column_concentrated(oracle):
        return Violation("last-column",
                         f"table {oracle.entries}: column pd={pd} is {oracle.column(pd)}, reg={reg}")

    if pd + 2 < reg:
        return Violation("matching-count", f"pd + 2 = {pd + 2} < reg = {reg}")
    if pd + 2 == reg:
        matchings = count_max_induced_matchings(graph)
        if oracle.totals()[pd] != matchings:
            return Violation("matching-count",
                             f"beta_pd = {oracle.totals()[pd]} but {matchings} maximum induced matchings")

    decomposition = rectangular_decomposition(diagram)
    nu = induced_matching_number(graph)
    if decomposition.rect != nu:
        return Violation("rect-nu", f"rect = {decomposition.rect} but nu = {nu}")

    predicted = pd_reg_spherical(diagram)
    if predicted != (pd, reg):
        return Violation("pd-reg", f"spherical (pd, reg) = {predicted}, oracle ({pd}, {reg})")

    witnesses = pd_witness_rects(diagram)
    if witnesses != {decomposition.rect}:
        return Violation("pd-witness",
                         f"pd attained with rect {sorted(witnesses)}, rect(D) = {decomposition.rect}")
    return None


def shrink(diagram: CellDiagram,
           still_fails: Callable[[CellDiagram], bool]) -> CellDiagram:
    """Drop rows and columns one at a time while the failure persists."""
    current = diagram
    changed = True
    while changed:
        changed = False
        drops = [("row", r) for r in current.row_labels] + [("col", c) for c in current.col_labels]
        for kind, label in drops:
            rows = [r for r in current.row_labels if not (kind == "row" and r == label)]
            cols = [c for c in current.col_labels if not (kind == "col" and c == label)]
            candidate = restrict(current, rows, cols)
            if candidate.is_empty:
                continue
            if still_fails(candidate):
                logger.debug(f"shrink: dropped {kind} {label}")
                current = candidate
                changed = True
                break
    return current


# =============================================================================
# Runner
# =============================================================================

def _shrunk_failure(instance: FuzzInstance, diagram: CellDiagram, violation: Violation,
                    threads: int, max_vertices: int) -> FuzzFailure:
    def still_fails(candidate: CellDiagram) -> bool:
        found = check_diagram(candidate, threads, max_vertices)
        return found is not None and found.prop == violation.prop

    small = shrink(diagram, still_fails)
    return FuzzFailure(instance, violation, to_parameters(small))


def run_fuzz(seed: int, count: int, max_rows: int, max_cols: int,
             presets: Optional[list[str]] = None, threads: int = 1,
             max_vertices: int = MAX_HOCHSTER_VERTICES) -> FuzzResult:
    """Check `count` seeded instances.

    An engine disagreement stops the run; counterexamples to structural
    claims are shrunk, collected and the run continues.
    """
    started = time.perf_counter()
    result = FuzzResult(seed=seed)
    result.instances = generate_instances(seed, count, max_rows, max_cols, presets)

    for instance in result.instances:
        diagram = new_skew_ferrers(instance.lam, instance.mu)
        violation = check_diagram(diagram, threads, max_vertices)
        result.checked += 1
        if violation is None:
            logger.debug(f"instance {instance.index} ({instance.preset}) "
                         f"lambda={instance.lam} mu={instance.mu}: ok")
            continue

        logger.warning(f"instance {instance.index}: {violation.describe()}")
        failure = _shrunk_failure(instance, diagram, violation, threads, max_vertices)
        if violation.kind == "disagreement":
            result.failure = failure
            break
        result.counterexamples.append(failure)

    result.elapsed_s = time.perf_counter() - started
    logger.info(f"fuzz seed={seed}: {result.checked}/{count} instances checked, "
                f"{len(result.counterexamples)} counterexamples, "
                f"{'ok' if result.ok else 'FAILED'} in {result.elapsed_s:.2f}s")
    return result
