"""
Graded Betti numbers of edge ideals by four routes.

  - Hochster's formula over the independence complex (the exact oracle,
    for any graph or any Stanley-Reisner complex).
  - Counting spherical restrictions of a skew Ferrers diagram.
  - The closed form for honest Ferrers shapes.
  - Convolution of factor tables for joins / disjoint unions.

Plus pd/reg of skew Ferrers graphs, extremal entries, and the block
product prediction for initial ideals of closed graphs.
"""

import logging
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional, Sequence

import networkx as nx
from scipy.special import comb

from src.diagram import (
    ferrers_shape, rectangular_decomposition, row_masks, spherical_rect,
)
from src.graph import (
    analyze_closed, disjoint_union, find_closed_labeling, induced_subgraph,
    initial_closed_graph, initial_ideal_graph,
)
from src.homology import Field, independence_complex, reduced_homology_dims
from src.models.betti import BettiTable, ExtremalPrediction, CorsoNagelTotals
from src.models.complex import SimplicialComplex
from src.models.diagram import CellDiagram
from src.models.graph import SimpleGraph, Vertex
from src.utils.constants import MAX_HOCHSTER_VERTICES, MAX_NAGEL_REINER_LABELS
from src.utils.errors import (
    CheckFailure, DiagramError, GraphError, SizeLimitError, StructuralError,
    ValidationError,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Hochster oracle
# =============================================================================

def _hochster_chunk(complex_: SimplicialComplex, field: Field,
                    start: int, stop: int) -> Counter:
    counts: Counter = Counter()
    for within in range(start, stop):
        if complex_.cone_apex(within) is not None:
            continue
        size = within.bit_count()
        for p, dim in reduced_homology_dims(complex_, field, within).dims:
            i = size - p - 2
            if i >= 0:
                counts[(i, size)] += dim
    return counts


def stanley_reisner_betti(complex_: SimplicialComplex, field: Field = Field.GF2,
                          threads: int = 1,
                          max_vertices: int = MAX_HOCHSTER_VERTICES) -> BettiTable:
    """beta_{i,j}(I_Delta) = sum over |W| = j of dim H~_{j-i-2}(Delta[W]).

    Restrictions that are cones are skipped. With threads > 1 the subsets
    are split into contiguous chunks whose counts are added in chunk order,
    so the table does not depend on the thread count.

    Raises:
        SizeLimitError: If Delta has more than max_vertices vertices.
    """
    field = Field(field)
    n = complex_.num_vertices
    limit = min(max_vertices, MAX_HOCHSTER_VERTICES)
    if n > limit:
        raise SizeLimitError(f"Hochster sum limited to {limit} vertices, got {n}")

    total = 1 << n
    started = time.perf_counter()
    if threads <= 1 or total < 64:
        counts = _hochster_chunk(complex_, field, 1, total)
    else:
        step = -(-total // (threads * 4))
        bounds = [(lo, min(lo + step, total)) for lo in range(1, total, step)]
        counts = Counter()
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(lambda b: _hochster_chunk(complex_, field, *b), bounds)
            for part in parts:
                counts.update(part)

    table = BettiTable.from_counts(dict(counts))
    logger.debug(f"Hochster over {n} vertices ({field.value}): pd={table.pd}, "
                 f"reg={table.reg}, {time.perf_counter() - started:.3f}s")
    return table


def hochster_betti(graph: SimpleGraph, field: Field = Field.GF2, threads: int = 1,
                   max_vertices: int = MAX_HOCHSTER_VERTICES) -> BettiTable:
    """Exact Betti table of the edge ideal I(G) via Hochster's formula.

    Raises:
        GraphError: If G has no edges.
        SizeLimitError: If G has too many non-isolated vertices.
    """
    if graph.is_edgeless:
        raise GraphError("the edge ideal of an edgeless graph is zero")
    # Isolated vertices are cone points of every restriction containing them
    used = [v for v, mask in zip(graph.vertices, graph.adjacency_masks) if mask]
    if len(used) != graph.num_vertices:
        graph = induced_subgraph(graph, used)
    return stanley_reisner_betti(independence_complex(graph), field, threads, max_vertices)


# =============================================================================
# Skew Ferrers diagrams
# =============================================================================

def spherical_restrictions(diagram: CellDiagram) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Every nonempty spherical restriction with its rect.

    Restrictions with a row or column lacking cells are never spherical,
    so only column sets covered by the chosen rows are visited.

    Yields:
        (row labels, column labels, rect) triples.

    Raises:
        SizeLimitError: If nonempty rows + columns exceed MAX_NAGEL_REINER_LABELS.
    """
    masks_all = row_masks(diagram)
    live_rows = [pos for pos, mask in enumerate(masks_all) if mask]
    labels = len(live_rows) + len(diagram.nonempty_cols)
    if labels > MAX_NAGEL_REINER_LABELS:
        raise SizeLimitError(
            f"spherical restriction count limited to {MAX_NAGEL_REINER_LABELS} rows + columns, "
            f"got {labels}"
        )

    for row_sel in range(1, 1 << len(live_rows)):
        rows = [live_rows[k] for k in range(len(live_rows)) if row_sel >> k & 1]
        cover = 0
        for r in rows:
            cover |= masks_all[r]
        sub = cover
        while sub:
            found = spherical_rect(masks_all, rows, sub)
            if found is not None:
                yield (
                    tuple(diagram.row_labels[r] for r in rows),
                    tuple(diagram.col_labels[c] for c in range(diagram.num_cols) if sub >> c & 1),
                    found,
                )
            sub = (sub - 1) & cover


def nagel_reiner_betti(diagram: CellDiagram) -> BettiTable:
    """beta_{i,j} = #{spherical (X', Y') : |X'| + |Y'| = j, rect = j - i - 1}.

    Raises:
        DiagramError: For a diagram without cells.
    """
    if diagram.is_empty:
        raise DiagramError("diagram has no cells")
    counts: Counter = Counter()
    for rows, cols, found in spherical_restrictions(diagram):
        j = len(rows) + len(cols)
        counts[(j - found - 1, j)] += 1
    return BettiTable.from_counts(dict(counts))


def pd_reg_spherical(diagram: CellDiagram) -> tuple[int, int]:
    """pd = max(|X'| + |Y'| - rect - 1) over spherical restrictions; reg = rect(D) + 1.

    Raises:
        DiagramError: For a diagram without cells.
    """
    if diagram.is_empty:
        raise DiagramError("diagram has no cells")
    pd = max(len(r) + len(c) - found - 1 for r, c, found in spherical_restrictions(diagram))
    return pd, rectangular_decomposition(diagram).rect + 1


def pd_witness_rects(diagram: CellDiagram) -> set[int]:
    """rect values of the spherical restrictions attaining pd.

    For Ferrers shapes this is {rect(D)}. Skew shapes can also attain pd
    with fewer pieces: lambda = (3, 2, 2), mu = (1, 1, 0) gives {1, 2} with
    rect(D) = 2.
    """
    if diagram.is_empty:
        raise DiagramError("diagram has no cells")
    best, rects = -1, set()
    for rows, cols, found in spherical_restrictions(diagram):
        value = len(rows) + len(cols) - found - 1
        if value > best:
            best, rects = value, {found}
        elif value == best:
            rects.add(found)
    return rects


def corso_nagel_betti(diagram: CellDiagram) -> CorsoNagelTotals:
    """Closed-form total Betti numbers of an honest Ferrers shape.

    beta_i = sum_j C(lambda_j + j - 1, i + 1) - C(n, i + 2), and
    pd = max(lambda_j + j - 2). The resolution is 2-linear.

    Raises:
        ValidationError: For a skew shape (mu != 0) or empty rows.
        StructuralError: If beta_0 differs from the number of cells.
    """
    lam = ferrers_shape(diagram)
    if lam is None:
        raise ValidationError("closed form needs an honest Ferrers shape (mu = 0, no empty rows)")
    n = len(lam)
    pd = max(part + j - 2 for j, part in enumerate(lam, start=1))
    totals = []
    for i in range(pd + 1):
        value = sum(comb(part + j - 1, i + 1, exact=True) for j, part in enumerate(lam, start=1))
        totals.append(int(value - comb(n, i + 2, exact=True)))
    if totals[0] != diagram.num_cells:
        raise StructuralError(f"closed form gives beta_0 = {totals[0]} for {diagram.num_cells} cells")
    return CorsoNagelTotals(tuple(totals), pd)


# =============================================================================
# Joins
# =============================================================================

def join_convolve(tables: Sequence[BettiTable]) -> BettiTable:
    """Betti table of a join from the tables of its factors.

    Each factor enters through the quotient ring: its series is 1 plus
    beta_{a-1,b} at (a, b). The product, minus the constant term and
    shifted back, is the join's table.

    Raises:
        ValidationError: For no tables or a zero table.
    """
    if not tables:
        raise ValidationError("join of no tables")
    product = {(0, 0): 1}
    for table in tables:
        if table.is_zero:
            raise ValidationError("join factor has a zero Betti table")
        factor = {(0, 0): 1}
        factor.update({(i + 1, j): v for i, j, v in table.entries})
        merged: Counter = Counter()
        for (a, b), x in product.items():
            for (c, d), y in factor.items():
                merged[(a + c, b + d)] += x * y
        product = dict(merged)
    product.pop((0, 0))
    return BettiTable.from_counts({(a - 1, b): v for (a, b), v in product.items()})


# =============================================================================
# Extremal entries
# =============================================================================

def _require_nonzero(table: BettiTable):
    if table.is_zero:
        raise ValidationError("table is zero")


def last_column_concentrated(table: BettiTable) -> bool:
    """True iff the only nonzero entry with i = pd sits at j = pd + reg."""
    _require_nonzero(table)
    return set(table.column(table.pd)) == {table.pd + table.reg}


def extremal_entries(table: BettiTable) -> list[tuple[int, int, int]]:
    """Nonzero beta_{i,i+r} with no other nonzero beta_{k,k+l}, k >= i, l >= r."""
    out = []
    for i, j, v in table.entries:
        r = j - i
        dominated = any(
            (k, l) != (i, j) and k >= i and l - k >= r
            for k, l, _ in table.entries
        )
        if not dominated:
            out.append((i, j, v))
    return out


def unique_extremal_corner(table: BettiTable) -> Optional[tuple[int, int, int]]:
    """(pd, pd + reg, beta) when that corner is the only extremal entry."""
    _require_nonzero(table)
    corner = (table.pd, table.pd + table.reg)
    value = table.get(*corner)
    if value == 0:
        return None
    found = extremal_entries(table)
    return (*corner, value) if found == [(*corner, value)] else None


# =============================================================================
# Closed graphs
# =============================================================================

def extremal_betti_closed(graph: SimpleGraph,
                          labeling: Optional[Sequence[Vertex]] = None) -> ExtremalPrediction:
    """Predict the unique extremal Betti number of J_G from the block shapes.

    Applicable when every block has mu_1 = .. = mu_s >= 1 with s >= 1. Then
    p = 2n - 3 - sum(mu_i + s_i), r = 2m + 3 for m cut vertices, and the
    value is the product of s_i * mu_i.

    Raises:
        GraphError: If G is disconnected or not closed.
    """
    if graph.num_vertices == 0 or not nx.is_connected(graph.nx_graph):
        raise GraphError("extremal prediction needs a connected graph")
    analysis = analyze_closed(graph, labeling)
    per_block = []
    reason = None
    for shape in analysis.block_shapes:
        plateau = shape.plateau
        per_block.append((shape.n, plateau or 0, shape.s))
        if reason is None and shape.s == 0:
            reason = "block regularity 2"
        elif reason is None and plateau is None:
            reason = f"block mu-vector {shape.mu} has unequal leading entries"
    if reason is not None:
        return ExtremalPrediction(applicable=False, per_block=per_block, reason=reason)

    n = graph.num_vertices
    m = analysis.num_cut_vertices
    value = 1
    for _, mu, s in per_block:
        value *= s * mu
    return ExtremalPrediction(
        applicable=True,
        p=2 * n - 3 - sum(mu + s for _, mu, s in per_block),
        r=2 * m + 3,
        value=value,
        per_block=per_block,
    )


def initial_ideal_blocks(graph: SimpleGraph,
                         labeling: Optional[Sequence[Vertex]] = None) -> list[SimpleGraph]:
    """The skew Ferrers graphs H_i of the blocks with at least one edge.

    Raises:
        GraphError: If G is not closed.
    """
    analysis = analyze_closed(graph, labeling)
    hs = []
    for block in analysis.blocks:
        if block.is_edgeless:
            continue
        order = tuple(v for v in analysis.labeling if v in block.index)
        hs.append(initial_closed_graph(block, order))
    return hs


def initial_ideal_betti(graph: SimpleGraph, field: Field = Field.GF2,
                        labeling: Optional[Sequence[Vertex]] = None, threads: int = 1,
                        max_vertices: int = MAX_HOCHSTER_VERTICES,
                        crosscheck: bool = True) -> BettiTable:
    """Betti table of in(J_G) for a closed graph.

    in(J_G) is the edge ideal of the disjoint union of the blocks' graphs
    H_i. Each H_i is run through the oracle and the tables are joined;
    with crosscheck, the oracle also runs on the union when it fits.

    Raises:
        GraphError: If G is not closed or has no edges.
        StructuralError: If the union and the join disagree or the corner
                         is zero.
        CheckFailure: If a block with a plateau mu-vector misses its pd, or
                      the last column is not concentrated.
    """
    if graph.is_edgeless:
        raise GraphError("in(J_G) of an edgeless graph is zero")
    if labeling is None:
        labeling = find_closed_labeling(graph)
        if labeling is None:
            raise GraphError("graph is not closed")
    analysis = analyze_closed(graph, labeling)
    hs = initial_ideal_blocks(graph, analysis.labeling)

    global_h = initial_ideal_graph(graph, analysis.labeling)
    if global_h.num_edges != sum(h.num_edges for h in hs):
        raise StructuralError("block graphs do not account for every generator of in(J_G)")

    tables = [hochster_betti(h, field, threads, max_vertices) for h in hs]
    table = join_convolve(tables)

    union = disjoint_union(hs)
    if crosscheck and union.num_vertices <= min(max_vertices, MAX_HOCHSTER_VERTICES):
        direct = hochster_betti(union, field, threads, max_vertices)
        if direct != table:
            raise StructuralError("oracle on the union of the H_i disagrees with the join")

    shapes = [s for s, b in zip(analysis.block_shapes, analysis.blocks) if not b.is_edgeless]
    for shape, h_table in zip(shapes, tables):
        if shape.plateau is not None:
            expected = 2 * shape.n - shape.plateau - shape.s - 3
            if h_table.pd != expected:
                raise CheckFailure(
                    f"block with mu {shape.mu}: pd {h_table.pd}, expected {expected}"
                )

    if table.get(table.pd, table.pd + table.reg) == 0:
        raise StructuralError("extremal corner of in(J_G) is zero")
    if not last_column_concentrated(table):
        raise CheckFailure(f"last column of in(J_G) is not concentrated: {table.entries}")
    logger.info(f"in(J_G) over {field.value}: pd={table.pd}, reg={table.reg}, "
                f"{len(hs)} blocks")
    return table
