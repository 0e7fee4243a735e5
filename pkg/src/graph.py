"""
Simple-graph machinery for SkewBetti.

Bipartite graphs of diagrams, induced matchings, cut vertices and blocks,
closed labelings, mu-vectors and the bipartite graph H whose edge ideal is
the initial ideal of a closed graph's binomial edge ideal.

Induced matchings are cliques in the compatibility graph whose nodes are
the edges of G, two edges being compatible when no edge of G touches both.
networkx provides the exact clique search as well as articulation points
and biconnected components.
"""

import logging
from itertools import combinations
from typing import Iterable, Optional, Sequence

import networkx as nx

from src.diagram import new_skew_ferrers
from src.models.diagram import CellDiagram
from src.models.graph import (
    SimpleGraph, Side, Vertex, ClosedAnalysis, BlockShape, format_vertex,
)
from src.utils.constants import MAX_MATCHING_EDGES, MAX_CLOSED_LABELING_VERTICES
from src.utils.errors import GraphError, SizeLimitError, StructuralError, DiagramError

logger = logging.getLogger(__name__)


# =============================================================================
# Construction
# =============================================================================

def graph_of_diagram(diagram: CellDiagram) -> SimpleGraph:
    """Bipartite graph with an edge x_i - y_j for every cell (i, j).

    Only nonempty rows and columns become vertices.
    """
    xs = [f"x{r}" for r in diagram.nonempty_rows]
    ys = [f"y{c}" for c in diagram.nonempty_cols]
    edges = [(f"x{r}", f"y{c}") for r, c in sorted(diagram.cells)]
    return SimpleGraph(
        vertices=tuple(xs + ys),
        edges=tuple(edges),
        sides=tuple([Side.X] * len(xs) + [Side.Y] * len(ys)),
    )


def induced_subgraph(graph: SimpleGraph, subset: Iterable[Vertex]) -> SimpleGraph:
    """G[S], keeping the vertex order of G.

    Raises:
        GraphError: If S contains an unknown vertex.
    """
    subset = set(subset)
    unknown = [v for v in subset if v not in graph.index]
    if unknown:
        raise GraphError(f"unknown vertices {sorted(map(format_vertex, unknown))}")
    vertices = tuple(v for v in graph.vertices if v in subset)
    edges = tuple((u, v) for u, v in graph.edges if u in subset and v in subset)
    sides = None
    if graph.sides is not None:
        sides = tuple(graph.side_of(v) for v in vertices)
    return SimpleGraph(vertices, edges, sides)


def disjoint_union(graphs: Sequence[SimpleGraph]) -> SimpleGraph:
    """Disjoint union; vertex v of the k-th graph becomes (k, v).

    The independence complex of the union is the join of the factors'.
    """
    vertices, edges = [], []
    keep_sides = all(g.sides is not None for g in graphs)
    sides = []
    for k, g in enumerate(graphs):
        vertices.extend((k, v) for v in g.vertices)
        edges.extend(((k, u), (k, v)) for u, v in g.edges)
        if keep_sides:
            sides.extend(g.sides)
    return SimpleGraph(tuple(vertices), tuple(edges), tuple(sides) if keep_sides else None)


def relabel_by_order(graph: SimpleGraph, labeling: Sequence[Vertex]) -> SimpleGraph:
    """Copy of G on 1..n where labeling[k] gets label k + 1."""
    position = _check_labeling(graph, labeling)
    return SimpleGraph(
        vertices=tuple(range(1, graph.num_vertices + 1)),
        edges=tuple((position[u] + 1, position[v] + 1) for u, v in graph.edges),
    )


def parse_edges(text: str) -> SimpleGraph:
    """Parse "1-2,2-3,3-4" into a graph on the positive integers used.

    Vertices are ordered numerically. Listing order is irrelevant.

    Raises:
        GraphError: On malformed items, non-positive labels, loops or repeats.
    """
    if text is None or not text.strip():
        raise GraphError("--edges: empty edge list")
    edges = []
    for pos, item in enumerate(text.split(","), start=1):
        parts = item.strip().split("-")
        if len(parts) != 2:
            raise GraphError(f"--edges: item {pos} {item.strip()!r} is not of the form a-b")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"--edges: item {pos} {item.strip()!r} has a non-integer label") from None
        if u < 1 or v < 1:
            raise GraphError(f"--edges: item {pos} {item.strip()!r} has a non-positive label")
        edges.append((u, v))
    vertices = sorted({v for e in edges for v in e})
    return SimpleGraph(tuple(vertices), tuple(edges))


# =============================================================================
# Induced matchings
# =============================================================================

def _compatibility_graph(graph: SimpleGraph) -> nx.Graph:
    """Edges of G as nodes; joined when the two edges form an induced matching."""
    if graph.num_edges > MAX_MATCHING_EDGES:
        raise SizeLimitError(
            f"induced matching search limited to {MAX_MATCHING_EDGES} edges, "
            f"graph has {graph.num_edges}"
        )
    masks = graph.adjacency_masks
    index = graph.index
    closed = []
    for u, v in graph.edges:
        a, b = index[u], index[v]
        # Closed neighbourhood of the edge
        closed.append(masks[a] | masks[b] | (1 << a) | (1 << b))
    ends = [(1 << index[u]) | (1 << index[v]) for u, v in graph.edges]

    compat = nx.Graph()
    compat.add_nodes_from(range(graph.num_edges))
    for e, f in combinations(range(graph.num_edges), 2):
        if not closed[e] & ends[f]:
            compat.add_edge(e, f)
    return compat


def induced_matching_number(graph: SimpleGraph) -> int:
    """nu(G): the largest number of edges forming an induced matching."""
    if graph.is_edgeless:
        return 0
    compat = _compatibility_graph(graph)
    clique, _ = nx.max_weight_clique(compat, weight=None)
    return len(clique)


def count_max_induced_matchings(graph: SimpleGraph) -> int:
    """Number of induced matchings with exactly nu(G) edges.

    Raises:
        GraphError: For an edgeless graph.
    """
    if graph.is_edgeless:
        raise GraphError("induced matchings of an edgeless graph are not counted")
    compat = _compatibility_graph(graph)
    nu = len(nx.max_weight_clique(compat, weight=None)[0])
    # Every clique of maximum size is maximal
    return sum(1 for clique in nx.find_cliques(compat) if len(clique) == nu)


# =============================================================================
# Cut vertices and blocks
# =============================================================================

def cut_vertices(graph: SimpleGraph) -> tuple[Vertex, ...]:
    """Articulation points, in vertex order."""
    points = set(nx.articulation_points(graph.nx_graph))
    return tuple(v for v in graph.vertices if v in points)


def _block_vertex_sets(graph: SimpleGraph) -> list[tuple[Vertex, ...]]:
    sets = [tuple(v for v in graph.vertices if v in comp)
            for comp in nx.biconnected_components(graph.nx_graph)]
    # Isolated vertices form one-vertex blocks
    covered = {v for s in sets for v in s}
    sets.extend((v,) for v in graph.vertices if v not in covered)
    sets.sort(key=lambda s: [graph.index[v] for v in s])
    return sets


def blocks(graph: SimpleGraph) -> tuple[SimpleGraph, ...]:
    """Maximal 2-connected subgraphs and bridges, ordered by their vertices.

    Raises:
        GraphError: If G is empty or disconnected.
    """
    if graph.num_vertices == 0 or not nx.is_connected(graph.nx_graph):
        raise GraphError("blocks are only defined here for connected graphs")
    return tuple(induced_subgraph(graph, s) for s in _block_vertex_sets(graph))


# =============================================================================
# Closed labelings
# =============================================================================

def _check_labeling(graph: SimpleGraph, labeling: Sequence[Vertex]) -> dict[Vertex, int]:
    labeling = tuple(labeling)
    if len(labeling) != graph.num_vertices or set(labeling) != set(graph.vertices):
        raise GraphError(
            f"labeling {[format_vertex(v) for v in labeling]} is not a permutation "
            f"of the {graph.num_vertices} vertices"
        )
    return {v: pos for pos, v in enumerate(labeling)}


def _upper_lower(graph: SimpleGraph, labeling: Sequence[Vertex]) -> tuple[list[int], list[int]]:
    """Per label position, bitmasks (over label positions) of N^> and N^<."""
    position = _check_labeling(graph, labeling)
    n = graph.num_vertices
    upper, lower = [0] * n, [0] * n
    for u, v in graph.edges:
        a, b = sorted((position[u], position[v]))
        upper[a] |= 1 << b
        lower[b] |= 1 << a
    return upper, lower


def _is_clique(mask: int, adjacency: list[int]) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        if (mask ^ low) & ~adjacency[v]:
            return False
        rest ^= low
    return True


def is_closed_labeling(graph: SimpleGraph, labeling: Optional[Sequence[Vertex]] = None) -> bool:
    """True iff every upper and every lower neighbourhood is a clique.

    Args:
        graph: The graph.
        labeling: Vertices in label order; defaults to the vertex order.
    """
    labeling = graph.vertices if labeling is None else tuple(labeling)
    upper, lower = _upper_lower(graph, labeling)
    adjacency = [u | l for u, l in zip(upper, lower)]
    return all(_is_clique(upper[k], adjacency) and _is_clique(lower[k], adjacency)
               for k in range(graph.num_vertices))


def find_closed_labeling(graph: SimpleGraph) -> Optional[tuple[Vertex, ...]]:
    """Search all labelings for a closed one, trying the vertex order first.

    The search places vertices one label at a time and backtracks as soon
    as a lower neighbourhood or an earlier upper neighbourhood stops being
    a clique.

    Returns:
        Vertices in label order, or None if G is not closed.

    Raises:
        SizeLimitError: For more than MAX_CLOSED_LABELING_VERTICES vertices.
    """
    n = graph.num_vertices
    if n > MAX_CLOSED_LABELING_VERTICES:
        raise SizeLimitError(
            f"closed labeling search limited to {MAX_CLOSED_LABELING_VERTICES} vertices, "
            f"graph has {n}"
        )
    adj = list(graph.adjacency_masks)
    order: list[int] = []
    # upper_placed[k]: neighbours of order[k] placed after it
    upper_placed: list[int] = []
    visited = [0]

    def place(used: int) -> bool:
        if len(order) == n:
            return True
        for v in range(n):
            if used >> v & 1:
                continue
            lower = adj[v] & used
            if not _is_clique(lower, adj):
                continue
            if any(adj[v] >> u & 1 and upper_placed[k] & ~adj[v]
                   for k, u in enumerate(order)):
                continue
            visited[0] += 1
            saved = list(upper_placed)
            for k, u in enumerate(order):
                if adj[v] >> u & 1:
                    upper_placed[k] |= 1 << v
            order.append(v)
            upper_placed.append(0)
            if place(used | (1 << v)):
                return True
            order.pop()
            upper_placed[:] = saved
        return False

    found = place(0)
    logger.debug(f"closed labeling search visited {visited[0]} partial labelings")
    if not found:
        return None
    return tuple(graph.vertices[v] for v in order)


def mu_vector(graph: SimpleGraph,
              labeling: Optional[Sequence[Vertex]] = None) -> tuple[tuple[int, ...], int]:
    """mu_j = n - j - deg^>(j) and s = min{k - 1 : mu_k = 0}.

    Raises:
        GraphError: If the labeling is not closed.
    """
    labeling = graph.vertices if labeling is None else tuple(labeling)
    if not is_closed_labeling(graph, labeling):
        raise GraphError("mu-vector needs a closed labeling")
    upper, _ = _upper_lower(graph, labeling)
    n = graph.num_vertices
    mu = tuple(n - j - upper[j - 1].bit_count() for j in range(1, n + 1))
    zeros = [k for k in range(1, n + 1) if mu[k - 1] == 0]
    if not zeros:
        raise StructuralError(f"mu-vector {mu} has no zero entry")
    return mu, zeros[0] - 1


def closed_graph_from_mu(mu: Sequence[int]) -> SimpleGraph:
    """The closed graph on 1..n with N^>(i) = {i+1, .., n - mu_i}.

    mu_vector of the result under the identity labeling gives back mu.

    Raises:
        GraphError: Unless mu is nonincreasing with 0 <= mu_i <= n - i.
    """
    mu = tuple(mu)
    n = len(mu)
    if n == 0:
        raise GraphError("mu is empty")
    for i, value in enumerate(mu, start=1):
        if not 0 <= value <= n - i:
            raise GraphError(f"mu_{i} = {value} outside 0..{n - i}")
        if i > 1 and value > mu[i - 2]:
            raise GraphError(f"mu is not nonincreasing at position {i}")
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n - mu[i - 1] + 1)]
    return SimpleGraph(tuple(range(1, n + 1)), tuple(edges))


# =============================================================================
# Initial ideals of binomial edge ideals
# =============================================================================

def initial_ideal_graph(graph: SimpleGraph,
                        labeling: Optional[Sequence[Vertex]] = None) -> SimpleGraph:
    """Bipartite graph of in(J_G): x_i - y_{j-1} for each edge {i, j}, i < j.

    Works for any closed labeling; isolated variables are left out.

    Raises:
        GraphError: If the labeling is not closed.
    """
    labeling = graph.vertices if labeling is None else tuple(labeling)
    if not is_closed_labeling(graph, labeling):
        raise GraphError("in(J_G) is quadratic only for a closed labeling")
    position = _check_labeling(graph, labeling)
    pairs = sorted(tuple(sorted((position[u] + 1, position[v] + 1))) for u, v in graph.edges)
    xs = sorted({i for i, _ in pairs})
    ys = sorted({j - 1 for _, j in pairs})
    return SimpleGraph(
        vertices=tuple([f"x{i}" for i in xs] + [f"y{j}" for j in ys]),
        edges=tuple((f"x{i}", f"y{j - 1}") for i, j in pairs),
        sides=tuple([Side.X] * len(xs) + [Side.Y] * len(ys)),
    )


def initial_closed_graph(graph: SimpleGraph,
                         labeling: Optional[Sequence[Vertex]] = None) -> SimpleGraph:
    """The skew Ferrers graph H with I(H) = in(J_G) for a 2-connected closed G.

    Raises:
        GraphError: If G is disconnected, has a cut vertex, fewer than two
                    vertices, or the labeling is not closed.
        StructuralError: If H is not the skew Ferrers graph with
                         lambda_i = n - i and the computed mu.
    """
    labeling = graph.vertices if labeling is None else tuple(labeling)
    n = graph.num_vertices
    if n < 2:
        raise GraphError("H needs at least two vertices")
    if not nx.is_connected(graph.nx_graph):
        raise GraphError("H is built for connected graphs only")
    if cut_vertices(graph):
        raise GraphError("H is built per block; G has cut vertices")
    mu, _ = mu_vector(graph, labeling)
    h = initial_ideal_graph(graph, labeling)

    try:
        diagram = new_skew_ferrers([n - i for i in range(1, n)], mu[:n - 1])
    except DiagramError as e:
        raise StructuralError(f"mu {mu} does not give a skew Ferrers shape: {e}") from e
    expected = graph_of_diagram(diagram)
    if expected.edge_set() != h.edge_set() or set(expected.vertices) != set(h.vertices):
        raise StructuralError(
            f"in(J_G) graph does not match the skew Ferrers diagram of mu {mu[:n - 1]}"
        )
    return h


# =============================================================================
# Closed-graph analysis
# =============================================================================

def _is_interval(positions: list[int]) -> bool:
    return not positions or positions == list(range(positions[0], positions[0] + len(positions)))


def analyze_closed(graph: SimpleGraph,
                   labeling: Optional[Sequence[Vertex]] = None) -> ClosedAnalysis:
    """Closed labeling, mu-vector, cut vertices and blocks of a closed graph.

    Args:
        graph: A closed graph.
        labeling: Vertices in label order. Searched for when omitted.

    Raises:
        GraphError: If G is not closed (or the given labeling is not).
        StructuralError: If a connected closed graph has a neighbourhood or
                         block that is not an interval of labels, or its
                         blocks do not form a chain.
    """
    if labeling is None:
        labeling = find_closed_labeling(graph)
        if labeling is None:
            raise GraphError("graph is not closed")
    labeling = tuple(labeling)
    mu, s = mu_vector(graph, labeling)
    position = _check_labeling(graph, labeling)

    connected = graph.num_vertices > 0 and nx.is_connected(graph.nx_graph)
    if connected:
        upper, lower = _upper_lower(graph, labeling)
        for k in range(graph.num_vertices):
            for mask in (upper[k], lower[k]):
                bits = [b for b in range(graph.num_vertices) if mask >> b & 1]
                if not _is_interval(bits):
                    raise StructuralError(
                        f"neighbourhood of label {k + 1} is not an interval: "
                        f"{[b + 1 for b in bits]}"
                    )

    points = set(nx.articulation_points(graph.nx_graph))
    cuts = tuple(v for v in labeling if v in points)

    vertex_sets = [
        tuple(sorted(vs, key=position.get)) for vs in _block_vertex_sets(graph)
    ]
    vertex_sets.sort(key=lambda vs: position[vs[0]])
    block_graphs = tuple(induced_subgraph(graph, vs) for vs in vertex_sets)

    if connected:
        for k, vs in enumerate(vertex_sets):
            labels = [position[v] for v in vs]
            if not _is_interval(labels):
                raise StructuralError(f"block {k + 1} is not an interval of labels")
            if k and position[vertex_sets[k - 1][-1]] != labels[0]:
                raise StructuralError(
                    f"blocks {k} and {k + 1} do not meet in a single cut vertex"
                )
            if k and vs[0] not in points:
                raise StructuralError(f"shared vertex {format_vertex(vs[0])} is not a cut vertex")

    shapes = []
    for block, vs in zip(block_graphs, vertex_sets):
        block_mu, block_s = mu_vector(block, vs)
        shapes.append(BlockShape(len(vs), block_mu, block_s))

    logger.debug(f"closed analysis: mu={mu}, s={s}, {len(cuts)} cut vertices, "
                 f"{len(block_graphs)} blocks")
    return ClosedAnalysis(
        labeling=labeling,
        mu=mu,
        s=s,
        cut_vertices=cuts,
        blocks=block_graphs,
        block_shapes=tuple(shapes),
    )
