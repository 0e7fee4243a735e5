"""
Data models for graphs in SkewBetti.

SimpleGraph: Vertices, canonical edge list and optional bipartition tags.
ClosedAnalysis: Closed labeling, mu-vector, cut vertices and blocks.
BlockShape: Per-block (n, mu, s) summary used by the extremal predictor.

Vertex labels are any hashable values: positive ints for graphs read from
the command line, "x3"/"y5" strings for graphs of diagrams, and
(component, label) pairs after a disjoint union.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Hashable, Optional

import networkx as nx

from src.utils.errors import GraphError

Vertex = Hashable
Edge = tuple[Vertex, Vertex]


class Side(str, Enum):
    """Bipartition tag: row vertices x_i or column vertices y_j."""
    X = "x"
    Y = "y"


def format_vertex(v: Vertex) -> str:
    """Human-readable vertex label."""
    if isinstance(v, tuple):
        return ":".join(format_vertex(part) for part in v)
    return str(v)


def vertex_to_json(v: Vertex):
    """JSON-friendly vertex label (tuples become lists)."""
    if isinstance(v, tuple):
        return [vertex_to_json(part) for part in v]
    return v


@dataclass(frozen=True)
class SimpleGraph:
    """A finite simple graph with ordered vertices.

    Edges are stored canonically: each pair is ordered by vertex position
    and the list is sorted the same way, so two graphs built from the same
    edge set in any listing order compare equal.

    Attributes:
        vertices: Vertex labels in their fixed order.
        edges: Unordered pairs, stored canonically.
        sides: Optional Side tag per vertex (aligned with vertices).
    """
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...] = ()
    sides: Optional[tuple[Side, ...]] = None

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(set(vertices)) != len(vertices):
            raise GraphError(f"duplicate vertex labels in {vertices}")
        index = {v: pos for pos, v in enumerate(vertices)}

        canonical = set()
        for u, v in self.edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphError(f"edge {format_vertex(u)}-{format_vertex(v)}: "
                                 f"unknown vertex {format_vertex(missing)}")
            if u == v:
                raise GraphError(f"loop at vertex {format_vertex(u)}")
            pair = (u, v) if index[u] < index[v] else (v, u)
            if pair in canonical:
                raise GraphError(
                    f"duplicate edge {format_vertex(pair[0])}-{format_vertex(pair[1])}"
                )
            canonical.add(pair)

        edges = tuple(sorted(canonical, key=lambda e: (index[e[0]], index[e[1]])))

        if self.sides is not None:
            if len(self.sides) != len(vertices):
                raise GraphError(
                    f"{len(vertices)} vertices but {len(self.sides)} side tags"
                )
            for u, v in edges:
                if self.sides[index[u]] is self.sides[index[v]]:
                    raise GraphError(
                        f"edge {format_vertex(u)}-{format_vertex(v)} does not cross "
                        f"the bipartition"
                    )

        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        if self.sides is not None:
            object.__setattr__(self, "sides", tuple(Side(s) for s in self.sides))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def is_edgeless(self) -> bool:
        return not self.edges

    @cached_property
    def index(self) -> dict[Vertex, int]:
        """Vertex label to position."""
        return {v: pos for pos, v in enumerate(self.vertices)}

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """networkx view with nodes inserted in vertex order."""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Per vertex position, a bitmask of neighbour positions."""
        masks = [0] * len(self.vertices)
        for u, v in self.edges:
            a, b = self.index[u], self.index[v]
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        """Neighbours of v in vertex order."""
        mask = self.adjacency_masks[self.index[v]]
        return tuple(u for pos, u in enumerate(self.vertices) if mask >> pos & 1)

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        if u not in self.index or v not in self.index:
            return False
        return bool(self.adjacency_masks[self.index[u]] >> self.index[v] & 1)

    def side_of(self, v: Vertex) -> Optional[Side]:
        if self.sides is None:
            return None
        return self.sides[self.index[v]]

    def edge_set(self) -> frozenset[frozenset]:
        """Edges as unordered pairs, independent of vertex order."""
        return frozenset(frozenset(e) for e in self.edges)

    def to_dict(self) -> dict:
        out = {
            "vertices": [vertex_to_json(v) for v in self.vertices],
            "edges": [[vertex_to_json(u), vertex_to_json(v)] for u, v in self.edges],
        }
        if self.sides is not None:
            out["sides"] = [s.value for s in self.sides]
        return out

    def __str__(self) -> str:
        edges = ", ".join(f"{format_vertex(u)}-{format_vertex(v)}" for u, v in self.edges)
        return f"SimpleGraph({self.num_vertices} vertices: {edges or 'no edges'})"


@dataclass(frozen=True)
class BlockShape:
    """mu-vector summary of one block under the induced labeling.

    Attributes:
        n: Number of vertices in the block.
        mu: The block's mu-vector (length n, last entry 0).
        s: min{k - 1 : mu_k = 0}.
    """
    n: int
    mu: tuple[int, ...]
    s: int

    @property
    def plateau(self) -> Optional[int]:
        """Common value of mu_1..mu_s when they agree and are >= 1, else None."""
        if self.s == 0:
            return None
        head = set(self.mu[:self.s])
        if len(head) != 1:
            return None
        value = head.pop()
        return value if value >= 1 else None

    def to_dict(self) -> dict:
        return {"n": self.n, "mu": list(self.mu), "s": self.s}


@dataclass(frozen=True)
class ClosedAnalysis:
    """Everything the closed-graph theorems read off a closed labeling.

    Attributes:
        labeling: Vertices in label order (labeling[0] gets label 1).
        mu: mu_j = n - j - deg^>(j), length n.
        s: min{k - 1 : mu_k = 0}.
        cut_vertices: Articulation points, in label order.
        blocks: Blocks in chain order, each keeping original labels.
        block_shapes: BlockShape per block, aligned with blocks.
    """
    labeling: tuple[Vertex, ...]
    mu: tuple[int, ...]
    s: int
    cut_vertices: tuple[Vertex, ...]
    blocks: tuple[SimpleGraph, ...]
    block_shapes: tuple[BlockShape, ...]

    @property
    def n(self) -> int:
        return len(self.labeling)

    @property
    def num_cut_vertices(self) -> int:
        return len(self.cut_vertices)

    def to_dict(self) -> dict:
        return {
            "labeling": [vertex_to_json(v) for v in self.labeling],
            "mu": list(self.mu),
            "s": self.s,
            "cut_vertices": [vertex_to_json(v) for v in self.cut_vertices],
            "blocks": [
                {
                    "vertices": [vertex_to_json(v) for v in block.vertices],
                    **shape.to_dict(),
                }
                for block, shape in zip(self.blocks, self.block_shapes)
            ],
        }
