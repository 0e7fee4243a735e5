"""
Independence complexes and exact reduced simplicial homology.

Two exact backends compute boundary ranks: GF(2) elimination with XOR row
operations on numpy uint8 arrays, and fraction-free integer elimination
(rows rescaled by gcd) for the rationals. The reduced chain complex
includes the empty face, so H~_{-1} needs no special case.
"""

import logging
from enum import Enum
from math import gcd
from typing import Hashable, Iterable, Optional, Sequence

import numpy as np

from src.models.complex import SimplicialComplex, DimVector
from src.models.graph import SimpleGraph, format_vertex
from src.utils.constants import MAX_HOMOLOGY_VERTICES
from src.utils.errors import SizeLimitError, StructuralError, ValidationError

logger = logging.getLogger(__name__)


class Field(str, Enum):
    """Coefficient field for homology."""
    GF2 = "gf2"
    RATIONAL = "rational"


# =============================================================================
# Complexes
# =============================================================================

def independence_complex(graph: SimpleGraph) -> SimplicialComplex:
    """Complex of independent sets: the Stanley-Reisner complex of I(G)."""
    return SimplicialComplex(
        vertex_labels=graph.vertices,
        conflicts=graph.adjacency_masks,
    )


def stanley_reisner_complex(vertex_labels: Sequence[Hashable],
                            facets: Iterable[Iterable[Hashable]]) -> SimplicialComplex:
    """Complex generated by explicit facets.

    An empty facet list gives the void complex; [[]] gives {empty face}.

    Raises:
        ValidationError: If a facet names an unknown vertex.
    """
    labels = tuple(vertex_labels)
    index = {v: pos for pos, v in enumerate(labels)}
    masks = []
    for facet in facets:
        mask = 0
        for v in facet:
            if v not in index:
                raise ValidationError(f"facet vertex {format_vertex(v)} is not a vertex")
            mask |= 1 << index[v]
        masks.append(mask)
    return SimplicialComplex(vertex_labels=labels, facets=tuple(masks))


def restrict_complex(complex_: SimplicialComplex,
                     subset: Iterable[Hashable]) -> SimplicialComplex:
    """Delta[W] = {F in Delta : F inside W}, on the vertices of W in order.

    Raises:
        ValidationError: If W contains an unknown vertex.
    """
    subset = set(subset)
    index = {v: pos for pos, v in enumerate(complex_.vertex_labels)}
    unknown = [v for v in subset if v not in index]
    if unknown:
        raise ValidationError(f"unknown vertices {sorted(map(format_vertex, unknown))}")
    kept = [pos for pos, v in enumerate(complex_.vertex_labels) if v in subset]
    labels = tuple(complex_.vertex_labels[pos] for pos in kept)

    def remap(mask: int) -> int:
        out = 0
        for new, old in enumerate(kept):
            if mask >> old & 1:
                out |= 1 << new
        return out

    if complex_.conflicts is not None:
        return SimplicialComplex(labels, conflicts=tuple(remap(complex_.conflicts[p]) for p in kept))
    return SimplicialComplex(labels, facets=tuple(remap(f) for f in complex_.facets))


def ghost_vertices(complex_: SimplicialComplex,
                   labels: Sequence[Hashable]) -> SimplicialComplex:
    """Add vertices that are not faces.

    The Stanley-Reisner ideal of the result is I_Delta + (z_1, .., z_s) in a
    ring with s more variables.
    """
    labels = tuple(labels)
    if set(labels) & set(complex_.vertex_labels):
        raise ValidationError("ghost vertex labels must be new")
    n = complex_.num_vertices
    all_labels = complex_.vertex_labels + labels
    if complex_.conflicts is not None:
        ghosts = tuple(1 << (n + k) for k in range(len(labels)))
        return SimplicialComplex(all_labels, conflicts=complex_.conflicts + ghosts)
    # Facets never mention the new positions
    return SimplicialComplex(all_labels, facets=complex_.facets)


def cone_apex(complex_: SimplicialComplex,
              subset: Optional[Iterable[Hashable]] = None) -> Optional[Hashable]:
    """A vertex of W over which Delta[W] is a cone, or None."""
    within = None
    if subset is not None:
        index = {v: pos for pos, v in enumerate(complex_.vertex_labels)}
        within = 0
        for v in subset:
            within |= 1 << index[v]
    pos = complex_.cone_apex(within)
    return None if pos is None else complex_.vertex_labels[pos]


# =============================================================================
# Faces and chains
# =============================================================================

def _faces_by_dim(complex_: SimplicialComplex,
                  within: Optional[int] = None) -> list[list[int]]:
    """faces[p + 1] lists the p-faces in lexicographic order."""
    faces: list[list[int]] = []
    for face in complex_.faces(within):
        size = face.bit_count()
        while len(faces) <= size:
            faces.append([])
        faces[size].append(face)
    # Backtracking yields prefixes first, which is lexicographic order
    return faces


def f_vector(complex_: SimplicialComplex) -> tuple[int, ...]:
    """(f_{-1}, f_0, f_1, ..): face counts by dimension, empty face first."""
    return tuple(len(group) for group in _faces_by_dim(complex_))


def euler_characteristic(complex_: SimplicialComplex) -> int:
    """Reduced Euler characteristic sum of (-1)^p f_p, counting f_{-1}."""
    return sum((-1) ** ((k - 1) % 2) * count for k, count in enumerate(f_vector(complex_)))


def _boundary(rows_faces: list[int], cols_faces: list[int], field: Field) -> np.ndarray:
    row_of = {face: r for r, face in enumerate(rows_faces)}
    dtype = np.uint8 if field is Field.GF2 else np.int64
    matrix = np.zeros((len(rows_faces), len(cols_faces)), dtype=dtype)
    for c, face in enumerate(cols_faces):
        rest, k = face, 0
        while rest:
            low = rest & -rest
            sign = 1 if field is Field.GF2 or k % 2 == 0 else -1
            matrix[row_of[face ^ low], c] = sign
            rest ^= low
            k += 1
    return matrix


def boundary_matrix(complex_: SimplicialComplex, p: int,
                    field: Field = Field.GF2) -> np.ndarray:
    """Matrix of d_p from p-faces (columns) to (p-1)-faces (rows).

    Removing the k-th smallest vertex of a face carries sign (-1)^k over
    the rationals. d_0 sends every vertex to the empty face.

    Raises:
        ValidationError: For p < 0.
    """
    if p < 0:
        raise ValidationError(f"boundary degree must be >= 0, got {p}")
    faces = _faces_by_dim(complex_)
    top = faces[p + 1] if p + 1 < len(faces) else []
    bottom = faces[p] if p < len(faces) else []
    return _boundary(bottom, top, Field(field))


# =============================================================================
# Exact ranks
# =============================================================================

def gf2_rank(matrix) -> int:
    """Rank over GF(2) by row reduction with XOR on uint8 rows."""
    m = (np.asarray(matrix) % 2).astype(np.uint8)
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        hits = np.flatnonzero(m[rank:, col])
        if hits.size == 0:
            continue
        pivot = rank + hits[0]
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        below = rank + 1 + np.flatnonzero(m[rank + 1:, col])
        if below.size:
            m[below] ^= m[rank]
        rank += 1
    return rank


def rational_rank(matrix) -> int:
    """Exact rank over Q by fraction-free integer elimination.

    Each combined row is divided by the gcd of its entries, so values stay
    small on boundary matrices.
    """
    m = np.array(np.asarray(matrix).tolist(), dtype=object)
    if m.size == 0:
        return 0
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivot = next((r for r in range(rank, rows) if m[r, col] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            m[[rank, pivot]] = m[[pivot, rank]]
        lead = m[rank, col]
        for r in range(rank + 1, rows):
            value = m[r, col]
            if value == 0:
                continue
            g = gcd(lead, value)
            m[r] = m[r] * (lead // g) - m[rank] * (value // g)
            content = 0
            for entry in m[r]:
                content = gcd(content, int(entry))
            if content > 1:
                m[r] = m[r] // content
        rank += 1
    return rank


def _rank(matrix: np.ndarray, field: Field) -> int:
    if matrix.size == 0:
        return 0
    return gf2_rank(matrix) if field is Field.GF2 else rational_rank(matrix)


# =============================================================================
# Reduced homology
# =============================================================================

def reduced_homology_dims(complex_: SimplicialComplex, field: Field = Field.GF2,
                          within: Optional[int] = None) -> DimVector:
    """dim H~_p(Delta[W]) for all p >= -1.

    Args:
        complex_: The complex.
        field: Coefficient field.
        within: Optional vertex bitmask W; the whole complex by default.

    Raises:
        SizeLimitError: If W has more than MAX_HOMOLOGY_VERTICES vertices.
    """
    field = Field(field)
    mask = complex_.full_mask if within is None else within & complex_.full_mask
    size = mask.bit_count()
    if size > MAX_HOMOLOGY_VERTICES:
        raise SizeLimitError(
            f"homology limited to {MAX_HOMOLOGY_VERTICES} vertices, got {size}"
        )
    if complex_.is_void:
        return DimVector()

    faces = _faces_by_dim(complex_, mask)
    # ranks[k] = rank of d_{k-1}: (k-1)-faces -> (k-2)-faces, k = 1..top
    ranks = [0] * (len(faces) + 1)
    for k in range(1, len(faces)):
        ranks[k] = _rank(_boundary(faces[k - 1], faces[k], field), field)

    dims = {}
    for k, group in enumerate(faces):
        # degree p = k - 1; cycles = f_p - rank d_p; boundaries = rank d_{p+1}
        value = len(group) - ranks[k] - ranks[k + 1]
        if value < 0:
            raise StructuralError(f"negative Betti number in degree {k - 1}")
        dims[k - 1] = value
    return DimVector.from_mapping(dims)
