"""
Data models for simplicial complexes in SkewBetti.

SimplicialComplex: Vertex labels plus a face predicate, in one of two
    presentations. A flag complex is stored as per-vertex conflict masks
    (faces are the conflict-free sets, so independence complexes never
    materialise their faces); a small generic complex is stored by facets.
DimVector: Reduced homology dimensions by degree.

Faces are bitmasks over vertex positions throughout.
"""

from dataclasses import dataclass
from typing import Hashable, Iterator, Optional

from src.utils.errors import StructuralError


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on ordered vertices.

    Exactly one of conflicts / facets is set.

    Attributes:
        vertex_labels: Vertex labels in position order.
        conflicts: Flag presentation. Bit u of conflicts[v] set means {u, v}
                   is a non-face; bit v of conflicts[v] set means {v} itself
                   is a non-face (a variable lying in the ideal).
        facets: Explicit presentation. A set is a face iff it lies inside
                one of these masks. () is the void complex, (0,) is {empty}.
    """
    vertex_labels: tuple[Hashable, ...]
    conflicts: Optional[tuple[int, ...]] = None
    facets: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if (self.conflicts is None) == (self.facets is None):
            raise StructuralError("a complex needs exactly one of conflicts / facets")
        if self.conflicts is not None and len(self.conflicts) != len(self.vertex_labels):
            raise StructuralError(
                f"{len(self.vertex_labels)} vertices but {len(self.conflicts)} conflict masks"
            )

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.vertex_labels)) - 1

    @property
    def is_flag(self) -> bool:
        return self.conflicts is not None

    @property
    def is_void(self) -> bool:
        """No faces at all, not even the empty face."""
        return self.facets is not None and not self.facets

    def is_face(self, mask: int) -> bool:
        if self.conflicts is not None:
            rest = mask
            while rest:
                low = rest & -rest
                v = low.bit_length() - 1
                if self.conflicts[v] & mask:
                    return False
                rest ^= low
            return True
        return any(mask & ~facet == 0 for facet in self.facets)

    def extends(self, face: int, v: int) -> bool:
        """Whether face + {v} is a face, given that face is one."""
        bit = 1 << v
        if self.conflicts is not None:
            return not self.conflicts[v] & (face | bit)
        grown = face | bit
        return any(grown & ~facet == 0 for facet in self.facets)

    def faces(self, within: Optional[int] = None) -> Iterator[int]:
        """Faces inside a vertex mask, in lexicographic order of sorted vertices.

        The empty face comes first (unless the complex is void). Enumeration
        is by backtracking, so only faces are ever visited.
        """
        if self.is_void:
            return
        within = self.full_mask if within is None else within & self.full_mask
        order = [v for v in range(self.num_vertices) if within >> v & 1]

        def walk(face: int, start: int) -> Iterator[int]:
            yield face
            for k in range(start, len(order)):
                v = order[k]
                if self.extends(face, v):
                    yield from walk(face | (1 << v), k + 1)

        yield from walk(0, 0)

    def cone_apex(self, within: Optional[int] = None) -> Optional[int]:
        """A vertex v in `within` with F + {v} a face for every face F there.

        The restriction to `within` is then a cone and has no reduced
        homology. Returns the vertex position or None.
        """
        within = self.full_mask if within is None else within & self.full_mask
        if self.is_void:
            return None
        for v in range(self.num_vertices):
            bit = 1 << v
            if not within & bit:
                continue
            if self.conflicts is not None:
                if not self.conflicts[v] & within:
                    return v
            elif all(
                any(((facet & within) | bit) & ~other == 0 for other in self.facets)
                for facet in self.facets
            ):
                return v
        return None

    def labels_of(self, mask: int) -> tuple[Hashable, ...]:
        return tuple(
            label for pos, label in enumerate(self.vertex_labels) if mask >> pos & 1
        )


@dataclass(frozen=True)
class DimVector:
    """Reduced homology dimensions, dims[p] for p >= -1.

    Only nonzero degrees are stored, sorted ascending.
    """
    dims: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: dict[int, int]) -> "DimVector":
        for p, d in mapping.items():
            if d < 0:
                raise StructuralError(f"negative homology dimension {d} in degree {p}")
        return cls(tuple(sorted((p, d) for p, d in mapping.items() if d)))

    def __getitem__(self, p: int) -> int:
        for q, d in self.dims:
            if q == p:
                return d
        return 0

    @property
    def total(self) -> int:
        return sum(d for _, d in self.dims)

    @property
    def is_zero(self) -> bool:
        return not self.dims

    @property
    def euler(self) -> int:
        """Reduced Euler characteristic: sum of (-1)^p dim H~_p."""
        return sum((-1) ** (p % 2) * d for p, d in self.dims)

    def to_dict(self) -> dict:
        return {str(p): d for p, d in self.dims}
