"""
Data models for Betti tables in SkewBetti.

BettiTable: Graded Betti numbers beta_{i,j} of an ideal (beta_{0,2} counts
    quadric generators), with pd, reg and a computer-algebra style rendering.
ExtremalPrediction: The block product formula for closed graphs.
CorsoNagelTotals: Total Betti numbers of a Ferrers shape from the closed form.
"""

from dataclasses import dataclass, field
from typing import Optional

from src.utils.errors import StructuralError


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers of an ideal.

    Attributes:
        entries: Nonzero (i, j, value) triples sorted by i then j.
    """
    entries: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: dict[tuple[int, int], int]) -> "BettiTable":
        """Build a table from {(i, j): value}, dropping zeros."""
        for (i, j), value in counts.items():
            if value < 0 or i < 0 or j < 0:
                raise StructuralError(f"invalid Betti entry beta_{i},{j} = {value}")
        return cls(tuple(sorted((i, j, v) for (i, j), v in counts.items() if v)))

    def get(self, i: int, j: int) -> int:
        for a, b, v in self.entries:
            if a == i and b == j:
                return v
        return 0

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): v for i, j, v in self.entries}

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def pd(self) -> Optional[int]:
        """Projective dimension: max i with a nonzero beta_{i,j}."""
        if not self.entries:
            return None
        return max(i for i, _, _ in self.entries)

    @property
    def reg(self) -> Optional[int]:
        """Regularity: max j - i over nonzero entries."""
        if not self.entries:
            return None
        return max(j - i for i, j, _ in self.entries)

    def totals(self) -> tuple[int, ...]:
        """Total Betti numbers beta_0 .. beta_pd."""
        if not self.entries:
            return ()
        sums = [0] * (self.pd + 1)
        for i, _, v in self.entries:
            sums[i] += v
        return tuple(sums)

    def column(self, i: int) -> dict[int, int]:
        """Nonzero entries of homological degree i, keyed by j."""
        return {j: v for a, j, v in self.entries if a == i}

    def is_linear(self, step: int = 2) -> bool:
        """Every entry sits at j = i + step."""
        return all(j - i == step for i, j, _ in self.entries)

    def render(self) -> str:
        """Text table: columns by i, rows by j - i, '.' for zeros."""
        if not self.entries:
            return "(zero table)"
        pd = self.pd
        rows = sorted({j - i for i, j, _ in self.entries})
        lookup = self.as_dict()
        cells = [[str(i) for i in range(pd + 1)]]
        cells.append([str(t) for t in self.totals()])
        for r in range(rows[0], rows[-1] + 1):
            cells.append([
                str(lookup[(i, i + r)]) if (i, i + r) in lookup else "."
                for i in range(pd + 1)
            ])
        width = max(len(c) for row in cells for c in row)
        labels = [""] + ["total:"] + [f"{r}:" for r in range(rows[0], rows[-1] + 1)]
        label_width = max(len(label) for label in labels)
        lines = []
        for label, row in zip(labels, cells):
            body = " ".join(c.rjust(width) for c in row)
            lines.append(f"{label.rjust(label_width)} {body}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "betti": [[i, j, v] for i, j, v in self.entries],
            "pd": self.pd,
            "reg": self.reg,
        }


@dataclass
class ExtremalPrediction:
    """Predicted unique extremal Betti number of a closed graph.

    Attributes:
        applicable: Every block has the plateau shape mu_1 = .. = mu_s >= 1.
        p: 2n - 3 - sum(mu_i + s_i) over blocks.
        r: 2m + 3 for m cut vertices.
        value: Product of s_i * mu_i over blocks.
        per_block: (n_i, mu_i, s_i) per block; mu_i is the plateau value
                   (0 when the block has none).
        reason: Why the prediction does not apply, if it does not.
    """
    applicable: bool
    p: Optional[int] = None
    r: Optional[int] = None
    value: Optional[int] = None
    per_block: list[tuple[int, int, int]] = field(default_factory=list)
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "p": self.p,
            "r": self.r,
            "value": self.value,
            "per_block": [list(b) for b in self.per_block],
            "reason": self.reason,
        }


@dataclass(frozen=True)
class CorsoNagelTotals:
    """Closed-form total Betti numbers of a Ferrers shape.

    The resolution is 2-linear, so beta_i sits at j = i + 2.
    """
    totals: tuple[int, ...]
    pd: int

    def as_table(self) -> BettiTable:
        return BettiTable.from_counts(
            {(i, i + 2): value for i, value in enumerate(self.totals)}
        )

    def to_dict(self) -> dict:
        return {"totals": list(self.totals), "pd": self.pd}
