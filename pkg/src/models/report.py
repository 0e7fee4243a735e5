"""
Data models for command results in SkewBetti.

Computation: One Betti table produced by one method over one field.
RunReport: Everything a subcommand produced, renderable as text or JSON.
"""

from dataclasses import dataclass, field
from typing import Any, Optional

from src.models.betti import BettiTable


@dataclass
class Computation:
    """A Betti table together with how it was obtained.

    Attributes:
        method: "hochster", "nagel-reiner", "corso-nagel" or "hochster+join".
        field: "gf2", "rational" or "n/a" for closed forms.
        table: The computed table.
        concentrated: Whether the last column is concentrated at (pd, pd + reg).
        extremal: (i, j, value) of the unique extremal corner, if any.
    """
    method: str
    field: str
    table: BettiTable
    concentrated: Optional[bool] = None
    extremal: Optional[tuple[int, int, int]] = None

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "field": self.field,
            **self.table.to_dict(),
            "concentrated": self.concentrated,
            "extremal": list(self.extremal) if self.extremal else None,
        }


@dataclass
class RunReport:
    """Result of one subcommand invocation.

    Attributes:
        command: e.g. "ferrers betti" or "closed".
        inputs: Echo of the parsed inputs.
        computations: Betti tables, in the order they were computed.
        agreement: True iff every computation produced the same table
                   (None when fewer than two were run).
        details: Command-specific structured results (decomposition, blocks...).
        notes: Human-readable remarks (degenerate input, not applicable...).
        text: Extra lines for the text rendering only.
        elapsed_s: Wall-clock time of the command.
        ok: False when a check failed.
    """
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    computations: list[Computation] = field(default_factory=list)
    agreement: Optional[bool] = None
    details: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    text: list[str] = field(default_factory=list)
    elapsed_s: float = 0.0
    ok: bool = True

    def compute_agreement(self):
        """Set agreement from the collected computations."""
        if len(self.computations) < 2:
            self.agreement = None
        else:
            first = self.computations[0].table
            self.agreement = all(c.table == first for c in self.computations[1:])

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "ok": self.ok,
            "agreement": self.agreement,
            "computations": [c.to_dict() for c in self.computations],
            "details": self.details,
            "notes": list(self.notes),
        }
        if include_timing:
            out["elapsed_s"] = round(self.elapsed_s, 6)
        return out

    def render_text(self) -> str:
        lines = [f"== {self.command} =="]
        for key, value in self.inputs.items():
            lines.append(f"  {key}: {value}")
        for comp in self.computations:
            lines.append("")
            lines.append(f"[{comp.method} / {comp.field}] pd={comp.table.pd} reg={comp.table.reg}")
            lines.append(comp.table.render())
            if comp.concentrated is not None:
                lines.append(f"  last column concentrated: {comp.concentrated}")
            if comp.extremal:
                i, j, v = comp.extremal
                lines.append(f"  unique extremal: beta_{i},{j} = {v}")
        if self.agreement is not None:
            lines.append("")
            lines.append(f"agreement: {'yes' if self.agreement else 'NO'}")
        if self.text:
            lines.append("")
            lines.extend(self.text)
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"elapsed: {self.elapsed_s:.3f}s")
        return "\n".join(lines)
