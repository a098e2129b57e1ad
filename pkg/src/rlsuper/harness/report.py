"""Run reports rendered as text or as line-oriented key=value records."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..envelope import UElement, USubspace
from ..linalg import Subspace
from ..liesuper import LieElement

__all__ = ["RunReport", "format_witness"]


def format_witness(w, L=None):
    """Witnesses as basis-name linear combinations."""
    if w is None:
        return ""
    if isinstance(w, (LieElement, UElement)):
        return str(w)
    if isinstance(w, Subspace):
        if L is None or not w.dim:
            return f"subspace of dimension {w.dim}"
        return "span{" + ", ".join(L.format_vector(v) for v in w.basis) + "}"
    if isinstance(w, USubspace):
        return f"subspace of u(L) of dimension {w.dim}"
    if isinstance(w, (tuple, list)):
        return "; ".join(format_witness(x, L) for x in w if x is not None)
    return str(w)


def _one_line(s):
    return " ".join(str(s).split())


@dataclass
class RunReport:
    instance: str
    command: str
    status: str = "OK"
    checks: list = dc_field(default_factory=list)
    values: dict = dc_field(default_factory=dict)
    complete: bool = None
    seed: int = 0
    wall_time: float = 0.0

    def add_check(self, name, status, detail="", witness=""):
        self.checks.append((name, status, detail, witness))

    @property
    def exit_code(self):
        return 1 if self.status == "FAIL" else 0

    def key(self):
        """Everything except wall time, for reproducibility comparisons."""
        return (self.instance, self.command, self.status, tuple(self.checks), tuple(self.values.items()), self.complete, self.seed)

    def render_machine(self):
        lines = [f"instance={self.instance}", f"command={self.command}", f"status={self.status}"]
        for name, status, detail, witness in self.checks:
            lines.append(f"check.{name}={status}")
            if detail:
                lines.append(f"detail.{name}={_one_line(detail)}")
            if witness:
                lines.append(f"witness.{name}={_one_line(witness)}")
        for k, v in self.values.items():
            lines.append(f"{k}={_one_line(v)}")
        if self.complete is not None:
            lines.append(f"complete={'true' if self.complete else 'false'}")
        lines.append(f"seed={self.seed}")
        lines.append(f"wall_time={self.wall_time:.3f}")
        return "\n".join(lines) + "\n"

    def render_text(self):
        lines = [f"{self.command} {self.instance}: {self.status}"]
        width = max((len(c[0]) for c in self.checks), default=0)
        for name, status, detail, witness in self.checks:
            line = f"  {name.ljust(width)}  {status}"
            if detail:
                line += f"  {detail}"
            if witness:
                line += f"  [witness: {witness}]"
            lines.append(line)
        for k, v in self.values.items():
            lines.append(f"  {k}: {v}")
        if self.complete is not None:
            lines.append(f"  complete: {'yes' if self.complete else 'no (sampled)'}")
        lines.append(f"  seed {self.seed}, {self.wall_time:.2f} s")
        return "\n".join(lines) + "\n"

    def render(self, fmt="text"):
        return self.render_machine() if fmt == "machine" else self.render_text()
