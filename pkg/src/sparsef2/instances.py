"""Problem-instance containers shared by the reductions, solvers, and file formats."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import ValidationError
from .f2 import BitMat, BitVec

if TYPE_CHECKING:  # pragma: no cover - import cycle guard for annotations only
    from .reductions.evenset import EvenSetLayout


@dataclass(frozen=True)
class VectorSumInstance:
    """Decide whether some x with weight(x) <= k satisfies Mx = b.

    x = 0 counts as a solution exactly when b = 0.
    """

    m: BitMat
    b: BitVec
    k: int
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        if self.b.n != self.m.rows:
            raise ValidationError(f"target length {self.b.n} != row count {self.m.rows}")
        if self.k < 1:
            raise ValidationError(f"sparsity parameter must be >= 1, got {self.k}")

    def accepts(self, x: BitVec) -> bool:
        from .f2 import mat_vec_mul

        return x.weight() <= self.k and mat_vec_mul(self.m, x) == self.b


@dataclass(frozen=True)
class EvenSetInstance:
    """Decide whether some nonzero x with weight(x) <= k satisfies Mx = 0."""

    m: BitMat
    k: int
    layout: "EvenSetLayout | None" = field(default=None, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise ValidationError(f"sparsity parameter must be >= 1, got {self.k}")

    def accepts(self, x: BitVec) -> bool:
        from .f2 import mat_vec_mul

        return not x.is_zero() and x.weight() <= self.k and mat_vec_mul(self.m, x).is_zero()


@dataclass(frozen=True)
class PointValueSet:
    """Point-value pairs {(z_i, b_i)} for parity/junta/polynomial learning runs."""

    points: tuple[BitVec, ...]
    values: tuple[int, ...]
    k: int | None = None
    eps: float | None = None
    delta: float | None = None

    def __post_init__(self):
        if len(self.points) != len(self.values):
            raise ValidationError(f"{len(self.points)} points but {len(self.values)} values")
        if any(v not in (0, 1) for v in self.values):
            raise ValidationError("values must be bits")
        if self.points:
            n = self.points[0].n
            if any(p.n != n for p in self.points):
                raise ValidationError("points must all have the same length")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        if not self.points:
            raise ValidationError("empty point set has no dimension")
        return self.points[0].n

    def pairs(self):
        return zip(self.points, self.values)
