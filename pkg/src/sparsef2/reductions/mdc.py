"""Minimum-distance gap machinery: tensor powering, expander-walk row
amplification, and conversion to a sparse-parity learning instance."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from ..errors import DimensionError, InputError, ResourceError, ValidationError
from ..f2 import BitMat, BitVec
from ..graphs import Graph, enumerate_walks
from ..instances import PointValueSet

DEFAULT_TENSOR_CAP = 1 << 22
DEFAULT_ROW_CAP = 2_000_000


@dataclass(frozen=True)
class MdcParams:
    """Pipeline parameters: base gap constant, tensor exponent, walk length,
    expander degree, and target polynomial degree."""

    zeta: float
    tensor_power: int
    walk_len: int
    expander_degree: int
    poly_degree: int

    def __post_init__(self):
        if not 0 < self.zeta < 0.2:
            raise ValidationError(f"gap constant {self.zeta} outside (0, 1/5)")
        if self.tensor_power < 1 or self.poly_degree < 1:
            raise ValidationError("tensor power and polynomial degree must be >= 1")
        if self.walk_len < 1:
            raise ValidationError(f"walk length {self.walk_len} must be >= 1")
        if self.expander_degree < 2:
            raise ValidationError(f"expander degree {self.expander_degree} must be >= 2")

    @classmethod
    def derive(cls, zeta: float, tensor_power: int, poly_degree: int) -> "MdcParams":
        """Walk length 1/(2 zeta)^K and degree (4/(5 zeta)^K)^10, rounded up.

        These blow up fast; desk-scale runs pass explicit small values instead.
        """
        gap = (5 * zeta) ** tensor_power
        walk_len = math.ceil(1.0 / (2**tensor_power * zeta**tensor_power))
        degree = math.ceil((4.0 / gap) ** 10)
        return cls(zeta, tensor_power, walk_len, degree, poly_degree)


def walk_avoidance_bound(mu: float, lam: float, degree: int, t: int) -> float:
    """Upper bound (sqrt(1-mu) + lam/D)^t on the fraction of t-vertex walks of a
    D-regular graph with second eigenvalue lam that avoid a mu-dense vertex set."""
    if not 0 <= mu <= 1:
        raise InputError(f"density {mu} outside [0, 1]")
    return (math.sqrt(1.0 - mu) + lam / degree) ** t


def kron(a: BitMat, b: BitMat) -> BitMat:
    """Kronecker product with row-major index order: entry ((i1, i2), (j1, j2))
    is a[i1, j1] * b[i2, j2] at position (i1*b.rows + i2, j1*b.cols + j2)."""
    rows = []
    for ra in a.row_bits:
        for rb in b.row_bits:
            bits = 0
            rr = ra
            while rr:
                j = (rr & -rr).bit_length() - 1
                bits |= rb << (j * b.cols)
                rr &= rr - 1
            rows.append(bits)
    return BitMat.from_bitrows(rows, a.cols * b.cols)


def mdc_tensor(a: BitMat, power: int, cap: int = DEFAULT_TENSOR_CAP) -> BitMat:
    """Kronecker power of a generator; minimum relative distance multiplies,
    and a witness with leading coordinate 1 tensors to one again."""
    if power < 1:
        raise InputError(f"tensor power {power} must be >= 1")
    if a.cols**power > cap or a.rows**power > cap:
        raise ResourceError(f"{a.rows}^{power} x {a.cols}^{power} tensor exceeds cap {cap}")
    out = a
    for _ in range(power - 1):
        out = kron(out, a)
    return out


def mdc_walk_amplify(
    a: BitMat,
    g: Graph,
    t: int,
    cap: int = DEFAULT_ROW_CAP,
    walks: list[tuple[int, ...]] | None = None,
) -> BitMat:
    """For every t-vertex walk, all 2^t signed combinations of the visited rows.

    ``walks`` may carry a seeded sample (from graphs.sample_walks) when full
    enumeration exceeds the cap.
    """
    if a.rows != g.n:
        raise DimensionError(f"matrix has {a.rows} rows but the graph has {g.n} vertices")
    if walks is None:
        if not g.is_regular():
            raise InputError("walk amplification requires a regular graph")
        degree = g.degrees()[0]
        total = g.n * degree ** (t - 1) * 2**t
        if total > cap:
            raise ResourceError(
                f"{total} amplified rows exceed cap {cap}; pass a sampled walk list instead"
            )
        walks = enumerate_walks(g, t)
    elif len(walks) * 2**t > cap:
        raise ResourceError(f"{len(walks) * 2**t} amplified rows exceed cap {cap}")
    rows = []
    for walk in walks:
        if len(walk) != t:
            raise InputError(f"walk {walk} does not have {t} vertices")
        vals = [0] * (1 << t)
        for s in range(1, 1 << t):
            low = (s & -s).bit_length() - 1
            vals[s] = vals[s & (s - 1)] ^ a.row_bits[walk[low] - 1]
        rows.extend(vals)
    return BitMat.from_bitrows(rows, a.cols)


def mdc_to_learning(b: BitMat, d: int, cap: int = DEFAULT_ROW_CAP) -> PointValueSet:
    """One point-value pair per d-subset of rows: the summed row split as
    (tail coordinates, leading coordinate)."""
    if d < 1:
        raise InputError(f"combination size {d} must be >= 1")
    if b.cols < 2:
        raise InputError("need at least 2 columns to split into point and value")
    if d > b.rows:
        raise InputError(f"cannot choose {d} of {b.rows} rows")
    total = math.comb(b.rows, d)
    if total > cap:
        raise ResourceError(f"{total} row combinations exceed cap {cap}")
    points = []
    values = []
    for sub in combinations(range(b.rows), d):
        acc = 0
        for i in sub:
            acc ^= b.row_bits[i]
        points.append(BitVec(b.cols - 1, acc >> 1))
        values.append(acc & 1)
    return PointValueSet(tuple(points), tuple(values))
