"""Point sets that fool low-degree polynomials.

Rows of a balanced-code image of a homogeneous instance fool linear forms;
coordinate-wise sums of d independent draws then fool degree-d polynomials,
with the bias amplified to 16 * eps^(1/2^(d-1)).
"""

from __future__ import annotations

import random
from itertools import product

from ..codes import balanced_code
from ..errors import DimensionError, InputError, ResourceError
from ..f2 import BitMat, BitVec, mat_mul
from ..instances import EvenSetInstance

DEFAULT_SHIFT_CAP = 2_000_000


def viola_shift(
    points: list[BitVec],
    d: int,
    cap: int = DEFAULT_SHIFT_CAP,
    sample_count: int | None = None,
    seed: int = 0,
) -> list[BitVec]:
    """Coordinate-wise sums over all ordered d-tuples (a multiset of size m^d),
    or a seeded uniform sample of them."""
    if d < 1:
        raise InputError(f"degree {d} must be >= 1")
    if not points:
        raise InputError("empty point set")
    n = points[0].n
    if any(p.n != n for p in points):
        raise DimensionError("points must all have the same length")
    if d == 1 and sample_count is None:
        return list(points)
    pts = [p.bits for p in points]
    if sample_count is not None:
        rng = random.Random(seed)
        out = []
        for _ in range(sample_count):
            acc = 0
            for _ in range(d):
                acc ^= pts[rng.randrange(len(pts))]
            out.append(BitVec(n, acc))
        return out
    total = len(points) ** d
    if total > cap:
        raise ResourceError(f"{total} ordered {d}-tuples exceed cap {cap}; pass sample_count")
    out = []
    for tup in product(pts, repeat=d):
        acc = 0
        for b in tup:
            acc ^= b
        out.append(BitVec(n, acc))
    return out


def fooling_points_with_generator(
    m: BitMat,
    gen: BitMat,
    d: int,
    cap: int = DEFAULT_SHIFT_CAP,
    sample_count: int | None = None,
    seed: int = 0,
) -> list[BitVec]:
    """Rows of gen @ m, shifted to degree d."""
    if gen.cols != m.rows:
        raise DimensionError(f"generator has {gen.cols} columns, instance has {m.rows} rows")
    image = mat_mul(gen, m)
    rows = [image.row(i) for i in range(image.rows)]
    return viola_shift(rows, d, cap=cap, sample_count=sample_count, seed=seed)


def evenset_to_fooling_points(
    inst: EvenSetInstance,
    eps: float,
    d: int,
    seed: int,
    cap: int = DEFAULT_SHIFT_CAP,
    sample_count: int | None = None,
) -> list[BitVec]:
    """Balanced-code image of the instance rows, shifted to degree d.

    Any parity vanishing on every row of the instance vanishes on every
    output point; in the NO case the output inherits the degree-d bias bound.
    """
    code = balanced_code(dim=inst.m.rows, eps=eps, seed=seed)
    return fooling_points_with_generator(
        inst.m, code.generator, d, cap=cap, sample_count=sample_count, seed=seed + 1
    )
