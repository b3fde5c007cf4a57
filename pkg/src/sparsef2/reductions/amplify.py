"""Point-value amplification through a balanced code.

Each output pair is a codeword-weighted combination of input pairs, so a
parity satisfying every input pair still satisfies every output pair, while
a parity missing any input pair agrees with a near-half fraction of the
outputs: the failure vector maps to a balanced nonzero codeword.
"""

from __future__ import annotations

from ..codes import balanced_code
from ..errors import DimensionError, InputError
from ..f2 import BitMat, BitVec
from ..instances import PointValueSet


def amplify_with_generator(pv: PointValueSet, gen: BitMat) -> PointValueSet:
    """Apply an explicit generator: output pair i combines the input pairs
    selected by row i."""
    if not pv.points:
        raise InputError("empty point-value set")
    if gen.cols != len(pv):
        raise DimensionError(f"generator has {gen.cols} columns, set has {len(pv)} pairs")
    n = pv.dim
    pts = [p.bits for p in pv.points]
    out_points = []
    out_values = []
    for row in gen.row_bits:
        acc = 0
        val = 0
        rr = row
        while rr:
            j = (rr & -rr).bit_length() - 1
            acc ^= pts[j]
            val ^= pv.values[j]
            rr &= rr - 1
        out_points.append(BitVec(n, acc))
        out_values.append(val)
    return PointValueSet(tuple(out_points), tuple(out_values), k=pv.k, eps=pv.eps, delta=pv.delta)


def amplify_pointvalues(pv: PointValueSet, eps: float, seed: int) -> PointValueSet:
    """Amplify through a certified eps-balanced code of dimension |pv|."""
    code = balanced_code(dim=len(pv), eps=eps, seed=seed)
    out = amplify_with_generator(pv, code.generator)
    return PointValueSet(out.points, out.values, k=pv.k, eps=eps, delta=pv.delta)


def junta_hardness_instance(pv: PointValueSet, delta: float, k: int, seed: int) -> PointValueSet:
    """Amplify at bias delta * 2^-k, the setting under which no function of k
    variables can agree with more than a 1/2 + delta fraction in the NO case."""
    if delta <= 0:
        raise InputError(f"delta {delta} must be positive")
    if k < 1:
        raise InputError(f"junta arity {k} must be >= 1")
    eps = delta * 2.0**-k
    out = amplify_pointvalues(pv, eps, seed)
    return PointValueSet(out.points, out.values, k=k, eps=eps, delta=delta)
