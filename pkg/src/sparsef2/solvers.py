"""Exact decision/search procedures: three cross-checking sparse solvers for
inhomogeneous systems, minimum-weight search for homogeneous ones, and exact
best-agreement oracles for parities, juntas, and low-degree polynomials."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from ._search import colex_unrank, mitm_kernel_min_weight, next_layer, scan_layer, subset_syndrome
from .errors import InputError, ResourceError, ValidationError
from .f2 import BitVec, nullspace_basis, rank
from .instances import EvenSetInstance, PointValueSet, VectorSumInstance

DEFAULT_ENUM_CAP = 80_000_000
DEFAULT_MEMORY_CAP = 45_000_000
DEFAULT_BFS_CAP = 1 << 22
_NUMPY_THRESHOLD = 150_000


@dataclass(frozen=True)
class SolveReport:
    feasible: bool
    witness: BitVec | None
    weight: int | None
    algorithm: str
    work: int

    def __post_init__(self):
        if self.feasible and self.witness is None:
            raise ValidationError("feasible report without witness")


def _verified(inst: VectorSumInstance, witness: BitVec, algorithm: str, work: int) -> SolveReport:
    if not inst.accepts(witness):
        raise ValidationError(f"{algorithm} produced a non-solution; this is a bug")
    return SolveReport(True, witness, witness.weight(), algorithm, work)


def _zero_solution(inst: VectorSumInstance, algorithm: str) -> SolveReport | None:
    # x = 0 solves Mx = b exactly when b = 0.
    if inst.b.is_zero():
        return SolveReport(True, BitVec.zeros(inst.m.cols), 0, algorithm, 1)
    return None


def _search_states(n: int, k: int) -> int:
    return sum(comb(n, w) for w in range(k + 1))


def solve_exhaustive(inst: VectorSumInstance, enum_cap: int = DEFAULT_ENUM_CAP) -> SolveReport:
    """Enumerate all vectors of weight <= k by increasing weight; exact.

    Reports the minimal-weight solution, lex-least (coordinate-0-first
    01-string order) among ties.
    """
    n, k = inst.m.cols, min(inst.k, inst.m.cols)
    states = _search_states(n, k)
    if states > enum_cap:
        raise ResourceError(f"{states} candidate vectors exceed enumeration cap {enum_cap}")
    early = _zero_solution(inst, "exhaustive")
    if early is not None:
        return early
    if states > _NUMPY_THRESHOLD and inst.m.rows <= 64:
        return _exhaustive_numpy(inst, k)
    cols = inst.m.col_bits()
    target = inst.b.bits
    work = 0
    for w in range(1, k + 1):
        ties = []
        for sub in combinations(range(n), w):
            work += 1
            if subset_syndrome(cols, sub) == target:
                ties.append(BitVec.from_support(n, sub))
        if ties:
            return _verified(inst, min(ties, key=BitVec.lex_key), "exhaustive", work)
    return SolveReport(False, None, None, "exhaustive", work)


def _exhaustive_numpy(inst: VectorSumInstance, k: int) -> SolveReport:
    n = inst.m.cols
    cols = np.array(inst.m.col_bits(), dtype=np.uint64)
    prev = np.zeros(1, dtype=np.uint64)
    work = 0
    for w in range(1, k + 1):
        hits, layer = scan_layer(cols, w, prev, inst.b.bits, keep=(w < k))
        work += comb(n, w)
        if hits:
            witness = min((BitVec.from_support(n, s) for s in hits), key=BitVec.lex_key)
            return _verified(inst, witness, "exhaustive", work)
        prev = layer
    return SolveReport(False, None, None, "exhaustive", work)


def solve_mitm(
    inst: VectorSumInstance,
    enum_cap: int = DEFAULT_ENUM_CAP,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> SolveReport:
    """Meet in the middle: a syndrome table of half-weight column sums probed
    with the other half. Same feasibility and minimal weight as exhaustive."""
    n, k = inst.m.cols, min(inst.k, inst.m.cols)
    half = (k + 1) // 2
    table_states = _search_states(n, half)
    if table_states > memory_cap:
        raise ResourceError(f"{table_states} table entries exceed memory cap {memory_cap}")
    if 2 * table_states > enum_cap:
        raise ResourceError(f"meet-in-the-middle work exceeds enumeration cap {enum_cap}")
    early = _zero_solution(inst, "mitm")
    if early is not None:
        return early
    if table_states > _NUMPY_THRESHOLD and inst.m.rows <= 64:
        return _mitm_numpy(inst, k)
    return _mitm_python(inst, k)


def _mitm_python(inst: VectorSumInstance, k: int) -> SolveReport:
    n = inst.m.cols
    cols = inst.m.col_bits()
    target = inst.b.bits
    work = 0
    table: dict[int, tuple[int, ...]] = {}
    for w1 in range((k + 1) // 2 + 1):
        for sub in combinations(range(n), w1):
            work += 1
            table.setdefault(subset_syndrome(cols, sub), sub)
    best: tuple[int, str, BitVec] | None = None
    for w2 in range(k // 2 + 1):
        for sub in combinations(range(n), w2):
            work += 1
            other = table.get(target ^ subset_syndrome(cols, sub))
            if other is None:
                continue
            support = set(other) ^ set(sub)
            if not support and target != 0:
                continue
            if len(support) > k:
                continue
            cand = BitVec.from_support(n, support)
            key = (cand.weight(), cand.lex_key(), cand)
            if best is None or key[:2] < best[:2]:
                best = key
    if best is None:
        return SolveReport(False, None, None, "mitm", work)
    return _verified(inst, best[2], "mitm", work)


def _mitm_numpy(inst: VectorSumInstance, k: int) -> SolveReport:
    n = inst.m.cols
    py_cols = inst.m.col_bits()
    cols = np.array(py_cols, dtype=np.uint64)
    target = inst.b.bits
    layers: list[np.ndarray] = [np.zeros(1, dtype=np.uint64)]
    sorted_layers: dict[int, np.ndarray] = {}
    work = 0

    def layer(w: int) -> np.ndarray:
        while len(layers) <= w:
            layers.append(next_layer(cols, len(layers), layers[-1]))
        return layers[w]

    for w in range(1, k + 1):
        w1, w2 = (w + 1) // 2, w // 2
        tbl = layer(w1)
        if len(tbl) == 0:
            continue
        if w1 not in sorted_layers:
            sorted_layers[w1] = np.sort(tbl)
            work += len(tbl)
        srt = sorted_layers[w1]
        probes = layer(w2) ^ np.uint64(target)
        work += len(probes)
        pos = np.searchsorted(srt, probes)
        pos[pos == len(srt)] = len(srt) - 1
        hit_ranks = np.flatnonzero(srt[pos] == probes)
        if hit_ranks.size == 0:
            continue
        q = colex_unrank(int(hit_ranks[0]), w2)
        needed = target ^ subset_syndrome(py_cols, q)
        p_rank = int(np.flatnonzero(tbl == np.uint64(needed))[0])
        p = colex_unrank(p_rank, w1)
        witness = BitVec.from_support(n, set(p) ^ set(q))
        return _verified(inst, witness, "mitm", work)
    return SolveReport(False, None, None, "mitm", work)


def solve_bfs(inst: VectorSumInstance, state_cap: int = DEFAULT_BFS_CAP) -> SolveReport:
    """Breadth-first search over the syndrome space F2^m with columns as edge
    labels; path labels with even repetitions cancelled form the witness."""
    m, n, k = inst.m.rows, inst.m.cols, inst.k
    if 1 << m > state_cap:
        raise ResourceError(f"2^{m} syndrome states exceed cap {state_cap}")
    early = _zero_solution(inst, "bfs")
    if early is not None:
        return early
    cols = inst.m.col_bits()
    # Keep the first column index per distinct nonzero label.
    labels: dict[int, int] = {}
    for j, c in enumerate(cols):
        if c != 0 and c not in labels:
            labels[c] = j
    dist = [-1] * (1 << m)
    parent_state = [0] * (1 << m)
    parent_col = [-1] * (1 << m)
    dist[0] = 0
    queue = deque([0])
    target = inst.b.bits
    work = 0
    while queue:
        u = queue.popleft()
        work += 1
        if u == target or dist[u] >= k:
            continue
        du = dist[u]
        for c, j in labels.items():
            v = u ^ c
            if dist[v] == -1:
                dist[v] = du + 1
                parent_state[v] = u
                parent_col[v] = j
                queue.append(v)
    if dist[target] == -1 or dist[target] > k:
        return SolveReport(False, None, None, "bfs", work)
    support = 0
    v = target
    while v != 0:
        support ^= 1 << parent_col[v]  # even repetitions cancel
        v = parent_state[v]
    witness = BitVec(n, support)
    assert witness.weight() <= dist[target]
    return _verified(inst, witness, "bfs", work)


def evenset_min_weight(
    inst: EvenSetInstance,
    sparse_cap: int | None = None,
    dim_cap: int = 24,
) -> SolveReport:
    """Minimum weight of a nonzero kernel vector; feasible iff it is <= k.

    Enumerates the whole kernel when its dimension is at most ``dim_cap``;
    otherwise a meet-in-the-middle search up to ``sparse_cap`` is required.
    """
    n = inst.m.cols
    dim = n - rank(inst.m)
    if dim == 0:
        return SolveReport(False, None, None, "kernel-enum", 1)
    if dim <= dim_cap:
        basis = [v.bits for v in nullspace_basis(inst.m)]
        cur = 0
        best_w = n + 1
        ties: list[int] = []
        for i in range(1, 1 << dim):
            cur ^= basis[(i & -i).bit_length() - 1]
            w = cur.bit_count()
            if w < best_w:
                best_w = w
                ties = [cur]
            elif w == best_w:
                ties.append(cur)
        witness = min((BitVec(n, b) for b in ties), key=BitVec.lex_key)
        feasible = best_w <= inst.k
        if feasible and not inst.accepts(witness):
            raise ValidationError("kernel enumeration produced a non-solution; this is a bug")
        return SolveReport(feasible, witness, best_w, "kernel-enum", (1 << dim) - 1)
    if sparse_cap is None:
        raise ResourceError(f"kernel dimension {dim} exceeds {dim_cap}; supply a sparse search cap")
    found = mitm_kernel_min_weight(inst.m.col_bits(), n, sparse_cap)
    if found is None:
        work = 2 * _search_states(n, (sparse_cap + 1) // 2)
        return SolveReport(False, None, None, "mitm-sparse", work)
    w, witness, work = found
    feasible = w <= inst.k
    if feasible and not inst.accepts(witness):
        raise ValidationError("sparse kernel search produced a non-solution; this is a bug")
    return SolveReport(feasible, witness, w, "mitm-sparse", work)


@dataclass(frozen=True)
class ParityForm:
    """Linear form over GF(2): x -> <coeffs, x> + constant."""

    coeffs: BitVec
    constant: int = 0

    def evaluate(self, x: BitVec) -> int:
        return self.coeffs.dot(x) ^ self.constant

    def support(self) -> tuple[int, ...]:
        return self.coeffs.support()


def parity_agreement(pv: PointValueSet, form: ParityForm) -> Fraction:
    hits = sum(1 for z, b in pv.pairs() if form.evaluate(z) == b)
    return Fraction(hits, len(pv))


def best_parity_agreement(
    pv: PointValueSet, k: int, homogeneous_only: bool = False, cap: int = DEFAULT_ENUM_CAP
) -> tuple[ParityForm, Fraction]:
    """Exact max agreement over linear forms on <= k variables (empty support
    included); with the constant term allowed unless homogeneous_only."""
    if not pv.points:
        raise InputError("empty point-value set")
    n = pv.dim
    m = len(pv)
    forms = sum(comb(n, w) for w in range(min(k, n) + 1))
    if forms * m > cap:
        raise ResourceError(f"{forms} forms x {m} pairs exceed cap {cap}")
    pts = [(z.bits, b) for z, b in pv.pairs()]
    best: tuple[Fraction, ParityForm] | None = None
    for w in range(min(k, n) + 1):
        for sub in combinations(range(n), w):
            mask = 0
            for i in sub:
                mask |= 1 << i
            hits = sum(1 for z, b in pts if ((mask & z).bit_count() & 1) == b)
            options = [(Fraction(hits, m), ParityForm(BitVec(n, mask), 0))]
            if not homogeneous_only:
                options.append((Fraction(m - hits, m), ParityForm(BitVec(n, mask), 1)))
            for frac, form in options:
                if best is None or frac > best[0]:
                    best = (frac, form)
    return best[1], best[0]


def best_junta_agreement(pv: PointValueSet, k: int, cap: int = DEFAULT_ENUM_CAP) -> Fraction:
    """Exact max agreement over all functions of <= k variables.

    Per support, the optimal junta answers the majority value on every
    projected pattern, so the maximum is a counting problem.
    """
    if not pv.points:
        raise InputError("empty point-value set")
    n = pv.dim
    m = len(pv)
    keff = min(k, n)
    if comb(n, keff) * (1 << keff) * m > cap:
        raise ResourceError("junta enumeration exceeds cap")
    pts = [(z.bits, b) for z, b in pv.pairs()]
    best = Fraction(0)
    for sub in combinations(range(n), keff):
        counts: dict[int, list[int]] = {}
        for z, b in pts:
            pattern = 0
            for pos, i in enumerate(sub):
                pattern |= ((z >> i) & 1) << pos
            counts.setdefault(pattern, [0, 0])[b] += 1
        agree = sum(max(c0, c1) for c0, c1 in counts.values())
        best = max(best, Fraction(agree, m))
        if best == 1:
            break
    return best


@dataclass(frozen=True)
class Poly:
    """Multilinear polynomial over GF(2): XOR of monomials plus a constant."""

    n: int
    monomials: tuple[tuple[int, ...], ...]
    constant: int = 0

    def evaluate(self, x: BitVec) -> int:
        val = self.constant
        for mono in self.monomials:
            val ^= all(x.get(i) for i in mono)
        return val & 1

    def degree(self) -> int:
        return max((len(mo) for mo in self.monomials), default=0)

    def is_zero(self) -> bool:
        return not self.monomials and self.constant == 0


def poly_agreement_bound(
    points: list[BitVec], k: int, d: int, cap: int = DEFAULT_ENUM_CAP
) -> tuple[Poly, Fraction]:
    """Largest advantage (fraction of points on which P vanishes, minus the
    exact uniform vanishing probability) over nonzero degree-<=d polynomials
    on <= k variables."""
    if not points:
        raise InputError("empty point set")
    n = points[0].n
    m = len(points)
    keff = min(k, n)
    monos_per_support = sum(comb(keff, i) for i in range(1, d + 1))
    if comb(n, keff) * (1 << (monos_per_support + 1)) > cap:
        raise ResourceError("polynomial enumeration exceeds cap")
    pts = np.array([p.bits for p in points], dtype=np.uint64)
    best: tuple[Fraction, Poly] | None = None
    size = 1 << keff
    for sub in combinations(range(n), keff):
        proj = np.zeros(len(pts), dtype=np.int64)
        for pos, i in enumerate(sub):
            proj |= ((pts >> np.uint64(i)) & np.uint64(1)).astype(np.int64) << pos
        counts = np.bincount(proj, minlength=size)
        monos = [mo for deg in range(1, d + 1) for mo in combinations(range(keff), deg)]
        # Truth table of each monomial over the 2^keff patterns, packed in an int.
        mono_tt = []
        patterns = range(size)
        for mo in monos:
            mask = 0
            for i in mo:
                mask |= 1 << i
            tt = 0
            for p in patterns:
                if p & mask == mask:
                    tt |= 1 << p
            mono_tt.append(tt)
        full = (1 << size) - 1
        for coeffs in range(1, 1 << (len(monos) + 1)):
            tt = full if coeffs & 1 else 0  # low bit = constant term
            c = coeffs >> 1
            while c:
                b = (c & -c).bit_length() - 1
                tt ^= mono_tt[b]
                c &= c - 1
            zero_mask = ~tt & full
            uniform_zero = Fraction(zero_mask.bit_count(), size)
            point_zero_count = 0
            zm = zero_mask
            while zm:
                p = (zm & -zm).bit_length() - 1
                point_zero_count += int(counts[p])
                zm &= zm - 1
            advantage = Fraction(point_zero_count, m) - uniform_zero
            if best is None or advantage > best[0]:
                poly = Poly(
                    n,
                    tuple(tuple(sub[i] for i in monos[b]) for b in range((coeffs >> 1).bit_length()) if (coeffs >> 1) >> b & 1),
                    coeffs & 1,
                )
                best = (advantage, poly)
    return best[1], best[0]
