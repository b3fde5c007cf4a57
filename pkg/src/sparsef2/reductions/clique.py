"""Clique to sparse-vector-sum gadget.

Every vertex gets a distinct nonzero pattern of N = ceil(log2(n+1)) bits.
The coordinate space is k slots of (k-1) pattern-sized subslots, then one
indicator per slot pair, then one per slot. A vertex column fills every
subslot of its slot with the vertex pattern and raises its slot indicator;
an edge column fills one subslot in each of its two slots and raises its
pair indicator. The target raises exactly the k + C(k,2) indicators, so a
solution at that sparsity must pick one vertex per slot and one edge per
pair, and the subslot cancellations force those choices to form a clique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from ..errors import InputError, WitnessError
from ..f2 import BitMat, BitVec
from ..graphs import Graph
from ..instances import VectorSumInstance


@dataclass(frozen=True)
class CliqueGadgetLayout:
    """Row/column bookkeeping for one clique gadget instance."""

    n: int
    k: int
    pattern_bits: int
    edges: tuple[tuple[int, int], ...]

    @property
    def pair_count(self) -> int:
        return self.k * (self.k - 1) // 2

    @property
    def rows(self) -> int:
        return self.k * (self.k - 1) * self.pattern_bits + self.pair_count + self.k

    @property
    def cols(self) -> int:
        return self.n * self.k + len(self.edges) * self.pair_count

    @property
    def sparsity(self) -> int:
        return self.k + self.pair_count

    def pattern(self, v: int) -> int:
        """Vertex v carries the binary encoding of v itself: distinct and nonzero."""
        if not 1 <= v <= self.n:
            raise InputError(f"vertex {v} outside [1, {self.n}]")
        return v

    def subslot_base(self, slot: int, sub: int) -> int:
        if not (1 <= slot <= self.k and 1 <= sub <= self.k - 1):
            raise InputError(f"no subslot ({slot}, {sub}) in a {self.k}-slot layout")
        return ((slot - 1) * (self.k - 1) + (sub - 1)) * self.pattern_bits

    def pair_rank(self, j1: int, j2: int) -> int:
        if not 1 <= j1 < j2 <= self.k:
            raise InputError(f"({j1}, {j2}) is not an ordered slot pair")
        return (j1 - 1) * self.k - (j1 - 1) * j1 // 2 + (j2 - j1 - 1)

    def pair_indicator_row(self, j1: int, j2: int) -> int:
        return self.k * (self.k - 1) * self.pattern_bits + self.pair_rank(j1, j2)

    def slot_indicator_row(self, slot: int) -> int:
        return self.k * (self.k - 1) * self.pattern_bits + self.pair_count + (slot - 1)

    def vertex_column(self, v: int, slot: int) -> int:
        if not 1 <= slot <= self.k:
            raise InputError(f"slot {slot} outside [1, {self.k}]")
        return (v - 1) * self.k + (slot - 1)

    def edge_column(self, edge_index: int, j1: int, j2: int) -> int:
        return self.n * self.k + edge_index * self.pair_count + self.pair_rank(j1, j2)

    def vertex_column_bits(self, v: int, slot: int) -> int:
        bits = 1 << self.slot_indicator_row(slot)
        q = self.pattern(v)
        for sub in range(1, self.k):
            bits |= q << self.subslot_base(slot, sub)
        return bits

    def edge_column_bits(self, u: int, v: int, j1: int, j2: int) -> int:
        """Column for mapping slot pair (j1, j2) to edge (u, v), u < v.

        The lower vertex lands in slot j1 (cancelling its subslot j2-1), the
        higher in slot j2 (cancelling its subslot j1).
        """
        if not (u < v and 1 <= j1 < j2 <= self.k):
            raise InputError("edge and slot pair must both be ascending")
        bits = 1 << self.pair_indicator_row(j1, j2)
        bits |= self.pattern(u) << self.subslot_base(j1, j2 - 1)
        bits |= self.pattern(v) << self.subslot_base(j2, j1)
        return bits

    def column_bits(self, col: int) -> int:
        if col < self.n * self.k:
            return self.vertex_column_bits(col // self.k + 1, col % self.k + 1)
        rest = col - self.n * self.k
        edge_index, pr = divmod(rest, self.pair_count)
        if edge_index >= len(self.edges):
            raise InputError(f"column {col} outside [0, {self.cols})")
        pairs = list(combinations(range(1, self.k + 1), 2))
        u, v = self.edges[edge_index]
        return self.edge_column_bits(u, v, *pairs[pr])

    def target_bits(self) -> int:
        bits = 0
        for j1, j2 in combinations(range(1, self.k + 1), 2):
            bits |= 1 << self.pair_indicator_row(j1, j2)
        for slot in range(1, self.k + 1):
            bits |= 1 << self.slot_indicator_row(slot)
        return bits


def clique_to_vectorsum(g: Graph, k: int) -> tuple[VectorSumInstance, CliqueGadgetLayout]:
    """Emit the gadget instance: a k-clique exists iff some k + C(k,2) columns sum
    to the all-indicators target."""
    if k < 2:
        raise InputError(f"clique size {k} must be >= 2")
    if g.n < k:
        raise InputError(f"clique size {k} exceeds vertex count {g.n}")
    layout = CliqueGadgetLayout(g.n, k, math.ceil(math.log2(g.n + 1)), g.edges)
    cols = [layout.column_bits(c) for c in range(layout.cols)]
    m = BitMat.from_cols(cols, layout.rows)
    b = BitVec(layout.rows, layout.target_bits())
    inst = VectorSumInstance(m, b, layout.sparsity, provenance=f"clique-gadget n={g.n} k={k}")
    return inst, layout


def assemble_clique_solution(layout: CliqueGadgetLayout, clique) -> BitVec:
    """The designed solution for a k-clique: its vertices in ascending order take
    slots 1..k, plus the matching edge column for every slot pair."""
    vs = sorted(set(clique))
    if len(vs) != layout.k:
        raise WitnessError(f"expected {layout.k} distinct vertices, got {len(vs)}")
    edge_index = {e: i for i, e in enumerate(layout.edges)}
    support = [layout.vertex_column(v, slot) for slot, v in enumerate(vs, start=1)]
    for (j1, u), (j2, v) in combinations(enumerate(vs, start=1), 2):
        ei = edge_index.get((u, v))
        if ei is None:
            raise WitnessError(f"({u}, {v}) is not an edge; the vertex set is not a clique")
        support.append(layout.edge_column(ei, j1, j2))
    return BitVec.from_support(layout.cols, support)


def extract_clique(layout: CliqueGadgetLayout, solution: BitVec) -> frozenset:
    """Read the k chosen vertex columns (one per slot) out of a satisfying
    solution of weight <= k + C(k,2)."""
    if solution.n != layout.cols:
        raise WitnessError(f"solution length {solution.n} != column count {layout.cols}")
    if solution.weight() > layout.sparsity:
        raise WitnessError(f"solution weight {solution.weight()} exceeds {layout.sparsity}")
    acc = 0
    for c in solution.support():
        acc ^= layout.column_bits(c)
    if acc != layout.target_bits():
        raise WitnessError("solution does not satisfy the gadget instance")
    slot_vertex: dict[int, int] = {}
    for c in solution.support():
        if c >= layout.n * layout.k:
            continue
        v, slot = c // layout.k + 1, c % layout.k + 1
        if slot in slot_vertex:
            raise WitnessError(f"two vertex columns in slot {slot}")
        slot_vertex[slot] = v
    if len(slot_vertex) != layout.k:
        raise WitnessError(f"expected one vertex column per slot, got {len(slot_vertex)}")
    return frozenset(slot_vertex.values())
