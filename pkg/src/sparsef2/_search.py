"""Low-level subset-sum search helpers over packed GF(2) syndromes.

Exact-weight layers are kept in colex order (subsets sorted by largest
element), so layer w is built from layer w-1 with one vectorized XOR per
column and positions can be unranked back into supports.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .errors import ResourceError
from .f2 import BitVec


def colex_unrank(rank: int, w: int) -> tuple[int, ...]:
    """The w-subset with the given colex rank, as an ascending index tuple."""
    out = []
    r = rank
    for i in range(w, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= r:
            c += 1
        out.append(c)
        r -= comb(c, i)
    return tuple(reversed(out))


def next_layer(cols: np.ndarray, w: int, prev: np.ndarray) -> np.ndarray:
    """Syndromes of all exact-w column subsets in colex order from the (w-1) layer."""
    n = len(cols)
    out = np.empty(comb(n, w), dtype=np.uint64)
    pos = 0
    for j in range(w - 1, n):
        cnt = comb(j, w - 1)
        out[pos : pos + cnt] = prev[:cnt] ^ cols[j]
        pos += cnt
    return out


def scan_layer(
    cols: np.ndarray, w: int, prev: np.ndarray, target: int, keep: bool, tie_cap: int = 1 << 20
) -> tuple[list[tuple[int, ...]], np.ndarray | None]:
    """One streamed pass over the exact-w layer.

    Returns (supports of subsets whose syndrome equals target, the full layer
    if ``keep`` and nothing was found, else None).
    """
    n = len(cols)
    t = np.uint64(target)
    hits: list[tuple[int, ...]] = []
    blocks: list[np.ndarray] = []
    for j in range(w - 1, n):
        cnt = comb(j, w - 1)
        if cnt == 0:
            continue
        block = prev[:cnt] ^ cols[j]
        for p in np.flatnonzero(block == t):
            hits.append(colex_unrank(int(p), w - 1) + (j,))
            if len(hits) > tie_cap:
                raise ResourceError(f"more than {tie_cap} equal-weight solutions; raise the tie cap")
        if keep:
            blocks.append(block)
    layer = None
    if keep and not hits:
        layer = np.concatenate(blocks) if blocks else np.empty(0, dtype=np.uint64)
    return hits, layer


def subset_syndrome(cols: list[int], subset) -> int:
    s = 0
    for j in subset:
        s ^= cols[j]
    return s


def mitm_kernel_min_weight(cols: list[int], n: int, cap: int) -> tuple[int, BitVec, int] | None:
    """Smallest 1 <= w <= cap such that some w-subset of columns XORs to zero,
    with the lex-least witness and the number of enumerated subsets; None if
    no such subset exists."""
    work = 0
    for w in range(1, cap + 1):
        w1 = (w + 1) // 2
        w2 = w - w1
        table: dict[int, list[tuple[int, ...]]] = {}
        for sub in combinations(range(n), w1):
            work += 1
            table.setdefault(subset_syndrome(cols, sub), []).append(sub)
        hits = []
        for sub in combinations(range(n), w2):
            work += 1
            s = subset_syndrome(cols, sub)
            for other in table.get(s, ()):
                support = set(other) ^ set(sub)
                if len(support) == w:
                    hits.append(BitVec.from_support(n, support))
        if hits:
            return w, min(hits, key=BitVec.lex_key), work
    return None
