"""Bit-packed linear algebra over GF(2).

Vectors and matrices hold their entries in Python integers used as bitsets
(coordinate ``i`` is bit ``i``), so a row operation is a single XOR and
weight/equality are exact: no bits ever exist outside ``[0, len)``.
All values are immutable; every operation returns a fresh object.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, InputError, ValidationError


def _mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class BitVec:
    """Vector over GF(2); coordinate ``i`` is bit ``i`` of ``bits``."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"negative length {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValidationError("bits outside [0, len) are not allowed")

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> "BitVec":
        return cls(n, _mask(n))

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVec":
        if not 0 <= i < n:
            raise InputError(f"coordinate {i} outside [0, {n})")
        return cls(n, 1 << i)

    @classmethod
    def from_bits(cls, seq: Iterable[int]) -> "BitVec":
        bits = 0
        n = 0
        for b in seq:
            if b not in (0, 1):
                raise InputError(f"entry {b!r} is not a bit")
            bits |= b << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from01(cls, s: str) -> "BitVec":
        return cls.from_bits(int(c) for c in s)

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "BitVec":
        bits = 0
        for i in support:
            if not 0 <= i < n:
                raise InputError(f"coordinate {i} outside [0, {n})")
            bits |= 1 << i
        return cls(n, bits)

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.n))

    def get(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise InputError(f"coordinate {i} outside [0, {self.n})")
        return (self.bits >> i) & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.bits >> i) & 1)

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise DimensionError(f"length mismatch {self.n} != {other.n}")
        return BitVec(self.n, self.bits ^ other.bits)

    __add__ = __xor__

    def dot(self, other: "BitVec") -> int:
        if self.n != other.n:
            raise DimensionError(f"length mismatch {self.n} != {other.n}")
        return (self.bits & other.bits).bit_count() & 1

    def concat(self, other: "BitVec") -> "BitVec":
        return BitVec(self.n + other.n, self.bits | (other.bits << self.n))

    def to01(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def lex_key(self) -> str:
        """Sort key: coordinate-0-first 01 string, used for all tie-breaking."""
        return self.to01()

    def __repr__(self) -> str:
        return f"BitVec('{self.to01()}')" if self.n <= 64 else f"BitVec(n={self.n}, wt={self.weight()})"


@dataclass(frozen=True)
class BitMat:
    """Matrix over GF(2); row ``i`` is the packed integer ``row_bits[i]``."""

    rows: int
    cols: int
    row_bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValidationError("negative dimension")
        if len(self.row_bits) != self.rows:
            raise ValidationError(f"expected {self.rows} rows, got {len(self.row_bits)}")
        for r in self.row_bits:
            if r < 0 or r >> self.cols:
                raise ValidationError("row bits outside [0, cols) are not allowed")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMat":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMat":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence, cols: int | None = None) -> "BitMat":
        """Build from a sequence of BitVec, 01-strings, or bit sequences."""
        vecs = [r if isinstance(r, BitVec) else BitVec.from01(r) if isinstance(r, str) else BitVec.from_bits(r) for r in rows]
        if cols is None:
            if not vecs:
                raise InputError("cannot infer column count from zero rows")
            cols = vecs[0].n
        for v in vecs:
            if v.n != cols:
                raise DimensionError(f"row of length {v.n}, expected {cols}")
        return cls(len(vecs), cols, tuple(v.bits for v in vecs))

    @classmethod
    def from_bitrows(cls, row_ints: Sequence[int], cols: int) -> "BitMat":
        return cls(len(row_ints), cols, tuple(row_ints))

    @classmethod
    def from_cols(cls, col_ints: Sequence[int], rows: int) -> "BitMat":
        """Build from column bitsets (bit ``i`` of a column is row ``i``)."""
        out = [0] * rows
        for j, c in enumerate(col_ints):
            if c < 0 or c >> rows:
                raise ValidationError("column bits outside [0, rows) are not allowed")
            while c:
                i = (c & -c).bit_length() - 1
                out[i] |= 1 << j
                c &= c - 1
        return cls(rows, len(col_ints), tuple(out))

    def row(self, i: int) -> BitVec:
        return BitVec(self.cols, self.row_bits[i])

    def col(self, j: int) -> BitVec:
        if not 0 <= j < self.cols:
            raise InputError(f"column {j} outside [0, {self.cols})")
        bits = 0
        for i, r in enumerate(self.row_bits):
            bits |= ((r >> j) & 1) << i
        return BitVec(self.rows, bits)

    def col_bits(self) -> list[int]:
        """All columns as packed integers (bit ``i`` of column ``j`` is entry ``ij``)."""
        out = [0] * self.cols
        for i, r in enumerate(self.row_bits):
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= 1 << i
                r &= r - 1
        return out

    def transpose(self) -> "BitMat":
        return BitMat(self.cols, self.rows, tuple(self.col_bits()))

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.row_bits)

    def vstack(self, other: "BitMat") -> "BitMat":
        if self.cols != other.cols:
            raise DimensionError(f"column mismatch {self.cols} != {other.cols}")
        return BitMat(self.rows + other.rows, self.cols, self.row_bits + other.row_bits)

    def __matmul__(self, other):
        if isinstance(other, BitVec):
            return mat_vec_mul(self, other)
        if isinstance(other, BitMat):
            return mat_mul(self, other)
        return NotImplemented

    def __repr__(self) -> str:
        return f"BitMat({self.rows}x{self.cols})"


def mat_vec_mul(m: BitMat, x: BitVec) -> BitVec:
    """y = Mx over GF(2); y_i is the parity of the masked row."""
    if x.n != m.cols:
        raise DimensionError(f"vector length {x.n}, matrix has {m.cols} columns")
    bits = 0
    for i, r in enumerate(m.row_bits):
        bits |= ((r & x.bits).bit_count() & 1) << i
    return BitVec(m.rows, bits)


def mat_mul(a: BitMat, b: BitMat) -> BitMat:
    if a.cols != b.rows:
        raise DimensionError(f"inner dimension mismatch {a.cols} != {b.rows}")
    out = []
    for r in a.row_bits:
        acc = 0
        rr = r
        while rr:
            j = (rr & -rr).bit_length() - 1
            acc ^= b.row_bits[j]
            rr &= rr - 1
        out.append(acc)
    return BitMat(a.rows, b.cols, tuple(out))


def weight(x: BitVec) -> int:
    return x.weight()


def rref(m: BitMat) -> tuple[tuple[int, ...], BitMat]:
    """Reduced row echelon form; returns (pivot column indices, reduced matrix)."""
    work = list(m.row_bits)
    pivots = []
    row = 0
    for col in range(m.cols):
        sel = None
        for r in range(row, m.rows):
            if (work[r] >> col) & 1:
                sel = r
                break
        if sel is None:
            continue
        work[row], work[sel] = work[sel], work[row]
        for r in range(m.rows):
            if r != row and (work[r] >> col) & 1:
                work[r] ^= work[row]
        pivots.append(col)
        row += 1
        if row == m.rows:
            break
    return tuple(pivots), BitMat(m.rows, m.cols, tuple(work))


def rank(m: BitMat) -> int:
    return len(rref(m)[0])


def nullspace_basis(m: BitMat) -> list[BitVec]:
    """Basis of {x : Mx = 0}; one vector per free column, free columns ascending."""
    pivots, red = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for r, pc in enumerate(pivots):
            if (red.row_bits[r] >> free) & 1:
                bits |= 1 << pc
        basis.append(BitVec(m.cols, bits))
    return basis


def gauss_solve(m: BitMat, b: BitVec) -> BitVec | None:
    """Any x with Mx = b, or None if the system is inconsistent.

    Free variables are set to 0; no sparsity promise is made.
    """
    if b.n != m.rows:
        raise DimensionError(f"rhs length {b.n}, matrix has {m.rows} rows")
    # Eliminate on the augmented system, rhs carried in bit position `cols`.
    aug = BitMat(m.rows, m.cols + 1, tuple(r | (((b.bits >> i) & 1) << m.cols) for i, r in enumerate(m.row_bits)))
    pivots, red = rref(aug)
    if m.cols in pivots:
        return None
    bits = 0
    for r, pc in enumerate(pivots):
        if (red.row_bits[r] >> m.cols) & 1:
            bits |= 1 << pc
    x = BitVec(m.cols, bits)
    assert mat_vec_mul(m, x) == b
    return x
