"""Bit-packed linear algebra over GF(2).

Vectors and matrices store their bits little-endian inside Python ints
(coordinate i is bit i of the payload), so XOR, AND and popcount run at
word speed on arbitrary lengths.  Everything here is immutable and pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def _check_payload(length: int, bits: int) -> None:
    if length < 0:
        raise ValueError("negative length")
    if bits < 0 or bits >> length:
        raise ValueError("payload has bits beyond length (canonical padding violated)")


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2), packed into one int."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        _check_payload(self.length, self.bits)

    @classmethod
    def from_bits(cls, coords: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for b in coords:
            if b not in (0, 1):
                raise ValueError("coordinates must be 0 or 1")
            bits |= b << n
            n += 1
        return cls(n, bits)

    @classmethod
    def from_hex(cls, text: str, length: int) -> "BitVector":
        """Parse the hex form: coordinate 0 is the most significant bit."""
        digits = -(-length // 4)
        if len(text) != digits:
            raise ValueError(f"expected {digits} hex digits for length {length}")
        value = int(text, 16)
        if value >> length:
            raise ValueError("hex value has bits beyond length")
        return cls(length, _reverse_bits(value, length))

    def to_hex(self) -> str:
        """Hex form: 4 bits per nibble, coordinate 0 as the most significant bit,
        left-padded to ceil(length/4) digits."""
        digits = -(-self.length // 4)
        return format(_reverse_bits(self.bits, self.length), f"0{digits}x")

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def flip(self, i: int) -> "BitVector":
        if not 0 <= i < self.length:
            raise IndexError(i)
        return BitVector(self.length, self.bits ^ (1 << i))

    def weight(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.length))

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def __and__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits & other.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


def _reverse_bits(value: int, length: int) -> int:
    out = 0
    for i in range(length):
        if (value >> i) & 1:
            out |= 1 << (length - 1 - i)
    return out


def add(u: BitVector, v: BitVector) -> BitVector:
    """Coordinatewise sum over GF(2) (XOR of payloads)."""
    return u ^ v


def dot(u: BitVector, v: BitVector) -> int:
    """Euclidean inner product: parity of the AND of the payloads."""
    if u.length != v.length:
        raise ValueError("length mismatch")
    return (u.bits & v.bits).bit_count() & 1


def weight(v: BitVector) -> int:
    return v.weight()


@dataclass(frozen=True)
class BitMatrix:
    """Matrix over GF(2); each row is a little-endian packed int."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")
        for r in self.rows:
            _check_payload(self.ncols, r)

    @classmethod
    def from_rows(cls, rows: Sequence[int], ncols: int) -> "BitMatrix":
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def from_bitvectors(cls, vecs: Sequence[BitVector]) -> "BitMatrix":
        if not vecs:
            raise ValueError("cannot infer width of an empty matrix; use from_rows")
        n = vecs[0].length
        if any(v.length != n for v in vecs):
            raise ValueError("rows of unequal length")
        return cls(len(vecs), n, tuple(v.bits for v in vecs))

    @classmethod
    def from_lists(cls, grid: Sequence[Sequence[int]]) -> "BitMatrix":
        ncols = len(grid[0]) if grid else 0
        rows = []
        for row in grid:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            rows.append(sum((b & 1) << j for j, b in enumerate(row)))
        return cls(len(grid), ncols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls(nrows, ncols, (0,) * nrows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i])

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            while r:
                j = (r & -r).bit_length() - 1
                cols[j] |= 1 << i
                r &= r - 1
        return BitMatrix(self.ncols, self.nrows, tuple(cols))

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def to_hex_rows(self) -> tuple[str, ...]:
        return tuple(self.row(i).to_hex() for i in range(self.nrows))

    def __str__(self) -> str:
        return "\n".join(str(self.row(i)) for i in range(self.nrows))


@dataclass(frozen=True)
class RrefResult:
    matrix: BitMatrix
    rank: int
    pivot_columns: tuple[int, ...]


def rref_ints(rows: Sequence[int], ncols: int,
              col_order: Sequence[int] | None = None) -> tuple[list[int], list[int]]:
    """Gauss-Jordan on packed int rows; returns (nonzero reduced rows, pivots).

    Pivot columns are tried in ``col_order`` (default 0..ncols-1); rows come
    back fully reduced, in pivot order.
    """
    work = list(rows)
    order = range(ncols) if col_order is None else col_order
    pivots: list[int] = []
    r = 0
    nrows = len(work)
    for c in order:
        mask = 1 << c
        p = next((i for i in range(r, nrows) if work[i] & mask), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = work[r]
        for i in range(nrows):
            if i != r and work[i] & mask:
                work[i] ^= piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return work[:r], pivots


def rref(matrix: BitMatrix) -> RrefResult:
    """Reduced row echelon form over GF(2); row space and shape are preserved
    (zero rows collect at the bottom)."""
    reduced, pivots = rref_ints(matrix.rows, matrix.ncols)
    padded = tuple(reduced) + (0,) * (matrix.nrows - len(reduced))
    return RrefResult(BitMatrix(matrix.nrows, matrix.ncols, padded),
                      len(reduced), tuple(pivots))


def nullspace(matrix: BitMatrix) -> BitMatrix:
    """Basis of {x : M x = 0}, one row per free column.

    rows(result) = ncols - rank; for a 0-row matrix the basis is the identity.
    """
    reduced, pivots = rref_ints(matrix.rows, matrix.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.ncols):
        if free in pivot_set:
            continue
        vec = 1 << free
        for row, piv in zip(reduced, pivots):
            if (row >> free) & 1:
                vec |= 1 << piv
        basis.append(vec)
    return BitMatrix(len(basis), matrix.ncols, tuple(basis))


def matmul(m: BitMatrix, n: BitMatrix) -> BitMatrix:
    """GF(2) matrix product: each output row is a combination of n's rows."""
    if m.ncols != n.nrows:
        raise ValueError("dimension mismatch")
    out = []
    for r in m.rows:
        acc = 0
        rr = r
        while rr:
            j = (rr & -rr).bit_length() - 1
            acc ^= n.rows[j]
            rr &= rr - 1
        out.append(acc)
    return BitMatrix(m.nrows, n.ncols, tuple(out))


def rank_of_ints(rows: Sequence[int], ncols: int) -> int:
    return len(rref_ints(rows, ncols)[0])


def reduce_against(x: int, reduced_rows: Sequence[int], pivots: Sequence[int]) -> int:
    """Reduce a packed vector against RREF rows; zero iff x is in the row space."""
    for row, piv in zip(reduced_rows, pivots):
        if (x >> piv) & 1:
            x ^= row
    return x
