"""Length-72 generator matrices [I_36 | T] from 36-bit block seeds.

T is a 36x36 matrix of six 6x6 circulant (or reverse-circulant) blocks
A1..A6 arranged in one of three block layouts:

    rotated:     (A B; B' A)   A = CIRC(A1,A2,A3), B = CIRC(A4,A5,A6),
                               B' = CIRC(A6,A4,A5)
    mirrored:    (A B; B A)    A = CIRC(A1,A2,A3), B = REVCIRC(A4,A5,A6)
    transposed:  (A B; Bt At)  A = CIRC(A1,A2,A3), B = CIRC(A4,A5,A6)

Six named families G1..G6 fix the layout and the block kind; a seed is the
36 bits a1..a36 filling the six first rows, serialized as 9 hex digits with
a1 as the most significant bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .codes import LinearCode, from_generator
from .gf2 import BitMatrix


class TauLayout(Enum):
    ROTATED = "rotated"
    MIRRORED = "mirrored"
    TRANSPOSED = "transposed"


class BlockKind(Enum):
    CIRC = "circ"
    REVCIRC = "revcirc"


@dataclass(frozen=True)
class Family:
    id: str
    group: str  # order-6 group behind the layout: C6 or D6
    layout: TauLayout
    block_kind: BlockKind


FAMILIES: dict[str, Family] = {
    "G1": Family("G1", "C6", TauLayout.ROTATED, BlockKind.CIRC),
    "G2": Family("G2", "C6", TauLayout.ROTATED, BlockKind.REVCIRC),
    "G3": Family("G3", "D6", TauLayout.TRANSPOSED, BlockKind.CIRC),
    "G4": Family("G4", "D6", TauLayout.TRANSPOSED, BlockKind.REVCIRC),
    "G5": Family("G5", "D6", TauLayout.MIRRORED, BlockKind.CIRC),
    "G6": Family("G6", "D6", TauLayout.MIRRORED, BlockKind.REVCIRC),
}


@dataclass(frozen=True)
class BlockSeed:
    """Six 6-bit first rows r_A1..r_A6 plus the block kind they generate."""

    rows: tuple[tuple[int, ...], ...]
    block_kind: BlockKind

    def __post_init__(self) -> None:
        if len(self.rows) != 6 or any(len(r) != 6 for r in self.rows):
            raise ValueError("a block seed is six rows of six bits")
        if any(b not in (0, 1) for r in self.rows for b in r):
            raise ValueError("seed bits must be 0 or 1")

    @classmethod
    def from_hex(cls, text: str, block_kind: BlockKind) -> "BlockSeed":
        if len(text) != 9:
            raise ValueError("seed must be exactly 9 hex digits")
        value = int(text, 16)
        bits = [(value >> (35 - i)) & 1 for i in range(36)]
        rows = tuple(tuple(bits[6 * q: 6 * q + 6]) for q in range(6))
        return cls(rows, block_kind)

    def to_hex(self) -> str:
        value = 0
        for r in self.rows:
            for b in r:
                value = (value << 1) | b
        return format(value, "09x")


def circ(row: Sequence[int]) -> BitMatrix:
    """Circulant: row i is the first row cyclically shifted right i places."""
    n = len(row)
    return BitMatrix.from_lists([[row[(j - i) % n] for j in range(n)] for i in range(n)])


def revcirc(row: Sequence[int]) -> BitMatrix:
    """Reverse circulant: row i is the first row shifted left i places (symmetric)."""
    n = len(row)
    return BitMatrix.from_lists([[row[(j + i) % n] for j in range(n)] for i in range(n)])


def block_circ(blocks: Sequence[BitMatrix], reverse: bool = False) -> BitMatrix:
    """Assemble blocks with whole-block right (or left, if reverse) shifts."""
    m = len(blocks)
    size = blocks[0].nrows
    if any(b.nrows != size or b.ncols != size for b in blocks):
        raise ValueError("blocks must share one square size")
    grid = [[blocks[((j + i) if reverse else (j - i)) % m] for j in range(m)]
            for i in range(m)]
    return _assemble(grid, size)


def _assemble(grid: list[list[BitMatrix]], size: int) -> BitMatrix:
    rows = []
    for brow in grid:
        for r in range(size):
            packed = 0
            for bc, block in enumerate(brow):
                packed |= block.rows[r] << (size * bc)
            rows.append(packed)
    return BitMatrix(len(rows), size * len(grid[0]), tuple(rows))


def _two_by_two(a: BitMatrix, b: BitMatrix, c: BitMatrix, d: BitMatrix) -> BitMatrix:
    n = a.nrows
    rows = [a.rows[i] | (b.rows[i] << n) for i in range(n)]
    rows += [c.rows[i] | (d.rows[i] << n) for i in range(n)]
    return BitMatrix(2 * n, 2 * n, tuple(rows))


def tau6(family: Family, seed: BlockSeed) -> BitMatrix:
    """The 36x36 block matrix of the family's layout for the given seed."""
    if seed.block_kind is not family.block_kind:
        raise ValueError("kind mismatch: seed blocks do not match the family")
    mk: Callable[[Sequence[int]], BitMatrix] = (
        circ if family.block_kind is BlockKind.CIRC else revcirc)
    a1, a2, a3, a4, a5, a6 = (mk(r) for r in seed.rows)
    a = block_circ([a1, a2, a3])
    if family.layout is TauLayout.ROTATED:
        b = block_circ([a4, a5, a6])
        b_rot = block_circ([a6, a4, a5])
        return _two_by_two(a, b, b_rot, a)
    if family.layout is TauLayout.MIRRORED:
        b = block_circ([a4, a5, a6], reverse=True)
        return _two_by_two(a, b, b, a)
    b = block_circ([a4, a5, a6])
    return _two_by_two(a, b, b.transpose(), a.transpose())


def build_generator(family: Family, seed: BlockSeed) -> LinearCode:
    """LinearCode of [I_36 | tau6(seed)]; the identity block forces rank 36."""
    t = tau6(family, seed)
    rows = tuple((1 << i) | (t.rows[i] << 36) for i in range(36))
    return from_generator(BitMatrix(36, 72, rows))


def _tau_gives_self_dual(t: BitMatrix) -> bool:
    """[I | T] is self-dual iff T T^t = I; cheap pre-screen on raw rows."""
    rows = t.rows
    for i, ri in enumerate(rows):
        if (ri & ri).bit_count() & 1 == 0:
            return False
        for rj in rows[i + 1:]:
            if (ri & rj).bit_count() & 1:
                return False
    return True


def parse_seed_spec(spec: str) -> tuple[Family, BlockSeed]:
    """Parse '<family>:<9 hex digits>', e.g. 'G1:0bf5d89f5'."""
    fam_id, sep, hexpart = spec.partition(":")
    if not sep or fam_id not in FAMILIES:
        raise ValueError(f"malformed seed spec {spec!r}; expected '<G1..G6>:<9 hex digits>'")
    family = FAMILIES[fam_id]
    return family, BlockSeed.from_hex(hexpart, family.block_kind)


def format_seed_spec(family: Family, seed: BlockSeed) -> str:
    return f"{family.id}:{seed.to_hex()}"


def scan_family(family: Family, sample_count: int, rng_seed: int,
                distance_floor: int = 12, batch_size: int = 1024) -> list:
    """Sample uniform seeds; keep self-dual codes certified at d = floor exactly.

    Seeds are drawn from counter-based per-batch streams keyed by
    (rng_seed, batch index) so a parallel scan produces the same hits.
    Returns CodeRecords with the seed spec as provenance.
    """
    import numpy as np

    from .codes import analyze_length72
    from .search import CodeRecord

    records: list[CodeRecord] = []
    seen: set[str] = set()
    for start in range(0, sample_count, batch_size):
        count = min(batch_size, sample_count - start)
        gen = np.random.Generator(np.random.Philox(
            key=np.array([rng_seed, start // batch_size], dtype=np.uint64)))
        raw = gen.bytes(5 * count)
        for i in range(count):
            bits = int.from_bytes(raw[5 * i:5 * i + 5], "big") & ((1 << 36) - 1)
            seed = BlockSeed.from_hex(format(bits, "09x"), family.block_kind)
            t = tau6(family, seed)
            if not _tau_gives_self_dual(t):
                continue
            code = build_generator(family, seed)
            analysis = analyze_length72(code, floor=distance_floor)
            if analysis.d != distance_floor or analysis.params is None:
                continue
            if code.fingerprint in seen:
                continue
            seen.add(code.fingerprint)
            params = analysis.params
            records.append(CodeRecord(
                seq=len(records) + 1, run=0, iteration=0, virus=start + i,
                d=analysis.d, code_type=params.code_type.value,
                family=params.family.value, gamma=params.gamma,
                beta=params.beta if params.alpha is None else params.alpha,
                origin=format_seed_spec(family, seed), x_chain=(),
                parent_fingerprint="", fingerprint=code.fingerprint))
    return records
