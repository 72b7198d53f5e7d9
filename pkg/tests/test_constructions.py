"""Circulant blocks, tau layouts, seed handling, family scans."""
import random

import pytest

from sdcodes.codes import from_generator
from sdcodes.constructions import (FAMILIES, BlockKind, BlockSeed, block_circ,
                                   build_generator, circ, parse_seed_spec,
                                   revcirc, scan_family, tau6)
from sdcodes.gf2 import BitMatrix, matmul


def rand_row(rng):
    return tuple(rng.randrange(2) for _ in range(6))


def rand_seed(rng, kind):
    return BlockSeed(tuple(rand_row(rng) for _ in range(6)), kind)


def test_circ_identity():
    assert circ((1, 0, 0, 0, 0, 0)) == BitMatrix.identity(6)


def test_circ_shift_matrix_rows():
    p = circ((0, 0, 0, 0, 0, 1))
    assert [p.get(1, j) for j in range(6)] == [1, 0, 0, 0, 0, 0]
    # each row is the previous shifted one to the right
    for i in range(1, 6):
        for j in range(6):
            assert p.get(i, j) == p.get(i - 1, (j - 1) % 6)


def test_circulants_closed_under_product():
    rng = random.Random(10)
    for _ in range(40):
        a = circ(rand_row(rng))
        b = circ(rand_row(rng))
        prod = matmul(a, b)
        first = tuple(prod.get(0, j) for j in range(6))
        assert prod == circ(first)


def test_revcirc_examples():
    r = revcirc((1, 0, 0, 0, 0, 0))
    assert [r.get(1, j) for j in range(6)] == [0, 0, 0, 0, 0, 1]
    assert revcirc((1, 1, 1, 1, 1, 1)) == BitMatrix.from_lists([[1] * 6] * 6)


def test_revcirc_symmetric():
    rng = random.Random(13)
    for _ in range(40):
        r = revcirc(rand_row(rng))
        assert r == r.transpose()


def test_block_circ_single_block():
    rng = random.Random(1)
    a = circ(rand_row(rng))
    assert block_circ([a]) == a


def _block_at(m, bi, bj, size=6):
    rows = [(m.rows[bi * size + r] >> (bj * size)) & ((1 << size) - 1)
            for r in range(size)]
    return BitMatrix(size, size, tuple(rows))


def test_block_circ_patterns():
    rng = random.Random(6)
    blocks = [circ(rand_row(rng)) for _ in range(3)]
    right = block_circ(blocks)
    left = block_circ(blocks, reverse=True)
    a, b, c = blocks
    assert [[_block_at(right, i, j) for j in range(3)] for i in range(3)] == \
        [[a, b, c], [c, a, b], [b, c, a]]
    assert [[_block_at(left, i, j) for j in range(3)] for i in range(3)] == \
        [[a, b, c], [b, c, a], [c, a, b]]


def test_tau6_uniform_permutation_blocks():
    # all six blocks the same permutation: every 6x6 slot holds that block
    fam = FAMILIES["G1"]
    seed = BlockSeed(((0, 0, 0, 0, 0, 1),) * 6, BlockKind.CIRC)
    t = tau6(fam, seed)
    p = circ((0, 0, 0, 0, 0, 1))
    for bi in range(6):
        for bj in range(6):
            assert _block_at(t, bi, bj) == p


def test_tau6_transposed_layout_with_zero_b():
    fam = FAMILIES["G3"]  # transposed layout
    rng = random.Random(15)
    rows = tuple(rand_row(rng) for _ in range(3)) + ((0,) * 6,) * 3
    t = tau6(fam, BlockSeed(rows, BlockKind.CIRC))
    a = block_circ([circ(r) for r in rows[:3]])
    for i in range(18):
        assert t.rows[i] == a.rows[i]  # top-left A, top-right 0
        assert t.rows[18 + i] == a.transpose().rows[i] << 18  # bottom-right A^T


def test_tau6_kind_mismatch():
    fam = FAMILIES["G1"]
    seed = rand_seed(random.Random(0), BlockKind.REVCIRC)
    with pytest.raises(ValueError, match="kind mismatch"):
        tau6(fam, seed)


def _group_table_tau(seed: BlockSeed) -> BitMatrix:
    """Oracle: multiplication-table block matrix for the cyclic group of
    order six under the ordering (e, g2, g4, g, g3, g5), with block i
    attached to the i-th listed element; entry (i, j) holds the block of
    element inverse(i)*j."""
    order = [0, 2, 4, 1, 3, 5]  # exponents of g in listed order
    pos = {e: i for i, e in enumerate(order)}
    blocks = [circ(r) for r in seed.rows]
    grid = [[blocks[pos[(order[j] - order[i]) % 6]] for j in range(6)]
            for i in range(6)]
    rows = []
    for brow in grid:
        for r in range(6):
            packed = 0
            for bc, blk in enumerate(brow):
                packed |= blk.rows[r] << (6 * bc)
            rows.append(packed)
    return BitMatrix(36, 36, tuple(rows))


def test_rotated_layout_matches_group_table_oracle():
    fam = FAMILIES["G1"]
    rng = random.Random(99)
    for _ in range(100):
        seed = rand_seed(rng, BlockKind.CIRC)
        assert tau6(fam, seed) == _group_table_tau(seed)


def test_build_generator_rank_36():
    rng = random.Random(44)
    for fam in FAMILIES.values():
        for _ in range(5):
            seed = rand_seed(rng, fam.block_kind)
            code = build_generator(fam, seed)
            assert (code.n, code.k) == (72, 36)


def test_build_generator_determinism():
    fam = FAMILIES["G2"]
    seed = BlockSeed.from_hex("8c1513fa5", fam.block_kind)
    a = build_generator(fam, seed)
    b = build_generator(fam, seed)
    assert a.generator == b.generator


def test_zero_seed_not_self_dual():
    fam = FAMILIES["G3"]
    code = build_generator(fam, BlockSeed.from_hex("000000000", fam.block_kind))
    assert not code.is_self_dual
    g = code.generator
    assert matmul(g, g.transpose()) == BitMatrix.identity(36)


def test_self_duality_iff_tau_orthogonal():
    rng = random.Random(21)
    for fam in (FAMILIES["G1"], FAMILIES["G5"]):
        for _ in range(20):
            seed = rand_seed(rng, fam.block_kind)
            t = tau6(fam, seed)
            ttt = matmul(t, t.transpose())
            code = build_generator(fam, seed)
            assert code.is_self_dual == (ttt == BitMatrix.identity(36))


def test_mirrored_layout_structure():
    fam = FAMILIES["G5"]
    rng = random.Random(33)
    seed = rand_seed(rng, fam.block_kind)
    t = tau6(fam, seed)
    blocks = [circ(r) for r in seed.rows]
    a = block_circ(blocks[:3])
    b = block_circ(blocks[3:], reverse=True)
    for i in range(3):
        for j in range(3):
            assert _block_at(t, i, j) == _block_at(a, i, j)
            assert _block_at(t, i, j + 3) == _block_at(b, i, j)
            assert _block_at(t, i + 3, j) == _block_at(b, i, j)
            assert _block_at(t, i + 3, j + 3) == _block_at(a, i, j)


def test_seed_hex_round_trip_and_bit_order():
    seed = BlockSeed.from_hex("800000000", BlockKind.CIRC)
    assert seed.rows[0] == (1, 0, 0, 0, 0, 0)
    assert all(r == (0,) * 6 for r in seed.rows[1:])
    assert seed.to_hex() == "800000000"
    rng = random.Random(50)
    for _ in range(30):
        s = rand_seed(rng, BlockKind.REVCIRC)
        assert BlockSeed.from_hex(s.to_hex(), BlockKind.REVCIRC) == s


def test_parse_seed_spec():
    fam, seed = parse_seed_spec("G5:d05d29c72")
    assert fam.id == "G5"
    assert seed.to_hex() == "d05d29c72"
    for bad in ("G9:000000000", "G1-000000000", "G1:12345"):
        with pytest.raises(ValueError):
            parse_seed_spec(bad)


def test_scan_family_empty():
    assert scan_family(FAMILIES["G1"], 0, rng_seed=1) == []


def test_scan_family_pinned_regression():
    # pinned against the fixed counter-based stream (rng_seed=2024)
    records = scan_family(FAMILIES["G3"], 50000, rng_seed=2024)
    summary = [(r.origin, r.family, r.gamma, r.beta) for r in records]
    assert summary == [
        ("G3:87f96b5ca", "W72_1", 0, 177),
        ("G3:42e55059a", "TypeII72", 0, -3612),
        ("G3:4100956b9", "W72_1", 0, 291),
    ]
    assert all(r.d == 12 for r in records)


def test_scan_record_revalidates():
    from sdcodes.search import revalidate_record
    records = scan_family(FAMILIES["G3"], 13000, rng_seed=2024)
    assert len(records) == 2  # prefix of the pinned regression above
    for rec in records:
        code = revalidate_record(rec)
        assert code.is_self_dual
