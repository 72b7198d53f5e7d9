"""Shared oracles and fixtures: unpacked numpy references, exhaustive
codeword enumeration, and randomized self-dual code factories."""
from __future__ import annotations

import random
from collections import Counter

import numpy as np
import pytest

from sdcodes import catalog
from sdcodes.codes import LinearCode, from_generator
from sdcodes.constructions import build_generator
from sdcodes.gf2 import BitMatrix, BitVector
from sdcodes.neighbours import neighbour


# ---------------------------------------------------------------- oracles

def to_bool_array(m: BitMatrix) -> np.ndarray:
    return np.array([[m.get(i, j) for j in range(m.ncols)]
                     for i in range(m.nrows)], dtype=np.uint8)


def naive_rank(a: np.ndarray) -> int:
    mat = a.copy() % 2
    rows, cols = mat.shape
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if mat[r, c]:
                piv = r
                break
        if piv is None:
            continue
        mat[[rank, piv]] = mat[[piv, rank]]
        for r in range(rows):
            if r != rank and mat[r, c]:
                mat[r] ^= mat[rank]
        rank += 1
    return rank


def naive_rref(a: np.ndarray) -> tuple[np.ndarray, int, list[int]]:
    mat = a.copy() % 2
    rows, cols = mat.shape
    pivots = []
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if mat[r, c]:
                piv = r
                break
        if piv is None:
            continue
        mat[[rank, piv]] = mat[[piv, rank]]
        for r in range(rows):
            if r != rank and mat[r, c]:
                mat[r] ^= mat[rank]
        pivots.append(c)
        rank += 1
    return mat, rank, pivots


def exhaustive_weight_counts(code: LinearCode) -> Counter:
    """Weight histogram over all 2^k codewords; guard against blowups."""
    assert code.k <= 20
    counts: Counter = Counter()
    rows = code.generator.rows
    for message in range(1 << code.k):
        word = 0
        m = message
        while m:
            i = (m & -m).bit_length() - 1
            word ^= rows[i]
            m &= m - 1
        counts[word.bit_count()] += 1
    return counts


def all_codewords(code: LinearCode) -> set[int]:
    assert code.k <= 20
    words = {0}
    out = {0}
    for row in code.generator.rows:
        out |= {w ^ row for w in out}
        words = out
    return words


def pair_code(copies: int) -> LinearCode:
    """Direct sum of `copies` blocks of the [2,1] code {00, 11}."""
    rows = tuple(0b11 << (2 * i) for i in range(copies))
    return from_generator(BitMatrix(copies, 2 * copies, rows))


def random_valid_x(code: LinearCode, rng: random.Random) -> BitVector:
    """Even-weight vector outside the code."""
    while True:
        bits = rng.getrandbits(code.n) & ((1 << code.n) - 1)
        if bits.bit_count() & 1:
            bits ^= 1 << (code.n - 1)
        x = BitVector(code.n, bits)
        if not code.contains(bits):
            return x


def random_self_dual_code(n: int, rng: random.Random, steps: int = 3) -> LinearCode:
    """Self-dual [n, n/2] code: a direct sum of pair codes pushed through a
    short random neighbour chain (covers non-systematic pivot layouts)."""
    code = pair_code(n // 2)
    for _ in range(steps):
        code = neighbour(code, random_valid_x(code, rng))
    return code


# ---------------------------------------------------------------- fixtures

@pytest.fixture(scope="session")
def reference_codes() -> dict[str, LinearCode]:
    return {ref.family_id: build_generator(ref.family, ref.seed)
            for ref in catalog.REFERENCE_CODES}
