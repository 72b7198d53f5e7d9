"""The neighbour operator on self-dual codes and iterated neighbour chains.

For a self-dual code C of length 2n and an even-weight x outside C, the code
<x-orthogonal part of C, x> is again self-dual and meets C in dimension n-1.
"""
from __future__ import annotations

from dataclasses import dataclass

from .codes import LinearCode, from_generator
from .gf2 import BitMatrix, BitVector, rank_of_ints


@dataclass(frozen=True)
class NeighbourStep:
    parent_fingerprint: str
    x: BitVector
    child: LinearCode
    depth: int

    def log_fields(self) -> dict[str, str]:
        return {"parent": self.parent_fingerprint,
                "x": self.x.to_hex(),
                "depth": str(self.depth)}


def neighbour(code: LinearCode, x: BitVector) -> LinearCode:
    """<C_0, x> where C_0 = {c in C : <c,x> = 0}; self-dual, meets C in dim k-1.

    x must be isotropic (even weight, so <x,x> = 0) and lie outside C; some
    generator row is then non-orthogonal to x, C_0 has dimension k-1, and
    adjoining x restores dimension k.
    """
    if x.length != code.n:
        raise ValueError("length mismatch")
    if not code.is_self_dual:
        raise ValueError("neighbour construction requires a self-dual code")
    if x.weight() % 2:
        raise ValueError("x not isotropic")
    if code.contains(x.bits):
        raise ValueError("not a proper neighbour")
    rows = code.generator.rows
    parities = [(r & x.bits).bit_count() & 1 for r in rows]
    anchor = parities.index(1)  # exists: x outside C = its own dual
    basis = [r ^ (rows[anchor] if p else 0)
             for i, (r, p) in enumerate(zip(rows, parities)) if i != anchor]
    basis.append(x.bits)
    child = from_generator(BitMatrix(len(basis), code.n, tuple(basis)))
    assert child.k == code.k
    return child


def chain(start: LinearCode, xs: list[BitVector]) -> list[NeighbourStep]:
    """Iterate the neighbour construction, recording full provenance."""
    steps: list[NeighbourStep] = []
    current = start
    for depth, x in enumerate(xs, start=1):
        try:
            child = neighbour(current, x)
        except ValueError as exc:
            raise ValueError(f"{exc} (chain depth {depth})") from exc
        steps.append(NeighbourStep(parent_fingerprint=current.fingerprint,
                                   x=x, child=child, depth=depth))
        current = child
    return steps


def intersection_dim(c: LinearCode, d: LinearCode) -> int:
    """dim(C ∩ D) = rank C + rank D - rank of the stacked generators."""
    if c.n != d.n:
        raise ValueError("length mismatch")
    stacked = rank_of_ints(c.generator.rows + d.generator.rows, c.n)
    return c.k + d.k - stacked
