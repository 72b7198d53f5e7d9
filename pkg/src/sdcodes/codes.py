"""Linear code semantics: duals, self-duality, weight windows, enumerators.

The length-72 Type I weight enumerators come in two families,

    W1: 1 + 2b y^12 + (8640 - 64g) y^14 + (124281 - 24b + 384g) y^16 + ...
    W2: 1 + 2b y^12 + (7616 - 64g) y^14 + (134521 - 24b + 384g) y^16 + ...

and Type II codes follow 1 + (4398 + a) y^12 + ...; extracting (g, b) or a
from a partial weight distribution is what ``enumerator_params`` does.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from . import enumkernel
from .gf2 import BitMatrix, rref_ints


class CodeType(Enum):
    TYPE_I = "I"
    TYPE_II = "II"


class EnumeratorFamily(Enum):
    W72_1 = "W72_1"
    W72_2 = "W72_2"
    TYPE_II_72 = "TypeII72"
    NOT_LENGTH_72 = "NotLength72"


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] binary linear code held as its canonical RREF generator.

    Two codes are equal iff their generators are equal (RREF is canonical
    for the row space), which makes ``fingerprint`` a cheap dedup key.
    """

    n: int
    k: int
    generator: BitMatrix
    pivots: tuple[int, ...]

    @cached_property
    def is_self_dual(self) -> bool:
        if self.n != 2 * self.k:
            return False
        rows = self.generator.rows
        for i, ri in enumerate(rows):
            for rj in rows[i:]:
                if (ri & rj).bit_count() & 1:
                    return False
        return True

    @cached_property
    def systematic_left(self) -> BitMatrix | None:
        """[I_k | A] form; exists iff the first k columns are the pivots."""
        if self.pivots == tuple(range(self.k)):
            return self.generator
        return None

    @cached_property
    def systematic_right(self) -> BitMatrix | None:
        """[B | I_k] form; exists iff the last k columns are an information set."""
        order = list(range(self.n - self.k, self.n)) + list(range(self.n - self.k))
        rows, piv = rref_ints(self.generator.rows, self.n, col_order=order)
        if sorted(piv) != list(range(self.n - self.k, self.n)):
            return None
        by_pivot = sorted(zip(piv, rows))
        return BitMatrix(self.k, self.n, tuple(r for _, r in by_pivot))

    @cached_property
    def fingerprint(self) -> str:
        """Hex rows of the RREF generator, dot-joined."""
        return ".".join(self.generator.to_hex_rows())

    def contains(self, bits: int) -> bool:
        x = bits
        for row, piv in zip(self.generator.rows, self.pivots):
            if (x >> piv) & 1:
                x ^= row
        return x == 0

    def window_forms(self) -> tuple[list[int], list[int]]:
        """Rows of the two complementary systematic forms used for windows.

        Form 1 is the RREF (identity on the pivot set P).  Form 2 has the
        identity on the complement of P; its rows e_q + sum_i G[i,q] e_{P_i}
        lie in the dual, which equals the code itself when self-dual.  For a
        self-dual code the complement of an information set is always an
        information set, so both forms exist.
        """
        if not self.is_self_dual:
            raise ValueError("missing systematic form: window forms require a self-dual code")
        rows = self.generator.rows
        comp = sorted(set(range(self.n)) - set(self.pivots))
        form2 = []
        for q in comp:
            r = 1 << q
            for row, piv in zip(rows, self.pivots):
                if (row >> q) & 1:
                    r |= 1 << piv
            form2.append(r)
        return list(rows), form2


def from_generator(g: BitMatrix) -> LinearCode:
    """Canonicalize an arbitrary generator matrix into a LinearCode."""
    rows, pivots = rref_ints(g.rows, g.ncols)
    if not rows:
        raise ValueError("empty code")
    gen = BitMatrix(len(rows), g.ncols, tuple(rows))
    return LinearCode(n=g.ncols, k=len(rows), generator=gen, pivots=tuple(pivots))


def dual(code: LinearCode) -> LinearCode:
    """The orthogonal complement under the Euclidean inner product."""
    from .gf2 import nullspace

    basis = nullspace(code.generator)
    rows, pivots = rref_ints(basis.rows, code.n)
    gen = BitMatrix(len(rows), code.n, tuple(rows))
    return LinearCode(n=code.n, k=len(rows), generator=gen, pivots=tuple(pivots))


def is_self_dual(code: LinearCode) -> bool:
    return code.is_self_dual


@dataclass(frozen=True)
class WeightWindow:
    """Exact codeword counts A_w for 0 < w <= max_weight (= 2t)."""

    n: int
    max_weight: int
    counts: dict[int, int]
    certified_min_distance: int | None  # None: no codeword of weight <= 2t

    def count(self, w: int) -> int:
        if not 0 < w <= self.max_weight:
            raise ValueError(f"weight {w} outside certified window <= {self.max_weight}")
        return self.counts.get(w, 0)

    @property
    def distance_label(self) -> str:
        if self.certified_min_distance is None:
            return f">{self.max_weight}"
        return str(self.certified_min_distance)


def weight_window(code: LinearCode, t: int,
                  workspace: enumkernel.Workspace | None = None) -> WeightWindow:
    """Exact A_w for all 0 < w <= 2t by two-information-set enumeration.

    Enumerates messages of weight <= t over both systematic forms; any
    codeword of weight <= 2t has at most t ones on one of the two
    complementary information sets, so the window is exact.
    """
    if t < 0 or t > code.k:
        raise ValueError("window parameter t must satisfy 0 <= t <= k")
    form1, form2 = code.window_forms()
    if workspace is None and t >= 8:
        workspace = enumkernel.Workspace()  # keep the big buffers collectable
    counts = enumkernel.exact_window_counts(form1, form2, code.n, t, workspace)
    nonzero = {w: int(c) for w, c in enumerate(counts) if w and c}
    dmin = min(nonzero) if nonzero else None
    return WeightWindow(n=code.n, max_weight=2 * t, counts=nonzero,
                        certified_min_distance=dmin)


def certify_min_distance(code: LinearCode, floor: int,
                         workspace: enumkernel.Workspace | None = None) -> int | None:
    """Early-exit distance certificate: exact d if d <= 2*ceil(floor/2), else None."""
    form1, form2 = code.window_forms()
    return enumkernel.certify_min_distance(form1, form2, code.n, floor, workspace)


def classify_type(window: WeightWindow | None, code: LinearCode) -> CodeType:
    """Type II iff every generator row weight is divisible by four.

    For a self-orthogonal binary code this certifies the whole span is
    doubly-even: wt(a+b) = wt(a) + wt(b) - 2*wt(a&b) and wt(a&b) is even
    whenever <a,b> = 0.
    """
    if not code.is_self_dual:
        raise ValueError("type classification requires a self-dual code")
    doubly_even = all(r.bit_count() % 4 == 0 for r in code.generator.rows)
    if window is not None and doubly_even:
        if any(w % 4 for w in window.counts):
            raise ValueError("window records a weight not divisible by 4 in a doubly-even code")
    return CodeType.TYPE_II if doubly_even else CodeType.TYPE_I


def extremal_bound(n: int, code_type: CodeType) -> int:
    """Upper bound on the minimum distance of a self-dual code of length n."""
    if n <= 0 or n % 2:
        raise ValueError("length must be a positive even integer")
    if code_type is CodeType.TYPE_II:
        return 4 * (n // 24) + 4
    if n % 24 == 22:
        return 4 * (n // 24) + 6
    return 4 * (n // 24) + 4


@dataclass(frozen=True)
class EnumeratorParams:
    code_type: CodeType
    family: EnumeratorFamily
    gamma: int = 0
    beta: int = 0
    alpha: int | None = None

    def key(self) -> tuple[str, str, int, int]:
        """Registry key (type, family, gamma, beta); beta carries alpha for Type II."""
        if self.code_type is CodeType.TYPE_II:
            return (self.code_type.value, self.family.value, 0, self.alpha or 0)
        return (self.code_type.value, self.family.value, self.gamma, self.beta)

    def label(self) -> str:
        if self.code_type is CodeType.TYPE_II:
            return f"alpha={self.alpha}"
        return f"gamma={self.gamma} beta={self.beta}"


_W1_A14, _W1_A16 = 8640, 124281
_W2_A14, _W2_A16 = 7616, 134521


def type_i_params(a12: int, a14: int, a16: int | None) -> EnumeratorParams | None:
    """Resolve (gamma, beta) and family from A12/A14 and optionally A16.

    Without A16 the family is only forced when (8640 - A14)/64 < 16, since
    the W72_2 gamma would then be negative.  Returns None when A16 is needed
    but not supplied; raises on inconsistency.
    """
    if a12 % 2:
        raise ValueError("enumerator mismatch: odd A12 in a Type I window")
    beta = a12 // 2
    if (_W1_A14 - a14) % 64:
        raise ValueError("enumerator mismatch: A14 incompatible with both families")
    g1 = (_W1_A14 - a14) // 64
    g2 = g1 - 16
    if a16 is None:
        if g1 < 0:
            raise ValueError("enumerator mismatch: negative gamma in both families")
        if g2 < 0:
            return EnumeratorParams(CodeType.TYPE_I, EnumeratorFamily.W72_1, g1, beta)
        return None
    if g1 >= 0 and a16 == _W1_A16 - 24 * beta + 384 * g1:
        return EnumeratorParams(CodeType.TYPE_I, EnumeratorFamily.W72_1, g1, beta)
    if g2 >= 0 and a16 == _W2_A16 - 24 * beta + 384 * g2:
        return EnumeratorParams(CodeType.TYPE_I, EnumeratorFamily.W72_2, g2, beta)
    raise ValueError("enumerator mismatch: A16 consistent with neither family")


def enumerator_params(window: WeightWindow, code_type: CodeType) -> EnumeratorParams:
    """Extract (gamma, beta) or alpha from a length-72 window covering w <= 16."""
    if window.n != 72:
        raise ValueError("enumerator parameters are defined for length-72 codes")
    if window.max_weight < 16:
        raise ValueError("enumerator parameters need a window covering w <= 16")
    a12 = window.count(12)
    if code_type is CodeType.TYPE_II:
        return EnumeratorParams(CodeType.TYPE_II, EnumeratorFamily.TYPE_II_72,
                                alpha=a12 - 4398)
    params = type_i_params(a12, window.count(14), window.count(16))
    assert params is not None
    return params


@dataclass(frozen=True)
class Analysis72:
    """Distance certificate plus enumerator parameters of a length-72 code."""

    d: int | None  # exact minimum distance; None means > window_max
    window_max: int
    code_type: CodeType
    params: EnumeratorParams | None  # None when d < the requested floor
    a12: int | None = None
    a14: int | None = None
    a16: int | None = None


def analyze_length72(code: LinearCode, floor: int = 12,
                     workspace: enumkernel.Workspace | None = None) -> Analysis72:
    """Certify the distance of a self-dual [72,36] code and, when it reaches
    ``floor``, extract its weight-enumerator parameters.

    Runs the cheap early-exit certificate first; survivors get a t=7 window
    (A12/A14), escalated to t=8 only when the family is ambiguous without
    A16, i.e. when (8640 - A14)/64 >= 16.
    """
    if code.n != 72:
        raise ValueError("analysis is specific to length-72 codes")
    d_fast = certify_min_distance(code, floor, workspace)
    ctype = classify_type(None, code)
    if d_fast is not None and d_fast < floor:
        return Analysis72(d=d_fast, window_max=2 * -(-floor // 2),
                          code_type=ctype, params=None)
    win = weight_window(code, 7, workspace)
    a12, a14 = win.count(12), win.count(14)
    a16: int | None = None
    d = win.certified_min_distance
    window_max = win.max_weight
    if ctype is CodeType.TYPE_II:
        params: EnumeratorParams | None = EnumeratorParams(
            CodeType.TYPE_II, EnumeratorFamily.TYPE_II_72, alpha=a12 - 4398)
    else:
        params = type_i_params(a12, a14, None)
        if params is None:
            win8 = weight_window(code, 8)
            a16 = win8.count(16)
            d = win8.certified_min_distance
            window_max = win8.max_weight
            params = type_i_params(a12, a14, a16)
    if d is not None and d < floor:
        params = None  # floor below 12: the fast certificate may pass codes the window rejects
    return Analysis72(d=d, window_max=window_max, code_type=ctype, params=params,
                      a12=a12, a14=a14, a16=a16)
