"""Population-driven neighbour search over the full 2^72 vector space.

Each member of the population is a 72-bit even-weight vector x; its fitness
against the current code C is the pair (certified minimum distance of the
neighbour built from x, capped at 12; novelty of the neighbour's enumerator
parameters).  Members split into a strong class (top fraction by fitness,
replicated with few bit flips) and a common class (more flips), and a
culling step restores the population size each generation, preferring
elders on ties.  Neighbours that certify at the distance floor are saved as
records; at the end of each round the working code is replaced by the saved
code with the lexicographically highest (gamma, beta), never decreasing.

All randomness comes from counter-based streams keyed by (master seed, run,
iteration, member index, purpose), so results are reproducible bit for bit
and independent of how the evaluation is parallelized.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from multiprocessing import Pool
from typing import Callable, Iterable, Sequence

import numpy as np

from .codes import LinearCode, analyze_length72, from_generator
from .constructions import build_generator, parse_seed_spec
from .gf2 import BitMatrix, BitVector
from .neighbours import neighbour

_P_INIT = 0
_P_REPLICATE = 1

_LENGTH = 72
_TOP_BIT = 1 << (_LENGTH - 1)
_MASK = (1 << _LENGTH) - 1


def rng_stream(master_seed: int, run: int, iteration: int, member: int,
               purpose: int) -> np.random.Generator:
    """Counter-based stream; any (run, iteration, member, purpose) is independent."""
    key = np.array([master_seed & (2**64 - 1),
                    ((run & 0xFFFFFFFF) << 32) | (iteration & 0xFFFFFFFF)],
                   dtype=np.uint64)
    counter = np.array([member, purpose, 0, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(counter=counter, key=key))


def repair_even(bits: int) -> int:
    """Odd-weight vectors are repaired by flipping the last coordinate."""
    if bits.bit_count() & 1:
        bits ^= _TOP_BIT
    return bits


def random_even_bits(gen: np.random.Generator) -> int:
    return repair_even(int.from_bytes(gen.bytes(9), "little") & _MASK)


@dataclass(frozen=True)
class SearchConfig:
    population_size: int = 1000
    iterations: int = 500
    runs: int = 50
    strong_fraction: float = 0.1
    strong_growth: int = 4
    common_growth: int = 1
    strong_flips: int = 2
    common_flips: int = 8
    master_seed: int = 1
    target_family: str | None = None
    distance_floor: int = 12
    threads: int = 1


_CONFIG_PARSERS: dict[str, Callable[[str], object]] = {
    "population_size": int, "iterations": int, "runs": int,
    "strong_fraction": float, "strong_growth": int, "common_growth": int,
    "strong_flips": int, "common_flips": int, "master_seed": int,
    "target_family": lambda s: None if s.lower() in ("", "none") else s,
    "distance_floor": int, "threads": int,
}


def parse_config(text: str, base: SearchConfig | None = None) -> SearchConfig:
    """Flat key = value lines; '#' starts a comment; unknown keys are errors."""
    cfg = base or SearchConfig()
    overrides: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or key not in _CONFIG_PARSERS:
            raise ValueError(f"bad config line {lineno}: {raw.strip()!r}")
        overrides[key] = _CONFIG_PARSERS[key](value)
    return replace(cfg, **overrides)


def load_config(path: str, base: SearchConfig | None = None) -> SearchConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), base)


@dataclass(frozen=True)
class CodeRecord:
    """A persisted discovery with enough provenance to rebuild the code."""

    seq: int
    run: int
    iteration: int
    virus: int
    d: int
    code_type: str
    family: str
    gamma: int
    beta: int  # carries alpha for Type II records
    origin: str  # seed spec 'G1:..' or 'raw:<fingerprint>'
    x_chain: tuple[str, ...]  # hex x per neighbour step, root to this code
    parent_fingerprint: str
    fingerprint: str

    def key(self) -> tuple[str, str, int, int]:
        return (self.code_type, self.family, self.gamma, self.beta)

    @property
    def depth(self) -> int:
        return len(self.x_chain)

    @property
    def x_hex(self) -> str:
        return self.x_chain[-1] if self.x_chain else "-"

    def to_line(self) -> str:
        chain = ",".join(self.x_chain) if self.x_chain else "-"
        parent = self.parent_fingerprint or "-"
        return (f"seq={self.seq} run={self.run} iter={self.iteration} "
                f"virus={self.virus} d={self.d} type={self.code_type} "
                f"family={self.family} gamma={self.gamma} beta={self.beta} "
                f"depth={self.depth} x={self.x_hex} origin={self.origin} "
                f"chain={chain} parent={parent} fingerprint={self.fingerprint}")

    @classmethod
    def from_line(cls, line: str) -> "CodeRecord":
        fields = dict(tok.split("=", 1) for tok in line.split())
        chain = tuple(fields["chain"].split(",")) if fields["chain"] != "-" else ()
        return cls(seq=int(fields["seq"]), run=int(fields["run"]),
                   iteration=int(fields["iter"]), virus=int(fields["virus"]),
                   d=int(fields["d"]), code_type=fields["type"],
                   family=fields["family"], gamma=int(fields["gamma"]),
                   beta=int(fields["beta"]), origin=fields["origin"],
                   x_chain=chain,
                   parent_fingerprint="" if fields["parent"] == "-" else fields["parent"],
                   fingerprint=fields["fingerprint"])


@dataclass(frozen=True)
class RegistrySnapshot:
    """Immutable view used for novelty flags inside one evaluation batch."""

    exact: frozenset
    wild: frozenset  # (type, gamma, beta) rows whose family was unknown

    def __contains__(self, key: tuple[str, str, int, int]) -> bool:
        t, _family, g, b = key
        return key in self.exact or (t, g, b) in self.wild


class Registry:
    """Known (type, family, gamma, beta) keys: a fixed baseline plus this
    run's finds.  A record is *new* iff its key is absent from the baseline;
    baseline rows may use family '*' when only (type, gamma, beta) is known.
    """

    def __init__(self, baseline: Iterable[tuple[str, str, int, int]] = ()) -> None:
        self.baseline_exact: set = set()
        self.baseline_wild: set = set()
        self.found: set = set()
        for t, fam, g, b in baseline:
            if fam == "*":
                self.baseline_wild.add((t, g, b))
            else:
                self.baseline_exact.add((t, fam, g, b))

    @classmethod
    def from_csv(cls, path: str) -> "Registry":
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                t, fam, g, b = (tok.strip() for tok in line.split(","))
                rows.append((t, fam, int(g), int(b)))
        return cls(rows)

    def in_baseline(self, key: tuple[str, str, int, int]) -> bool:
        t, _fam, g, b = key
        return key in self.baseline_exact or (t, g, b) in self.baseline_wild

    def add_found(self, key: tuple[str, str, int, int]) -> None:
        self.found.add(key)

    def snapshot(self) -> RegistrySnapshot:
        return RegistrySnapshot(exact=frozenset(self.baseline_exact | self.found),
                                wild=frozenset(self.baseline_wild))


@dataclass
class Virus:
    x: int
    fitness: tuple[int, int]


@dataclass(frozen=True)
class _SaveInfo:
    x_bits: int
    code: LinearCode
    d: int
    code_type: str
    family: str
    gamma: int
    beta: int
    novelty: bool

    def key(self) -> tuple[str, str, int, int]:
        return (self.code_type, self.family, self.gamma, self.beta)


@dataclass(frozen=True)
class _EvalResult:
    fitness: tuple[int, int]
    save: "_SaveInfo | None" = None


_WORST = (0, 0)


def _eval_one(x_bits: int, parent: LinearCode, snapshot: RegistrySnapshot,
              target_family: str | None, floor: int) -> _EvalResult:
    x_bits = repair_even(x_bits)
    if parent.contains(x_bits):
        return _EvalResult(_WORST)
    child = neighbour(parent, BitVector(_LENGTH, x_bits))
    try:
        analysis = analyze_length72(child, floor)
    except ValueError:
        return _EvalResult((min(floor, 12), 0))  # beyond-window freak; not persisted
    d = analysis.d
    if d is not None and d < floor:
        return _EvalResult((min(d, 12), 0))
    if analysis.params is None or d is None:
        return _EvalResult((12, 0))
    params = analysis.params
    if target_family is not None and params.family.value != target_family:
        return _EvalResult((12, 0))
    novelty = params.key() not in snapshot
    gamma, beta = params.key()[2], params.key()[3]
    save = _SaveInfo(x_bits=x_bits, code=child, d=d,
                     code_type=params.code_type.value, family=params.family.value,
                     gamma=gamma, beta=beta, novelty=novelty)
    return _EvalResult((min(d, 12), int(novelty)), save)


def _eval_chunk(args) -> list[_EvalResult]:
    xs, parent, snapshot, target_family, floor = args
    return [_eval_one(x, parent, snapshot, target_family, floor) for x in xs]


def evaluate(xs: Sequence[int], parent: LinearCode, snapshot: RegistrySnapshot,
             config: SearchConfig, pool: "Pool | None" = None) -> list[_EvalResult]:
    """Fitness (and save candidates) for a batch; a pure, order-stable map."""
    args = (parent, snapshot, config.target_family, config.distance_floor)
    if pool is None:
        return _eval_chunk((xs, *args))
    nchunks = config.threads * 2
    bounds = np.linspace(0, len(xs), nchunks + 1).astype(int)
    tasks = [(list(xs[a:b]), *args) for a, b in zip(bounds, bounds[1:]) if b > a]
    out: list[_EvalResult] = []
    for part in pool.map(_eval_chunk, tasks):
        out.extend(part)
    return out


def classify(fitnesses: Sequence[tuple[int, int]], strong_fraction: float) -> list[bool]:
    """Top ceil(fraction*N) by fitness are strong; ties go to lower index."""
    n = len(fitnesses)
    quota = math.ceil(strong_fraction * n)
    order = sorted(range(n), key=lambda i: (-fitnesses[i][0], -fitnesses[i][1], i))
    strong = [False] * n
    for i in order[:quota]:
        strong[i] = True
    return strong


def replicate(xs: Sequence[int], strong: Sequence[bool], config: SearchConfig,
              run_idx: int, iteration: int) -> list[int]:
    """Class-dependent offspring: few flips exploit, many flips explore."""
    offspring: list[int] = []
    for v, (x, is_strong) in enumerate(zip(xs, strong)):
        growth = config.strong_growth if is_strong else config.common_growth
        flips = config.strong_flips if is_strong else config.common_flips
        if growth <= 0:
            continue
        gen = rng_stream(config.master_seed, run_idx, iteration, v, _P_REPLICATE)
        positions = gen.integers(0, _LENGTH, size=(growth, flips))
        for row in positions:
            y = x
            for p in row:
                y ^= 1 << int(p)
            offspring.append(repair_even(y))
    return offspring


def antivirus(population: list[Virus], offspring: list[Virus],
              population_size: int) -> list[Virus]:
    """Keep the best population_size members; elders win ties, then lower index."""
    combined = population + offspring
    combined.sort(key=lambda v: (-v.fitness[0], -v.fitness[1]))  # stable
    return combined[:population_size]


def resolve_origin(origin: str) -> LinearCode:
    """Rebuild a record's root code from its origin string."""
    if origin.startswith("raw:"):
        fp = origin[4:]
        rows = fp.split(".")
        n = 4 * len(rows[0])
        ints = [BitVector.from_hex(h, n).bits for h in rows]
        return from_generator(BitMatrix(len(ints), n, tuple(ints)))
    family, seed = parse_seed_spec(origin)
    return build_generator(family, seed)


def rebuild_record_code(record: CodeRecord) -> LinearCode:
    code = resolve_origin(record.origin)
    for xh in record.x_chain:
        code = neighbour(code, BitVector.from_hex(xh, code.n))
    return code


def revalidate_record(record: CodeRecord, floor: int = 12) -> LinearCode:
    """Rebuild from provenance and re-certify everything the record claims."""
    code = rebuild_record_code(record)
    if code.fingerprint != record.fingerprint:
        raise ValueError(f"record {record.seq}: fingerprint mismatch after rebuild")
    if not code.is_self_dual:
        raise ValueError(f"record {record.seq}: rebuilt code is not self-dual")
    analysis = analyze_length72(code, floor)
    if analysis.d != record.d:
        raise ValueError(f"record {record.seq}: d={analysis.d} != recorded {record.d}")
    if analysis.params is None or analysis.params.key() != record.key():
        raise ValueError(f"record {record.seq}: enumerator parameters changed")
    return code


@dataclass
class _RoundBest:
    key: tuple[int, int]
    code: LinearCode
    chain: tuple[str, ...]


def run(config: SearchConfig, initial: LinearCode, registry: Registry,
        origin: str, sink: Callable[[CodeRecord], None] | None = None) -> list[CodeRecord]:
    """Full search: ``runs`` rounds of ``iterations`` generations each.

    Deterministic function of (config, initial, registry baseline): records
    come back in discovery order with seq = logical discovery index.
    """
    if initial.n != _LENGTH:
        raise ValueError("search expects a length-72 initial code")
    if not initial.is_self_dual:
        raise ValueError("initial code fails preconditions: not self-dual")
    init_analysis = analyze_length72(initial, config.distance_floor)
    if init_analysis.params is None:
        raise ValueError("initial code fails preconditions: minimum distance "
                         f"below the floor {config.distance_floor}")
    current = initial
    current_chain: tuple[str, ...] = ()
    current_key = (init_analysis.params.key()[2], init_analysis.params.key()[3])
    seen_fps = {initial.fingerprint}
    records: list[CodeRecord] = []
    pool = Pool(config.threads) if config.threads > 1 else None

    def process(results: list[_EvalResult], run_idx: int, iteration: int,
                best: _RoundBest | None) -> _RoundBest | None:
        for virus_idx, res in enumerate(results):
            save = res.save
            if save is None or save.code.fingerprint in seen_fps:
                continue
            seen_fps.add(save.code.fingerprint)
            x_hex = BitVector(_LENGTH, save.x_bits).to_hex()
            record = CodeRecord(
                seq=len(records) + 1, run=run_idx, iteration=iteration,
                virus=virus_idx, d=save.d, code_type=save.code_type,
                family=save.family, gamma=save.gamma, beta=save.beta,
                origin=origin, x_chain=current_chain + (x_hex,),
                parent_fingerprint=current.fingerprint,
                fingerprint=save.code.fingerprint)
            records.append(record)
            registry.add_found(save.key())
            if sink is not None:
                sink(record)
            key = (save.gamma, save.beta)
            if best is None or key > best.key:
                best = _RoundBest(key, save.code, record.x_chain)
        return best

    try:
        for run_idx in range(config.runs):
            if config.iterations <= 0:
                break
            xs = [random_even_bits(rng_stream(config.master_seed, run_idx, 0, v, _P_INIT))
                  for v in range(config.population_size)]
            results = evaluate(xs, current, registry.snapshot(), config, pool)
            best = process(results, run_idx, 0, None)
            population = [Virus(x, r.fitness) for x, r in zip(xs, results)]
            for iteration in range(1, config.iterations + 1):
                strong = classify([v.fitness for v in population], config.strong_fraction)
                off_xs = replicate([v.x for v in population], strong, config,
                                   run_idx, iteration)
                off_results = evaluate(off_xs, current, registry.snapshot(), config, pool)
                best = process(off_results, run_idx, iteration, best)
                off = [Virus(x, r.fitness) for x, r in zip(off_xs, off_results)]
                population = antivirus(population, off, config.population_size)
            if best is not None and best.key > current_key:
                current = best.code
                current_chain = best.chain
                current_key = best.key
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    return records
