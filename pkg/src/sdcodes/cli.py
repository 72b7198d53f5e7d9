"""Command-line surface: construct, analyze, neighbour, search, table1, registry."""
from __future__ import annotations

import argparse
import os
import sys
from collections import Counter

from . import catalog
from .codes import (CodeType, EnumeratorFamily, LinearCode, analyze_length72,
                    classify_type, from_generator, weight_window)
from .constructions import FAMILIES, BlockSeed, build_generator
from .gf2 import BitMatrix, BitVector
from .neighbours import intersection_dim, neighbour
from .search import (CodeRecord, Registry, SearchConfig, load_config,
                     parse_config, resolve_origin, revalidate_record, run)


def load_generator_file(path: str) -> LinearCode:
    """Generator file: '#' comments, first data line = column count, then one
    hex row per line (coordinate 0 = most significant bit)."""
    ncols = None
    rows: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ncols is None:
                ncols = int(line)
                continue
            rows.append(BitVector.from_hex(line, ncols).bits)
    if ncols is None or not rows:
        raise ValueError(f"no generator rows in {path}")
    return from_generator(BitMatrix(len(rows), ncols, tuple(rows)))


def resolve_code_spec(spec: str) -> tuple[LinearCode, str]:
    """'<family>:<seed hex>' or '@<generator file>'; returns (code, origin)."""
    if spec.startswith("@"):
        code = load_generator_file(spec[1:])
        return code, f"raw:{code.fingerprint}"
    code = resolve_origin(spec)
    return code, spec


class _Report:
    """Collects key/value pairs; prints to stdout and optionally to --out."""

    def __init__(self, out_path: str | None) -> None:
        self.out_path = out_path
        self.lines: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))
        print(f"{key}: {value}")

    def flush(self) -> None:
        if self.out_path:
            with open(self.out_path, "w", encoding="utf-8") as fh:
                for k, v in self.lines:
                    fh.write(f"{k}={v}\n")


def _describe_code(code: LinearCode, report: _Report, floor: int = 12) -> None:
    report.add("length", code.n)
    report.add("dimension", code.k)
    report.add("fingerprint", code.fingerprint)
    report.add("self_dual", "yes" if code.is_self_dual else "no")
    if not code.is_self_dual:
        return
    if code.n == 72:
        analysis = analyze_length72(code, floor)
        report.add("min_distance", analysis.d if analysis.d is not None
                   else f">{analysis.window_max}")
        report.add("type", analysis.code_type.value)
        if analysis.a12 is not None:
            report.add("A12", analysis.a12)
            report.add("A14", analysis.a14)
            if analysis.a16 is not None:
                report.add("A16", analysis.a16)
        if analysis.params is not None:
            p = analysis.params
            report.add("family", p.family.value)
            if p.code_type is CodeType.TYPE_II:
                report.add("alpha", p.alpha)
            else:
                report.add("gamma", p.gamma)
                report.add("beta", p.beta)
    else:
        window = weight_window(code, min(code.k, 6))
        report.add("min_distance", window.distance_label)
        report.add("type", classify_type(window, code).value)
        report.add("family", EnumeratorFamily.NOT_LENGTH_72.value)
        counts = " ".join(f"A{w}={c}" for w, c in sorted(window.counts.items()))
        report.add("window_counts", counts or "none<=%d" % window.max_weight)


def cmd_construct(args) -> int:
    family = FAMILIES[args.family]
    seed = BlockSeed.from_hex(args.seed, family.block_kind)
    report = _Report(args.out)
    report.add("seed", f"{family.id}:{seed.to_hex()}")
    _describe_code(build_generator(family, seed), report)
    report.flush()
    return 0


def cmd_analyze(args) -> int:
    code = load_generator_file(args.path)
    report = _Report(args.out)
    _describe_code(code, report)
    report.flush()
    return 0


def cmd_neighbour(args) -> int:
    code, _origin = resolve_code_spec(args.code)
    x = BitVector.from_hex(args.x, code.n)
    child = neighbour(code, x)  # may raise: not isotropic / not a proper neighbour
    report = _Report(args.out)
    report.add("x", x.to_hex())
    report.add("intersection_dim", intersection_dim(code, child))
    _describe_code(child, report)
    report.flush()
    return 0


def cmd_table1(args) -> int:
    failures = 0
    report = _Report(args.out)
    for ref in catalog.REFERENCE_CODES:
        code = build_generator(ref.family, ref.seed)
        ok = code.is_self_dual
        measured = {}
        if ok:
            window = weight_window(code, 8)
            ctype = classify_type(window, code)
            measured = {"d": window.certified_min_distance,
                        "A12": window.count(12), "A14": window.count(14),
                        "A16": window.count(16)}
            from .codes import enumerator_params
            params = enumerator_params(window, ctype)
            ok = (window.certified_min_distance == ref.d
                  and params.gamma == ref.gamma and params.beta == ref.beta
                  and ctype is CodeType.TYPE_I)
        status = "PASS" if ok else "FAIL"
        detail = " ".join(f"{k}={v}" for k, v in measured.items())
        report.add(ref.spec, f"{status} expected gamma={ref.gamma} beta={ref.beta} {detail}")
        failures += 0 if ok else 1
    report.add("result", f"{len(catalog.REFERENCE_CODES) - failures}/"
                         f"{len(catalog.REFERENCE_CODES)} pass")
    report.flush()
    return 1 if failures else 0


def _build_search_config(args) -> SearchConfig:
    cfg = SearchConfig()
    if args.config:
        cfg = load_config(args.config, cfg)
    overrides = []
    for name in ("population_size", "iterations", "runs", "strong_fraction",
                 "strong_growth", "common_growth", "strong_flips",
                 "common_flips", "distance_floor", "target_family"):
        value = getattr(args, name)
        if value is not None:
            overrides.append(f"{name} = {value}")
    if args.seed is not None:
        overrides.append(f"master_seed = {args.seed}")
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("SDCODES_THREADS", "0")) or None
    if threads is not None:
        overrides.append(f"threads = {threads}")
    return parse_config("\n".join(overrides), cfg)


def cmd_search(args) -> int:
    config = _build_search_config(args)
    initial, origin = resolve_code_spec(args.initial)
    registry = (Registry.from_csv(args.baseline) if args.baseline
                else catalog.load_default_registry())
    out_fh = open(args.out, "w", encoding="utf-8") if args.out else None

    def sink(record: CodeRecord) -> None:
        line = record.to_line()
        if out_fh is not None:
            out_fh.write(line + "\n")
            out_fh.flush()
        else:
            print(line)

    try:
        records = run(config, initial, registry, origin, sink)
    finally:
        if out_fh is not None:
            out_fh.close()
    new_keys = sorted({r.key() for r in records if not registry.in_baseline(r.key())})
    per_gamma = Counter(k[2] for k in new_keys)
    print(f"records: {len(records)}")
    print(f"new parameter pairs: {len(new_keys)}")
    for gamma in sorted(per_gamma):
        print(f"  gamma={gamma}: {per_gamma[gamma]} new")
    return 0


def cmd_registry(args) -> int:
    registry = (Registry.from_csv(args.baseline) if args.baseline
                else catalog.load_default_registry())
    print(f"baseline keys: {len(registry.baseline_exact) + len(registry.baseline_wild)}")
    if not args.log:
        return 0
    new = known = invalid = 0
    with open(args.log, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = CodeRecord.from_line(line)
            if args.revalidate:
                try:
                    revalidate_record(record)
                except ValueError as exc:
                    print(f"INVALID {record.seq}: {exc}")
                    invalid += 1
                    continue
            if registry.in_baseline(record.key()):
                known += 1
            else:
                new += 1
                print(f"new: type={record.code_type} family={record.family} "
                      f"gamma={record.gamma} beta={record.beta} (seq={record.seq})")
    print(f"log records: new={new} known={known}" +
          (f" invalid={invalid}" if args.revalidate else ""))
    return 1 if invalid else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdcodes",
        description="Construct and hunt binary self-dual [72,36,12] codes.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("construct", help="build [I|T] from a family seed and analyze it")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("seed", help="9 hex digits, a1 most significant")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="analyze a generator matrix file")
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("neighbour", help="build and analyze one neighbour")
    p.add_argument("code", help="'<family>:<seed>' or '@<generator file>'")
    p.add_argument("x", help="hex vector, ceil(n/4) digits")
    p.add_argument("--out")
    p.set_defaults(func=cmd_neighbour)

    p = sub.add_parser("table1", help="rebuild the bundled reference codes and check them")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("search", help="population-driven neighbour search")
    p.add_argument("--initial", required=True, help="'<family>:<seed>' or '@<file>'")
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--baseline", help="known-parameters CSV (default: bundled)")
    p.add_argument("--out", help="record log path (default: stdout)")
    p.add_argument("--seed", type=int, help="master RNG seed")
    p.add_argument("--threads", type=int,
                   help="worker processes (or SDCODES_THREADS)")
    p.add_argument("--population-size", dest="population_size", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--runs", type=int)
    p.add_argument("--strong-fraction", dest="strong_fraction", type=float)
    p.add_argument("--strong-growth", dest="strong_growth", type=int)
    p.add_argument("--common-growth", dest="common_growth", type=int)
    p.add_argument("--strong-flips", dest="strong_flips", type=int)
    p.add_argument("--common-flips", dest="common_flips", type=int)
    p.add_argument("--distance-floor", dest="distance_floor", type=int)
    p.add_argument("--target-family", dest="target_family")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("registry", help="inspect a baseline and classify a record log")
    p.add_argument("--baseline")
    p.add_argument("--log")
    p.add_argument("--revalidate", action="store_true",
                   help="rebuild every log record from provenance and re-certify")
    p.set_defaults(func=cmd_registry)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
