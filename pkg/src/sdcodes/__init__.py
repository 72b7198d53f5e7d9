"""Binary self-dual code construction and neighbour search over GF(2)."""

from .codes import (Analysis72, CodeType, EnumeratorFamily, EnumeratorParams,
                    LinearCode, WeightWindow, analyze_length72, classify_type,
                    dual, enumerator_params, extremal_bound, from_generator,
                    is_self_dual, weight_window)
from .constructions import (FAMILIES, BlockKind, BlockSeed, Family, TauLayout,
                            block_circ, build_generator, circ, parse_seed_spec,
                            revcirc, scan_family, tau6)
from .gf2 import (BitMatrix, BitVector, RrefResult, add, dot, matmul,
                  nullspace, rref, weight)
from .neighbours import NeighbourStep, chain, intersection_dim, neighbour
from .search import (CodeRecord, Registry, SearchConfig, Virus, antivirus,
                     classify, evaluate, parse_config, replicate,
                     revalidate_record, run)

__all__ = [
    "Analysis72", "BitMatrix", "BitVector", "BlockKind", "BlockSeed",
    "CodeRecord", "CodeType", "EnumeratorFamily", "EnumeratorParams",
    "FAMILIES", "Family", "LinearCode", "NeighbourStep", "Registry",
    "RrefResult", "SearchConfig", "TauLayout", "Virus", "WeightWindow",
    "add", "analyze_length72", "antivirus", "block_circ", "build_generator",
    "chain", "circ", "classify", "classify_type", "dot", "dual",
    "enumerator_params", "evaluate", "extremal_bound", "from_generator",
    "intersection_dim", "is_self_dual", "matmul", "neighbour", "nullspace",
    "parse_config", "parse_seed_spec", "replicate", "revalidate_record",
    "revcirc", "rref", "run", "scan_family", "tau6", "weight",
    "weight_window",
]
