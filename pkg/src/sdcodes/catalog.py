"""Bundled reference data: one seed per construction family with its known
weight-enumerator parameters, and the packaged known-parameters baseline."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .constructions import FAMILIES, BlockSeed, Family
from .search import Registry


@dataclass(frozen=True)
class ReferenceCode:
    family_id: str
    seed_hex: str
    gamma: int
    beta: int
    d: int = 12

    @property
    def family(self) -> Family:
        return FAMILIES[self.family_id]

    @property
    def seed(self) -> BlockSeed:
        return BlockSeed.from_hex(self.seed_hex, self.family.block_kind)

    @property
    def spec(self) -> str:
        return f"{self.family_id}:{self.seed_hex}"


REFERENCE_CODES: tuple[ReferenceCode, ...] = (
    ReferenceCode("G1", "0bf5d89f5", gamma=0, beta=165),
    ReferenceCode("G2", "8c1513fa5", gamma=0, beta=315),
    ReferenceCode("G3", "d2f9a7347", gamma=0, beta=255),
    ReferenceCode("G4", "5f6ea72b2", gamma=0, beta=309),
    ReferenceCode("G5", "d05d29c72", gamma=36, beta=537),
    ReferenceCode("G6", "80d9f1666", gamma=0, beta=231),
)


def default_baseline_path() -> str:
    return str(resources.files("sdcodes.data") / "known_type_i_params.csv")


def load_default_registry() -> Registry:
    return Registry.from_csv(default_baseline_path())
