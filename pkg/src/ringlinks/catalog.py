"""Built-in rings and the automorphisms the harness sweeps over."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import MalformedSpec
from .ring import FiniteRing, RingSpec, construct_ring
from .sigma import Automorphism, identity_automorphism, swap_automorphism


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    ring_spec: RingSpec
    automorphisms: tuple[str, ...]


def _spec(**kw) -> RingSpec:
    return RingSpec.from_dict(kw)


_Z2 = {"kind": "cyclic", "n": 2}
_Z4 = {"kind": "cyclic", "n": 4}
_T2 = {"kind": "triangular", "modulus": 2, "dim": 2}

CATALOG: tuple[CatalogEntry, ...] = (
    CatalogEntry("Z4", _spec(**_Z4), ("identity",)),
    CatalogEntry("Z8", _spec(kind="cyclic", n=8), ("identity",)),
    CatalogEntry("Z2xZ2", _spec(kind="product", left=_Z2, right=_Z2), ("identity", "swap")),
    CatalogEntry("Z4xZ4", _spec(kind="product", left=_Z4, right=_Z4), ("identity", "swap")),
    CatalogEntry("T2F2", _spec(**_T2), ("identity",)),
    CatalogEntry("T2F2xT2F2", _spec(kind="product", left=_T2, right=_T2), ("identity", "swap")),
    CatalogEntry("M2F2", _spec(kind="matrix", modulus=2, dim=2), ("identity",)),
)


def get_entry(name: str) -> CatalogEntry:
    for entry in CATALOG:
        if entry.name == name:
            return entry
    raise MalformedSpec(f"unknown built-in ring {name!r}; "
                        f"choose from {', '.join(e.name for e in CATALOG)}")


@lru_cache(maxsize=None)
def catalog_ring(name: str) -> FiniteRing:
    """Shared ring instance per entry, so lattice memos survive across calls."""
    return construct_ring(get_entry(name).ring_spec)


def named_automorphism(ring: FiniteRing, name: str) -> Automorphism:
    if name == "identity":
        return identity_automorphism(ring)
    if name == "swap":
        return swap_automorphism(ring)
    raise MalformedSpec(f"unknown built-in automorphism {name!r}")


def catalog_automorphisms(name: str) -> list[Automorphism]:
    ring = catalog_ring(name)
    return [named_automorphism(ring, a) for a in get_entry(name).automorphisms]
