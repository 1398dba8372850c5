"""Second-layer links between ideals and the link graph of a finite ring.

A link Q ~> P via A needs QP <= A < Q cap P, with the bimodule (Q cap P)/A
torsionfree as a left R/Q-module and as a right R/P-module.  The predicate
is the same whether Q and P are prime or merely semiprime.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .errors import InternalInvariantViolation, NoLink
from .ideals import (DEFAULT_MAX_IDEALS, Ideal, _same_ring, enumerate_ideals, ideal_intersect,
                     ideal_product, intersect_all, primes, regular_mod)
from .ring import FiniteRing

SIDES = ("both", "left", "right")


@dataclass(frozen=True)
class LinkCheck:
    """Outcome of :func:`is_linking_ideal`; truthy iff A is a linking ideal.

    ``reason`` names the failed condition: ``product_not_contained``,
    ``not_strict``, ``torsion_right`` or ``torsion_left``.  For a torsion
    failure ``witness`` is the pair (f, g) with f outside A but f*g (right)
    or g*f (left) inside A.
    """

    ok: bool
    reason: str | None = None
    witness: tuple[int, int] | None = None
    torsionfree_left: bool | None = None
    torsionfree_right: bool | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class LinkWitness:
    ring: FiniteRing
    source: Ideal
    target: Ideal
    bridge: Ideal
    torsionfree_left: bool = True
    torsionfree_right: bool = True

    @property
    def bimodule_size(self) -> int:
        return len(ideal_intersect(self.source, self.target)) // len(self.bridge)


def torsion_witness(Q: Ideal, P: Ideal, A: Ideal, side: str) -> tuple[int, int] | None:
    """First (f, g) showing (Q cap P)/A has torsion on ``side``, else None.

    Right side: f in (Q cap P) minus A, g in c(P), f*g in A.
    Left side:  f in (Q cap P) minus A, g in c(Q), g*f in A.
    """
    r = _same_ring(Q, P, A)
    meet = Q.mask & P.mask
    fs = np.flatnonzero(meet & ~A.mask)
    if side == "right":
        gs = np.asarray(regular_mod(r, P), dtype=np.intp)
        hit = A.mask[r.mul_table[np.ix_(fs, gs)]]  # [f, g]
    else:
        gs = np.asarray(regular_mod(r, Q), dtype=np.intp)
        hit = A.mask[r.mul_table[np.ix_(gs, fs)]].T  # [f, g]
    if not hit.size or not hit.any():
        return None
    i, j = np.argwhere(hit)[0]
    return int(fs[i]), int(gs[j])


def is_linking_ideal(Q: Ideal, P: Ideal, A: Ideal, sides: str = "both") -> LinkCheck:
    """Decide whether A links Q to P.

    ``sides="right"`` (or ``"left"``) drops the other torsionfree condition;
    the rest of the package uses the two-sided default throughout.
    """
    if sides not in SIDES:
        raise ValueError(f"sides must be one of {SIDES}")
    _same_ring(Q, P, A)
    if not ideal_product(Q, P) <= A:
        return LinkCheck(False, "product_not_contained")
    if not A < ideal_intersect(Q, P):
        return LinkCheck(False, "not_strict")
    right = left = None
    if sides in ("both", "right"):
        right = torsion_witness(Q, P, A, "right")
    if sides in ("both", "left"):
        left = torsion_witness(Q, P, A, "left")
    flags = dict(torsionfree_left=None if sides == "right" else left is None,
                 torsionfree_right=None if sides == "left" else right is None)
    if right is not None:
        return LinkCheck(False, "torsion_right", right, **flags)
    if left is not None:
        return LinkCheck(False, "torsion_left", left, **flags)
    return LinkCheck(True, **flags)


def enumerate_linking_ideals(Q: Ideal, P: Ideal, sides: str = "both",
                             max_ideals: int = DEFAULT_MAX_IDEALS) -> list[Ideal]:
    r = _same_ring(Q, P)
    lo, hi = ideal_product(Q, P), ideal_intersect(Q, P)
    return [A for A in enumerate_ideals(r, max_ideals)
            if lo <= A < hi and is_linking_ideal(Q, P, A, sides)]


def link_exists(Q: Ideal, P: Ideal, sides: str = "both",
                max_ideals: int = DEFAULT_MAX_IDEALS) -> bool:
    r = _same_ring(Q, P)
    cache = r._cache.setdefault("link_exists", {})
    key = (Q.bits, P.bits, sides)
    if key not in cache:
        cache[key] = bool(enumerate_linking_ideals(Q, P, sides, max_ideals))
    return cache[key]


def minimal_linking_ideal(Q: Ideal, P: Ideal, max_ideals: int = DEFAULT_MAX_IDEALS) -> Ideal:
    """The intersection B of all linking ideals, re-verified to link Q to P.

    Raises NoLink when there is no linking ideal, and
    InternalInvariantViolation if B fails to be a linking ideal itself.
    """
    found = enumerate_linking_ideals(Q, P, max_ideals=max_ideals)
    if not found:
        raise NoLink(f"no link {Q!r} -> {P!r}")
    B = intersect_all(found)
    check = is_linking_ideal(Q, P, B)
    if not check:
        raise InternalInvariantViolation(
            f"intersection of linking ideals fails ({check.reason}, witness {check.witness})")
    if not all(B <= A for A in found):
        raise InternalInvariantViolation("intersection is not below every linking ideal")
    return B


# --------------------------------------------------------------------------
# link graph


@dataclass(frozen=True, eq=False)
class LinkGraph:
    ring: FiniteRing
    nodes: list[Ideal]
    edges: list[LinkWitness]

    def node_index(self, I: Ideal) -> int:
        return self.nodes.index(I)


def build_link_graph(r: FiniteRing, max_ideals: int = DEFAULT_MAX_IDEALS) -> LinkGraph:
    nodes = primes(r, max_ideals)
    edges = []
    for Q in nodes:
        for P in nodes:
            if link_exists(Q, P, max_ideals=max_ideals):
                edges.append(LinkWitness(r, Q, P, minimal_linking_ideal(Q, P, max_ideals)))
    return LinkGraph(r, nodes, edges)


def ideal_digest(I: Ideal) -> str:
    return hashlib.sha1(",".join(map(str, I.elements)).encode()).hexdigest()[:8]


def graph_to_dict(g: LinkGraph) -> dict:
    return {
        "ring": g.ring.label,
        "size": g.ring.size,
        "nodes": [{"id": f"P{i}", "size": len(P), "digest": ideal_digest(P),
                   "elements": list(P.elements)} for i, P in enumerate(g.nodes)],
        "edges": [{"source": f"P{g.node_index(e.source)}",
                   "target": f"P{g.node_index(e.target)}",
                   "bridge": list(e.bridge.elements),
                   "bridge_size": len(e.bridge),
                   "bimodule_size": e.bimodule_size} for e in g.edges],
    }


def graph_to_dot(g: LinkGraph) -> str:
    lines = [f'digraph "{g.ring.label}" {{', "  node [shape=ellipse];"]
    for i, P in enumerate(g.nodes):
        lines.append(f'  P{i} [label="#{ideal_digest(P)}\\n|P|={len(P)}"];')
    for e in g.edges:
        s, t = g.node_index(e.source), g.node_index(e.target)
        lines.append(f'  P{s} -> P{t} [label="|A|={len(e.bridge)}, '
                     f'|Q∩P/A|={e.bimodule_size}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
