"""Two-sided ideals of a finite ring and the operations on their lattice."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import (InternalInvariantViolation, LatticeLimitExceeded, NotProper,
                     NotSemiprime, RingMismatch)
from .ring import FiniteRing, _check_index

DEFAULT_MAX_IDEALS = 100_000


@dataclass(frozen=True, eq=False)
class Ideal:
    """A two-sided ideal given by its sorted element indices.

    Equality and hashing go through ``bits``, the bit-per-element form, and
    require the two ideals to live in the very same ring object.
    """

    ring: FiniteRing
    elements: tuple[int, ...]

    @classmethod
    def from_mask(cls, ring: FiniteRing, mask: np.ndarray) -> Ideal:
        ideal = cls(ring, tuple(int(x) for x in np.flatnonzero(mask)))
        mask = np.array(mask, dtype=bool)
        mask.setflags(write=False)
        ideal.__dict__["mask"] = mask
        return ideal

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.size, dtype=bool)
        m[list(self.elements)] = True
        m.setflags(write=False)
        return m

    @cached_property
    def bits(self) -> int:
        return int.from_bytes(np.packbits(self.mask, bitorder="little").tobytes(), "little")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return 0 <= x < self.ring.size and bool(self.mask[x])

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring is other.ring and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __le__(self, other: Ideal) -> bool:
        _same_ring(self, other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: Ideal) -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: Ideal) -> bool:
        return other <= self

    def __gt__(self, other: Ideal) -> bool:
        return other < self

    def __repr__(self):
        if len(self.elements) <= 16:
            return f"Ideal({list(self.elements)})"
        return f"Ideal(<{len(self.elements)} elements>)"

    @property
    def is_proper(self) -> bool:
        return len(self.elements) < self.ring.size

    def sort_key(self):
        return (len(self.elements), self.elements)


def _same_ring(*ideals: Ideal) -> FiniteRing:
    ring = ideals[0].ring
    for other in ideals[1:]:
        if other.ring is not ring:
            raise RingMismatch(f"ideals of {ring.label} and {other.ring.label} mixed")
    return ring


def _check_ring(r: FiniteRing, *ideals: Ideal) -> None:
    for I in ideals:
        if I.ring is not r:
            raise RingMismatch(f"ideal of {I.ring.label} used with ring {r.label}")


def _require_proper(I: Ideal) -> None:
    if not I.is_proper:
        raise NotProper(f"the whole ring {I.ring.label} is not a proper ideal")


# --------------------------------------------------------------------------
# closure


def _additive_span(r: FiniteRing, mask: np.ndarray, extra: Iterable[int]) -> np.ndarray:
    """Enlarge the additive subgroup ``mask`` by each element of ``extra``.

    For a subgroup H and an element t, H + <t> is the union of the cosets
    H + kt, which are either equal to H or disjoint from it; walking the
    multiples of t until one lands in H therefore saturates.
    """
    A = r.add_table
    mask = mask.copy()
    for t in extra:
        if mask[t]:
            continue
        base = np.flatnonzero(mask)
        s = t
        while not mask[s]:
            mask[A[base, s]] = True
            s = A[s, t]
    return mask


def _zero_mask(r: FiniteRing) -> np.ndarray:
    mask = np.zeros(r.size, dtype=bool)
    mask[r.zero] = True
    return mask


def _two_sided_multiples(r: FiniteRing, g: int) -> np.ndarray:
    M = r.mul_table
    return np.unique(M[M[:, g], :])


def ideal_closure(r: FiniteRing, generators: Iterable[int]) -> Ideal:
    """Smallest two-sided ideal containing ``generators``.

    In a unital ring this is the additive span of all products x*g*y.
    """
    generators = sorted(set(int(g) for g in generators))
    _check_index(r, *generators)
    mask = _zero_mask(r)
    for g in generators:
        if not mask[g]:
            mask = _additive_span(r, mask, _two_sided_multiples(r, g))
    return Ideal.from_mask(r, mask)


def principal_ideal(r: FiniteRing, x: int) -> Ideal:
    cache = r._cache.setdefault("principal", {})
    if x not in cache:
        cache[x] = ideal_closure(r, [x])
    return cache[x]


def ideal_sum(Q: Ideal, P: Ideal) -> Ideal:
    r = _same_ring(Q, P)
    return Ideal.from_mask(r, _additive_span(r, Q.mask, P.elements))


def ideal_intersect(Q: Ideal, P: Ideal) -> Ideal:
    r = _same_ring(Q, P)
    return Ideal.from_mask(r, Q.mask & P.mask)


def ideal_product(Q: Ideal, P: Ideal) -> Ideal:
    """The ideal generated by all products q*p (not merely the set of them).

    The set of products is already stable under left and right
    multiplication, so its additive span is the product ideal.
    """
    r = _same_ring(Q, P)
    cache = r._cache.setdefault("product", {})
    key = (Q.bits, P.bits)
    if key not in cache:
        prods = np.unique(r.mul_table[np.ix_(Q.elements, P.elements)])
        cache[key] = Ideal.from_mask(r, _additive_span(r, _zero_mask(r), prods))
    return cache[key]


def intersect_all(ideals: Iterable[Ideal], r: FiniteRing | None = None) -> Ideal:
    ideals = list(ideals)
    if not ideals:
        if r is None:
            raise ValueError("empty intersection needs the ambient ring")
        return whole_ring(r)
    r = _same_ring(*ideals)
    mask = np.ones(r.size, dtype=bool)
    for I in ideals:
        mask &= I.mask
    return Ideal.from_mask(r, mask)


def zero_ideal(r: FiniteRing) -> Ideal:
    return Ideal.from_mask(r, _zero_mask(r))


def whole_ring(r: FiniteRing) -> Ideal:
    return Ideal.from_mask(r, np.ones(r.size, dtype=bool))


def is_ideal(r: FiniteRing, elements: Iterable[int]) -> bool:
    """Direct membership test of the ideal axioms for an element set."""
    mask = np.zeros(r.size, dtype=bool)
    mask[list(elements)] = True
    if not mask[r.zero]:
        return False
    members = np.flatnonzero(mask)
    A, M = r.add_table, r.mul_table
    return bool(mask[A[np.ix_(members, members)]].all()
                and mask[r.neg_table[members]].all()
                and mask[M[:, members]].all()
                and mask[M[members, :]].all())


# --------------------------------------------------------------------------
# lattice


def enumerate_ideals(r: FiniteRing, max_ideals: int = DEFAULT_MAX_IDEALS) -> list[Ideal]:
    """Every two-sided ideal of ``r``, sorted by (cardinality, elements).

    Breadth-first from the zero ideal: each known ideal I is extended by an
    outside element x, giving I + (x), until no new ideal appears.  The
    principal ideals (x) are memoised, and so is the final lattice.
    """
    cached = r._cache.get("ideals")
    if cached is not None:
        if len(cached) > max_ideals:
            raise LatticeLimitExceeded(f"{r.label} has {len(cached)} ideals > {max_ideals}")
        return list(cached)

    principals: dict[int, Ideal] = {}
    for x in range(r.size):
        p = principal_ideal(r, x)
        principals.setdefault(p.bits, p)
    distinct = list(principals.values())

    start = zero_ideal(r)
    seen = {start.bits: start}
    queue = deque([start])
    while queue:
        I = queue.popleft()
        for p in distinct:
            if p.bits & ~I.bits == 0:
                continue
            J = ideal_sum(I, p)
            if J.bits not in seen:
                seen[J.bits] = J
                queue.append(J)
                if len(seen) > max_ideals:
                    raise LatticeLimitExceeded(f"{r.label} has more than {max_ideals} ideals")
    result = sorted(seen.values(), key=Ideal.sort_key)
    r._cache["ideals"] = tuple(result)
    return result


def prime_witness(r: FiniteRing, I: Ideal) -> tuple[int, int] | None:
    """A pair a, b outside I with aRb inside I, or None if I is prime."""
    _check_ring(r, I)
    _require_proper(I)
    M = r.mul_table
    outside = np.flatnonzero(~I.mask)
    for a in outside:
        axb = M[M[a, :], :]  # [x, b] -> a*x*b
        escapes = (~I.mask[axb]).any(axis=0)
        stuck = outside[~escapes[outside]]
        if stuck.size:
            return int(a), int(stuck[0])
    return None


def is_prime(r: FiniteRing, I: Ideal) -> bool:
    _check_ring(r, I)
    cache = r._cache.setdefault("prime", {})
    if I.bits not in cache:
        cache[I.bits] = prime_witness(r, I) is None
    return cache[I.bits]


def semiprime_witness(r: FiniteRing, I: Ideal) -> int | None:
    _check_ring(r, I)
    _require_proper(I)
    M = r.mul_table
    for a in np.flatnonzero(~I.mask):
        if I.mask[M[M[a, :], a]].all():
            return int(a)
    return None


def is_semiprime(r: FiniteRing, I: Ideal) -> bool:
    return semiprime_witness(r, I) is None


def regular_mod(r: FiniteRing, A: Ideal) -> tuple[int, ...]:
    """c(A): elements whose image in R/A is neither a left nor a right zero divisor."""
    _check_ring(r, A)
    _require_proper(A)
    cache = r._cache.setdefault("regular", {})
    if A.bits not in cache:
        inside = A.mask[r.mul_table]  # [g, x] -> g*x in A
        outside = ~A.mask
        left_ok = ~(inside & outside[None, :]).any(axis=1)
        right_ok = ~(inside.T & outside[None, :]).any(axis=1)
        cache[A.bits] = tuple(int(g) for g in np.flatnonzero(left_ok & right_ok))
    return cache[A.bits]


def primes(r: FiniteRing, max_ideals: int = DEFAULT_MAX_IDEALS) -> list[Ideal]:
    return [I for I in enumerate_ideals(r, max_ideals) if I.is_proper and is_prime(r, I)]


def primes_over(r: FiniteRing, A: Ideal, max_ideals: int = DEFAULT_MAX_IDEALS) -> list[Ideal]:
    _check_ring(r, A)
    return [P for P in primes(r, max_ideals) if A <= P]


def minimal_primes_over(r: FiniteRing, A: Ideal,
                        max_ideals: int = DEFAULT_MAX_IDEALS) -> list[Ideal]:
    _require_proper(A)
    over = primes_over(r, A, max_ideals)
    return [P for P in over if not any(X < P for X in over)]


def krull_dim_chain(r: FiniteRing, A: Ideal, max_ideals: int = DEFAULT_MAX_IDEALS) -> int:
    """Length k of the longest chain P0 < P1 < ... < Pk of primes containing A."""
    _require_proper(A)
    over = primes_over(r, A, max_ideals)  # sorted by cardinality
    height: list[int] = []
    for i, P in enumerate(over):
        below = [height[j] + 1 for j in range(i) if over[j] < P]
        height.append(max(below, default=0))
    return max(height, default=0)


def components_of_semiprime(r: FiniteRing, S: Ideal,
                            max_ideals: int = DEFAULT_MAX_IDEALS) -> list[Ideal]:
    """The minimal primes over a semiprime ideal; their intersection is S."""
    if not is_semiprime(r, S):
        raise NotSemiprime(f"{S!r} is not semiprime in {r.label}")
    comps = minimal_primes_over(r, S, max_ideals)
    if intersect_all(comps, r) != S:
        raise InternalInvariantViolation(f"minimal primes over {S!r} do not intersect to it")
    return comps
