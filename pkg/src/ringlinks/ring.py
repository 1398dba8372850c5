"""Finite rings stored as dense operation tables.

Elements are the integers ``0..N-1``.  Every higher module speaks only in
these indices, so the table layout chosen by each family constructor is the
canonical identity of an element:

* ``cyclic``      residues ``0..n-1`` in natural order
* ``product``     pairs ``(a, b)`` in lexicographic order, index ``a*|S| + b``
* ``matrix``      entries in row-major order, read as base-``modulus`` digits
                  with the first entry most significant
* ``triangular``  as ``matrix`` but only the entries on or above the diagonal
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Mapping

import numpy as np

from .errors import IndexOutOfRange, MalformedSpec, SizeLimitExceeded

DEFAULT_MAX_SIZE = 4096

KINDS = ("cyclic", "product", "matrix", "triangular", "tables")

# rows per block when materialising tables; bounds peak memory at N = 4096
_CHUNK = 256


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite associative unital ring, not necessarily commutative.

    Instances are immutable.  ``factors`` is set only for rings built by the
    ``product`` constructor and records the two factor rings.
    """

    size: int
    add_table: np.ndarray
    mul_table: np.ndarray
    zero: int
    one: int
    label: str = ""
    factors: tuple[FiniteRing, FiniteRing] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for name in ("add_table", "mul_table"):
            table = np.array(getattr(self, name), dtype=np.intp)
            table.setflags(write=False)
            object.__setattr__(self, name, table)

    def __repr__(self):
        return f"FiniteRing({self.label or '?'}, N={self.size})"

    @cached_property
    def neg_table(self) -> np.ndarray:
        hits = self.add_table == self.zero
        if not hits.any(axis=1).all():
            raise MalformedSpec(f"{self.label}: some element has no additive inverse")
        neg = hits.argmax(axis=1)
        neg.setflags(write=False)
        return neg

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.intp)

    def is_commutative(self) -> bool:
        return bool((self.mul_table == self.mul_table.T).all())


def _check_index(r: FiniteRing, *xs: int) -> None:
    for x in xs:
        if not 0 <= x < r.size:
            raise IndexOutOfRange(f"element {x} not in 0..{r.size - 1} of {r.label}")


def add(r: FiniteRing, a: int, b: int) -> int:
    _check_index(r, a, b)
    return int(r.add_table[a, b])


def mul(r: FiniteRing, a: int, b: int) -> int:
    _check_index(r, a, b)
    return int(r.mul_table[a, b])


def neg(r: FiniteRing, a: int) -> int:
    _check_index(r, a)
    return int(r.neg_table[a])


# --------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class RingSpec:
    """Declarative description of a ring; mirrors the ring-spec JSON file."""

    kind: str
    params: Mapping[str, Any]

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], _path: str = "$") -> RingSpec:
        if not isinstance(data, Mapping):
            raise MalformedSpec(f"{_path}: expected an object, got {type(data).__name__}")
        kind = data.get("kind")
        if kind not in KINDS:
            raise MalformedSpec(f"{_path}.kind: expected one of {KINDS}, got {kind!r}")
        params = {k: v for k, v in data.items() if k != "kind"}

        def need_int(key, lo):
            v = params.get(key)
            if isinstance(v, bool) or not isinstance(v, int) or v < lo:
                raise MalformedSpec(f"{_path}.{key}: expected integer >= {lo}, got {v!r}")

        if kind == "cyclic":
            need_int("n", 1)
        elif kind == "product":
            for side in ("left", "right"):
                if side not in params:
                    raise MalformedSpec(f"{_path}.{side}: missing")
                params[side] = cls.from_dict(params[side], f"{_path}.{side}")
        elif kind in ("matrix", "triangular"):
            need_int("modulus", 2)
            need_int("dim", 1)
        else:
            _check_table_params(params, _path)
        return cls(kind, params)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        for k, v in self.params.items():
            out[k] = v.to_dict() if isinstance(v, RingSpec) else v
        return out

    def size(self) -> int:
        p = self.params
        if self.kind == "cyclic":
            return p["n"]
        if self.kind == "product":
            return p["left"].size() * p["right"].size()
        if self.kind == "matrix":
            return p["modulus"] ** (p["dim"] ** 2)
        if self.kind == "triangular":
            return p["modulus"] ** (p["dim"] * (p["dim"] + 1) // 2)
        return len(p["add"])


def _check_table_params(params, path):
    add_t, mul_t = params.get("add"), params.get("mul")
    for key, t in (("add", add_t), ("mul", mul_t)):
        if not isinstance(t, list) or not t:
            raise MalformedSpec(f"{path}.{key}: expected a non-empty list of rows")
    n = len(add_t)
    for key, t in (("add", add_t), ("mul", mul_t)):
        if len(t) != n:
            raise MalformedSpec(f"{path}.{key}: expected {n} rows, got {len(t)}")
        for i, row in enumerate(t):
            if not isinstance(row, list) or len(row) != n:
                raise MalformedSpec(f"{path}.{key}[{i}]: expected a row of length {n}")
            for j, x in enumerate(row):
                if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
                    raise MalformedSpec(f"{path}.{key}[{i}][{j}]: {x!r} is not an element index")
    for key in ("one", "zero"):
        if key in params:
            v = params[key]
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise MalformedSpec(f"{path}.{key}: {v!r} is not an element index")
    if "one" not in params:
        raise MalformedSpec(f"{path}.one: missing")


# --------------------------------------------------------------------------
# construction


def construct_ring(spec: RingSpec | Mapping[str, Any], max_size: int = DEFAULT_MAX_SIZE,
                   validate: bool = True) -> FiniteRing:
    """Build the ring described by ``spec``.

    Raises SizeLimitExceeded before any table is allocated when the ring
    would have more than ``max_size`` elements, and MalformedSpec when the
    spec is ill-formed or (kind ``tables``) the tables violate a ring axiom.
    """
    if not isinstance(spec, RingSpec):
        spec = RingSpec.from_dict(spec)
    n = spec.size()
    if n > max_size:
        raise SizeLimitExceeded(f"ring of size {n} exceeds limit {max_size}")
    ring = _build(spec)
    if validate:
        result = validate_ring(ring)
        if not result:
            raise MalformedSpec(f"{ring.label}: {result.axiom} fails at {result.witness}")
    return ring


def _build(spec: RingSpec) -> FiniteRing:
    p = spec.params
    if spec.kind == "cyclic":
        n = p["n"]
        idx = np.arange(n)
        return FiniteRing(n, (idx[:, None] + idx[None, :]) % n,
                          (idx[:, None] * idx[None, :]) % n,
                          zero=0, one=1 % n, label=f"Z/{n}")
    if spec.kind == "product":
        return product_ring(_build(p["left"]), _build(p["right"]))
    if spec.kind in ("matrix", "triangular"):
        m, d = p["modulus"], p["dim"]
        if spec.kind == "matrix":
            slots = [(i, j) for i in range(d) for j in range(d)]
            label = f"M{d}(Z/{m})"
        else:
            slots = [(i, j) for i in range(d) for j in range(i, d)]
            label = f"T{d}(Z/{m})"
        return _matrix_family(m, d, slots, label)
    add_t = np.asarray(p["add"])
    zero = p.get("zero")
    if zero is None:
        # additive identity: the row equal to the identity permutation
        rows = np.flatnonzero((add_t == np.arange(len(add_t))[None, :]).all(axis=1))
        zero = int(rows[0]) if rows.size else 0
    return FiniteRing(len(add_t), add_t, np.asarray(p["mul"]), zero=zero, one=p["one"],
                      label=p.get("label", f"tables[{len(add_t)}]"))


def product_ring(left: FiniteRing, right: FiniteRing) -> FiniteRing:
    n2 = right.size
    idx = np.arange(left.size * n2)
    a, b = idx // n2, idx % n2

    def combine(t1, t2):
        return t1[a[:, None], a[None, :]] * n2 + t2[b[:, None], b[None, :]]

    return FiniteRing(left.size * n2, combine(left.add_table, right.add_table),
                      combine(left.mul_table, right.mul_table),
                      zero=left.zero * n2 + right.zero, one=left.one * n2 + right.one,
                      label=f"{left.label} x {right.label}", factors=(left, right))


def _matrix_family(m: int, d: int, slots: list[tuple[int, int]], label: str) -> FiniteRing:
    k = len(slots)
    n = m ** k
    weights = m ** np.arange(k - 1, -1, -1)
    digits = (np.arange(n)[:, None] // weights[None, :]) % m
    pos = {slot: t for t, slot in enumerate(slots)}
    # entry (i, l) of a product is sum_j x[i, j] * y[j, l] over stored slots
    terms = {t: [(pos[i, j], pos[j, l]) for j in range(d) if (i, j) in pos and (j, l) in pos]
             for t, (i, l) in enumerate(slots)}

    add_t = np.empty((n, n), dtype=np.intp)
    mul_t = np.empty((n, n), dtype=np.intp)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        x = digits[lo:hi]
        acc_add = np.zeros((hi - lo, n), dtype=np.intp)
        acc_mul = np.zeros((hi - lo, n), dtype=np.intp)
        for t in range(k):
            acc_add += (x[:, t, None] + digits[None, :, t]) % m * weights[t]
            entry = np.zeros((hi - lo, n), dtype=np.intp)
            for p, q in terms[t]:
                entry += x[:, p, None] * digits[None, :, q]
            acc_mul += entry % m * weights[t]
        add_t[lo:hi] = acc_add
        mul_t[lo:hi] = acc_mul
    one = sum(int(weights[t]) for t, (i, j) in enumerate(slots) if i == j)
    return FiniteRing(n, add_t, mul_t, zero=0, one=one, label=label)


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class RingValidation:
    ok: bool
    axiom: str | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.ok


def _first(bad: np.ndarray) -> tuple[int, ...]:
    return tuple(int(x) for x in np.argwhere(bad)[0])


def _generating_set(op: np.ndarray, zero: int) -> list[int]:
    """Greedy generating set of the magma ``op`` (commutativity assumed)."""
    n = len(op)
    inside = np.zeros(n, dtype=bool)
    gens: list[int] = []

    def absorb(g):
        gens.append(g)
        inside[g] = True
        frontier = np.array([g])
        while frontier.size:
            cand = np.unique(op[np.ix_(frontier, np.flatnonzero(inside))])
            frontier = cand[~inside[cand]]
            inside[frontier] = True

    for g in range(n):
        if g != zero and not inside[g]:
            absorb(g)
    if not inside[zero]:
        absorb(zero)
    return gens


def validate_ring(candidate: FiniteRing) -> RingValidation:
    """Check every ring axiom and report the first violation with a witness.

    The additive associativity check is Light's test over a generating set of
    the additive magma.  Once addition is known to be an abelian group, the
    distributive laws only need checking for one argument ranging over an
    additive generating set, and associativity of multiplication (now
    tri-additive) only on triples of generators.  This keeps the check at
    O(N^2 * #generators) instead of O(N^3).
    """
    A, M = np.asarray(candidate.add_table), np.asarray(candidate.mul_table)
    n = candidate.size
    if A.shape != (n, n) or M.shape != (n, n):
        return RingValidation(False, "table_shape", (n,))
    for t in (A, M):
        bad = (t < 0) | (t >= n)
        if bad.any():
            return RingValidation(False, "table_range", _first(bad))
    idx = np.arange(n)
    zero, one = candidate.zero, candidate.one
    if not (0 <= zero < n and 0 <= one < n):
        return RingValidation(False, "table_range", (zero, one))

    bad = A != A.T
    if bad.any():
        return RingValidation(False, "add_commutative", _first(bad))
    bad = A[zero] != idx
    if bad.any():
        return RingValidation(False, "add_identity", (zero, int(np.argmax(bad))))
    bad = ~(A == zero).any(axis=1)
    if bad.any():
        return RingValidation(False, "add_inverse", (int(np.argmax(bad)),))

    # column gathers are slow on row-major tables; gather rows of the transpose
    AT = np.ascontiguousarray(A.T)
    gens = _generating_set(A, zero)
    for g in gens:
        # (x + g) + y  versus  x + (g + y)
        bad = A[A[:, g], :] != AT[A[g, :], :].T
        if bad.any():
            x, y = _first(bad)
            return RingValidation(False, "add_associative", (x, g, y))

    for row in (M[one], M[:, one]):
        bad = row != idx
        if bad.any():
            return RingValidation(False, "mul_identity", (one, int(np.argmax(bad))))

    MT = np.ascontiguousarray(M.T)
    for b in gens:
        # a(b + c) = ab + ac  for all a, c
        bad = MT[A[b, :], :].T != A[M[:, b][:, None], M]
        if bad.any():
            a, c = _first(bad)
            return RingValidation(False, "left_distributive", (a, b, c))
        # (b + c)a = ba + ca  for all c, a
        bad = M[A[b, :], :] != A[M[b, :][None, :], M]
        if bad.any():
            c, a = _first(bad)
            return RingValidation(False, "right_distributive", (b, c, a))

    g = np.array(gens)
    lhs = M[M[np.ix_(g, g)][:, :, None], g[None, None, :]]
    rhs = M[g[:, None, None], M[np.ix_(g, g)][None, :, :]]
    bad = lhs != rhs
    if bad.any():
        i, j, k = _first(bad)
        return RingValidation(False, "mul_associative", (gens[i], gens[j], gens[k]))
    return RingValidation(True)
