"""Ring automorphisms acting on ideals, invariant parts, and the theorem checks.

Every ``verify_*`` function returns a :class:`TheoremReport`.  A failed
verdict always carries a concrete counterexample in ``witness``; nothing that
contradicts the theory is swallowed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Any, Sequence

import numpy as np

from .errors import (HypothesisNotMet, InternalInvariantViolation, NoLink, NotAutomorphism,
                     RingMismatch)
from .ideals import (DEFAULT_MAX_IDEALS, Ideal, components_of_semiprime, enumerate_ideals,
                     ideal_intersect, ideal_product, intersect_all, is_ideal, is_prime,
                     is_semiprime, krull_dim_chain, minimal_primes_over)
from .links import (enumerate_linking_ideals, is_linking_ideal, link_exists,
                    minimal_linking_ideal)
from .ring import FiniteRing


@dataclass(frozen=True, eq=False)
class Automorphism:
    ring: FiniteRing
    perm: tuple[int, ...]
    name: str = "sigma"

    @cached_property
    def array(self) -> np.ndarray:
        a = np.asarray(self.perm, dtype=np.intp)
        a.setflags(write=False)
        return a

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def __repr__(self):
        return f"Automorphism({self.name} on {self.ring.label})"


def validate_automorphism(r: FiniteRing, perm: Sequence[int], name: str = "sigma") -> Automorphism:
    """Check that ``perm`` is a unital ring automorphism of ``r``.

    Raises NotAutomorphism naming the first identity that fails and its witness.
    """
    p = np.asarray(list(perm), dtype=np.intp)
    n = r.size
    if p.shape != (n,):
        raise NotAutomorphism(f"permutation has length {len(p)}, ring has {n} elements")
    if ((p < 0) | (p >= n)).any() or len(np.unique(p)) != n:
        raise NotAutomorphism("not a bijection of the element set")
    if p[r.one] != r.one:
        raise NotAutomorphism("identity is not fixed", witness=(r.one,))
    for what, T in (("addition", r.add_table), ("multiplication", r.mul_table)):
        # perm(a op b) == perm(a) op perm(b)
        bad = p[T] != T[np.ix_(p, p)]
        if bad.any():
            a, b = (int(x) for x in np.argwhere(bad)[0])
            raise NotAutomorphism(f"does not preserve {what} at ({a}, {b})", witness=(a, b))
    return Automorphism(r, tuple(int(x) for x in p), name)


def identity_automorphism(r: FiniteRing) -> Automorphism:
    return Automorphism(r, tuple(range(r.size)), "identity")


def swap_automorphism(r: FiniteRing) -> Automorphism:
    """(a, b) -> (b, a) on a product of two copies of one ring."""
    if r.factors is None:
        raise NotAutomorphism(f"{r.label} is not a product ring")
    left, right = r.factors
    if not (left.size == right.size
            and np.array_equal(left.add_table, right.add_table)
            and np.array_equal(left.mul_table, right.mul_table)):
        raise NotAutomorphism(f"factors of {r.label} differ; swap is undefined")
    m = left.size
    idx = np.arange(r.size)
    return validate_automorphism(r, (idx % m) * m + idx // m, "swap")


def inner_automorphism(r: FiniteRing, u: int) -> Automorphism:
    """x -> u x u^-1 for a unit u."""
    M = r.mul_table
    inv = np.flatnonzero((M[u] == r.one) & (M[:, u] == r.one))
    if not inv.size:
        raise NotAutomorphism(f"{u} is not a unit of {r.label}")
    return validate_automorphism(r, M[M[u, :], int(inv[0])], f"inner[{u}]")


def _check(s: Automorphism, I: Ideal) -> None:
    if I.ring is not s.ring:
        raise RingMismatch(f"automorphism of {s.ring.label} applied to ideal of {I.ring.label}")


def apply_to_ideal(s: Automorphism, I: Ideal, times: int = 1) -> Ideal:
    """sigma^times(I), computed elementwise; the image is asserted to be an ideal."""
    _check(s, I)
    mask = I.mask
    for _ in range(times):
        image = np.zeros_like(mask)
        image[s.array[mask]] = True
        mask = image
    out = Ideal.from_mask(s.ring, mask)
    if times and not is_ideal(s.ring, out.elements):
        raise InternalInvariantViolation(f"{s.name} maps {I!r} onto a non-ideal")
    return out


def orbit(s: Automorphism, I: Ideal) -> list[Ideal]:
    """I, sigma(I), ..., sigma^(n-1)(I) with n the least period."""
    _check(s, I)
    out = [I]
    nxt = apply_to_ideal(s, I)
    while nxt != I:
        out.append(nxt)
        nxt = apply_to_ideal(s, nxt)
    return out


def period_of(s: Automorphism, I: Ideal) -> int:
    return len(orbit(s, I))


@dataclass(frozen=True, eq=False)
class SigmaReport:
    ideal: Ideal
    period: int
    orbit: list[Ideal]
    invariant_part: Ideal


def sigma_report(s: Automorphism, I: Ideal) -> SigmaReport:
    orb = orbit(s, I)
    return SigmaReport(I, len(orb), orb, intersect_all(orb))


def is_invariant(s: Automorphism, I: Ideal) -> bool:
    return apply_to_ideal(s, I) == I


def invariant_part(s: Automorphism, I: Ideal, verify: bool = True,
                   max_ideals: int = DEFAULT_MAX_IDEALS) -> Ideal:
    """I0 = I cap sigma(I) cap ... cap sigma^(n-1)(I), n the period of I.

    With ``verify`` the result is checked to be sigma-invariant, to contain
    every sigma-invariant ideal inside I (by a scan of the whole lattice) and,
    for prime I, to be semiprime.
    """
    I0 = intersect_all(orbit(s, I))
    if verify:
        problem = _invariant_part_problem(s, I, I0, max_ideals)
        if problem is not None:
            raise InternalInvariantViolation(f"invariant part of {I!r}: {problem[0]}")
    return I0


def _invariant_part_problem(s, I, I0, max_ideals):
    if not is_invariant(s, I0):
        return "not sigma-invariant", {"sigma_image": list(apply_to_ideal(s, I0).elements)}
    if not I0 <= I:
        return "not contained in the ideal", {}
    for V in enumerate_ideals(s.ring, max_ideals):
        if V <= I and not V <= I0 and is_invariant(s, V):
            return "not maximal", {"larger_invariant_ideal": list(V.elements)}
    if I.is_proper and is_prime(s.ring, I) and not is_semiprime(s.ring, I0):
        return "prime ideal with non-semiprime invariant part", {}
    return None


def common_period(s: Automorphism, ideals: Sequence[Ideal]) -> int:
    """Least k >= 1 with sigma^k fixing every ideal: the lcm of the periods.

    The product of the periods is checked as well, since it is the other
    natural choice of a common period.
    """
    periods = [period_of(s, I) for I in ideals]
    k = reduce(math.lcm, periods, 1)
    mn = math.prod(periods)
    for I in ideals:
        for e in (k, mn):
            if apply_to_ideal(s, I, e) != I:
                raise InternalInvariantViolation(f"sigma^{e} does not fix {I!r}")
    return k


# --------------------------------------------------------------------------
# reports


@dataclass
class TheoremReport:
    theorem: str
    instance: dict[str, Any]
    verdict: str  # "pass", "fail" or "skipped"
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict[str, Any]:
        return {"theorem": self.theorem, "instance": self.instance,
                "verdict": self.verdict, "witness": self.witness}


def _els(I: Ideal) -> list[int]:
    return list(I.elements)


def _instance(s: Automorphism | None, r: FiniteRing, **ideals: Ideal) -> dict[str, Any]:
    return {"ring": r.label, "sigma": s.name if s is not None else None,
            "ideals": {k: _els(v) for k, v in ideals.items()}}


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


def _require_linked_primes(Q: Ideal, P: Ideal, max_ideals: int) -> None:
    r = Q.ring
    for X in (Q, P):
        if not (X.is_proper and is_prime(r, X)):
            raise NoLink(f"{X!r} is not a prime ideal")
    if not link_exists(Q, P, max_ideals=max_ideals):
        raise NoLink(f"no link {Q!r} -> {P!r}")


def verify_prop2(s: Automorphism, I: Ideal, max_ideals: int = DEFAULT_MAX_IDEALS) -> TheoremReport:
    """The orbit intersection is the largest sigma-invariant ideal inside I."""
    rep = sigma_report(s, I)
    problem = _invariant_part_problem(s, I, rep.invariant_part, max_ideals)
    witness = {"period": rep.period, "orbit": [_els(J) for J in rep.orbit],
               "invariant_part": _els(rep.invariant_part)}
    if problem is not None:
        witness["counterexample"] = problem[0]
        witness.update(problem[1])
    return TheoremReport("prop2", _instance(s, I.ring, I=I), _verdict(problem is None), witness)


def verify_prop2_common(s: Automorphism, I: Ideal, J: Ideal) -> TheoremReport:
    """A common period exists: lcm and product of the periods both fix I and J."""
    m, n = period_of(s, I), period_of(s, J)
    k = math.lcm(m, n)
    bad = [e for e in (k, m * n)
           if apply_to_ideal(s, I, e) != I or apply_to_ideal(s, J, e) != J]
    witness: dict[str, Any] = {"periods": [m, n], "lcm": k, "product": m * n}
    if bad:
        witness["counterexample"] = {"exponent_not_fixing": bad[0]}
    return TheoremReport("prop2", _instance(s, I.ring, I=I, J=J), _verdict(not bad), witness)


def verify_prop5(Q: Ideal, P: Ideal, max_ideals: int = DEFAULT_MAX_IDEALS) -> TheoremReport:
    """The intersection of all linking ideals for Q ~> P is itself one."""
    found = enumerate_linking_ideals(Q, P, max_ideals=max_ideals)
    if not found:
        raise NoLink(f"no link {Q!r} -> {P!r}")
    B = intersect_all(found)
    check = is_linking_ideal(Q, P, B)
    below = all(B <= A for A in found)
    witness: dict[str, Any] = {"linking_ideals": [_els(A) for A in found], "minimal": _els(B)}
    if not check:
        witness["counterexample"] = {"reason": check.reason, "f_g": check.witness}
    elif not below:
        witness["counterexample"] = {"reason": "intersection not below every linking ideal"}
    return TheoremReport("prop5", _instance(None, Q.ring, Q=Q, P=P),
                         _verdict(bool(check) and below), witness)


def verify_prop6(s: Automorphism, Q: Ideal, P: Ideal,
                 max_ideals: int = DEFAULT_MAX_IDEALS) -> TheoremReport:
    """sigma^n fixes the minimal linking ideal, n a common period of Q and P."""
    _require_linked_primes(Q, P, max_ideals)
    A = minimal_linking_ideal(Q, P, max_ideals)
    n = common_period(s, [Q, P])
    image = apply_to_ideal(s, A, n)
    witness: dict[str, Any] = {"n": n, "A": _els(A), "sigma_n_A": _els(image)}
    ok = image == A
    if not ok:
        witness["counterexample"] = "sigma^n(A) != A"
    return TheoremReport("prop6", _instance(s, Q.ring, Q=Q, P=P), _verdict(ok), witness)


def verify_prop7(s: Automorphism, Q: Ideal, P: Ideal,
                 max_ideals: int = DEFAULT_MAX_IDEALS) -> TheoremReport:
    """Minimal primes over the minimal linking ideal A and over its invariant part.

    Krull dimension is the prime-chain length, which is 0 for every ideal of
    a finite ring; the report records that the dimension hypotheses hold only
    in this degenerate way.
    """
    _require_linked_primes(Q, P, max_ideals)
    r = Q.ring
    A = minimal_linking_ideal(Q, P, max_ideals)
    A0 = invariant_part(s, A, verify=False)
    Q0 = invariant_part(s, Q, verify=False)
    P0 = invariant_part(s, P, verify=False)
    over_A = minimal_primes_over(r, A, max_ideals)
    over_A0 = minimal_primes_over(r, A0, max_ideals)
    dim = {name: krull_dim_chain(r, X, max_ideals)
           for name, X in (("A", A), ("A0", A0), ("Q", Q), ("P", P))}
    failures = []

    extra = [X for X in over_A if X != Q and X != P]
    if extra:
        failures.append({"claim": "minimal primes over A lie in {Q, P}",
                         "offending_prime": _els(extra[0])})
    for X in over_A:
        if krull_dim_chain(r, X, max_ideals) == dim["A"] and X not in over_A0:
            failures.append({"claim": "equal-dimension minimal prime over A is minimal over A0",
                             "offending_prime": _els(X)})
    if dim["Q"] == dim["P"]:
        for name, X in (("Q", Q), ("P", P)):
            if X not in over_A:
                failures.append({"claim": f"{name} minimal over A"})
            if X not in over_A0:
                failures.append({"claim": f"{name} minimal over A0"})
        for name, S in (("Q0", Q0), ("P0", P0)):
            for C in components_of_semiprime(r, S, max_ideals):
                if C not in over_A0:
                    failures.append({"claim": f"components of {name} minimal over A0",
                                     "offending_prime": _els(C)})
    witness: dict[str, Any] = {
        "A": _els(A), "A0": _els(A0), "Q0": _els(Q0), "P0": _els(P0),
        "minimal_primes_over_A": [_els(X) for X in over_A],
        "minimal_primes_over_A0": [_els(X) for X in over_A0],
        "krull_dim_chain": dim,
        "dimension_hypothesis_degenerate": all(v == 0 for v in dim.values()),
    }
    if failures:
        witness["counterexample"] = failures
    return TheoremReport("prop7", _instance(s, r, Q=Q, P=P), _verdict(not failures), witness)


def theorem8_pipeline(s: Automorphism, Q: Ideal, P: Ideal,
                      max_ideals: int = DEFAULT_MAX_IDEALS) -> TheoremReport:
    """A link Q ~> P induces Q0 ~> P0 via A0, the invariant part of the minimal A."""
    _require_linked_primes(Q, P, max_ideals)
    r = Q.ring
    A = minimal_linking_ideal(Q, P, max_ideals)
    n = common_period(s, [Q, P])
    witness: dict[str, Any] = {"n": n, "A": _els(A)}
    inst = _instance(s, r, Q=Q, P=P)
    if apply_to_ideal(s, A, n) != A:
        witness["counterexample"] = "sigma^n(A) != A"
        return TheoremReport("thm8", inst, "fail", witness)

    A0 = intersect_all(apply_to_ideal(s, A, i) for i in range(n))
    Q0 = invariant_part(s, Q, verify=False)
    P0 = invariant_part(s, P, verify=False)
    meet0 = ideal_intersect(Q0, P0)
    witness.update({"A0": _els(A0), "Q0": _els(Q0), "P0": _els(P0),
                    "Q0_cap_P0": _els(meet0), "Q0_P0": _els(ideal_product(Q0, P0))})
    strict = A0 < meet0
    check = is_linking_ideal(Q0, P0, A0)
    witness["A0_strictly_below_Q0_cap_P0"] = strict
    witness["link_Q0_P0_via_A0"] = bool(check)
    if not strict:
        witness["counterexample"] = "A0 == Q0 cap P0" if A0 == meet0 else "A0 not below Q0 cap P0"
    elif not check:
        witness["counterexample"] = {"reason": check.reason, "f_g": check.witness}
    return TheoremReport("thm8", inst, _verdict(strict and bool(check)), witness)


def theorem9_search(s: Automorphism, Q: Ideal, P: Ideal,
                    max_ideals: int = DEFAULT_MAX_IDEALS) -> TheoremReport:
    """For each i in one common period, find every j with sigma^i(Q) ~> sigma^j(P).

    Raises HypothesisNotMet when Q0 is not linked to P0.  The table is
    k-periodic because sigma^k fixes Q and P; that is asserted here.  Pairs
    that satisfy the right-only torsionfree condition but not the two-sided
    one are recorded under ``right_only``.
    """
    r = Q.ring
    for X in (Q, P):
        if not (X.is_proper and is_prime(r, X)):
            raise HypothesisNotMet(f"{X!r} is not a prime ideal")
    Q0 = invariant_part(s, Q, verify=False)
    P0 = invariant_part(s, P, verify=False)
    if not (Q0.is_proper and P0.is_proper and link_exists(Q0, P0, max_ideals=max_ideals)):
        raise HypothesisNotMet("invariant parts are not linked")
    k = common_period(s, [Q, P])
    qs = [apply_to_ideal(s, Q, i) for i in range(k + 1)]
    ps = [apply_to_ideal(s, P, j) for j in range(k + 1)]
    if qs[k] != qs[0] or ps[k] != ps[0]:
        raise InternalInvariantViolation("sigma^k does not fix Q and P")
    table: dict[str, list[int]] = {}
    right_only = []
    for i in range(k):
        table[str(i)] = []
        for j in range(k):
            if link_exists(qs[i], ps[j], max_ideals=max_ideals):
                table[str(i)].append(j)
            elif link_exists(qs[i], ps[j], sides="right", max_ideals=max_ideals):
                right_only.append([i, j])
    missing = [int(i) for i, js in table.items() if not js]
    witness: dict[str, Any] = {"k": k, "Q0": _els(Q0), "P0": _els(P0), "table": table,
                               "right_only": right_only}
    if missing:
        witness["counterexample"] = {"i_without_j": missing}
    return TheoremReport("thm9", _instance(s, r, Q=Q, P=P), _verdict(not missing), witness)


__all__ = [
    "Automorphism", "SigmaReport", "TheoremReport", "apply_to_ideal", "common_period",
    "identity_automorphism", "inner_automorphism", "invariant_part", "is_invariant", "orbit",
    "period_of", "sigma_report", "swap_automorphism", "theorem8_pipeline", "theorem9_search",
    "validate_automorphism", "verify_prop2", "verify_prop2_common", "verify_prop5",
    "verify_prop6", "verify_prop7",
]
