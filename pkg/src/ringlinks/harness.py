"""Theorem sweeps over (ring, automorphism) pairs, assembled into a run report."""
from __future__ import annotations

import time
from itertools import combinations_with_replacement
from typing import Any, Callable, Sequence

from . import __version__
from .errors import HypothesisNotMet, InternalInvariantViolation
from .ideals import DEFAULT_MAX_IDEALS, enumerate_ideals, primes
from .links import link_exists
from .ring import FiniteRing
from .sigma import (Automorphism, TheoremReport, _instance, theorem8_pipeline, theorem9_search,
                    verify_prop2, verify_prop2_common, verify_prop5, verify_prop6, verify_prop7)

CHECKS = ("prop2", "prop5", "prop6", "prop7", "thm8", "thm9")


def _guarded(theorem: str, instance: dict, fn: Callable[[], TheoremReport]) -> TheoremReport:
    """Turn a violated internal invariant into a failing report."""
    try:
        return fn()
    except InternalInvariantViolation as exc:
        return TheoremReport(theorem, instance, "fail", {"counterexample": str(exc)})
    except HypothesisNotMet as exc:
        return TheoremReport(theorem, instance, "skipped", {"reason": str(exc)})


def verify_ring(name: str, ring: FiniteRing, sigmas: Sequence[Automorphism],
                checks: Sequence[str] = CHECKS, max_ideals: int = DEFAULT_MAX_IDEALS,
                timing: dict[str, float] | None = None) -> tuple[dict[str, Any], list[TheoremReport]]:
    """Run the selected checks on one ring; returns (entry summary, reports)."""
    clock = time.perf_counter

    def phase(label, t0):
        if timing is not None:
            timing[f"{name}/{label}"] = round(clock() - t0, 6)

    t0 = clock()
    lattice = enumerate_ideals(ring, max_ideals)
    prime_list = primes(ring, max_ideals)
    linked = [(Q, P) for Q in prime_list for P in prime_list
              if link_exists(Q, P, max_ideals=max_ideals)]
    phase("lattice", t0)

    reports: list[TheoremReport] = []
    if "prop5" in checks:
        t0 = clock()
        for Q, P in linked:
            reports.append(_guarded("prop5", _instance(None, ring, Q=Q, P=P),
                                    lambda: verify_prop5(Q, P, max_ideals)))
        phase("prop5", t0)

    for s in sigmas:
        if "prop2" in checks:
            t0 = clock()
            for I in lattice:
                reports.append(_guarded("prop2", _instance(s, ring, I=I),
                                        lambda: verify_prop2(s, I, max_ideals)))
            reports.append(_prop2_common_summary(s, lattice))
            phase(f"{s.name}/prop2", t0)
        for tag, fn in (("prop6", verify_prop6), ("prop7", verify_prop7),
                        ("thm8", theorem8_pipeline)):
            if tag not in checks:
                continue
            t0 = clock()
            for Q, P in linked:
                reports.append(_guarded(tag, _instance(s, ring, Q=Q, P=P),
                                        lambda: fn(s, Q, P, max_ideals)))
            phase(f"{s.name}/{tag}", t0)
        if "thm9" in checks:
            t0 = clock()
            for Q in prime_list:
                for P in prime_list:
                    reports.append(_guarded("thm9", _instance(s, ring, Q=Q, P=P),
                                            lambda: theorem9_search(s, Q, P, max_ideals)))
            phase(f"{s.name}/thm9", t0)

    summary = {"name": name, "ring": ring.label, "size": ring.size, "ideals": len(lattice),
               "primes": len(prime_list), "links": len(linked),
               "sigmas": [s.name for s in sigmas]}
    return summary, reports


def _prop2_common_summary(s: Automorphism, lattice) -> TheoremReport:
    """One report covering the common-period claim for every pair of ideals."""
    failures = []
    pairs = 0
    for I, J in combinations_with_replacement(lattice, 2):
        pairs += 1
        rep = verify_prop2_common(s, I, J)
        if not rep.passed:
            failures.append(rep.to_dict())
    instance = {"ring": s.ring.label, "sigma": s.name, "ideals": "all pairs"}
    witness: dict[str, Any] = {"claim": "common period", "pairs_checked": pairs}
    if failures:
        witness["counterexample"] = failures[0]
    return TheoremReport("prop2", instance, "fail" if failures else "pass", witness)


def run_report(runs: Sequence[tuple[str, FiniteRing, Sequence[Automorphism]]],
               checks: Sequence[str] = CHECKS, max_ideals: int = DEFAULT_MAX_IDEALS,
               with_timing: bool = False) -> dict[str, Any]:
    """Verify every (name, ring, automorphisms) triple, ordered by name.

    Timing is wall-clock and therefore only included on request; without it
    the report is byte-identical across runs.
    """
    timing: dict[str, float] = {}
    entries, reports = [], []
    for name, ring, sigmas in sorted(runs, key=lambda t: t[0]):
        summary, reps = verify_ring(name, ring, sigmas, checks, max_ideals, timing)
        entries.append(summary)
        for rep in reps:
            d = rep.to_dict()
            d["entry"] = name
            reports.append(d)
    counts = {v: sum(r["verdict"] == v for r in reports) for v in ("pass", "fail", "skipped")}
    out: dict[str, Any] = {"tool": "ringlinks", "version": __version__, "checks": list(checks),
                           "entries": entries, "summary": counts, "reports": reports}
    if with_timing:
        out["timing"] = timing
    return out
