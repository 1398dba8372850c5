import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import ideal
from ringlinks.catalog import CATALOG, catalog_automorphisms, catalog_ring
from ringlinks.errors import HypothesisNotMet, NoLink, NotAutomorphism, RingMismatch
from ringlinks.ideals import (enumerate_ideals, ideal_intersect, ideal_product, is_semiprime,
                              primes, whole_ring, zero_ideal)
from ringlinks.links import is_linking_ideal, link_exists
from ringlinks.ring import construct_ring
from ringlinks.sigma import (apply_to_ideal, common_period, identity_automorphism,
                             inner_automorphism, invariant_part, is_invariant, orbit, period_of,
                             sigma_report, swap_automorphism, theorem8_pipeline, theorem9_search,
                             validate_automorphism, verify_prop2, verify_prop2_common,
                             verify_prop5, verify_prop6, verify_prop7)

P1 = (0, 2, 4, 6)
P2 = (0, 1, 2, 3)


def pairs(n, pred):
    return [a * n + b for a in range(n) for b in range(n) if pred(a, b)]


def even(x):
    return x % 2 == 0


@pytest.fixture
def z4z4():
    r = catalog_ring("Z4xZ4")
    return r, swap_automorphism(r)


def boolean_power(k):
    """(Z/2)^k as nested products; coordinate i is bit k-1-i of the index."""
    spec = {"kind": "cyclic", "n": 2}
    for _ in range(k - 1):
        spec = {"kind": "product", "left": {"kind": "cyclic", "n": 2}, "right": spec}
    return construct_ring(spec)


def coordinate_permutation(k, cycle_of):
    """Index permutation sending coordinate i to coordinate cycle_of[i]."""
    perm = []
    for x in range(2 ** k):
        bits = [(x >> (k - 1 - i)) & 1 for i in range(k)]
        moved = [0] * k
        for i, b in enumerate(bits):
            moved[cycle_of[i]] = b
        perm.append(sum(b << (k - 1 - i) for i, b in enumerate(moved)))
    return perm


def coordinate_zero(r, k, i):
    return ideal(r, [x for x in range(r.size) if not (x >> (k - 1 - i)) & 1])


# ---------------------------------------------------------------- automorphisms

def test_validate_examples():
    z4 = catalog_ring("Z4")
    assert validate_automorphism(z4, [0, 1, 2, 3]).perm == (0, 1, 2, 3)
    r = catalog_ring("Z4xZ4")
    swap = [(x % 4) * 4 + x // 4 for x in range(16)]
    assert validate_automorphism(r, swap).perm == swap_automorphism(r).perm
    # 1 <-> 3 would have to send 1 to a unit u with u*u = u; it moves the identity
    with pytest.raises(NotAutomorphism):
        validate_automorphism(z4, [0, 3, 2, 1])


def test_validate_rejects_bad_permutations():
    t2 = catalog_ring("T2F2")
    with pytest.raises(NotAutomorphism):
        validate_automorphism(t2, list(range(7)))
    with pytest.raises(NotAutomorphism):
        validate_automorphism(t2, [0] * 8)
    # additive but not multiplicative: swap the two diagonal entries a <-> d
    perm = [(x & 1) * 4 + (x & 2) + (x >> 2) for x in range(8)]
    with pytest.raises(NotAutomorphism) as err:
        validate_automorphism(t2, perm)
    assert err.value.witness is not None
    with pytest.raises(NotAutomorphism):
        swap_automorphism(t2)


def test_inner_automorphisms_fix_ideals_of_t2():
    t2 = catalog_ring("T2F2")
    u = 7  # [[1, 1], [0, 1]]
    s = inner_automorphism(t2, u)
    assert s.perm != tuple(range(8))
    assert all(is_invariant(s, I) for I in enumerate_ideals(t2))
    with pytest.raises(NotAutomorphism):
        inner_automorphism(t2, 2)


def test_apply_examples(z4z4):
    r, s = z4z4
    first = ideal(r, pairs(4, lambda a, b: even(a)))
    second = ideal(r, pairs(4, lambda a, b: even(b)))
    assert apply_to_ideal(s, first) == second
    I = ideal(r, pairs(4, lambda a, b: a == 0))
    assert apply_to_ideal(identity_automorphism(r), I) == I
    f2 = catalog_ring("Z2xZ2")
    assert apply_to_ideal(swap_automorphism(f2), ideal(f2, [0, 1])) == ideal(f2, [0, 2])
    with pytest.raises(RingMismatch):
        apply_to_ideal(s, zero_ideal(f2))


def test_period_examples(z4z4):
    r, s = z4z4
    assert period_of(s, ideal(r, pairs(4, lambda a, b: even(a)))) == 2
    assert period_of(identity_automorphism(r), ideal(r, pairs(4, lambda a, b: even(a)))) == 1
    assert period_of(s, ideal(r, pairs(4, lambda a, b: even(a) and even(b)))) == 1


def test_invariant_part_examples(z4z4):
    r, s = z4z4
    got = invariant_part(s, ideal(r, pairs(4, lambda a, b: even(a))))
    assert got == ideal(r, pairs(4, lambda a, b: even(a) and even(b)))
    f2 = catalog_ring("Z2xZ2")
    assert invariant_part(swap_automorphism(f2), ideal(f2, [0, 1])) == zero_ideal(f2)
    z4 = catalog_ring("Z4")
    assert invariant_part(identity_automorphism(z4), ideal(z4, [0, 2])) == ideal(z4, [0, 2])


def test_sigma_report_shape(z4z4):
    r, s = z4z4
    rep = sigma_report(s, ideal(r, pairs(4, lambda a, b: even(a))))
    assert rep.period == 2 and len(set(rep.orbit)) == 2
    assert apply_to_ideal(s, rep.orbit[-1]) == rep.orbit[0]
    assert is_invariant(s, rep.invariant_part)


def test_common_period_examples():
    r = boolean_power(5)
    s = validate_automorphism(r, coordinate_permutation(5, [1, 0, 3, 4, 2]), "(01)(234)")
    I, J = coordinate_zero(r, 5, 0), coordinate_zero(r, 5, 2)
    assert (period_of(s, I), period_of(s, J)) == (2, 3)
    assert common_period(s, [I, J]) == 6
    assert common_period(s, [I, coordinate_zero(r, 5, 1)]) == 2
    rep = verify_prop2_common(s, I, coordinate_zero(r, 5, 1))
    assert rep.passed and rep.witness["lcm"] == 2 and rep.witness["product"] == 4
    c5 = validate_automorphism(r, coordinate_permutation(5, [1, 2, 3, 4, 0]), "5-cycle")
    assert common_period(c5, [I]) == 5


# ---------------------------------------------------------------- theorem checks

def test_prop6_examples(z4z4):
    r, s = z4z4
    Q = ideal(r, pairs(4, lambda a, b: even(a)))
    rep = verify_prop6(s, Q, Q)
    assert rep.passed and rep.witness["n"] == 2 and rep.witness["A"] == list(range(4))
    z4 = catalog_ring("Z4")
    rep = verify_prop6(identity_automorphism(z4), ideal(z4, [0, 2]), ideal(z4, [0, 2]))
    assert rep.passed and rep.witness["n"] == 1 and rep.witness["A"] == [0]
    t2 = catalog_ring("T2F2")
    rep = verify_prop6(identity_automorphism(t2), ideal(t2, P2), ideal(t2, P1))
    assert rep.passed and rep.witness["A"] == [0]
    with pytest.raises(NoLink):
        verify_prop6(identity_automorphism(t2), ideal(t2, P1), ideal(t2, P2))


def test_prop7_examples(z4z4):
    t2 = catalog_ring("T2F2")
    rep = verify_prop7(identity_automorphism(t2), ideal(t2, P2), ideal(t2, P1))
    assert rep.passed
    assert rep.witness["minimal_primes_over_A"] == [list(P2), list(P1)]
    assert rep.witness["dimension_hypothesis_degenerate"]
    z4 = catalog_ring("Z4")
    rep = verify_prop7(identity_automorphism(z4), ideal(z4, [0, 2]), ideal(z4, [0, 2]))
    assert rep.passed and rep.witness["minimal_primes_over_A"] == [[0, 2]]
    r, s = z4z4
    Q = ideal(r, pairs(4, lambda a, b: even(a)))
    rep = verify_prop7(s, Q, Q)
    assert rep.passed and rep.witness["A0"] == [0]
    assert rep.witness["minimal_primes_over_A0"] == [
        pairs(4, lambda a, b: even(a)), pairs(4, lambda a, b: even(b))]


def test_theorem8_z4z4_swap(z4z4):
    r, s = z4z4
    Q = ideal(r, pairs(4, lambda a, b: even(a)))
    rep = theorem8_pipeline(s, Q, Q)
    assert rep.passed
    w = rep.witness
    assert w["A"] == list(range(4)) and w["A0"] == [0]
    assert w["Q0"] == w["P0"] == pairs(4, lambda a, b: even(a) and even(b))
    assert w["A0_strictly_below_Q0_cap_P0"] and w["link_Q0_P0_via_A0"]


def test_theorem8_identity_is_the_given_link(catalog_name):
    r = catalog_ring(catalog_name)
    s = identity_automorphism(r)
    for Q, P in itertools.product(primes(r), repeat=2):
        if link_exists(Q, P):
            w = theorem8_pipeline(s, Q, P).witness
            assert (w["Q0"], w["P0"]) == (list(Q.elements), list(P.elements))
            assert w["A0"] == w["A"]


def test_theorem8_t2_square_swap():
    r = catalog_ring("T2F2xT2F2")
    s = swap_automorphism(r)
    Q = ideal(r, [a * 8 + b for a in P2 for b in range(8)])
    P = ideal(r, [a * 8 + b for a in P1 for b in range(8)])
    rep = theorem8_pipeline(s, Q, P)
    assert rep.passed
    w = rep.witness
    assert w["A"] == list(range(8)) and w["A0"] == [0]
    assert w["Q0"] == [a * 8 + b for a in P2 for b in P2]
    assert w["P0"] == [a * 8 + b for a in P1 for b in P1]


def test_theorem9_examples(z4z4):
    r, s = z4z4
    Q = ideal(r, pairs(4, lambda a, b: even(a)))
    rep = theorem9_search(s, Q, Q)
    assert rep.passed and rep.witness["table"] == {"0": [0], "1": [1]}
    # Q and its swap image have linked invariant parts; the link needs j = i + 1
    other = ideal(r, pairs(4, lambda a, b: even(b)))
    assert theorem9_search(s, Q, other).witness["table"] == {"0": [1], "1": [0]}
    z4 = catalog_ring("Z4")
    rep = theorem9_search(identity_automorphism(z4), ideal(z4, [0, 2]), ideal(z4, [0, 2]))
    assert rep.witness["table"] == {"0": [0]} and rep.witness["right_only"] == []
    t2 = catalog_ring("T2F2")
    rep = theorem9_search(identity_automorphism(t2), ideal(t2, P2), ideal(t2, P1))
    assert rep.passed and rep.witness["table"] == {"0": [0]}
    with pytest.raises(HypothesisNotMet):
        theorem9_search(identity_automorphism(t2), ideal(t2, P1), ideal(t2, P2))


def test_prop5_report():
    t2 = catalog_ring("T2F2")
    rep = verify_prop5(ideal(t2, P2), ideal(t2, P1))
    assert rep.passed and rep.witness["minimal"] == [0]
    with pytest.raises(NoLink):
        verify_prop5(ideal(t2, P1), ideal(t2, P2))


# ---------------------------------------------------------------- invariants

def _all_automorphisms(name):
    r = catalog_ring(name)
    out = catalog_automorphisms(name)
    if not r.is_commutative():
        units = [u for u in range(r.size)
                 if ((r.mul_table[u] == r.one) & (r.mul_table[:, u] == r.one)).any()]
        out += [inner_automorphism(r, u) for u in units[:4]]
    return out


def test_prop2_exhaustive(catalog_name):
    for s in _all_automorphisms(catalog_name):
        for I in enumerate_ideals(s.ring):
            rep = verify_prop2(s, I)
            assert rep.passed, rep.witness
            I0 = invariant_part(s, I)
            assert I0 <= I and is_invariant(s, I0)
            if I.is_proper and I in primes(s.ring):
                assert is_semiprime(s.ring, I0)


def test_orbit_soundness(catalog_name):
    for s in _all_automorphisms(catalog_name):
        for I in enumerate_ideals(s.ring):
            n = period_of(s, I)
            assert apply_to_ideal(s, I, n) == I
            assert all(apply_to_ideal(s, I, m) != I for m in range(1, n))
            assert len(set(orbit(s, I))) == n


def test_theorems_hold_on_catalog(catalog_name):
    r = catalog_ring(catalog_name)
    for s in _all_automorphisms(catalog_name):
        for Q, P in itertools.product(primes(r), repeat=2):
            if link_exists(Q, P):
                for check in (verify_prop6, verify_prop7, theorem8_pipeline):
                    rep = check(s, Q, P)
                    assert rep.passed, rep.witness
            try:
                rep = theorem9_search(s, Q, P)
            except HypothesisNotMet:
                continue
            assert rep.passed, rep.witness


def test_whole_ring_has_trivial_orbit(catalog_name):
    r = catalog_ring(catalog_name)
    for s in _all_automorphisms(catalog_name):
        assert period_of(s, whole_ring(r)) == 1
        assert period_of(s, zero_ideal(r)) == 1


EQUIVARIANCE_POOL = [(e.name, i) for e in CATALOG for i in range(len(_all_automorphisms(e.name)))]


@settings(max_examples=300, deadline=None)
@given(choice=st.sampled_from(EQUIVARIANCE_POOL), data=st.data())
def test_equivariance(choice, data):
    name, i = choice
    s = _all_automorphisms(name)[i]
    proper = [I for I in enumerate_ideals(s.ring) if I.is_proper]
    Q, P, A = (data.draw(st.sampled_from(proper)) for _ in range(3))
    sQ, sP, sA = (apply_to_ideal(s, X) for X in (Q, P, A))
    assert apply_to_ideal(s, ideal_product(Q, P)) == ideal_product(sQ, sP)
    assert apply_to_ideal(s, ideal_intersect(Q, P)) == ideal_intersect(sQ, sP)
    assert bool(is_linking_ideal(Q, P, A)) == bool(is_linking_ideal(sQ, sP, sA))


def test_perm_array_is_readonly(z4z4):
    _, s = z4z4
    with pytest.raises(ValueError):
        s.array[0] = 1
    assert np.array_equal(s.array, np.array(s.perm))
