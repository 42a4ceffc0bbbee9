from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from mukai_enriques import lattice as lt
from mukai_enriques import mukai as mk
from mukai_enriques import oracles
from mukai_enriques.lattice import F, SIGMA, ZERO, ClassVector, e
from mukai_enriques.mukai import ChernData, MukaiVector, ReBase, Switch, Twist

from strategies import mukai_vectors, vectors


def test_parity_enforced():
    with pytest.raises(ValueError, match="parity"):
        MukaiVector(2, ZERO, 1)


@pytest.mark.parametrize("v, w, expected", [
    (MukaiVector(1, ZERO, 1), MukaiVector(1, ZERO, 1), 1),
    (MukaiVector(0, SIGMA, 0), MukaiVector(0, SIGMA, 0), 0),
    (MukaiVector(2, SIGMA + F, 2), MukaiVector(2, SIGMA + F, 2), 6),
])
def test_pairing_examples(v, w, expected):
    assert mk.mukai_pairing(v, w) == expected
    assert oracles.chern_pairing(v, w) == expected


@given(mukai_vectors(), mukai_vectors())
def test_pairing_matches_chern_oracle(v, w):
    assert mk.mukai_pairing(v, w) == oracles.chern_pairing(v, w)
    assert mk.mukai_pairing(v, w) == mk.mukai_pairing(w, v)


def test_v_square_examples():
    assert mk.v_square(MukaiVector(2, F, 0)) == 0
    assert mk.v_square(MukaiVector(3, ZERO, 5)) == 15
    assert mk.v_square(MukaiVector(2, SIGMA + F, 2)) == 6


@given(mukai_vectors())
def test_v_square_is_self_pairing(v):
    assert mk.v_square(v) == mk.mukai_pairing(v, v)


def test_chern_examples():
    v = mk.from_chern(ChernData(2, F, 1))
    assert v.s == 0 and mk.euler_char(v) == 1
    v = mk.from_chern(ChernData(2, ZERO, 0))
    assert v.s == -2 and mk.euler_char(v) == 2
    assert mk.from_chern(ChernData(4, SIGMA + F, 3)).s == 0


@given(mukai_vectors())
def test_chern_round_trip(v):
    assert mk.from_chern(mk.to_chern(v)) == v
    assert mk.euler_char(v) == (v.r - v.s) // 2


def test_twist_examples():
    v = MukaiVector(2, ZERO, -8)
    w = mk.twist(v, SIGMA - 2 * F)
    assert w == MukaiVector(2, 2 * SIGMA - 4 * F, 0)
    # rank-2 form t' = t + (c1, D) + D^2
    assert w.t == v.t + lt.inner(v.c1, SIGMA - 2 * F) + lt.norm(SIGMA - 2 * F)
    assert mk.twist(v, ZERO) == v
    u = MukaiVector(4, 3 * SIGMA + e(2), 6)
    assert mk.twist(u, F).s == u.s - 2 * 3


@given(mukai_vectors(), mukai_vectors(), vectors(-3, 3))
def test_twist_isometry(v, w, d):
    assert mk.mukai_pairing(mk.twist(v, d), mk.twist(w, d)) == mk.mukai_pairing(v, w)


@given(mukai_vectors(), vectors(-3, 3), vectors(-3, 3))
def test_twist_group_action(v, d1, d2):
    assert mk.twist(mk.twist(v, d1), d2) == mk.twist(v, d1 + d2)


@given(mukai_vectors(), vectors(-3, 3))
def test_twist_preserves_primitivity(v, d):
    assert mk.is_primitive(mk.twist(v, d)) == mk.is_primitive(v)


def test_switch_examples():
    xi = e(1)
    v = MukaiVector(2, xi, 4)
    w = mk.switch(v)
    assert w == MukaiVector(4, -xi, 2)
    assert mk.v_square(v) == mk.v_square(w) == 6


@pytest.mark.parametrize("v, check", [
    (MukaiVector(2, F, 0), "s>0"),
    (MukaiVector(2, SIGMA + F, 2), "c1^2<0"),
    (MukaiVector(0, e(1), 2), "r>0"),
    (MukaiVector(2, F, 2), "c1^2<0"),  # boundary c1^2 = 0 is rejected
])
def test_switch_preconditions(v, check):
    with pytest.raises(mk.MovePreconditionError) as info:
        mk.switch(v)
    assert info.value.check == check
    assert f"{check} violated" in str(info.value)


@given(mukai_vectors(r=st.integers(1, 8)))
def test_switch_invariants(v):
    assume(v.s > 0 and lt.norm(v.c1) < 0)
    w = mk.switch(v)
    assert mk.v_square(w) == mk.v_square(v)
    assert mk.is_primitive(w) == mk.is_primitive(v)
    assert mk.switch(w) == v


def test_is_primitive_examples():
    assert not mk.is_primitive(MukaiVector(2, 2 * SIGMA, -2))
    assert mk.is_primitive(MukaiVector(2, 2 * SIGMA, -4))
    for s in range(-10, 11, 2):
        assert mk.is_primitive(MukaiVector(2, SIGMA, s))


@given(mukai_vectors())
def test_is_primitive_matches_oracle(v):
    coords = [v.r, *v.c1, -(v.r + v.s) // 2]
    assert mk.is_primitive(v) == oracles.in_span_primitive(coords)


def test_gcd_rcs_examples():
    v = MukaiVector(2, 2 * SIGMA, 0)
    assert mk.is_primitive(v) and mk.gcd_rcs(v) == 2
    assert mk.to_chern(v).c2 == 1 and (v.r + v.s) % 4 == 2
    assert mk.gcd_rcs(MukaiVector(2, SIGMA, 0)) == 1
    assert mk.gcd_rcs(MukaiVector(4, 2 * SIGMA, 2)) == 2


def test_gcd_corollary_sweep():
    # v = r + (r/2) delta + xi - (s/2) rho with delta primitive in H
    for r in range(2, 9, 2):
        for delta in (SIGMA, F, SIGMA + F, SIGMA - F, 2 * SIGMA + F):
            for k in range(-2, 3):
                xi = k * e(1) + (k % 2) * e(3)
                for s in range(-10, 11, 2):
                    v = MukaiVector(r, (r // 2) * delta + xi, s)
                    if mk.is_primitive(v):
                        assert gcd(gcd(r, lt.content(xi)), s) in (1, 2)


# ---- moves


def test_apply_move_identities():
    v = MukaiVector(4, e(1) + F, 6)
    assert mk.apply_move(v, Twist(ZERO)) == v
    assert mk.apply_move(mk.apply_move(v, Switch()), Switch()) == v
    w = mk.apply_move(v, ReBase(lt.alternate_decomposition()))
    assert mk.v_square(w) == mk.v_square(v)


@given(mukai_vectors(), vectors(-3, 3))
def test_move_inverses(v, d):
    for move in (Twist(d), ReBase(lt.alternate_decomposition()), ReBase(lt.swap_decomposition())):
        assert mk.apply_move(mk.apply_move(v, move), move.inverse()) == v


@given(vectors(-3, 3))
def test_move_json_round_trip(d):
    moves = [Twist(d), Switch(), ReBase(lt.alternate_decomposition()), ReBase(lt.swap_decomposition()),
             ReBase(lt.alternate_decomposition(e(2)))]
    for m in moves:
        back = mk.move_from_json(mk.move_to_json(m))
        assert mk.move_to_json(back) == mk.move_to_json(m)


def test_move_from_json_rejects_garbage():
    with pytest.raises(ValueError):
        mk.move_from_json({"rebase": "nonsense"})
    with pytest.raises(ValueError):
        mk.move_from_json(42)


def test_mukai_json_round_trip():
    v = MukaiVector(6, ClassVector((3, 3, 1, 0, 0, 0, 0, 0, 0, 0)), 2)
    assert MukaiVector.from_json(v.to_json()) == v
