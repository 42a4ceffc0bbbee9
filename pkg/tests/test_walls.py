import pytest
from hypothesis import given, settings, strategies as st

from mukai_enriques import lattice as lt
from mukai_enriques import oracles
from mukai_enriques import walls as wl
from mukai_enriques.lattice import F, SIGMA, ClassVector, e
from mukai_enriques.mukai import ChernData
from mukai_enriques.walls import WallSpec

from strategies import vectors

T24 = WallSpec(2, 4)


@pytest.fixture(scope="module")
def hyperbolic_polarization():
    return wl.construct_polarization(SIGMA + 2 * F, F, T24)


def test_wall_spec_validation():
    with pytest.raises(ValueError):
        WallSpec(1, 4)
    with pytest.raises(ValueError):
        WallSpec(2, 0)
    assert WallSpec.parse("2,4") == T24
    assert T24.lower_norm == -4


@pytest.mark.parametrize("xi, spec, expected", [
    (SIGMA - F, T24, True),
    (SIGMA + F, T24, False),
    (e(1) + e(2), WallSpec(2, 3), False),
    (e(1) + e(2), T24, True),
    (lt.ZERO, T24, False),
])
def test_is_of_type(xi, spec, expected):
    assert wl.is_of_type(xi, spec) is expected


@given(vectors(-3, 3))
def test_bound_depends_on_r2_delta_only(xi):
    assert wl.is_of_type(xi, WallSpec(2, 4)) == wl.is_of_type(xi, WallSpec(4, 1))


def test_walls_through_sigma_plus_f():
    found = wl.walls_through(SIGMA + F, T24)
    assert len(found) == 1441
    norms = [lt.norm(w.xi) for w in found]
    assert norms.count(-2) == 121 and norms.count(-4) == 1320
    assert [w.xi for w in found] == oracles.walls_oracle(SIGMA + F, 2, 4)
    assert all(lt.inner(w.xi, SIGMA + F) == 0 for w in found)


@pytest.mark.parametrize("h", [SIGMA + 2 * F, 2 * SIGMA + 3 * F + e(1), 3 * SIGMA + 2 * F - e(4) + e(7)])
def test_walls_through_matches_oracle(h):
    spec = WallSpec(2, 2)
    assert [w.xi for w in wl.walls_through(h, spec)] == oracles.walls_oracle(h, 2, 2)


@settings(max_examples=8)
@given(st.integers(1, 3), st.integers(1, 4), st.lists(st.integers(-1, 1), min_size=8, max_size=8),
       st.sampled_from([(2, 1), (2, 2), (2, 4), (3, 1)]))
def test_walls_through_random_oracle(a, b, eta, rd):
    h = ClassVector((a, b, *eta))
    if lt.norm(h) <= 0:
        return
    spec = WallSpec(*rd)
    assert [w.xi for w in wl.walls_through(h, spec)] == oracles.walls_oracle(h, *rd)


def test_spec_2_1_has_no_walls():
    assert wl.walls_through(SIGMA + F, WallSpec(2, 1)) == []
    assert wl.on_wall(SIGMA + F, WallSpec(2, 1)) is None


def test_on_wall(hyperbolic_polarization):
    witness = wl.on_wall(SIGMA + F, T24)
    assert witness is not None and lt.inner(witness.xi, SIGMA + F) == 0
    assert wl.on_wall(hyperbolic_polarization.H, T24) is None
    assert wl.walls_through(hyperbolic_polarization.H, T24) == []


def test_wall_validates_type():
    with pytest.raises(ValueError):
        wl.Wall(SIGMA + F, T24)


def test_subsheaf_class():
    d = e(3) + SIGMA
    assert wl.subsheaf_class(2, F, 1, d) == 2 * d - F
    assert wl.subsheaf_class(2, F, 1, F) == F
    with pytest.raises(ValueError):
        wl.subsheaf_class(2, F, 0, d)


@given(st.integers(2, 8), vectors(-3, 3), vectors(-3, 3))
def test_subsheaf_antisymmetry(r, c1, c1p):
    assert wl.subsheaf_class(r, c1, 1, c1p) == -wl.subsheaf_class(r, -c1, 1, -c1p)


def test_discriminant():
    assert wl.discriminant(ChernData(2, F, 1)) == 4
    assert wl.discriminant(ChernData(1, SIGMA + F, 5)) == 10
    assert wl.discriminant(ChernData(2, e(1), 0)) == 2


# ---- polarization


def test_polarization_hyperbolic_needs_perturbation(hyperbolic_polarization):
    p = hyperbolic_polarization
    assert p.report["path"] == "perturbed"
    assert any(p.H[2:])
    assert p.n > lt.inner(F, p.L0)
    assert lt.norm(p.H) > 0
    assert oracles.walls_oracle(p.H, 2, 4) == []
    assert p.H == p.L0 + p.n * F


def test_polarization_direct_path(hyperbolic_polarization):
    l1 = hyperbolic_polarization.H
    p = wl.construct_polarization(l1, F, T24)
    assert p.report["path"] == "direct" and p.report["attempts"] == 1
    assert p.n == lt.inner(F, l1) + 1


def test_polarization_errors():
    with pytest.raises(ValueError, match="isotropic"):
        wl.construct_polarization(SIGMA + 2 * F, SIGMA + F, T24)
    with pytest.raises(ValueError, match="primitive"):
        wl.construct_polarization(SIGMA + 2 * F, 2 * F, T24)
    with pytest.raises(ValueError, match="positive square"):
        wl.construct_polarization(e(1), F, T24)


def test_polarization_exhaustion_reports_walls():
    # <u, FA> = 1280 is beyond the single denominator allowed, so w.FA < 1 never holds
    fa = SIGMA + 100 * F - 10 * e(8)
    assert lt.norm(fa) == 0
    with pytest.raises(wl.PolarizationExhausted) as info:
        wl.construct_polarization(SIGMA + 2 * F, fa, T24, wl.PolarizationBudget(n=2, q=1, directions=1))
    # the direct path is skipped: e1 is orthogonal to both L1 and FA
    assert info.value.report["walls_hit"]
    assert info.value.report["walls_hit"][0]["all_n"] is True


def test_polarization_json(hyperbolic_polarization):
    data = hyperbolic_polarization.to_json()
    assert set(data) == {"L0", "n", "H", "report"}
    assert data["report"]["ample_assumed"] is True
