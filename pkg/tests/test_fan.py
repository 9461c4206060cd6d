
import pytest
from hypothesis import assume, given, settings, strategies as st

from strategies import polygon_points
from toricsum.exactlin import solve_rational
from toricsum.fan import (
    Fan,
    FanError,
    divisor_polytope,
    fan_from_rays_2d,
    is_ample,
    is_cartier,
    is_nef,
    normal_fan,
    polytope_divisor,
    projective_space_fan,
)
from toricsum.polytope import hull, minkowski_sum

P = hull([(1, -1), (2, -1), (1, 0)])
PP = hull([(1, 1), (3, 4), (2, 3)])
SQUARE = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
HEX = normal_fan(minkowski_sum(P, PP))
P2 = projective_space_fan(2)


def planar_oracle(f, d, strict):
    """Solve each 2-ray cone's section directly and test it against every ray."""
    sections = []
    for c in f.cones:
        m = solve_rational([f.rays[j] for j in c], [-d[j] for j in c])
        for j, n in enumerate(f.rays):
            v = m[0] * n[0] + m[1] * n[1] + d[j]
            if v < 0 or (strict and j not in c and v == 0):
                return False
        sections.append(tuple(m))
    return not strict or len(set(sections)) == len(sections)


rays2 = st.lists(
    st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(any), min_size=3, max_size=7
)


def complete_planar_fan(rays):
    from toricsum.exactlin import primitive

    rays = sorted({primitive(r) for r in rays})
    assume(len(rays) >= 3)
    f = fan_from_rays_2d(rays)
    assume(f.is_complete)
    return f


# -- examples -------------------------------------------------------------------


def test_normal_fan_examples():
    sq = normal_fan(SQUARE)
    assert set(sq.rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)} and len(sq.cones) == 4
    assert set(normal_fan(P).rays) == {(1, 0), (0, 1), (-1, -1)}
    assert HEX.nrays == 6 and HEX.is_complete


def test_divisor_polytope_examples():
    f = normal_fan(P)
    assert divisor_polytope(f, polytope_divisor(f, P)) == P
    assert divisor_polytope(f, (0, 0, 0)) == hull([(0, 0)])
    d = polytope_divisor(HEX, P)
    assert divisor_polytope(HEX, d) == P
    assert d == (8, 1, 1, -1, -1, -2)


def test_polytope_divisor_rejects_coarser_fan():
    with pytest.raises(FanError):
        polytope_divisor(normal_fan(P), SQUARE)


def test_nef_examples():
    res = is_nef(HEX, (0,) * 6)
    assert res and all(all(x == 0 for x in m) for m in res.certificate)
    assert is_nef(HEX, polytope_divisor(HEX, P))
    bad = is_nef(P2, (-1, 0, 0))
    assert not bad and bad.failing_cone is not None


def test_ample_examples():
    assert is_ample(P2, (1, 0, 0))
    assert not is_ample(HEX, polytope_divisor(HEX, P))
    assert not is_ample(HEX, polytope_divisor(HEX, PP))
    assert is_ample(HEX, polytope_divisor(HEX, minkowski_sum(P, PP)))
    assert not is_ample(P2, (0, 0, 0))


def test_cartier():
    assert is_cartier(HEX, polytope_divisor(HEX, P))
    f = fan_from_rays_2d([(1, 0), (0, 1), (-1, -1), (1, -2)])
    # rays generating an index-3 sublattice: the first ray alone is not Cartier
    assert not is_cartier(fan_from_rays_2d([(2, -1), (-1, 2), (-1, -1)]), (1, 0, 0))
    assert is_cartier(f, (0, 0, 0, 0))


def test_incomplete_fans():
    half = Fan(2, ((1, 0), (0, 1), (-1, 0)), ((0, 1), (1, 2)))
    assert not half.is_complete
    assert half.completeness_problems()
    with pytest.raises(FanError):
        is_nef(half, (0, 0, 0))
    overlap = Fan(2, ((1, 0), (0, 1), (-1, -1), (1, 1)), ((0, 1), (1, 2), (0, 2), (0, 3)))
    assert not overlap.is_complete


def test_fan_validation():
    with pytest.raises(FanError):
        Fan(2, ((2, 0), (0, 1)), ((0, 1),))
    with pytest.raises(FanError):
        Fan(2, ((1, 0), (1, 0)), ((0, 1),))
    with pytest.raises(FanError):
        Fan(2, ((1, 0), (0, 1)), ((0, 5),))


def test_projective_spaces():
    for r in (1, 2, 3):
        f = projective_space_fan(r)
        assert f.is_complete
        e1 = tuple(int(j == 0) for j in range(r + 1))
        assert is_ample(f, e1)
        assert not is_nef(f, tuple(-x for x in e1))


def test_non_simplicial_fan():
    octahedron = hull([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)])
    cube_fan = normal_fan(octahedron)  # eight simplicial cones
    cube = hull([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    octa_fan = normal_fan(cube)  # rays of the cube: 6, cones simplicial
    assert cube_fan.is_complete and octa_fan.is_complete
    square_pyramid = hull([(0, 0, 0), (2, 0, 0), (0, 2, 0), (2, 2, 0), (1, 1, 1)])
    f = normal_fan(square_pyramid)
    assert any(len(c) == 4 for c in f.cones)  # the apex cone is not simplicial
    d = polytope_divisor(f, square_pyramid)
    assert is_nef(f, d) and is_ample(f, d)


def test_json_round_trip():
    assert Fan.from_json(HEX.to_json()) == HEX


# -- properties -----------------------------------------------------------------


@given(polygon_points())
def test_round_trip(pts):
    p = hull(pts)
    f = normal_fan(p)
    assert f.is_complete
    d = polytope_divisor(f, p)
    assert divisor_polytope(f, d) == p
    assert is_ample(f, d)


@given(rays2, st.lists(st.integers(-3, 3), min_size=7, max_size=7))
@settings(max_examples=80)
def test_nef_and_ample_match_planar_oracle(rays, coeffs):
    f = complete_planar_fan(rays)
    d = tuple(coeffs[: f.nrays])
    nef = bool(is_nef(f, d))
    ample = is_ample(f, d)
    assert nef == planar_oracle(f, d, strict=False)
    assert ample == planar_oracle(f, d, strict=True)
    assert not ample or nef


@given(polygon_points(bound=4), polygon_points(bound=4))
@settings(max_examples=60)
def test_nef_additivity(a, b):
    pa, pb = hull(a), hull(b)
    f = normal_fan(minkowski_sum(pa, pb))
    d, e = polytope_divisor(f, pa), polytope_divisor(f, pb)
    assert is_nef(f, d) and is_nef(f, e)
    s = tuple(x + y for x, y in zip(d, e))
    assert is_nef(f, s)
    assert divisor_polytope(f, s) == minkowski_sum(pa, pb)


@given(rays2, st.lists(st.integers(-3, 3), min_size=7, max_size=7), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=60)
def test_nef_invariant_under_linear_equivalence(rays, coeffs, m0, m1):
    f = complete_planar_fan(rays)
    d = tuple(coeffs[: f.nrays])
    e = tuple(a + m0 * n[0] + m1 * n[1] for a, n in zip(d, f.rays))
    assert bool(is_nef(f, d)) == bool(is_nef(f, e))
    assert is_ample(f, d) == is_ample(f, e)
    assert is_cartier(f, d) == is_cartier(f, e)
