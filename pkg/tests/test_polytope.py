from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from strategies import points, polygon_points
from toricsum.exactlin import rational_feasible
from toricsum.polytope import (
    LatticePolytope,
    cyclic_vertices,
    dilate,
    from_inequalities,
    hull,
    idp_check,
    lattice_points,
    minkowski_sum,
    problem1_check,
    sumset,
)

P = hull([(1, -1), (2, -1), (1, 0)])
PP = hull([(1, 1), (3, 4), (2, 3)])
SQUARE = hull([(0, 0), (1, 0), (0, 1), (1, 1)])


def in_hull(pts, x):
    """Membership by a convex-combination feasibility problem (independent of the hull code)."""
    n = len(pts)
    cons = [([int(i == j) for j in range(n)], ">=", 0) for i in range(n)]
    cons.append(([1] * n, "=", 1))
    for k in range(len(x)):
        cons.append(([p[k] for p in pts], "=", x[k]))
    return bool(rational_feasible(cons, n))


def shoelace_pick(vertices):
    from math import gcd

    n = len(vertices)
    twice_area = boundary = 0
    for i in range(n):
        (x0, y0), (x1, y1) = vertices[i], vertices[(i + 1) % n]
        twice_area += x0 * y1 - x1 * y0
        boundary += gcd(x1 - x0, y1 - y0)
    twice_area = abs(twice_area)
    return (twice_area - boundary + 2) // 2 + boundary


# -- examples -------------------------------------------------------------------


def test_hull_examples():
    sq = hull([(0, 0), (1, 0), (0, 1), (1, 1), (0, 0)])
    assert sq.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert len(sq.facets) == 4
    assert set(P.vertices) == {(1, -1), (2, -1), (1, 0)}
    seg = hull([(0, 0), (1, 0), (2, 0)])
    assert seg.vertices == ((0, 0), (2, 0))
    assert seg.affine_dim == 1


def test_hull_of_a_point_and_empty_input():
    pt = hull([(3, 4)])
    assert pt.affine_dim == 0 and lattice_points(pt) == [(3, 4)]
    with pytest.raises(ValueError):
        hull([])


def test_figure_sum():
    s = minkowski_sum(P, PP)
    assert set(s.vertices) == {(2, 0), (3, 0), (5, 3), (4, 4), (3, 3), (2, 1)}
    assert minkowski_sum(P, hull([(0, 0)])) == P


def test_dilate():
    assert dilate(SQUARE, 2) == hull([(0, 0), (2, 0), (0, 2), (2, 2)])
    with pytest.raises(ValueError):
        dilate(SQUARE, 0)


def test_lattice_point_examples():
    assert lattice_points(P) == [(1, -1), (1, 0), (2, -1)]
    s = minkowski_sum(P, PP)
    assert set(lattice_points(s)) == {(2, 0), (3, 0), (2, 1), (3, 1), (3, 2), (4, 2), (3, 3), (4, 3), (5, 3), (4, 4)}
    assert len(lattice_points(SQUARE)) == 4


def test_sumset_example():
    s = sumset(lattice_points(P), lattice_points(PP))
    assert len(s) == 9
    assert set(lattice_points(minkowski_sum(P, PP))) - s == {(3, 1)}


def test_problem1_examples():
    rep = problem1_check(P, PP)
    assert not rep.equal
    assert rep.missing == ((3, 1),)
    assert (rep.left_size, rep.right_size, rep.target_size, rep.sumset_size) == (3, 3, 10, 9)
    assert problem1_check(P, hull([(5, 7)])).equal
    assert problem1_check(hull([(0,), (3,)]), hull([(-2,), (5,)])).equal


def test_idp_examples():
    assert all(r.equal for _, r in idp_check(hull([(0, 0), (3, 1), (1, 4)]), 5))
    simplex = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    reports = idp_check(simplex, 3)
    assert [nu for nu, _ in reports] == [1, 2, 3]
    assert all(r.equal for _, r in reports)
    assert all(r.equal for _, r in idp_check(hull([(0,), (7,)]), 4))


def test_reeve_tetrahedron_fails_idp():
    # a classic lattice tetrahedron without interior points that is not IDP
    reeve = hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])
    assert not all(r.equal for _, r in idp_check(reeve, 2))


def test_from_inequalities():
    tri = from_inequalities([((1, 0), 0), ((0, 1), 0), ((-1, -1), -2)], 2)
    assert set(tri.vertices) == {(0, 0), (2, 0), (0, 2)}
    half = from_inequalities([((2, 0), 1), ((-2, 0), -3), ((0, 1), 0), ((0, -1), 0)], 2)
    assert set(half.vertices) == {(Fraction(1, 2), 0), (Fraction(3, 2), 0)}
    assert not half.is_lattice
    assert lattice_points(half) == [(1, 0)]
    assert from_inequalities([((1,), 1), ((-1,), 0)], 1).is_empty
    with pytest.raises(ValueError):
        from_inequalities([((1, 0), 0)], 2)


def test_json_round_trip():
    half = from_inequalities([((2,), 1), ((-2,), -3)], 1)
    for p in (P, PP, half, hull([(0, 0, 0), (1, 2, 3)])):
        assert LatticePolytope.from_json(p.to_json()) == p


def test_empty_operands():
    e = LatticePolytope.empty(2)
    assert lattice_points(e) == []
    assert minkowski_sum(e, P).is_empty


# -- properties -----------------------------------------------------------------


@given(points(2), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_lattice_points_match_membership_oracle(pts, probe):
    p = hull(pts)
    got = set(lattice_points(p))
    xs = [q[0] for q in pts]
    ys = [q[1] for q in pts]
    box = product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1))
    assert got == {x for x in box if in_hull(pts, x)}
    assert p.contains(probe) == in_hull(pts, probe)


@given(points(3, n_max=6, bound=3))
@settings(max_examples=40)
def test_lattice_points_3d(pts):
    p = hull(pts)
    rng = [range(min(q[k] for q in pts), max(q[k] for q in pts) + 1) for k in range(3)]
    assert set(lattice_points(p)) == {x for x in product(*rng) if in_hull(pts, x)}
    assert all(v in set(lattice_points(p)) for v in p.vertices)


@given(polygon_points())
def test_pick(pts):
    p = hull(pts)
    assert len(lattice_points(p)) == shoelace_pick(cyclic_vertices(p))


@given(points(2))
def test_hull_of_lattice_points_round_trip(pts):
    p = hull(pts)
    assert hull(lattice_points(p)) == p
    assert all(in_hull(pts, v) for v in p.vertices)
    assert all(not in_hull([w for w in p.vertices if w != v], v) for v in p.vertices if len(p.vertices) > 1)


@given(points(2, n_max=5), points(2, n_max=5), points(2, n_max=4))
@settings(max_examples=50)
def test_minkowski_algebra(a, b, c):
    pa, pb, pc = hull(a), hull(b), hull(c)
    s = minkowski_sum(pa, pb)
    assert s == minkowski_sum(pb, pa)
    assert minkowski_sum(s, pc) == minkowski_sum(pa, minkowski_sum(pb, pc))
    for n, _ in s.facets:
        assert s.support_min(n) == pa.support_min(n) + pb.support_min(n)
    assert sumset(lattice_points(pa), lattice_points(pb)) <= set(lattice_points(s))


@given(points(2, n_max=5), points(2, n_max=5))
@settings(max_examples=50)
def test_problem1_report_consistent(a, b):
    rep = problem1_check(hull(a), hull(b))
    target = set(lattice_points(minkowski_sum(hull(a), hull(b))))
    ss = sumset(lattice_points(hull(a)), lattice_points(hull(b)))
    assert rep.target_size == len(target) and rep.sumset_size == len(ss)
    assert set(rep.missing) == target - ss
    assert rep.equal == (not rep.missing)


@given(st.integers(-20, 20), st.integers(0, 15), st.integers(-20, 20), st.integers(0, 15))
def test_segments_always_equal(a, la, b, lb):
    assert problem1_check(hull([(a,), (a + la,)]), hull([(b,), (b + lb,)])).equal


@given(points(2), st.integers(1, 4))
def test_dilation_matches_repeated_sum(pts, nu):
    p = hull(pts)
    acc = p
    for _ in range(nu - 1):
        acc = minkowski_sum(acc, p)
    assert dilate(p, nu) == acc
