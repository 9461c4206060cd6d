from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from strategies import spanning_rays
from toricsum.exactlin import integer_kernel, smith_normal_form
from toricsum.gale import (
    GaleError,
    divisor_class,
    gale_transform,
    linearly_equivalent,
    plus_minus_parts,
    preimage,
)

P1 = [(1,), (-1,)]
P2 = [(1, 0), (0, 1), (-1, -1)]
SQUARE = [(1, 0), (-1, 0), (0, 1), (0, -1)]


def test_examples():
    g = gale_transform(P1)
    assert g.free_rank == 1 and g.torsion == () and [m.free for m in g.mu] == [(1,), (1,)]
    g = gale_transform(P2)
    assert [m.free for m in g.mu] == [(1,)] * 3
    assert divisor_class(g, (2, 1, 0)).free == (3,)
    g = gale_transform(SQUARE)
    assert [m.free for m in g.mu] == [(1, 0), (1, 0), (0, 1), (0, 1)]


def test_unit_vectors_map_to_mu():
    g = gale_transform(P2)
    for j in range(3):
        assert divisor_class(g, [int(i == j) for i in range(3)]) == g.mu[j]


def test_linear_equivalence_examples():
    g = gale_transform(P2)
    assert linearly_equivalent(g, (1, 0, 0), (1, 0, 0))
    assert linearly_equivalent(g, (1, 0, 0), (0, 0, 1))
    g = gale_transform(SQUARE)
    assert not linearly_equivalent(g, (1, 0, 0, 0), (0, 0, 1, 0))


def test_plus_minus_examples():
    assert plus_minus_parts(P2, (0, 0)) == ((0, 0, 0), (0, 0, 0))
    assert plus_minus_parts(P2, (1, 0)) == ((1, 0, 0), (0, 0, 1))
    assert plus_minus_parts(gale_transform(P1), (1,)) == ((1, 0), (0, 1))


def test_torsion_cases():
    # these rays generate the full lattice: no torsion, free rank 1
    g = gale_transform([(1, 2), (1, 0), (-1, -1)])
    assert g.torsion == () and g.free_rank == 1
    assert sorted(m.free[0] for m in g.mu) == [1, 1, 2]
    # these generate an index-3 sublattice
    g = gale_transform([(2, -1), (-1, 2), (-1, -1)])
    assert g.torsion == (3,) and g.free_rank == 1
    torsion_classes = {g.class_of((a, b, 0)) for a in range(-3, 4) for b in range(-3, 4)}
    assert any(c.is_torsion for c in torsion_classes)
    assert linearly_equivalent(g, (3, 0, 0), (0, 3, 0))
    assert not linearly_equivalent(g, (1, 0, 0), (0, 1, 0))


def test_non_spanning_rays():
    with pytest.raises(GaleError):
        gale_transform([(1, 0), (-1, 0)])


def test_lift_and_element_validation():
    g = gale_transform(SQUARE)
    assert g.class_of(g.lift(g.element([2, -3]))) == g.element([2, -3])
    with pytest.raises(GaleError):
        g.element([1])


@given(spanning_rays(3))
@settings(max_examples=100)
def test_exactness(rays):
    g = gale_transform(rays)
    r, l = len(rays[0]), len(rays)
    assert g.free_rank == l - r
    for i in range(r):
        e = [int(k == i) for k in range(r)]
        assert divisor_class(g, g.pi_star_of(e)).is_zero
    # |torsion| equals the index of the ray lattice, read off independently
    snf = smith_normal_form([list(n) for n in rays])
    index = 1
    for d in snf.diagonal:
        index *= d
    tors = 1
    for d in g.torsion:
        tors *= d
    assert tors == index


@given(spanning_rays(2, l_max=5), st.data())
@settings(max_examples=60)
def test_linear_equivalence_matches_image(rays, data):
    g = gale_transform(rays)
    l = len(rays)
    d = data.draw(st.tuples(*[st.integers(-3, 3)] * l))
    e = data.draw(st.tuples(*[st.integers(-3, 3)] * l))
    diff = [x - y for x, y in zip(d, e)]
    # brute-force search for m with pi*(m) = d - e
    found = any(
        all(m[0] * n[0] + m[1] * n[1] == v for n, v in zip(rays, diff))
        for m in product(range(-8, 9), repeat=2)
    )
    assert linearly_equivalent(g, d, e) == found
    assert (preimage(g, diff) is not None) == found


@given(spanning_rays(3), st.data())
@settings(max_examples=60)
def test_class_arithmetic(rays, data):
    g = gale_transform(rays)
    l = len(rays)
    d = data.draw(st.tuples(*[st.integers(-4, 4)] * l))
    e = data.draw(st.tuples(*[st.integers(-4, 4)] * l))
    s = tuple(x + y for x, y in zip(d, e))
    assert g.class_of(s) == g.class_of(d) + g.class_of(e)
    assert g.class_of(g.lift(g.class_of(d))) == g.class_of(d)
    total = g.zero()
    for a, mu in zip(d, g.mu):
        total = total + a * mu
    assert total == g.class_of(d)


@given(spanning_rays(3), st.tuples(*[st.integers(-5, 5)] * 3))
def test_plus_minus_antisymmetry(rays, m):
    dp, dm = plus_minus_parts(rays, m)
    assert plus_minus_parts(rays, tuple(-x for x in m)) == (dm, dp)
    assert all(a == 0 or b == 0 for a, b in zip(dp, dm))
    g = gale_transform(rays)
    assert linearly_equivalent(g, dp, dm)


def test_kernel_of_presentation_is_image():
    g = gale_transform(SQUARE)
    ker = integer_kernel([list(row) for row in g.presentation[2:]])
    for v in ker:
        assert preimage(g, v) is not None
