"""Lattice polytopes: exact hulls, Minkowski sums and lattice-point sumsets.

A :class:`LatticePolytope` keeps both descriptions. The V-description is the
sorted tuple of vertices; the H-description is a tuple of ``(normal, offset)``
pairs meaning ``<m, normal> >= offset`` plus, for lower-dimensional polytopes,
``(normal, value)`` equations for the affine span. Vertices are usually
integral, but rational vertices are allowed because divisor polytopes of
non-nef divisors need them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .cones import extreme_rays
from .exactlin import Vector, clear_denominators, dot, integer_kernel, primitive, rank, row_reduce

Number = int | Fraction
Point = tuple[int, ...]

# sums are marked in a boolean table in chunks of at most this many pairs
_CHUNK = 1 << 22


def _num(x) -> Number:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def _ceil(x: Number) -> int:
    x = Fraction(x)
    return -((-x.numerator) // x.denominator)


def _floor(x: Number) -> int:
    x = Fraction(x)
    return x.numerator // x.denominator


@dataclass(frozen=True)
class LatticePolytope:
    dim: int
    vertices: tuple[tuple[Number, ...], ...]
    facets: tuple[tuple[Vector, Number], ...] = field(compare=False, repr=False)
    equations: tuple[tuple[Vector, Number], ...] = field(compare=False, repr=False, default=())

    @classmethod
    def empty(cls, dim: int) -> "LatticePolytope":
        return cls(dim, (), (), ())

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def affine_dim(self) -> int:
        return -1 if self.is_empty else self.dim - len(self.equations)

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    def contains(self, m: Sequence) -> bool:
        if self.is_empty:
            return False
        return all(dot(m, n) >= c for n, c in self.facets) and all(
            dot(m, e) == c for e, c in self.equations
        )

    def support_min(self, direction: Sequence[int]) -> Number:
        """``min <v, direction>`` over the polytope."""
        return min(dot(v, direction) for v in self.vertices)

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(
            self.dim,
            tuple(sorted(tuple(_num(x + y) for x, y in zip(v, t)) for v in self.vertices)),
            tuple((n, _num(c + dot(n, t))) for n, c in self.facets),
            tuple((e, _num(c + dot(e, t))) for e, c in self.equations),
        )

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [[_jnum(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "LatticePolytope":
        if isinstance(doc, str):
            doc = json.loads(doc)
        dim = int(doc["dim"])
        verts = [tuple(Fraction(x) for x in v) for v in doc["vertices"]]
        if any(len(v) != dim for v in verts):
            raise ValueError("vertex length does not match dim")
        return hull(verts, dim=dim) if verts else cls.empty(dim)


def _jnum(x: Number):
    return x if isinstance(x, int) else str(x)


def hull(points: Iterable[Sequence[Number]], dim: int | None = None) -> LatticePolytope:
    """Convex hull of finitely many points, with an irredundant H-description.

    Works inside the affine span: equations of the span come from an integer
    kernel, the points are projected to pivot coordinates where they are
    full-dimensional, and facets there are the extreme rays of the cone of
    valid inequalities (double description on the homogenized points).
    """
    pts = sorted({tuple(_num(x) for x in p) for p in points})
    if not pts:
        raise ValueError("hull of an empty point set")
    r = len(pts[0]) if dim is None else dim
    if any(len(p) != r for p in pts):
        raise ValueError("points of different dimensions")
    p0 = pts[0]
    diffs = [clear_denominators([Fraction(x) - y for x, y in zip(p, p0)]) for p in pts[1:]]
    diffs = [d for d in diffs if any(d)]
    if diffs:
        eq_normals = integer_kernel([list(d) for d in diffs], r)
        _, coords = row_reduce(diffs)
    else:
        eq_normals = [tuple(int(i == j) for j in range(r)) for i in range(r)]
        coords = []
    equations = tuple((tuple(e), _num(dot(e, p0))) for e in eq_normals)
    d = len(coords)
    if d == 0:
        return LatticePolytope(r, (p0,), (), equations)

    rows = [clear_denominators((1,) + tuple(p[c] for c in coords)) for p in pts]
    cone = extreme_rays(rows, d + 1)
    assert not cone.lineality
    facets = {}
    point_facets: list[list[Vector]] = [[] for _ in pts]
    for ray, tight in zip(cone.rays, cone.tight):
        if not any(ray[1:]):
            continue
        n = [0] * r
        for c, y in zip(coords, primitive(ray[1:])):
            n[c] = y
        n = tuple(n)
        facets[n] = _num(min(dot(p, n) for p in pts))
        for i in tight:
            point_facets[i].append(tuple(n[c] for c in coords))
    vertices = tuple(p for p, fs in zip(pts, point_facets) if len(fs) >= d and rank(fs) == d)
    return LatticePolytope(r, vertices, tuple(sorted(facets.items())), equations)


def from_inequalities(
    inequalities: Sequence[tuple[Sequence[int], Number]], dim: int
) -> LatticePolytope:
    """Polytope ``{m : <m, n> >= c}``; the system must describe a bounded set.

    Vertices are the extreme rays with positive last coordinate of the
    homogenized cone ``{(m, t) : <m, n> - c t >= 0, t >= 0}``.
    """
    rows = []
    for n, c in inequalities:
        rows.append(clear_denominators(tuple(n) + (-Fraction(c),)))
    rows.append(tuple([0] * dim + [1]))
    cone = extreme_rays(rows, dim + 1)
    if cone.lineality:
        raise ValueError("inequalities do not describe a bounded polytope")
    verts = []
    for ray in cone.rays:
        if ray[-1] == 0:
            if any(ray):
                raise ValueError("inequalities do not describe a bounded polytope")
            continue
        verts.append(tuple(Fraction(x, ray[-1]) for x in ray[:-1]))
    if not verts:
        return LatticePolytope.empty(dim)
    return hull(verts, dim=dim)


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    """``{a + b : a in p, b in q}`` as the hull of pairwise vertex sums."""
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    if p.is_empty or q.is_empty:
        return LatticePolytope.empty(p.dim)
    return hull((tuple(x + y for x, y in zip(a, b)) for a in p.vertices for b in q.vertices), p.dim)


def dilate(p: LatticePolytope, nu: int) -> LatticePolytope:
    if nu <= 0:
        raise ValueError("dilation factor must be a positive integer")
    return LatticePolytope(
        p.dim,
        tuple(tuple(_num(nu * x) for x in v) for v in p.vertices),
        tuple((n, _num(nu * c)) for n, c in p.facets),
        tuple((e, _num(nu * c)) for e, c in p.equations),
    )


def lattice_points_array(p: LatticePolytope) -> np.ndarray:
    """Integer points of ``p`` as an ``(k, dim)`` int64 array in lexicographic order.

    Bounding-box scan over all coordinates but the last; for every prefix the
    admissible interval of the last coordinate is solved from the facets and
    emitted in one piece.
    """
    r = p.dim
    if p.is_empty:
        return np.zeros((0, r), dtype=np.int64)
    rows, lo_c = [], []
    for n, c in p.facets:
        rows.append(n)
        lo_c.append(_ceil(c))
    for e, c in p.equations:
        if Fraction(c).denominator != 1:
            return np.zeros((0, r), dtype=np.int64)
        rows.append(e)
        lo_c.append(int(c))
        rows.append(tuple(-x for x in e))
        lo_c.append(-int(c))
    lo = [_ceil(min(v[i] for v in p.vertices)) for i in range(r)]
    hi = [_floor(max(v[i] for v in p.vertices)) for i in range(r)]
    if any(a > b for a, b in zip(lo, hi)):
        return np.zeros((0, r), dtype=np.int64)
    if max(map(abs, lo + hi)) > 1 << 40:
        raise OverflowError("polytope too large for enumeration")

    axes = [np.arange(lo[i], hi[i] + 1, dtype=np.int64) for i in range(r - 1)]
    if axes:
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, r - 1)
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    A = np.array(rows, dtype=np.int64).reshape(-1, r)
    b = np.array(lo_c, dtype=np.int64)
    s = grid @ A[:, :-1].T - b  # slack without the last coordinate
    last = A[:, -1]
    keep = np.all(s[:, last == 0] >= 0, axis=1)
    low = np.full(len(grid), lo[-1], dtype=np.int64)
    high = np.full(len(grid), hi[-1], dtype=np.int64)
    for k in np.nonzero(last > 0)[0]:
        low = np.maximum(low, -(s[:, k] // last[k]))  # x >= ceil(-s / a)
    for k in np.nonzero(last < 0)[0]:
        high = np.minimum(high, s[:, k] // -last[k])  # x <= floor(s / -a)
    counts = np.where(keep, np.maximum(high - low + 1, 0), 0)
    total = int(counts.sum())
    out = np.empty((total, r), dtype=np.int64)
    out[:, :-1] = np.repeat(grid, counts, axis=0)
    starts = np.repeat(low, counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    out[:, -1] = starts + offsets
    return out


def lattice_points(p: LatticePolytope) -> list[Point]:
    """``M \\cap P`` as a lexicographically sorted list of integer tuples."""
    return [tuple(int(x) for x in row) for row in lattice_points_array(p)]


def sumset(a: Iterable[Sequence[int]], b: Iterable[Sequence[int]]) -> set[Point]:
    b = [tuple(y) for y in b]
    return {tuple(x + y for x, y in zip(u, v)) for u in a for v in b}


@dataclass(frozen=True)
class SumsetReport:
    """Comparison of ``(M cap P) + (M cap Q)`` against ``M cap (P + Q)``."""

    equal: bool
    left_size: int
    right_size: int
    sumset_size: int
    target_size: int
    missing: tuple[Point, ...]

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "leftSize": self.left_size,
            "rightSize": self.right_size,
            "sumsetSize": self.sumset_size,
            "targetSize": self.target_size,
            "missing": [list(m) for m in self.missing],
        }


def compare_sumset(a: np.ndarray, b: np.ndarray, target: np.ndarray) -> SumsetReport:
    """Report which points of ``target`` are not sums of a point of ``a`` and of ``b``.

    Assumes every pairwise sum lies in ``target`` (true whenever ``target`` is
    the lattice points of the Minkowski sum).
    """
    if len(target) == 0:
        return SumsetReport(True, len(a), len(b), 0, 0, ())
    if len(a) == 0 or len(b) == 0:
        missing = tuple(tuple(int(x) for x in t) for t in target)
        return SumsetReport(False, len(a), len(b), 0, len(target), missing)
    lo = target.min(axis=0)
    span = target.max(axis=0) - lo + 1
    stride = np.ones_like(span)
    for i in range(len(span) - 2, -1, -1):
        stride[i] = stride[i + 1] * span[i + 1]
    size = int(stride[0] * span[0])
    ca = a @ stride
    cb = (b - lo) @ stride
    mark = np.zeros(size, dtype=bool)
    step = max(1, _CHUNK // len(cb))
    for i in range(0, len(ca), step):
        codes = (ca[i:i + step, None] + cb[None, :]).ravel()
        mark[codes] = True
    hit = mark[(target - lo) @ stride]
    missing = tuple(tuple(int(x) for x in t) for t in target[~hit])
    return SumsetReport(not missing, len(a), len(b), int(mark.sum()), len(target), missing)


def problem1_check(p: LatticePolytope, q: LatticePolytope) -> SumsetReport:
    """Does ``(M cap P) + (M cap Q) == M cap (P + Q)``? Missing points sorted."""
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    return compare_sumset(
        lattice_points_array(p), lattice_points_array(q), lattice_points_array(minkowski_sum(p, q))
    )


def idp_check(p: LatticePolytope, nu_max: int | None = None) -> list[tuple[int, SumsetReport]]:
    """Compare ``(M cap P) + (M cap nu P)`` with ``M cap (nu+1) P`` for ``nu = 1..nu_max``.

    The default ``nu_max`` is ``max(1, dim - 1)``.
    """
    if nu_max is None:
        nu_max = max(1, p.dim - 1)
    if nu_max < 1:
        raise ValueError("nu_max must be at least 1")
    base = lattice_points_array(p)
    out = []
    prev = base
    for nu in range(1, nu_max + 1):
        nxt = lattice_points_array(dilate(p, nu + 1))
        out.append((nu, compare_sumset(base, prev, nxt)))
        prev = nxt
    return out


def pick_count(vertices: Sequence[Point]) -> int:
    """Lattice-point count of a lattice polygon by Pick's theorem.

    ``vertices`` must be in cyclic order. Uses the shoelace formula for twice
    the area and edge gcds for the boundary count.
    """
    from math import gcd

    n = len(vertices)
    twice_area = 0
    boundary = 0
    for i in range(n):
        (x0, y0), (x1, y1) = vertices[i], vertices[(i + 1) % n]
        twice_area += x0 * y1 - x1 * y0
        boundary += gcd(x1 - x0, y1 - y0)
    twice_area = abs(twice_area)
    # I = A - B/2 + 1, total = I + B
    return (twice_area - boundary + 2) // 2 + boundary


def cyclic_vertices(p: LatticePolytope) -> list[tuple]:
    """Vertices of a full-dimensional polygon in counterclockwise order."""
    if p.dim != 2:
        raise ValueError("polygon expected")
    cx = sum(Fraction(v[0]) for v in p.vertices) / len(p.vertices)
    cy = sum(Fraction(v[1]) for v in p.vertices) / len(p.vertices)

    def key(v):
        dx, dy = v[0] - cx, v[1] - cy
        half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
        return half, _Slope(dx, dy)

    return sorted(p.vertices, key=key)


class _Slope:
    # angular comparison within one half plane via cross products
    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x, self.y = x, y

    def __lt__(self, other):
        return self.x * other.y - self.y * other.x > 0


def box_points(lo: Sequence[int], hi: Sequence[int]) -> Iterable[Point]:
    return product(*(range(a, b + 1) for a, b in zip(lo, hi)))
