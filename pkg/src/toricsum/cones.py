"""Polyhedral cones via the double description method.

Everything here is integral: rays and inequalities are primitive integer
vectors, and new rays are formed by integer combinations followed by gcd
reduction, so no rational arithmetic is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactlin import Vector, dot, identity, integer_kernel, primitive, rank


@dataclass(frozen=True)
class ConeRays:
    """V-description of ``{x : A x >= 0}``.

    ``rays`` are extreme rays modulo the lineality space; ``tight[k]`` is the
    set of row indices of ``A`` vanishing on ``rays[k]``.
    """

    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...]
    tight: tuple[frozenset[int], ...]


def extreme_rays(inequalities: Sequence[Sequence[int]], dim: int) -> ConeRays:
    """Extreme rays and lineality of ``{x in R^dim : <a_i, x> >= 0 for all i}``.

    Constraints are inserted one at a time. While the lineality space is not
    yet cut by a constraint, one lineality direction is promoted to a ray;
    otherwise the usual split into positive, zero and negative rays is done and
    adjacent pairs (combinatorial test on tight sets) are combined.
    """
    lin = [tuple(r) for r in identity(dim)]
    rays: list[Vector] = []
    tight: list[set[int]] = []
    for idx, a in enumerate(inequalities):
        a = tuple(a)
        vals = [dot(a, l) for l in lin]
        k = next((i for i, v in enumerate(vals) if v != 0), None)
        if k is not None:
            l0 = lin[k]
            v0 = vals[k]
            if v0 < 0:
                l0, v0 = tuple(-x for x in l0), -v0
            new_lin = []
            for i, l in enumerate(lin):
                if i == k:
                    continue
                new_lin.append(primitive([v0 * x - vals[i] * y for x, y in zip(l, l0)]))
            new_rays = []
            for r, t in zip(rays, tight):
                w = dot(a, r)
                new_rays.append(primitive([v0 * x - w * y for x, y in zip(r, l0)]))
                t.add(idx)
            lin = new_lin
            rays = new_rays + [l0]
            tight.append(set(range(idx)))
            continue

        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        # adjacency needs |Z(p) & Z(n)| >= dim - len(lin) - 2
        need = dim - len(lin) - 2
        added: list[tuple[Vector, set[int]]] = []
        for p in pos:
            for n in neg:
                common = tight[p] & tight[n]
                if len(common) < need:
                    continue
                if any(
                    q != p and q != n and common <= tight[q]
                    for q in range(len(rays))
                ):
                    continue
                vp, vn = vals[p], -vals[n]
                r = primitive([vp * x + vn * y for x, y in zip(rays[n], rays[p])])
                added.append((r, common | {idx}))
        keep = pos + zero
        new_rays = [rays[i] for i in keep]
        new_tight = [tight[i] | ({idx} if vals[i] == 0 else set()) for i in keep]
        for r, t in added:
            new_rays.append(r)
            new_tight.append(t)
        rays, tight = new_rays, new_tight
    return ConeRays(tuple(rays), tuple(lin), tuple(frozenset(t) for t in tight))


def dual_inequalities(generators: Sequence[Sequence[int]], dim: int) -> ConeRays:
    """Facets of ``cone(generators)``: the extreme rays of its dual cone.

    ``tight[k]`` lists the generators lying on facet ``k``. For a cone that is
    not full-dimensional the returned inequalities are defined modulo the
    (reported) lineality, which consists of the equations of the span.
    """
    return extreme_rays(generators, dim)


def span_equations(vectors: Sequence[Sequence[int]], dim: int) -> list[Vector]:
    """Integer basis of the linear forms vanishing on all ``vectors``."""
    if not vectors:
        return [tuple(r) for r in identity(dim)]
    return integer_kernel([list(v) for v in vectors])


def is_pointed(inequalities: Sequence[Sequence[int]], dim: int) -> bool:
    return not integer_kernel([list(a) for a in inequalities], dim) if inequalities else dim == 0


def contains(inequalities: Sequence[Sequence[int]], x: Sequence) -> bool:
    return all(dot(a, x) >= 0 for a in inequalities)


def triangulate(generators: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Triangulate a pointed cone into simplicial cones on its generators.

    Pulling triangulation: pick the first generator ``v``, triangulate every
    facet not containing ``v`` recursively, and cone each piece over ``v``.
    The result is a list of index tuples into ``generators``; each tuple is
    linearly independent and they cover the cone.
    """
    gens = [tuple(g) for g in generators]
    idx = tuple(range(len(gens)))
    return _pull(gens, idx, dim)


def _pull(gens, idx, dim):
    sub = [gens[i] for i in idx]
    d = rank(sub)
    if d == len(idx):
        return [idx]
    facets = dual_inequalities(sub, dim)
    pieces = []
    apex = 0
    for t in facets.tight:
        if apex in t:
            continue
        face = tuple(idx[i] for i in sorted(t))
        if rank([gens[i] for i in face]) != d - 1:
            continue
        for simplex in _pull(gens, face, dim):
            pieces.append((idx[apex],) + simplex)
    return pieces


def simplicial_facets(generators: Sequence[Sequence[int]]) -> list[Vector]:
    """Inward facet normals of a full-dimensional simplicial cone."""
    d = len(generators)
    out = []
    for skip in range(d):
        rest = [list(g) for i, g in enumerate(generators) if i != skip]
        n = integer_kernel(rest, d)[0] if rest else (1,)
        if dot(n, generators[skip]) < 0:
            n = tuple(-x for x in n)
        out.append(tuple(n))
    return out
