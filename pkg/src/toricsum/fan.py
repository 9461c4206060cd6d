"""Complete fans, torus-invariant divisors and nef/ample certificates.

A torus-invariant divisor ``D = sum a_j D_j`` is a plain integer tuple
``(a_1, ..., a_l)`` indexed like the rays of the fan.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .cones import dual_inequalities
from .exactlin import Vector, dot, primitive, rank, rational_feasible, solve_rational, vgcd
from .polytope import LatticePolytope, from_inequalities

Divisor = tuple[int, ...]


class FanError(ValueError):
    pass


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[Vector, ...]
    cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in r) for r in self.rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.cones)
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "cones", cones)
        if any(len(r) != self.dim for r in rays):
            raise FanError("ray length does not match dim")
        if any(vgcd(r) != 1 for r in rays):
            raise FanError("rays must be primitive")
        if len(set(rays)) != len(rays):
            raise FanError("rays must be distinct")
        if any(i < 0 or i >= len(rays) for c in cones for i in c):
            raise FanError("cone refers to a missing ray")

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def cone_rays(self, k: int) -> list[Vector]:
        return [self.rays[i] for i in self.cones[k]]

    @cached_property
    def cone_facets(self) -> tuple[tuple[tuple[frozenset[int], Vector], ...], ...]:
        """Per maximal cone: (global ray indices on the facet, inward normal)."""
        out = []
        for c in self.cones:
            dual = dual_inequalities([self.rays[i] for i in c], self.dim)
            out.append(tuple(
                (frozenset(c[i] for i in t), ray) for ray, t in zip(dual.rays, dual.tight)
            ))
        return tuple(out)

    def check_rays_extreme(self) -> bool:
        for k, c in enumerate(self.cones):
            for i in c:
                on = [n for t, n in self.cone_facets[k] if i in t]
                if rank(on) < self.dim - 1:
                    return False
        return True

    def completeness_problems(self, seed: int = 0, samples: int = 64) -> list[str]:
        """Reasons the fan fails to be complete; empty when complete.

        Every facet of a maximal cone must be shared with exactly one other
        maximal cone lying on the opposite side, and random integer points must
        lie in the interior of exactly one cone (points on walls are skipped).
        """
        problems = []
        for k, c in enumerate(self.cones):
            if rank(self.cone_rays(k)) != self.dim:
                problems.append(f"cone {k} is not full-dimensional")
        if problems:
            return problems
        if not self.check_rays_extreme():
            problems.append("some cone lists a ray that is not extreme")
        walls: dict[frozenset[int], list[tuple[int, Vector]]] = {}
        for k, fs in enumerate(self.cone_facets):
            for t, n in fs:
                walls.setdefault(t, []).append((k, n))
        for t, owners in walls.items():
            if len(owners) != 2:
                problems.append(f"wall {sorted(t)} lies on {len(owners)} cone(s)")
            elif owners[0][1] != tuple(-x for x in owners[1][1]):
                problems.append(f"wall {sorted(t)} has both cones on one side")
        rng = random.Random(seed)
        bound = 1000
        for _ in range(samples):
            x = [rng.randint(-bound, bound) for _ in range(self.dim)]
            inside = 0
            on_wall = False
            for fs in self.cone_facets:
                vals = [dot(n, x) for _, n in fs]
                if min(vals) > 0:
                    inside += 1
                elif min(vals) == 0:
                    on_wall = True
            if not on_wall and inside != 1:
                problems.append(f"point {x} lies in {inside} cones")
                break
        return problems

    @cached_property
    def is_complete(self) -> bool:
        return not self.completeness_problems()

    def require_complete(self):
        if not self.is_complete:
            raise FanError("fan is not complete: " + "; ".join(self.completeness_problems()))

    def to_json(self) -> dict:
        return {"dim": self.dim, "rays": [list(r) for r in self.rays], "cones": [list(c) for c in self.cones]}

    @classmethod
    def from_json(cls, doc: dict | str) -> "Fan":
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(int(doc["dim"]), tuple(map(tuple, doc["rays"])), tuple(map(tuple, doc["cones"])))


def projective_space_fan(r: int) -> Fan:
    """Fan of ``P^r``: rays ``e_1..e_r, -(e_1+...+e_r)``, cones all r-subsets."""
    rays = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    rays.append(tuple([-1] * r))
    return Fan(r, tuple(rays), tuple(combinations(range(r + 1), r)))


def fan_from_rays_2d(rays: Sequence[Sequence[int]]) -> Fan:
    """Planar fan whose cones join angularly consecutive rays.

    Rays keep their given order; the result is complete only if consecutive
    rays are less than a half-turn apart.
    """
    rays = [tuple(r) for r in rays]

    def angle_key(v):
        half = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
        return half, _Turn(v)

    order = sorted(range(len(rays)), key=lambda i: angle_key(rays[i]))
    cones = [tuple(sorted((order[i], order[(i + 1) % len(order)]))) for i in range(len(order))]
    return Fan(2, tuple(rays), tuple(cones))


class _Turn:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v[0] * other.v[1] - self.v[1] * other.v[0] > 0


def normal_fan(p: LatticePolytope) -> Fan:
    """Rays are the primitive inward facet normals; one cone per vertex."""
    if not p.is_full_dimensional:
        raise FanError("normal fan needs a full-dimensional polytope")
    rays = [n for n, _ in p.facets]
    cones = []
    for v in p.vertices:
        cones.append(tuple(j for j, (n, c) in enumerate(p.facets) if dot(v, n) == c))
    return Fan(p.dim, tuple(rays), tuple(cones))


def divisor_polytope(f: Fan, d: Sequence[int]) -> LatticePolytope:
    """``P_D = {m : <m, n_j> >= -a_j for all j}`` (possibly empty or lower-dimensional)."""
    if len(d) != f.nrays:
        raise FanError("divisor length does not match the number of rays")
    return from_inequalities([(n, -a) for n, a in zip(f.rays, d)], f.dim)


def polytope_divisor(f: Fan, p: LatticePolytope) -> Divisor:
    """Support-function divisor ``a_j = -min_P <., n_j>`` of a polytope on ``f``.

    Raises :class:`FanError` unless ``f`` refines the normal fan of ``p``,
    detected as a failed round trip or a non-nef result.
    """
    if p.dim != f.dim or p.is_empty:
        raise FanError("polytope does not live on this fan")
    mins = [p.support_min(n) for n in f.rays]
    if any(Fraction(x).denominator != 1 for x in mins):
        raise FanError("support function is not integral on the rays")
    d = tuple(-int(x) for x in mins)
    if divisor_polytope(f, d) != p or not is_nef(f, d).nef:
        raise FanError("the fan does not refine the normal fan of the polytope")
    return d


@dataclass(frozen=True)
class NefResult:
    """Outcome of a nef test; ``certificate[k]`` is the local section on cone ``k``."""

    nef: bool
    certificate: tuple[tuple[Fraction, ...], ...] | None = None
    failing_cone: int | None = None

    def __bool__(self) -> bool:
        return self.nef


def _local_section(f: Fan, d: Sequence[int], k: int, strict: bool):
    cone = set(f.cones[k])
    cons = []
    for j, (n, a) in enumerate(zip(f.rays, d)):
        if j in cone:
            cons.append((n, "=", -a))
        else:
            cons.append((n, ">" if strict else ">=", -a))
    return rational_feasible(cons, f.dim)


def is_nef(f: Fan, d: Sequence[int]) -> NefResult:
    """Convexity of the support function, one feasibility problem per maximal cone.

    ``D`` is nef iff every maximal cone ``s`` admits a rational ``m_s`` with
    ``<m_s, n_j> = -a_j`` on the rays of ``s`` and ``>= -a_j`` on all others.
    """
    if len(d) != f.nrays:
        raise FanError("divisor length does not match the number of rays")
    f.require_complete()
    cert = []
    for k in range(len(f.cones)):
        res = _local_section(f, d, k, strict=False)
        if not res:
            return NefResult(False, None, k)
        cert.append(res.witness)
    return NefResult(True, tuple(cert))


def is_ample(f: Fan, d: Sequence[int]) -> bool:
    """Strict convexity: local sections strict off each cone and pairwise distinct."""
    if len(d) != f.nrays:
        raise FanError("divisor length does not match the number of rays")
    f.require_complete()
    sections = []
    for k in range(len(f.cones)):
        res = _local_section(f, d, k, strict=True)
        if not res:
            return False
        sections.append(res.witness)
    return len(set(sections)) == len(sections)


def is_cartier(f: Fan, d: Sequence[int]) -> bool:
    """Every maximal cone carries an integral ``m`` with ``<m, n_j> = -a_j`` on its rays."""
    if len(d) != f.nrays:
        raise FanError("divisor length does not match the number of rays")
    for k, c in enumerate(f.cones):
        sol = solve_rational([f.rays[j] for j in c], [-d[j] for j in c])
        if sol is None or any(x.denominator != 1 for x in sol):
            return False
    return True


def support_divisor(f: Fan, p: LatticePolytope) -> Divisor:
    """``a_j = -min_P <., n_j>`` without the refinement check."""
    return tuple(-int(p.support_min(n)) for n in f.rays)


def random_primitive(rng: random.Random, dim: int, bound: int) -> Vector:
    while True:
        v = [rng.randint(-bound, bound) for _ in range(dim)]
        if any(v):
            return primitive(v)
