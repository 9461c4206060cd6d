"""The linear Gale transform of a spanning ray configuration.

``pi_star`` sends ``m`` to ``(<m, n_1>, ..., <m, n_l>)``. Its cokernel, the
class group, is presented once per :class:`GaleData` as ``Z^(l-r)`` plus
torsion ``Z/d_i``, read off from a Smith decomposition ``U A V = D``: the
class of ``a`` is ``U a`` with the first ``r`` coordinates taken modulo the
invariant factors. The free rows of ``U`` are replaced by their Hermite form
so the free coordinates do not depend on pivoting accidents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import (
    Vector,
    dot,
    hermite_normal_form,
    inverse_unimodular,
    matvec,
    smith_normal_form,
    solve_rational,
)


class GaleError(ValueError):
    pass


@dataclass(frozen=True)
class ClassElement:
    """An element of the class group: free coordinates plus torsion residues."""

    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()
    moduli: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        object.__setattr__(
            self, "torsion", tuple(int(x) % d for x, d in zip(self.torsion, self.moduli))
        )

    def __add__(self, other: "ClassElement") -> "ClassElement":
        return ClassElement(
            tuple(x + y for x, y in zip(self.free, other.free)),
            tuple(x + y for x, y in zip(self.torsion, other.torsion)),
            self.moduli,
        )

    def __neg__(self) -> "ClassElement":
        return ClassElement(tuple(-x for x in self.free), tuple(-x for x in self.torsion), self.moduli)

    def __sub__(self, other: "ClassElement") -> "ClassElement":
        return self + (-other)

    def __mul__(self, k: int) -> "ClassElement":
        return ClassElement(tuple(k * x for x in self.free), tuple(k * x for x in self.torsion), self.moduli)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not any(self.free) and not any(self.torsion)

    @property
    def is_torsion(self) -> bool:
        return not any(self.free) and any(self.torsion)

    def to_list(self) -> list[int]:
        return list(self.free) + list(self.torsion)


@dataclass(frozen=True)
class GaleData:
    rays: tuple[Vector, ...]
    pi_star: tuple[Vector, ...]
    torsion: tuple[int, ...]
    free_rank: int
    presentation: tuple[Vector, ...]
    presentation_inverse: tuple[Vector, ...]
    torsion_rows: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def class_of(self, d: Sequence[int]) -> ClassElement:
        if len(d) != self.nrays:
            raise GaleError("divisor length does not match the number of rays")
        b = matvec(self.presentation, d)
        r = self.dim
        return ClassElement(tuple(b[r:]), tuple(b[i] for i in self.torsion_rows), self.torsion)

    @property
    def mu(self) -> tuple[ClassElement, ...]:
        l = self.nrays
        return tuple(self.class_of([int(i == j) for i in range(l)]) for j in range(l))

    def zero(self) -> ClassElement:
        return ClassElement((0,) * self.free_rank, (0,) * len(self.torsion), self.torsion)

    def element(self, free: Sequence[int], torsion: Sequence[int] = ()) -> ClassElement:
        torsion = tuple(torsion) or (0,) * len(self.torsion)
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise GaleError("class coordinates do not match the class group")
        return ClassElement(tuple(free), torsion, self.torsion)

    def lift(self, alpha: ClassElement) -> tuple[int, ...]:
        """Some divisor (not necessarily effective) of class ``alpha``."""
        b = [0] * self.nrays
        for i, t in zip(self.torsion_rows, alpha.torsion):
            b[i] = t
        r = self.dim
        b[r:] = alpha.free
        return tuple(matvec(self.presentation_inverse, b))

    def pi_star_of(self, m: Sequence[int]) -> tuple[int, ...]:
        return tuple(dot(m, n) for n in self.rays)

    def to_json(self) -> dict:
        return {
            "freeRank": self.free_rank,
            "torsion": list(self.torsion),
            "mu": [c.to_list() for c in self.mu],
        }


def gale_transform(rays: Sequence[Sequence[int]]) -> GaleData:
    """Class group presentation and degree classes ``mu_j`` of a ray configuration."""
    rays = tuple(tuple(int(x) for x in n) for n in rays)
    if not rays:
        raise GaleError("no rays")
    r = len(rays[0])
    l = len(rays)
    a = [list(n) for n in rays]
    snf = smith_normal_form(a)
    diag = snf.diagonal
    if len(diag) < r or any(x == 0 for x in diag):
        raise GaleError("rays do not span the space (pi* is not injective)")
    u = snf.left
    free_rows = u[r:]
    if free_rows:
        h, _ = hermite_normal_form(free_rows)
        free_rows = h
    pres = tuple(tuple(row) for row in u[:r]) + tuple(tuple(row) for row in free_rows)
    torsion_rows = tuple(i for i in range(r) if diag[i] > 1)
    return GaleData(
        rays=rays,
        pi_star=rays,
        torsion=tuple(diag[i] for i in torsion_rows),
        free_rank=l - r,
        presentation=pres,
        presentation_inverse=tuple(tuple(row) for row in inverse_unimodular(pres)),
        torsion_rows=torsion_rows,
    )


def divisor_class(g: GaleData, d: Sequence[int]) -> ClassElement:
    """``[D] = sum a_j mu_j``."""
    return g.class_of(d)


def preimage(g: GaleData, d: Sequence[int]) -> tuple[int, ...] | None:
    """The ``m`` with ``pi*(m) = d``, or None when ``d`` is not in the image."""
    sol = solve_rational(g.pi_star, list(d))
    if sol is None or any(Fraction(x).denominator != 1 for x in sol):
        return None
    return tuple(int(x) for x in sol)


def linearly_equivalent(g: GaleData, d: Sequence[int], e: Sequence[int]) -> bool:
    """Equal classes, checked both in the class group and as ``d - e in im(pi*)``."""
    if len(d) != g.nrays or len(e) != g.nrays:
        raise GaleError("divisor length does not match the number of rays")
    by_class = g.class_of(d) == g.class_of(e)
    by_image = preimage(g, [x - y for x, y in zip(d, e)]) is not None
    if by_class != by_image:
        raise AssertionError("class group presentation is inconsistent")
    return by_class


def plus_minus_parts(g: GaleData | Sequence[Sequence[int]], m: Sequence[int]):
    """Zero and polar divisors of the character ``m``: ``pi*(m) = D+ - D-``."""
    rays = g.rays if isinstance(g, GaleData) else g
    vals = [dot(m, n) for n in rays]
    return tuple(max(v, 0) for v in vals), tuple(max(-v, 0) for v in vals)
