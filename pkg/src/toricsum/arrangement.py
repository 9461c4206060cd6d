"""Chambers of the arrangement ``{n_j^perp}``, their Hilbert bases, and the
binomial generators they produce for the diagonal ideal and for the module
of differentials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cones import dual_inequalities, extreme_rays, triangulate
from .exactlin import (
    Vector,
    dot,
    integer_kernel,
    inverse_unimodular,
    matvec,
    primitive,
    rank,
    rational_feasible,
    smith_normal_form,
    solve_rational,
)
from .gale import ClassElement, GaleData, gale_transform, plus_minus_parts


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Chamber:
    """An open chamber; ``signs[j]`` is the sign of ``<m, n_j>`` on it."""

    signs: tuple[int, ...]
    witness: tuple[Fraction, ...]
    facets: tuple[Vector, ...]
    extreme_rays: tuple[Vector, ...]
    hilbert_basis: tuple[Vector, ...]

    @property
    def sign_string(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def contains(self, m: Sequence[int]) -> bool:
        """Membership in the closed cone."""
        return all(dot(n, m) >= 0 for n in self.facets)

    def to_json(self) -> dict:
        return {
            "signs": self.sign_string,
            "extremeRays": [list(r) for r in self.extreme_rays],
            "facets": [list(n) for n in self.facets],
            "hilbertBasis": [list(h) for h in self.hilbert_basis],
        }


def _canonical(v: Sequence[int]) -> tuple[Vector, int]:
    """Primitive representative with first nonzero entry positive, and the sign used."""
    p = primitive(v)
    s = 1 if next(x for x in p if x) > 0 else -1
    return tuple(s * x for x in p), s


def _check_span(rays: Sequence[Sequence[int]]) -> int:
    if not rays:
        raise ArrangementError("no rays")
    r = len(rays[0])
    if rank(rays) != r:
        raise ArrangementError("rays do not span the space")
    return r


def chambers(rays: Sequence[Sequence[int]], with_hilbert: bool = True) -> list[Chamber]:
    """All full-dimensional chambers, sorted by sign string (``+`` before ``-``).

    Hyperplanes are deduplicated (parallel and antiparallel rays give the same
    hyperplane) and inserted one at a time; a chamber is split when both open
    sides of the new hyperplane meet it, decided by strict rational
    feasibility. The witness of the parent decides one side for free.
    """
    rays = [tuple(int(x) for x in n) for n in rays]
    r = _check_span(rays)
    planes: list[Vector] = []
    where: list[tuple[int, int]] = []
    for n in rays:
        h, s = _canonical(n)
        if h not in planes:
            planes.append(h)
        where.append((planes.index(h), s))

    cells: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = [((), tuple([Fraction(0)] * r))]
    for i, h in enumerate(planes):
        nxt = []
        for signs, w in cells:
            side = dot(h, w)
            for s in (1, -1):
                if side * s > 0:
                    nxt.append((signs + (s,), w))
                    continue
                cons = [([sk * x for x in planes[k]], ">", 0) for k, sk in enumerate(signs)]
                cons.append(([s * x for x in h], ">", 0))
                res = rational_feasible(cons, r)
                if res:
                    nxt.append((signs + (s,), res.witness))
        cells = nxt

    out = []
    for signs, w in cells:
        ineqs = [tuple(s * x for x in h) for s, h in zip(signs, planes)]
        cone = extreme_rays(ineqs, r)
        assert not cone.lineality
        facets = tuple(sorted(
            ineqs[i] for i in range(len(ineqs))
            if rank([cone.rays[k] for k, t in enumerate(cone.tight) if i in t] or [[0] * r]) == r - 1
        ))
        ext = tuple(sorted(cone.rays))
        hb = tuple(hilbert_basis(ext, r)) if with_hilbert else ()
        ray_signs = tuple(signs[p] * s for p, s in where)
        out.append(Chamber(ray_signs, w, facets, ext, hb))
    out.sort(key=lambda c: c.sign_string)
    return out


def _parallelepiped(gens: Sequence[Vector]) -> list[Vector]:
    """Lattice points ``sum l_i v_i`` with ``0 <= l_i < 1`` for linearly independent full-rank ``gens``."""
    d = len(gens)
    a = [[gens[j][i] for j in range(d)] for i in range(d)]  # columns are generators
    snf = smith_normal_form(a)
    uinv = inverse_unimodular(snf.left)
    pts = [()]
    for di in snf.diagonal:
        pts = [p + (k,) for p in pts for k in range(di)]
    out = []
    for y in pts:
        x = matvec(uinv, y)
        lam = solve_rational(a, x)
        frac = [l - (l.numerator // l.denominator) for l in lam]
        out.append(tuple(int(sum(frac[j] * gens[j][i] for j in range(d))) for i in range(d)))
    return out


def hilbert_basis(generators: Sequence[Sequence[int]], dim: int | None = None) -> list[Vector]:
    """Minimal Hilbert basis of ``cone(generators) cap Z^dim`` for a pointed cone.

    Simplicial pieces of a pulling triangulation each contribute their
    fundamental parallelepiped points and generators; the union generates the
    semigroup, and an element is kept only if no other candidate can be
    subtracted from it while staying in the cone. Lower-dimensional cones are
    handled in a lattice basis of their span.
    """
    gens = sorted({primitive(g) for g in generators if any(g)})
    if not gens:
        return []
    d = len(gens[0]) if dim is None else dim
    k = rank(gens)
    if k < d:
        eqs = integer_kernel([list(g) for g in gens], d)
        basis = integer_kernel([list(e) for e in eqs], d)
        bt = [[b[i] for b in basis] for i in range(d)]
        coords = [tuple(int(x) for x in solve_rational(bt, g)) for g in gens]
        return sorted(
            tuple(sum(c[j] * basis[j][i] for j in range(k)) for i in range(d))
            for c in hilbert_basis(coords, k)
        )
    dual = dual_inequalities(gens, d)
    normals = list(dual.rays)
    if rank(normals) < d:
        raise ArrangementError("cone is not pointed")
    ext = [g for i, g in enumerate(gens)
           if rank([n for n, t in zip(normals, dual.tight) if i in t]) == d - 1]
    cands = set(ext)
    for simplex in triangulate(ext, d):
        cands.update(p for p in _parallelepiped([ext[i] for i in simplex]) if any(p))
    cands = sorted(cands)

    def inside(x):
        return all(dot(n, x) >= 0 for n in normals)

    return [
        x for x in cands
        if not any(y != x and inside([a - b for a, b in zip(x, y)]) for y in cands)
    ]


@dataclass(frozen=True)
class BinomialGenerator:
    """``x^{D+} (x) x^{D-} - x^{D-} (x) x^{D+}`` (diagonal) or ``x^{D+} dx^{D-} - x^{D-} dx^{D+}`` (omega)."""

    m: Vector
    dplus: tuple[int, ...]
    dminus: tuple[int, ...]
    reading: str = "diagonal"

    def render(self) -> str:
        a, b = _monomial(self.dplus), _monomial(self.dminus)
        if self.reading == "omega":
            return f"{a}*d({b}) - {b}*d({a})"
        return f"{a} (x) {b} - {b} (x) {a}"

    def to_json(self) -> dict:
        return {"m": list(self.m), "dplus": list(self.dplus), "dminus": list(self.dminus)}


def _monomial(d: Sequence[int]) -> str:
    parts = [f"x{j + 1}" + (f"^{a}" if a > 1 else "") for j, a in enumerate(d) if a]
    return "*".join(parts) or "1"


def diagonal_generators(rays: Sequence[Sequence[int]], reading: str = "diagonal") -> list[BinomialGenerator]:
    """Binomials from the union of the chamber Hilbert bases, one per ``+-m`` pair."""
    rays = [tuple(n) for n in rays]
    ms = set()
    for ch in chambers(rays):
        for h in ch.hilbert_basis:
            ms.add(_canonical(h)[0])
    out = []
    for m in sorted(ms):
        dp, dm = plus_minus_parts(rays, m)
        out.append(BinomialGenerator(m, dp, dm, reading))
    return out


def omega_generators(rays: Sequence[Sequence[int]]) -> list[BinomialGenerator]:
    return diagonal_generators(rays, reading="omega")


@dataclass(frozen=True)
class GenerationVerdict:
    degree: tuple[ClassElement, ...]
    target_dim: int
    generated_dim: int

    @property
    def ok(self) -> bool:
        return self.target_dim == self.generated_dim

    def to_json(self) -> dict:
        return {
            "degree": [c.to_list() for c in self.degree],
            "targetDim": self.target_dim,
            "generatedDim": self.generated_dim,
            "ok": self.ok,
        }


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def verify_generation_at_degree(
    rays: Sequence[Sequence[int]],
    generators: Sequence[BinomialGenerator],
    alpha: ClassElement,
    beta: ClassElement | None = None,
    bound: int = 8,
    gale: GaleData | None = None,
    exact_rank: bool = False,
) -> GenerationVerdict:
    """Compare one graded piece of the ideal (or of Omega) with what the generators span.

    With ``beta`` the piece is ``I_(alpha, beta)``: the kernel of
    ``S_alpha (x) S_beta -> S_{alpha+beta}``, of dimension ``#pairs - #sums``.
    The generated part is spanned by monomial multiples of the binomials; each
    multiple is a difference of two basis pairs, so its rank is the number of
    merges in a union-find over the pairs (``exact_rank`` recomputes it as
    the rational rank of the difference vectors).

    Without ``beta`` the piece is ``Omega_alpha``, the kernel of
    ``x^A dx_j -> x^{A+e_j} (x) mu_j``, compared by exact rational ranks with the
    span of ``x^C (x^{D+} dx^{D-} - x^{D-} dx^{D+})``.
    """
    from .coxring import _monomials

    g = gale or gale_transform(rays)
    for c in (alpha,) if beta is None else (alpha, beta):
        if any(abs(x) > bound for x in c.free):
            raise ArrangementError(f"degree {c.to_list()} exceeds the configured bound {bound}")
    classes = [(gen, g.class_of(gen.dplus)) for gen in generators]

    if beta is not None:
        sa, sb = _monomials(g, alpha), _monomials(g, beta)
        sums = {tuple(x + y for x, y in zip(d, e)) for d in sa for e in sb}
        target = len(sa) * len(sb) - len(sums)
        uf = _UnionFind()
        generated = 0
        edges = []
        for gen, gamma in classes:
            for a in _monomials(g, alpha - gamma):
                for b in _monomials(g, beta - gamma):
                    u = (_add(a, gen.dplus), _add(b, gen.dminus))
                    v = (_add(a, gen.dminus), _add(b, gen.dplus))
                    generated += uf.union(u, v)
                    edges.append((u, v))
        if exact_rank and edges:
            pos = {p: i for i, p in enumerate((d, e) for d in sa for e in sb)}
            rows = []
            for u, v in edges:
                row = [0] * len(pos)
                row[pos[u]] += 1
                row[pos[v]] -= 1
                rows.append(row)
            generated = rank(rows)
        return GenerationVerdict((alpha, beta), target, generated)

    mu = g.mu
    l = g.nrays
    source = [(a, j) for j in range(l) for a in _monomials(g, alpha - mu[j])]
    index = {s: i for i, s in enumerate(source)}
    sa = _monomials(g, alpha)
    col = {d: i for i, d in enumerate(sa)}
    k = g.free_rank
    rows = []
    for a, j in source:
        row = [0] * (len(sa) * k)
        mono = col[_add(a, _unit(l, j))]
        for t in range(k):
            row[mono * k + t] = mu[j].free[t]
        rows.append(row)
    target = len(source) - (rank(rows) if rows else 0)

    vecs = []
    for gen, gamma in classes:
        for c in _monomials(g, alpha - gamma - gamma):
            v = [0] * len(source)
            for x, y, sign in ((gen.dplus, gen.dminus, 1), (gen.dminus, gen.dplus, -1)):
                # x^C x^x d(x^y) = sum_j y_j x^{C + x + y - e_j} dx_j
                base = _add(c, _add(x, y))
                for j, e in enumerate(y):
                    if e:
                        key = (tuple(b - (i == j) for i, b in enumerate(base)), j)
                        v[index[key]] += sign * e
            vecs.append(v)
    generated = rank(vecs) if vecs else 0
    return GenerationVerdict((alpha,), target, generated)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _unit(l, j):
    return tuple(int(i == j) for i in range(l))
