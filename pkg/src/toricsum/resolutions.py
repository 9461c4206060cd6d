"""Graded dimension checks for the Koszul and Eagon-Northcott complexes on P^r.

The Cox ring of ``P^r`` is the polynomial ring in ``r + 1`` variables with
the standard grading, so every graded piece is counted by a binomial
coefficient. Each identity below is compared with an independent direct
computation (monomial enumeration and exact ranks).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .exactlin import rank


def s_dim(r: int, a: int) -> int:
    """Number of degree-``a`` monomials in ``r + 1`` variables."""
    return comb(a + r, r) if a >= 0 else 0


@lru_cache(maxsize=None)
def monomials(r: int, a: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the degree-``a`` monomials, lexicographically sorted."""
    if a < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(r + 1), a):
        e = [0] * (r + 1)
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    return tuple(sorted(out))


def ideal_dim(r: int, a: int, b: int) -> int:
    """``dim I_(a,b)``; the multiplication map onto ``S_(a+b)`` is surjective on ``P^r``."""
    return s_dim(r, a) * s_dim(r, b) - s_dim(r, a + b)


def ideal_dim_direct(r: int, a: int, b: int) -> int:
    """Kernel dimension of ``S_a (x) S_b -> S_(a+b)`` from the distinct products."""
    sa, sb = monomials(r, a), monomials(r, b)
    image = {tuple(x + y for x, y in zip(d, e)) for d in sa for e in sb}
    return len(sa) * len(sb) - len(image)


def eagon_northcott_euler(r: int, a: int, b: int) -> int:
    """Alternating sum of the bidegree-``(a,b)`` dimensions of the resolution terms.

    Term ``p`` is ``C(r+1, p+1)`` copies of ``sum_{j+k=p+1, j,k>=1} S(-j,-k)``.
    """
    total = 0
    for p in range(1, r + 1):
        inner = sum(s_dim(r, a - j) * s_dim(r, b - (p + 1 - j)) for j in range(1, p + 1))
        total += (-1) ** (p + 1) * comb(r + 1, p + 1) * inner
    return total


@dataclass
class IdentityCheck:
    """Outcome of a grid check; ``mismatches`` lists ``(degree, lhs, rhs)``."""

    name: str
    r: int
    checked: int = 0
    mismatches: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "identity": self.name,
            "r": self.r,
            "checked": self.checked,
            "ok": self.ok,
            "mismatches": [list(m) for m in self.mismatches],
        }


def check_en_identity(r: int, a_max: int, b_max: int) -> IdentityCheck:
    out = IdentityCheck("eagon-northcott", r)
    for a in range(a_max + 1):
        for b in range(b_max + 1):
            lhs, rhs = eagon_northcott_euler(r, a, b), ideal_dim(r, a, b)
            out.checked += 1
            if lhs != rhs:
                out.mismatches.append(((a, b), lhs, rhs))
    return out


def omega_dim_direct(r: int, a: int) -> int:
    """Kernel dimension of ``f_j dx_j -> sum f_j x_j`` in degree ``a``, by exact rank."""
    source = [(m, j) for j in range(r + 1) for m in monomials(r, a - 1)]
    if not source:
        return 0
    target = {m: i for i, m in enumerate(monomials(r, a))}
    rows = []
    for m, j in source:
        row = [0] * len(target)
        row[target[tuple(x + (i == j) for i, x in enumerate(m))]] = 1
        rows.append(row)
    return len(source) - rank(rows)


def koszul_sum(r: int, a: int) -> int:
    """``sum_{j=2}^{r+1} (-1)^j C(r+1, j) s(a - j)``."""
    return sum((-1) ** j * comb(r + 1, j) * s_dim(r, a - j) for j in range(2, r + 2))


def check_koszul_identity(r: int, a_max: int) -> IdentityCheck:
    out = IdentityCheck("koszul", r)
    for a in range(a_max + 1):
        lhs, rhs = omega_dim_direct(r, a), koszul_sum(r, a)
        out.checked += 1
        if lhs != rhs:
            out.mismatches.append(((a,), lhs, rhs))
    return out


def minor_syzygy_rank(a: int, b: int) -> int:
    """On ``P^1``: rank of multiplication by ``x1 (x) x2 - x2 (x) x1`` from ``S_(a-1,b-1)`` into ``S_a (x) S_b``.

    The resolution ``0 -> S(-1,-1) -> I -> 0`` is exact in bidegree ``(a, b)``
    iff this rank equals both ``s(a-1) s(b-1)`` and ``dim I_(a,b)``.
    """
    src = [(d, e) for d in monomials(1, a - 1) for e in monomials(1, b - 1)]
    if not src:
        return 0
    pos = {(d, e): i for i, (d, e) in enumerate((d, e) for d in monomials(1, a) for e in monomials(1, b))}
    rows = []
    for d, e in src:
        row = [0] * len(pos)
        row[pos[((d[0] + 1, d[1]), (e[0], e[1] + 1))]] += 1
        row[pos[((d[0], d[1] + 1), (e[0] + 1, e[1]))]] -= 1
        rows.append(row)
    return rank(rows)


def euler_contraction_rank(a: int) -> int:
    """On ``P^1``: rank of ``f dx1^dx2 -> f (x1 dx2 - x2 dx1)`` from ``S_(a-2)`` into degree-``a`` 1-forms."""
    src = monomials(1, a - 2)
    if not src:
        return 0
    pos = {(m, j): i for i, (m, j) in enumerate((m, j) for j in range(2) for m in monomials(1, a - 1))}
    rows = []
    for m in src:
        row = [0] * len(pos)
        row[pos[((m[0] + 1, m[1]), 1)]] += 1
        row[pos[((m[0], m[1] + 1), 0)]] -= 1
        rows.append(row)
    return rank(rows)


def check_r1_syzygies(max_degree: int) -> IdentityCheck:
    """Boundary-map ranks of both complexes on ``P^1`` against the expected dimensions."""
    out = IdentityCheck("r1-syzygies", 1)
    for a in range(max_degree + 1):
        for b in range(max_degree + 1):
            got, want = minor_syzygy_rank(a, b), ideal_dim(1, a, b)
            out.checked += 1
            if got != want or got != s_dim(1, a - 1) * s_dim(1, b - 1):
                out.mismatches.append(((a, b), got, want))
        got, want = euler_contraction_rank(a), omega_dim_direct(1, a)
        out.checked += 1
        if got != want or got != s_dim(1, a - 2):
            out.mismatches.append(((a,), got, want))
    return out
