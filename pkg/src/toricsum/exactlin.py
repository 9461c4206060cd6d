"""Exact integer and rational linear algebra.

Matrices are plain nested lists of Python ints (row-major), so every entry is
an arbitrary-precision integer. Rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]
Vector = tuple[int, ...]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def copy_matrix(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in m]


def transpose(m: Sequence[Sequence], cols: int | None = None) -> list[list]:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def vgcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries."""
    g = vgcd(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def clear_denominators(v: Sequence[Fraction | int]) -> Vector:
    """Scale a rational vector by a positive factor to a primitive integer vector."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = copy_matrix(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    """Exact rank over the rationals."""
    return len(row_reduce(m)[1])


def row_reduce(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rref, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One rational solution of a x = b, or None when inconsistent."""
    cols = len(a[0]) if a else 0
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = row_reduce(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = red[i][cols]
    return x


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``. ``h`` is in
    row echelon form: pivots are positive and the entries above each pivot
    lie in ``[0, pivot)``; zero rows trail.
    """
    h = copy_matrix(m)
    rows = len(h)
    cols = len(h[0]) if h else 0
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        # Euclid on column c below row r until one nonzero entry remains.
        while True:
            nz = [i for i in range(r, rows) if h[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(h[i][c]), i))
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, rows):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


@dataclass(frozen=True)
class SmithDecomposition:
    """``left @ m @ right == diag(diagonal)`` padded to the shape of ``m``."""

    diagonal: tuple[int, ...]
    left: Matrix
    right: Matrix

    def diagonal_matrix(self, rows: int, cols: int) -> Matrix:
        d = zeros(rows, cols)
        for i, x in enumerate(self.diagonal):
            d[i][i] = x
        return d


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivots are chosen by minimal absolute value, ties broken by lowest row
    then lowest column, so the transforms are reproducible. Invariant factors
    are nonnegative, satisfy ``d[i] | d[i+1]``, and zeros trail.
    """
    a = copy_matrix(m)
    rows = len(a)
    cols = len(a[0]) if a else 0
    left = identity(rows)
    right = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x - q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in a:
            row[dst] -= q * row[src]
        for row in right:
            row[dst] -= q * row[src]

    t = 0
    while t < min(rows, cols):
        cand = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j] != 0]
        if not cand:
            break
        _, pi, pj = min(cand)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // p)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // p)
                    if a[t][j]:
                        clean = False
            if clean:
                # divisibility: fold any entry not divisible by the pivot into row t
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], -1)
                continue
            cand = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols)
                    if a[i][j] != 0 and (i == t or j == t)]
            _, pi, pj = min(cand)
            swap_rows(t, pi)
            swap_cols(t, pj)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    diagonal = tuple(a[i][i] for i in range(min(rows, cols)))
    return SmithDecomposition(diagonal, left, right)


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return smith_normal_form(m).diagonal


def integer_kernel(m: Sequence[Sequence[int]], cols: int | None = None) -> list[Vector]:
    """Lattice basis of ``{v in Z^cols : m v = 0}``.

    The basis is saturated: it spans the kernel over Z, not just a finite
    index sublattice. ``cols`` must be given when ``m`` has no rows.
    """
    if cols is None:
        cols = len(m[0])
    if not m:
        return [tuple(row) for row in identity(cols)]
    h, u = hermite_normal_form(transpose(m))
    basis = [tuple(u[i]) for i in range(cols) if not any(h[i])]
    return _size_reduce(basis)


def _size_reduce(basis: list[Vector]) -> list[Vector]:
    # cosmetic: HNF of the basis gives canonical, usually small, vectors
    if not basis:
        return basis
    h, _ = hermite_normal_form(basis)
    return [tuple(row) for row in h if any(row)]


def inverse_unimodular(m: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix, exactly."""
    n = len(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = [[red[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# --- rational feasibility -------------------------------------------------

RELATIONS = (">=", ">", "=", "<=", "<")


@dataclass(frozen=True)
class Constraint:
    """``coeffs . x  relation  rhs`` with exact rational data."""

    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    @classmethod
    def make(cls, coeffs: Sequence, relation: str, rhs=0) -> "Constraint":
        if relation not in RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        c = tuple(Fraction(x) for x in coeffs)
        r = Fraction(rhs)
        if relation in ("<=", "<"):
            c = tuple(-x for x in c)
            r = -r
            relation = ">=" if relation == "<=" else ">"
        return cls(c, relation, r)

    def holds(self, x: Sequence) -> bool:
        lhs = dot(self.coeffs, x)
        if self.relation == "=":
            return lhs == self.rhs
        if self.relation == ">":
            return lhs > self.rhs
        return lhs >= self.rhs


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return self.feasible


def _normalize(coeffs: tuple[Fraction, ...], rhs: Fraction):
    # positive rescale to primitive integer coefficients so parallel rows collide
    ints = clear_denominators(coeffs)
    k = next(i for i, c in enumerate(coeffs) if c)
    scale = Fraction(ints[k]) / coeffs[k]
    return tuple(Fraction(x) for x in ints), rhs * scale


def _prune(ineqs):
    """Keep the tightest inequality per coefficient direction."""
    best: dict[tuple, tuple[Fraction, bool]] = {}
    trivial_bad = False
    for coeffs, rhs, strict in ineqs:
        if not any(coeffs):
            if rhs > 0 or (strict and rhs == 0):
                trivial_bad = True
            continue
        coeffs, rhs = _normalize(coeffs, rhs)
        old = best.get(coeffs)
        if old is None or rhs > old[0] or (rhs == old[0] and strict and not old[1]):
            best[coeffs] = (rhs, strict)
    return [(c, r, s) for c, (r, s) in best.items()], trivial_bad


def rational_feasible(constraints: Iterable[Constraint | tuple], nvars: int | None = None) -> Feasibility:
    """Decide feasibility of a system of linear (in)equalities over Q.

    Each constraint is a :class:`Constraint` or a ``(coeffs, relation, rhs)``
    triple with relation one of ``>=``, ``>``, ``=`` (``<=`` and ``<`` are
    accepted and flipped). Equalities are eliminated by substitution, then
    Fourier-Motzkin elimination runs on the inequalities, carrying a strictness
    flag on every derived row (a combination is strict when either parent is).
    On success an exact witness is rebuilt by back substitution, preferring
    values closest to zero and integers where the interval allows.
    """
    cons = [c if isinstance(c, Constraint) else Constraint.make(*c) for c in constraints]
    if nvars is None:
        if not cons:
            return Feasibility(True, ())
        nvars = len(cons[0].coeffs)
    if any(len(c.coeffs) != nvars for c in cons):
        raise ValueError("inconsistent constraint dimensions")

    # Equalities: x = x0 + B y over free parameters y.
    eqs = [c for c in cons if c.relation == "="]
    if eqs:
        red, pivots = row_reduce([list(c.coeffs) + [c.rhs] for c in eqs])
        if nvars in pivots:
            return Feasibility(False)
        free = [j for j in range(nvars) if j not in pivots]
        x0 = [Fraction(0)] * nvars
        for i, p in enumerate(pivots):
            x0[p] = red[i][nvars]
        basis = []
        for f in free:
            v = [Fraction(0)] * nvars
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -red[i][f]
            basis.append(v)
    else:
        free = list(range(nvars))
        x0 = [Fraction(0)] * nvars
        basis = [[Fraction(int(i == j)) for i in range(nvars)] for j in range(nvars)]

    k = len(basis)
    ineqs = []
    for c in cons:
        if c.relation == "=":
            continue
        coeffs = tuple(dot(c.coeffs, b) for b in basis)
        ineqs.append((coeffs, c.rhs - dot(c.coeffs, x0), c.relation == ">"))

    stages = []
    current, bad = _prune(ineqs)
    if bad:
        return Feasibility(False)
    for var in range(k - 1, -1, -1):
        stages.append(current)
        pos = [row for row in current if row[0][var] > 0]
        neg = [row for row in current if row[0][var] < 0]
        rest = [row for row in current if row[0][var] == 0]
        for pc, pr, ps in pos:
            for nc, nr, ns in neg:
                a, b = pc[var], -nc[var]
                coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
                rest.append((coeffs, b * pr + a * nr, ps or ns))
        current, bad = _prune(rest)
        if bad:
            return Feasibility(False)

    y = [Fraction(0)] * k
    for var, stage in zip(range(k), reversed(stages)):
        lo, lo_strict, hi, hi_strict = None, False, None, False
        for coeffs, rhs, strict in stage:
            a = coeffs[var]
            if a == 0:
                continue
            bound = (rhs - sum(coeffs[j] * y[j] for j in range(var))) / a
            if a > 0 and (lo is None or bound > lo or (bound == lo and strict)):
                lo, lo_strict = bound, strict
            elif a < 0 and (hi is None or bound < hi or (bound == hi and strict)):
                hi, hi_strict = bound, strict
        y[var] = _pick(lo, lo_strict, hi, hi_strict)
    x = tuple(x0[i] + sum(b[i] * y[j] for j, b in enumerate(basis)) for i in range(nvars))
    assert all(c.holds(x) for c in cons), "witness failed verification"
    return Feasibility(True, x)


def _pick(lo, lo_strict, hi, hi_strict) -> Fraction:
    def ok(v):
        if lo is not None and (v < lo or (lo_strict and v == lo)):
            return False
        if hi is not None and (v > hi or (hi_strict and v == hi)):
            return False
        return True

    if ok(Fraction(0)):
        return Fraction(0)
    cands = []
    if lo is not None:
        f = lo.numerator // lo.denominator
        cands += [Fraction(f), Fraction(f + 1)]
    if hi is not None:
        c = -((-hi.numerator) // hi.denominator)
        cands += [Fraction(c), Fraction(c - 1)]
    good = [v for v in cands if ok(v)]
    if good:
        return min(good, key=lambda v: (abs(v), v))
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    raise AssertionError("unbounded side should always admit an integer")
