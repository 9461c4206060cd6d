"""Graded pieces of the Cox ring and surjectivity of multiplication maps.

A monomial ``x^D`` is identified with its exponent vector ``D``. The
monomials of degree ``alpha`` are ``D0 + pi*(m)`` for a fixed lift ``D0`` of
``alpha`` and ``m`` running over the lattice points of the (possibly
rational) polytope ``{m : <m, n_j> >= -D0_j}``.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

from .fan import Divisor, Fan, divisor_polytope, is_ample, is_cartier, is_nef
from .gale import ClassElement, GaleData
from .polytope import SumsetReport, from_inequalities, lattice_points_array, problem1_check

log = logging.getLogger(__name__)

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"

MODES = ("ample-nef", "ample-ample", "nef-nef")


@dataclass(frozen=True)
class MonomialBasis:
    degree: ClassElement
    monomials: tuple[Divisor, ...]

    def __len__(self) -> int:
        return len(self.monomials)


@dataclass(frozen=True)
class MultiplicationReport:
    alpha: ClassElement
    beta: ClassElement
    dims: tuple[int, int, int]
    image_dim: int
    surjective: bool
    missing: tuple[Divisor, ...]

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_list(),
            "beta": self.beta.to_list(),
            "dims": list(self.dims),
            "imageDim": self.image_dim,
            "surjective": self.surjective,
            "missing": [list(d) for d in self.missing],
        }


def _check_rays(g: GaleData, f: Fan | None):
    if f is not None and tuple(f.rays) != tuple(g.rays):
        raise ValueError("fan and Gale data are built on different rays")


@lru_cache(maxsize=8192)
def _monomials(g: GaleData, alpha: ClassElement) -> tuple[Divisor, ...]:
    d0 = g.lift(alpha)
    poly = from_inequalities([(n, -a) for n, a in zip(g.rays, d0)], g.dim)
    pts = lattice_points_array(poly)
    out = []
    for m in pts.tolist():
        out.append(tuple(a + v for a, v in zip(d0, g.pi_star_of(m))))
    out.sort()
    return tuple(out)


def monomial_basis(g: GaleData, f: Fan | None, alpha: ClassElement) -> MonomialBasis:
    """All effective ``D`` with ``[D] = alpha``; empty when there are none."""
    _check_rays(g, f)
    return MonomialBasis(alpha, _monomials(g, alpha))


def multiplication_check(
    g: GaleData, f: Fan | None, alpha: ClassElement, beta: ClassElement
) -> MultiplicationReport:
    """Is ``S_alpha (x) S_beta -> S_{alpha+beta}`` onto? Images of monomials are monomials."""
    _check_rays(g, f)
    sa, sb, sab = _monomials(g, alpha), _monomials(g, beta), _monomials(g, alpha + beta)
    image = {tuple(x + y for x, y in zip(d, e)) for d in sa for e in sb}
    target = set(sab)
    if not image <= target:
        raise AssertionError("product of monomials left the target degree")
    missing = tuple(sorted(target - image))
    return MultiplicationReport(
        alpha, beta, (len(sa), len(sb), len(sab)), len(image), not missing, missing
    )


@lru_cache(maxsize=8192)
def nef_cone_membership(g: GaleData, f: Fan, alpha: ClassElement) -> str:
    """``interior`` (ample), ``boundary`` (nef, not ample) or ``outside``.

    Decided on one lift of ``alpha``; nef and ample tests are invariant under
    adding ``pi*(m)`` because local sections just shift by ``m``. Classes with
    a nonzero torsion component are classified as outside.
    """
    _check_rays(g, f)
    if any(alpha.torsion):
        log.info("torsion class %s classified as outside the nef cone", alpha.to_list())
        return OUTSIDE
    d = g.lift(alpha)
    if not is_nef(f, d):
        return OUTSIDE
    return INTERIOR if is_ample(f, d) else BOUNDARY


def nef_bridge(g: GaleData, f: Fan, alpha: ClassElement, beta: ClassElement) -> tuple[MultiplicationReport, SumsetReport]:
    """Multiplication report next to the lattice-point comparison of the divisor polytopes."""
    pa = divisor_polytope(f, g.lift(alpha))
    pb = divisor_polytope(f, g.lift(beta))
    return multiplication_check(g, f, alpha, beta), problem1_check(pa, pb)


def class_box(g: GaleData, bounds: Sequence[tuple[int, int]]) -> list[ClassElement]:
    """Classes with free coordinates in the box, all torsion residues, lexicographic."""
    if len(bounds) != g.free_rank:
        raise ValueError(f"expected {g.free_rank} coordinate ranges, got {len(bounds)}")
    ranges = [range(lo, hi + 1) for lo, hi in bounds] + [range(d) for d in g.torsion]
    k = g.free_rank
    return [g.element(c[:k], c[k:]) for c in product(*ranges)]


def _mode_ok(mode: str, a: str, b: str) -> bool:
    nef = (INTERIOR, BOUNDARY)
    if mode == "ample-nef":
        return a == INTERIOR and b in nef
    if mode == "ample-ample":
        return a == INTERIOR and b == INTERIOR
    if mode == "nef-nef":
        return a in nef and b in nef
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _cell(args):
    g, f, alpha, beta = args
    return multiplication_check(g, f, alpha, beta)


def search_cells(
    g: GaleData, f: Fan, bounds, mode: str, cartier: bool = True
) -> list[tuple[ClassElement, ClassElement]]:
    """The ``(alpha, beta)`` pairs of the box satisfying the mode, in scan order.

    Both classes must be effective (nonzero graded piece). With ``cartier``
    only classes of Cartier divisors are used, so the interior of the nef cone
    means ample divisor classes; without it every lattice point of the cone
    counts, including Weil classes that are merely Q-Cartier.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    classes = class_box(g, bounds)
    member = {c: nef_cone_membership(g, f, c) for c in classes}
    usable = [
        c for c in classes
        if member[c] != OUTSIDE and _monomials(g, c) and (not cartier or is_cartier(f, g.lift(c)))
    ]
    return [(a, b) for a in usable for b in usable if _mode_ok(mode, member[a], member[b])]


def problem6_search(
    g: GaleData,
    f: Fan,
    bounds: Sequence[tuple[int, int]],
    mode: str,
    checkpoint: str | os.PathLike | None = None,
    threads: int = 1,
    cartier: bool = True,
) -> list[MultiplicationReport]:
    """Scan a box of classes and return every non-surjective multiplication map.

    With ``checkpoint`` the index of the last finished cell and the failures so
    far are written to a JSON file, and an existing file for the same search
    is resumed from. ``threads > 1`` spreads cells over worker processes;
    results are consumed in scan order so output does not depend on it.
    """
    cells = search_cells(g, f, bounds, mode, cartier)
    key = {"mode": mode, "bounds": [list(b) for b in bounds], "rays": [list(r) for r in g.rays],
           "cartier": cartier}
    start, failures = 0, []
    if checkpoint is not None and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            state = json.load(fh)
        if state.get("search") == key:
            start = state["next"]
            failures = [_report_from_json(g, d) for d in state["failures"]]
            log.info("resuming search at cell %d of %d", start, len(cells))

    def save(nxt):
        if checkpoint is None:
            return
        tmp = f"{checkpoint}.tmp"
        with open(tmp, "w") as fh:
            json.dump({"search": key, "next": nxt, "total": len(cells),
                       "failures": [r.to_json() for r in failures]}, fh)
        os.replace(tmp, checkpoint)

    todo = [(g, f, a, b) for a, b in cells[start:]]
    last_save = time.monotonic()
    if threads > 1 and todo:
        pool = ProcessPoolExecutor(max_workers=threads)
        results: Iterable[MultiplicationReport] = pool.map(_cell, todo, chunksize=16)
    else:
        pool = None
        results = map(_cell, todo)
    try:
        for i, rep in enumerate(results, start=start):
            if not rep.surjective:
                failures.append(rep)
                if mode != "nef-nef" and cartier:
                    log.warning("surjectivity fails for ample class %s, %s", rep.alpha.to_list(), rep.beta.to_list())
                save(i + 1)
                last_save = time.monotonic()
            elif time.monotonic() - last_save > 0.5:
                save(i + 1)
                last_save = time.monotonic()
        save(len(cells))
    finally:
        if pool is not None:
            pool.shutdown()
    return failures


def _report_from_json(g: GaleData, doc: dict) -> MultiplicationReport:
    k = g.free_rank

    def cls(v):
        return g.element(v[:k], v[k:])

    return MultiplicationReport(
        cls(doc["alpha"]), cls(doc["beta"]), tuple(doc["dims"]), doc["imageDim"],
        doc["surjective"], tuple(tuple(d) for d in doc["missing"]),
    )


def reproduction(g: GaleData, f: Fan, rep: MultiplicationReport) -> dict:
    """Self-contained JSON to re-run one multiplication check."""
    return {
        "schema": 1,
        "fan": f.to_json(),
        "alphaDivisor": list(g.lift(rep.alpha)),
        "betaDivisor": list(g.lift(rep.beta)),
        "report": rep.to_json(),
    }
