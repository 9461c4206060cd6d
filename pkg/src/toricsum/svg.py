"""Fixed-style SVG drawing of two lattice polygons and their Minkowski sum."""

from __future__ import annotations

from dataclasses import dataclass, field

from .polytope import LatticePolytope, cyclic_vertices, lattice_points, minkowski_sum, problem1_check

UNIT = 40
DOT = 4
CROSS = 6


@dataclass
class FigureSpec:
    polygons: list[tuple[str, LatticePolytope]]
    x_range: tuple[int, int]
    y_range: tuple[int, int]
    bullets: list[tuple[int, int]] = field(default_factory=list)
    crosses: list[tuple[int, int]] = field(default_factory=list)

    def check(self):
        pts = [tuple(v) for _, p in self.polygons for v in p.vertices] + self.bullets + self.crosses
        for x, y in pts:
            if not (self.x_range[0] <= x <= self.x_range[1] and self.y_range[0] <= y <= self.y_range[1]):
                raise ValueError(f"point {(x, y)} lies outside the drawing range")


def figure_spec(p: LatticePolytope, q: LatticePolytope) -> FigureSpec:
    """P, P', P+P' shaded; bullets at realized lattice points, crosses at missing ones."""
    if p.dim != 2 or q.dim != 2:
        raise ValueError("figures are drawn for polygons only")
    s = minkowski_sum(p, q)
    rep = problem1_check(p, q)
    bullets = sorted({tuple(x) for x in lattice_points(p) + lattice_points(q) + lattice_points(s)}
                     - set(rep.missing))
    verts = [v for poly in (p, q, s) for v in poly.vertices] + [(0, 0)]
    xs = [int(v[0]) for v in verts]
    ys = [int(v[1]) for v in verts]
    spec = FigureSpec(
        [("P", p), ("P'", q), ("P+P'", s)],
        (min(xs) - 1, max(xs) + 1),
        (min(ys) - 1, max(ys) + 1),
        bullets,
        [tuple(m) for m in rep.missing],
    )
    spec.check()
    return spec


def render(spec: FigureSpec) -> str:
    (x0, x1), (y0, y1) = spec.x_range, spec.y_range
    w, h = (x1 - x0) * UNIT, (y1 - y0) * UNIT

    def sx(x):
        return f"{(x - x0) * UNIT:g}"

    def sy(y):
        return f"{(y1 - y) * UNIT:g}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        '<g stroke="#bbbbbb" stroke-width="1">',
    ]
    for x in range(x0, x1 + 1):
        out.append(f'<line x1="{sx(x)}" y1="0" x2="{sx(x)}" y2="{h}"/>')
    for y in range(y0, y1 + 1):
        out.append(f'<line x1="0" y1="{sy(y)}" x2="{w}" y2="{sy(y)}"/>')
    out.append("</g>")
    out.append(f'<g stroke="#000000" stroke-width="1.5">'
               f'<line x1="{sx(0)}" y1="0" x2="{sx(0)}" y2="{h}"/>'
               f'<line x1="0" y1="{sy(0)}" x2="{w}" y2="{sy(0)}"/></g>')
    for label, poly in spec.polygons:
        pts = " ".join(f"{sx(float(x))},{sy(float(y))}" for x, y in cyclic_vertices(poly))
        out.append(f'<polygon points="{pts}" fill="#888888" fill-opacity="0.3" '
                   f'stroke="#000000" stroke-width="1.5"><title>{label}</title></polygon>')
        cx = sum(float(v[0]) for v in poly.vertices) / len(poly.vertices)
        cy = sum(float(v[1]) for v in poly.vertices) / len(poly.vertices)
        out.append(f'<text x="{sx(cx)}" y="{sy(cy)}" font-family="serif" font-style="italic" '
                   f'font-size="14" text-anchor="middle">{label}</text>')
    out.append(f'<text x="{sx(-0.4)}" y="{sy(-0.4)}" font-family="serif" font-weight="bold" '
               f'font-size="14">O</text>')
    for x, y in spec.bullets:
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="{DOT}" fill="#000000"/>')
    for x, y in spec.crosses:
        a, b = float(sx(x)), float(sy(y))
        out.append(f'<path d="M{a - CROSS:g},{b - CROSS:g} L{a + CROSS:g},{b + CROSS:g} '
                   f'M{a - CROSS:g},{b + CROSS:g} L{a + CROSS:g},{b - CROSS:g}" '
                   f'stroke="#cc0000" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
