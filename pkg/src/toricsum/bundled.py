"""Named inputs that ship with the package: the figure's triangles, small
fans, and the class boxes used for desk-scale surjectivity scans.

Command-line inputs of the form ``@name`` resolve here.
"""

from __future__ import annotations

from functools import lru_cache

from .fan import Fan, fan_from_rays_2d, normal_fan, projective_space_fan
from .polytope import LatticePolytope, hull, minkowski_sum

P_VERTICES = ((1, -1), (2, -1), (1, 0))
PPRIME_VERTICES = ((1, 1), (3, 4), (2, 3))
MISSING_POINT = (3, 1)


@lru_cache(maxsize=None)
def polytope(name: str) -> LatticePolytope:
    table = {
        "P": lambda: hull(P_VERTICES),
        "Pprime": lambda: hull(PPRIME_VERTICES),
        "PplusPprime": lambda: minkowski_sum(hull(P_VERTICES), hull(PPRIME_VERTICES)),
        "triangle": lambda: hull([(0, 0), (1, 0), (0, 1)]),
        "square": lambda: hull([(0, 0), (1, 0), (0, 1), (1, 1)]),
    }
    if name not in table:
        raise KeyError(f"no bundled polytope named {name!r}; known: {sorted(table)}")
    return table[name]()


@lru_cache(maxsize=None)
def fan(name: str) -> Fan:
    table = {
        "P1": lambda: projective_space_fan(1),
        "P2": lambda: projective_space_fan(2),
        "P3": lambda: projective_space_fan(3),
        "square": lambda: fan_from_rays_2d([(1, 0), (-1, 0), (0, 1), (0, -1)]),
        "F1": lambda: fan_from_rays_2d([(1, 0), (0, 1), (-1, 1), (0, -1)]),
        "hexagon": lambda: normal_fan(polytope("PplusPprime")),
    }
    if name not in table:
        raise KeyError(f"no bundled fan named {name!r}; known: {sorted(table)}")
    return table[name]()


FAN_NAMES = ("P1", "P2", "P3", "square", "F1", "hexagon")

# Free class coordinates scanned by the desk-scale surjectivity searches.
SEARCH_BOXES = {
    "P1": [(0, 6)],
    "P2": [(0, 6)],
    "P3": [(0, 4)],
    "square": [(0, 3), (0, 3)],
    "F1": [(0, 3), (0, 3)],
    "hexagon": [(0, 10), (0, 10), (-1, 3), (-1, 3)],
}
