"""Command-line interface: JSON in, JSON (or SVG) out.

Inputs accept ``@name`` for bundled data, a path to a JSON file, or inline
JSON. Exit codes: 0 success, 2 domain error (JSON on stderr), 64 bad usage,
65 malformed JSON.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import bundled
from .arrangement import chambers, diagonal_generators, omega_generators, verify_generation_at_degree
from .coxring import MODES, multiplication_check, nef_cone_membership, problem6_search, reproduction
from .fan import Fan, fan_from_rays_2d, is_ample, is_cartier, is_nef, polytope_divisor, support_divisor
from .fan import normal_fan
from .gale import ClassElement, GaleData, gale_transform
from .polytope import LatticePolytope, hull, idp_check, lattice_points, minkowski_sum, problem1_check
from .resolutions import check_en_identity, check_koszul_identity, check_r1_syzygies
from .svg import figure_spec, render

SCHEMA = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_DATA = 65

log = logging.getLogger("toricsum")


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(arg: str):
    if arg.startswith("@"):
        return arg
    if os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    else:
        text = arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"malformed JSON in {arg!r}: {exc}") from None


def load_polytope(arg: str) -> LatticePolytope:
    doc = _load(arg)
    if isinstance(doc, str):
        return bundled.polytope(doc[1:])
    if isinstance(doc, list):
        return hull([tuple(v) for v in doc])
    if isinstance(doc, dict) and "vertices" in doc:
        return LatticePolytope.from_json(doc)
    raise DataError("a polytope is a vertex list or an object with 'vertices'")


def load_fan(arg: str) -> Fan:
    doc = _load(arg)
    if isinstance(doc, str):
        return bundled.fan(doc[1:])
    if isinstance(doc, list):
        return fan_from_rays_2d([tuple(r) for r in doc])
    if isinstance(doc, dict) and "cones" in doc:
        return Fan.from_json(doc)
    if isinstance(doc, dict) and "rays" in doc:
        return fan_from_rays_2d([tuple(r) for r in doc["rays"]])
    raise DataError("a fan is an object with 'rays' and 'cones' (or planar rays only)")


def load_rays(arg: str) -> list[tuple[int, ...]]:
    doc = _load(arg)
    if isinstance(doc, str):
        return list(bundled.fan(doc[1:]).rays)
    if isinstance(doc, dict) and "rays" in doc:
        doc = doc["rays"]
    if not isinstance(doc, list):
        raise DataError("rays are a list of integer vectors")
    return [tuple(int(x) for x in r) for r in doc]


def _int_list(arg: str) -> list[int]:
    doc = _load(arg)
    if isinstance(doc, int):
        doc = [doc]
    if not isinstance(doc, list) or not all(isinstance(x, int) for x in doc):
        raise DataError(f"expected a list of integers, got {arg!r}")
    return doc


def load_class(g: GaleData, arg: str) -> ClassElement:
    v = _int_list(arg)
    k = g.free_rank
    if len(v) not in (k, k + len(g.torsion)):
        raise ValueError(f"class needs {k} free (+{len(g.torsion)} torsion) coordinates")
    return g.element(v[:k], v[k:])


def _frac(x) -> str | int:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- subcommands ---------------------------------------------------------------


def cmd_points(a):
    p = load_polytope(a.polytope)
    pts = lattice_points(p)
    return {"count": len(pts), "points": [list(x) for x in pts]}


def cmd_sum(a):
    s = minkowski_sum(load_polytope(a.left), load_polytope(a.right))
    return {"polytope": s.to_json()}


def cmd_p1(a):
    return problem1_check(load_polytope(a.left), load_polytope(a.right)).to_json()


def cmd_idp(a):
    reports = idp_check(load_polytope(a.polytope), a.nu_max)
    return {
        "allEqual": all(r.equal for _, r in reports),
        "reports": [dict(r.to_json(), nu=nu) for nu, r in reports],
    }


def cmd_normal_fan(a):
    p = load_polytope(a.polytope)
    f = normal_fan(p)
    return {"fan": f.to_json(), "divisor": list(polytope_divisor(f, p))}


def _validated_fan(a) -> Fan:
    f = load_fan(a.fan)
    problems = f.completeness_problems(seed=a.seed)
    if problems:
        raise ValueError("fan is not complete: " + "; ".join(problems))
    return f


def cmd_nef(a):
    f = _validated_fan(a)
    if a.divisor is not None:
        d = tuple(_int_list(a.divisor))
    else:
        d = support_divisor(f, load_polytope(a.polytope))
    res = is_nef(f, d)
    return {
        "divisor": list(d),
        "nef": res.nef,
        "ample": is_ample(f, d),
        "cartier": is_cartier(f, d),
        "certificate": None if res.certificate is None else [[_frac(x) for x in m] for m in res.certificate],
        "failingCone": res.failing_cone,
    }


def cmd_gale(a):
    g = gale_transform(load_rays(a.rays))
    doc = g.to_json()
    if a.divisor is not None:
        doc["class"] = g.class_of(_int_list(a.divisor)).to_list()
    return doc


def cmd_chambers(a):
    chs = chambers(load_rays(a.rays))
    return {"count": len(chs), "chambers": [c.to_json() for c in chs]}


def cmd_diag_gens(a):
    rays = load_rays(a.rays)
    gens = omega_generators(rays) if a.reading == "omega" else diagonal_generators(rays)
    doc = {
        "reading": a.reading,
        "count": len(gens),
        "generators": [dict(gn.to_json(), binomial=gn.render()) for gn in gens],
    }
    if a.verify_total is not None:
        g = gale_transform(rays)
        verdicts = []
        for alpha, beta in _graded_degrees(g, a.verify_total, a.reading == "omega"):
            v = verify_generation_at_degree(rays, gens, alpha, beta, bound=a.verify_total, gale=g)
            verdicts.append(v.to_json())
        doc["verification"] = {"ok": all(v["ok"] for v in verdicts), "degrees": verdicts}
    return doc


def _graded_degrees(g: GaleData, total: int, single: bool):
    """Effective free classes with nonnegative coordinates summing to at most ``total``."""
    from itertools import product

    k = g.free_rank
    classes = [g.element(c) for c in product(range(total + 1), repeat=k) if sum(c) <= total]
    if single:
        return [(c, None) for c in classes]
    return [(x, y) for x in classes for y in classes if sum(x.free) + sum(y.free) <= total]


def cmd_multmap(a):
    f = _validated_fan(a)
    g = gale_transform(f.rays)
    alpha, beta = load_class(g, a.alpha), load_class(g, a.beta)
    rep = multiplication_check(g, f, alpha, beta)
    doc = rep.to_json()
    doc["membership"] = [nef_cone_membership(g, f, alpha), nef_cone_membership(g, f, beta)]
    return doc


def cmd_pn_search(a):
    f = _validated_fan(a)
    g = gale_transform(f.rays)
    if a.box is not None:
        box = [tuple(b) for b in _load(a.box)]
    elif a.fan.startswith("@"):
        box = bundled.SEARCH_BOXES[a.fan[1:]]
    else:
        raise ValueError("--box is required for non-bundled fans")
    failures = problem6_search(g, f, box, a.mode, checkpoint=a.checkpoint, threads=a.threads,
                               cartier=not a.weil)
    doc = {
        "mode": a.mode,
        "box": [list(b) for b in box],
        "cartierOnly": not a.weil,
        "failures": [r.to_json() for r in failures],
    }
    if failures and a.mode != "nef-nef" and not a.weil:
        print("*** SURJECTIVITY FAILURE FOR AN AMPLE CLASS ***", file=sys.stderr)
        doc["reproductions"] = [reproduction(g, f, r) for r in failures]
    return doc


def cmd_resolution(a):
    checks = [check_en_identity(a.r, a.max_degree, a.max_degree), check_koszul_identity(a.r, a.max_degree)]
    if a.r == 1:
        checks.append(check_r1_syzygies(a.max_degree))
    return {"ok": all(c.ok for c in checks), "checks": [c.to_json() for c in checks]}


def cmd_figure(a):
    svg = render(figure_spec(load_polytope(a.left), load_polytope(a.right)))
    if a.output in (None, "-"):
        sys.stdout.write(svg)
    else:
        with open(a.output, "w") as fh:
            fh.write(svg)
    return None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--threads", type=int, default=1, help="worker processes for scans")
    common.add_argument("--checkpoint", default=None, help="resumable checkpoint file for scans")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="toricsum", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("points", cmd_points, "lattice points of a polytope")
    sp.add_argument("--polytope", required=True)
    sp = add("sum", cmd_sum, "Minkowski sum of two polytopes")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("p1-check", cmd_p1, "compare (M cap P) + (M cap P') with M cap (P + P')")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("idp-check", cmd_idp, "integer decomposition property up to a dilation")
    sp.add_argument("--polytope", required=True)
    sp.add_argument("--nu-max", type=int, default=None)
    sp = add("normal-fan", cmd_normal_fan, "normal fan and support divisor of a polytope")
    sp.add_argument("--polytope", required=True)
    sp = add("nef", cmd_nef, "nef/ample/Cartier test of a divisor on a fan")
    sp.add_argument("--fan", required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--divisor")
    grp.add_argument("--polytope")
    sp = add("gale", cmd_gale, "class group and degree classes of a ray configuration")
    sp.add_argument("--rays", required=True)
    sp.add_argument("--divisor")
    sp = add("chambers", cmd_chambers, "chambers of the hyperplane arrangement of the rays")
    sp.add_argument("--rays", required=True)
    sp = add("diag-gens", cmd_diag_gens, "binomial generators from the chamber Hilbert bases")
    sp.add_argument("--rays", required=True)
    sp.add_argument("--reading", choices=("diagonal", "omega"), default="diagonal")
    sp.add_argument("--verify-total", type=int, default=None,
                    help="also verify generation on all degrees of total at most this")
    sp = add("multmap-check", cmd_multmap, "surjectivity of S_alpha (x) S_beta -> S_alpha+beta")
    sp.add_argument("--fan", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)
    sp = add("pn-search", cmd_pn_search, "scan a box of classes for non-surjective multiplication")
    sp.add_argument("--fan", required=True)
    sp.add_argument("--box", default=None, help="JSON list of [lo, hi] per free class coordinate")
    sp.add_argument("--mode", choices=MODES, default="ample-nef")
    sp.add_argument("--weil", action="store_true", help="include classes that are not Cartier")
    sp = add("resolution-check", cmd_resolution, "graded Euler identities on P^r")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--max-degree", type=int, default=6)
    sp = add("figure", cmd_figure, "SVG of two polygons and their Minkowski sum")
    sp.add_argument("--left", default="@P")
    sp.add_argument("--right", default="@Pprime")
    sp.add_argument("--output", "-o", default=None)
    return p


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"toricsum: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        doc = args.func(args)
    except DataError as exc:
        print(_dump({"schema": SCHEMA, "error": "malformed-input", "message": str(exc)}), file=sys.stderr)
        return EXIT_DATA
    except (ValueError, KeyError, ZeroDivisionError, OverflowError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(_dump({"schema": SCHEMA, "error": type(exc).__name__, "message": msg}), file=sys.stderr)
        return EXIT_DOMAIN
    if doc is not None:
        doc["schema"] = SCHEMA
        print(_dump(doc))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
