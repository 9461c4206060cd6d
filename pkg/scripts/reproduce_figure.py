"""Redraw the two-triangle counterexample and print its sumset report."""

import argparse
import json
from dataclasses import dataclass

from toricsum import bundled
from toricsum.coxring import multiplication_check
from toricsum.fan import polytope_divisor
from toricsum.gale import gale_transform
from toricsum.polytope import problem1_check
from toricsum.svg import figure_spec, render


@dataclass
class FigureConfig:
    output: str = "figure.svg"
    left: str = "P"
    right: str = "Pprime"


def main(cfg: FigureConfig) -> dict:
    p, q = bundled.polytope(cfg.left), bundled.polytope(cfg.right)
    with open(cfg.output, "w") as fh:
        fh.write(render(figure_spec(p, q)))
    f = bundled.fan("hexagon")
    g = gale_transform(f.rays)
    mult = multiplication_check(g, f, g.class_of(polytope_divisor(f, p)), g.class_of(polytope_divisor(f, q)))
    return {"sumset": problem1_check(p, q).to_json(), "multiplication": mult.to_json(), "svg": cfg.output}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--output", default=FigureConfig.output)
    args = ap.parse_args()
    print(json.dumps(main(FigureConfig(output=args.output)), indent=2, sort_keys=True))
