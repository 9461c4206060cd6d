"""Scan random lattice polygons (and optionally 3-D polytopes) for the
integer decomposition property up to a given dilation."""

import argparse
import json
import random
from dataclasses import asdict, dataclass

from toricsum.exactlin import rank
from toricsum.polytope import hull, idp_check


@dataclass
class ScanConfig:
    count: int = 200
    dim: int = 2
    bound: int = 10
    max_points: int = 8
    nu_max: int = 5
    seed: int = 0


def random_polytope(rng, cfg):
    while True:
        pts = [tuple(rng.randint(-cfg.bound, cfg.bound) for _ in range(cfg.dim))
               for _ in range(rng.randint(cfg.dim + 1, cfg.max_points))]
        if rank([[a - b for a, b in zip(p, pts[0])] for p in pts]) == cfg.dim:
            return hull(pts)


def scan(cfg: ScanConfig) -> dict:
    rng = random.Random(cfg.seed)
    failures = []
    for i in range(cfg.count):
        p = random_polytope(rng, cfg)
        bad = [nu for nu, rep in idp_check(p, cfg.nu_max) if not rep.equal]
        if bad:
            failures.append({"index": i, "polytope": p.to_json(), "nu": bad})
    return {"config": asdict(cfg), "failures": failures}


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(ScanConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    out = scan(ScanConfig(**vars(ap.parse_args())))
    print(json.dumps(out, indent=2, sort_keys=True))
