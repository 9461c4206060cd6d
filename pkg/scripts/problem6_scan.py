"""Scan the bundled fans for non-surjective multiplication maps between
graded pieces, in all three membership modes."""

import argparse
import json
import logging
from dataclasses import asdict, dataclass, field

from toricsum import bundled
from toricsum.coxring import MODES, problem6_search, reproduction
from toricsum.gale import gale_transform


@dataclass
class SearchConfig:
    fans: list[str] = field(default_factory=lambda: list(bundled.FAN_NAMES))
    modes: list[str] = field(default_factory=lambda: list(MODES))
    cartier: bool = True
    threads: int = 1
    checkpoint_dir: str | None = None


def run(cfg: SearchConfig) -> dict:
    out = {"config": asdict(cfg), "results": []}
    for name in cfg.fans:
        f = bundled.fan(name)
        g = gale_transform(f.rays)
        for mode in cfg.modes:
            ck = f"{cfg.checkpoint_dir}/{name}-{mode}.json" if cfg.checkpoint_dir else None
            failures = problem6_search(g, f, bundled.SEARCH_BOXES[name], mode,
                                       checkpoint=ck, threads=cfg.threads, cartier=cfg.cartier)
            entry = {"fan": name, "mode": mode, "failures": len(failures)}
            if failures and mode != "nef-nef":
                entry["reproductions"] = [reproduction(g, f, r) for r in failures[:5]]
            elif failures:
                entry["examples"] = [[r.alpha.to_list(), r.beta.to_list()] for r in failures[:5]]
            out["results"].append(entry)
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fans", nargs="*", default=list(bundled.FAN_NAMES))
    ap.add_argument("--modes", nargs="*", default=list(MODES), choices=MODES)
    ap.add_argument("--weil", action="store_true", help="include non-Cartier classes")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--checkpoint-dir", default=None)
    a = ap.parse_args()
    logging.basicConfig(level=logging.WARNING)
    cfg = SearchConfig(a.fans, a.modes, not a.weil, a.threads, a.checkpoint_dir)
    print(json.dumps(run(cfg), indent=2, sort_keys=True))
