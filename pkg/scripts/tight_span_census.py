"""Is the tight-span diversity determined by its pairs?

For diameter diversities it always is. For other families we count how
often delta_T of a sampled family exceeds the largest pairwise value.
"""
import random
import sys
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from _config import parse_config  # noqa: E402

from dvy.generators import random_diversity  # noqa: E402
from dvy.tightspan import delta_T, kuratowski_all, sample_tight  # noqa: E402


@dataclass
class Config:
    """Census of non-metric behaviour in tight spans."""
    n: int = 4
    instances: int = 20
    samples: int = 6
    families: int = 10
    seed: int = 0


def main(cfg: Config):
    rng = random.Random(cfg.seed)
    table = {}
    for kind in ("diameter", "l1", "tree", "steiner", "truncated"):
        c = Counter()
        for i in range(cfg.instances):
            d = random_diversity(rng, cfg.n, kind)
            pool = []
            for f in sample_tight(d, rng.randrange(10**9), cfg.samples) + kuratowski_all(d):
                if f not in pool:
                    pool.append(f)
            for _ in range(cfg.families):
                fam = rng.sample(pool, min(len(pool), rng.randint(3, 4)))
                full = delta_T(d, fam, check=False)
                pair = max(delta_T(d, [f, g], check=False) for f, g in combinations(fam, 2))
                c["above pairs" if full > pair else "equal"] += 1
        table[kind] = c
    print(f"n={cfg.n}: families with delta_T above the pairwise maximum")
    for kind, c in table.items():
        tot = sum(c.values())
        print(f"  {kind:<10} {c['above pairs']:>4} / {tot}")
    return table


if __name__ == "__main__":
    main(parse_config(Config))
