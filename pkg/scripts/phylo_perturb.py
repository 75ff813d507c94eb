"""How fragile is phylogeneticity? Raise one higher-order value of a tree diversity
within the axioms and classify what reconstruction reports."""
import random
import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from _config import parse_config  # noqa: E402

from dvy.core import check_axioms  # noqa: E402
from dvy.generators import random_tree  # noqa: E402
from dvy.phylo import reconstruct_tree, tree_diversity  # noqa: E402


@dataclass
class Config:
    """Single-value perturbations of tree diversities."""
    leaves: int = 5
    trials: int = 100
    step: str = "1/4"
    seed: int = 0


def main(cfg: Config):
    rng = random.Random(cfg.seed)
    step = Fraction(cfg.step)
    outcome = Counter()
    for _ in range(cfg.trials):
        d = tree_diversity(random_tree(rng, cfg.leaves, internal_labels=False))
        S = rng.choice([m for m in range(1 << d.n) if m.bit_count() >= 2])
        bumped = d.with_value(S, d.values[S] + step)
        if not check_axioms(bumped).passed:
            outcome["not a diversity"] += 1
            continue
        rec = reconstruct_tree(bumped)
        outcome["still phylogenetic" if rec.ok else rec.reason] += 1
    for k, v in sorted(outcome.items()):
        print(f"{k:<22} {v}")
    return outcome


if __name__ == "__main__":
    main(parse_config(Config))
