"""How much do higher truncation levels tighten the Steiner lower bound?

For random weighted graphs, compute the bound ladder bound_2 <= ... <= bound_|X|
and report the relative gap closed at each level.
"""
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from _config import parse_config  # noqa: E402

from dvy.generators import random_graph  # noqa: E402
from dvy.steiner import steiner_lower_bounds  # noqa: E402


@dataclass
class Config:
    """Bound-ladder sweep over random graphs."""
    instances: int = 30
    nodes: int = 10
    terminals: int = 5
    density: float = 0.3
    seed: int = 0
    out: str = ""  # optional JSON-lines file


def main(cfg: Config):
    rng = random.Random(cfg.seed)
    rows = []
    for i in range(cfg.instances):
        m = random_graph(rng, cfg.nodes, cfg.terminals, cfg.density)
        lad = steiner_lower_bounds(m)
        rows.append({"instance": i, "exact": lad.exact, "bounds": {k: lad.bounds[k] for k in sorted(lad.bounds)}})
    ks = sorted(rows[0]["bounds"])
    print(f"{cfg.instances} graphs, {cfg.nodes} nodes, {cfg.terminals} terminals")
    print("k   mean bound/exact   instances with bound_k < exact")
    for k in ks:
        ratios = [r["bounds"][k] / r["exact"] for r in rows]
        loose = sum(r["bounds"][k] < r["exact"] for r in rows)
        print(f"{k:<3} {float(sum(ratios) / len(ratios)):<18.4f} {loose}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            for r in rows:
                fh.write(json.dumps({"instance": r["instance"], "exact": str(r["exact"]),
                                     "bounds": {str(k): str(v) for k, v in r["bounds"].items()}}) + "\n")
    return rows


if __name__ == "__main__":
    main(parse_config(Config))
