"""Draw the tight span of a three-point diversity and list its vertices."""
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from _config import parse_config  # noqa: E402

from dvy.core import fmt_rat, to_rat  # noqa: E402
from dvy.tightspan import complex_svg, three_point_complex  # noqa: E402


@dataclass
class Config:
    """Three-point tight span figure."""
    d12: str = "2"
    d13: str = "3"
    d23: str = "4"
    d123: str = "24/5"
    out: str = "three_point.svg"


def main(cfg: Config):
    c = three_point_complex(*(to_rat(x) for x in (cfg.d12, cfg.d13, cfg.d23, cfg.d123)))
    print("beta =", fmt_rat(c.beta))
    for name, pts in (("v", c.v), ("u", c.u)):
        for i, p in enumerate(pts):
            print(f"{name}{i} = ({', '.join(fmt_rat(x) for x in p)})")
    Path(cfg.out).write_text(complex_svg(c), encoding="utf-8")
    print("wrote", cfg.out)
    return c


if __name__ == "__main__":
    main(parse_config(Config))
