"""Write CSV sweeps of the three trigonometric Grover deformations.

    python3 scripts/trig_sweep.py --points 401 --outdir sweeps/
"""

import argparse
import math
import os
from dataclasses import dataclass

from opm4.cli import main as cli_main


@dataclass
class Config:
    points: int = 401
    outdir: str = "sweeps"


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--points", type=int, default=Config.points)
    p.add_argument("--outdir", default=Config.outdir)
    args = p.parse_args(argv)
    cfg = Config(args.points, args.outdir)
    os.makedirs(cfg.outdir, exist_ok=True)
    step = repr(2 * math.pi / (cfg.points - 1))
    for name in ("X1theta", "Y1theta", "Z1theta"):
        out = os.path.join(cfg.outdir, f"{name}.csv")
        code = cli_main(["sweep", name, "--theta-start=-pi", "--theta-stop", "pi", "--step", step, "--out", out])
        print(name, "->", out, "ok" if code == 0 else f"exit {code}")


if __name__ == "__main__":
    main()
