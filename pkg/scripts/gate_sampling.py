"""Sample exact orthogonal points in the covered subspace sums and tabulate classification tags.

    python3 scripts/gate_sampling.py --samples 2000 --seed 0
"""

import argparse
import json
from collections import Counter
from dataclasses import dataclass

from opm4.classify import classify_orthogonal, sample_covered, theorem_gate


@dataclass
class Config:
    samples: int = 2000
    seed: int = 0
    show: int = 3


def run(cfg: Config) -> dict:
    table: dict[str, Counter] = {}
    violations = []
    for m, mem in sample_covered(cfg.samples, cfg.seed):
        tag = classify_orthogonal(m).tag
        key = "".join(map(str, sorted(mem)))
        table.setdefault(key, Counter())[tag] += 1
        if tag not in theorem_gate(mem).permitted:
            violations.append({"membership": key, "tag": tag, "matrix": [[str(v) for v in r] for r in m.rows]})
    return {
        "samples": cfg.samples,
        "seed": cfg.seed,
        "tags_by_membership": {k: dict(sorted(v.items())) for k, v in sorted(table.items())},
        "violations": len(violations),
        "examples": violations[: cfg.show],
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--show", type=int, default=Config.show, help="violating matrices to print")
    args = p.parse_args(argv)
    print(json.dumps(run(Config(args.samples, args.seed, args.show)), indent=2))


if __name__ == "__main__":
    main()
