"""Symbolically solve orthogonality on sums of basis blocks and report non-permutative branches.

    python3 scripts/solve_subspace_sums.py --blocks 2,3,4
    python3 scripts/solve_subspace_sums.py --all-triples
"""

import argparse
import itertools
import json
from dataclasses import dataclass

import sympy

from opm4.matrix import to_matrix
from opm4.span import BLOCK_CYCLES
from opm4.perm import cyc


@dataclass
class Config:
    blocks: tuple[int, ...]
    probe: tuple[str, ...] = ("1/5", "-2/7", "1/2", "3")


def solve(cfg: Config) -> dict:
    cycles = [c for b in cfg.blocks for c in BLOCK_CYCLES[b]]
    syms = sympy.symbols(f"a0:{len(cycles)}", real=True)
    m = sum((s * sympy.Matrix(to_matrix(cyc(c)).rows) for s, c in zip(syms, cycles)), sympy.zeros(4))
    eqs = [e for e in set(sympy.expand(x) for x in (m.T * m - sympy.eye(4))) if e != 0]
    branches = sympy.solve(eqs, syms, dict=True)
    out = []
    for sol in branches:
        vals = [sympy.sympify(sol.get(s, s)) for s in syms]
        free = sorted(set().union(*(v.free_symbols for v in vals)), key=str)
        point = None
        for t in cfg.probe:
            cand = [sympy.nsimplify(v.subs({f: sympy.Rational(t) for f in free})) for v in vals]
            if all(x.is_real and x.is_finite for x in cand):
                point = cand
                break
        if point is None:
            continue
        a = m.subs(dict(zip(syms, point)))
        rows = [sorted(a.row(i), key=float) for i in range(4)]
        permutative = all(r == rows[0] for r in rows)
        out.append({
            "solution": {c: str(v) for c, v in zip(cycles, vals)},
            "free": [str(f) for f in free],
            "permutative": permutative,
            "example": None if permutative else [[str(x) for x in a.row(i)] for i in range(4)],
        })
    return {"blocks": list(cfg.blocks), "branches": len(branches),
            "non_permutative": sum(not b["permutative"] for b in out), "details": out}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--blocks", default="2,3,4", help="comma separated block indices 1..5")
    p.add_argument("--all-triples", action="store_true", help="every 3-subset of blocks 2..5")
    p.add_argument("--json", action="store_true", help="print full JSON")
    args = p.parse_args(argv)
    sets = list(itertools.combinations((2, 3, 4, 5), 3)) if args.all_triples else [
        tuple(int(b) for b in args.blocks.split(","))]
    for blocks in sets:
        res = solve(Config(blocks))
        if args.json:
            print(json.dumps(res, indent=2))
        else:
            print(f"blocks {res['blocks']}: {res['branches']} branches, {res['non_permutative']} non-permutative")
            for d in res["details"]:
                if not d["permutative"]:
                    print("  e.g.", d["example"])
                    break


if __name__ == "__main__":
    main()
