"""Compare the associative normalization with the literal diagonal table.

Lists every failing basis triple of the literal table (squares -2 a_i a_j) and
confirms the associative table on random twisted families.
"""

import argparse
import random
from dataclasses import dataclass

from evencliff.clifford import cliff0, literal_example_table, verify_associativity
from evencliff.exactalg import QQ
from evencliff.quadform import SplitTwist, random_form


@dataclass
class Config:
    a: tuple = (1, 1, 1)
    families: int = 25
    seed: int = 0


def main(cfg: Config):
    lit = verify_associativity(literal_example_table(cfg.a, QQ))
    print(f"literal table, a = {cfg.a}: {len(lit.findings)} failing triples")
    for f in lit.findings:
        print(f"  ({', '.join(f['triple'])}): left {f['left']}, right {f['right']}")
    rng = random.Random(cfg.seed)
    ok = 0
    for k in range(cfg.families):
        a = tuple(rng.randint(0, 2) for _ in range(3))
        tw = SplitTwist(1 + k % 2, a, rng.randint(-1, 2 * max(a)))
        ok += verify_associativity(cliff0(random_form(tw, QQ, rng))).passed
    print(f"associative normalization: {ok}/{cfg.families} random families pass")
    return ok == cfg.families and not lit.passed


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=int, nargs=3, default=list(Config.a))
    ap.add_argument("--families", type=int, default=Config.families)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    raise SystemExit(0 if main(Config(tuple(args.a), args.families, args.seed)) else 1)
