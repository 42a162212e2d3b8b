"""Roundtrip form -> even Clifford algebra -> form over random twists, with timings."""

import argparse
import random
import time
from dataclasses import dataclass

from evencliff.exactalg import GF, QQ
from evencliff.quadform import SplitTwist, random_form
from evencliff.reconstruct import roundtrip_check


@dataclass
class Config:
    per_dim: int = 50
    max_a: int = 2
    seed: int = 0


def main(cfg: Config):
    rng = random.Random(cfg.seed)
    failures = 0
    for n in (0, 1, 2):
        t0 = time.perf_counter()
        for _ in range(cfg.per_dim):
            a = tuple(rng.randint(0, cfg.max_a) for _ in range(3))
            tw = SplitTwist(n, a, rng.randint(-1, 2 * max(a)))
            rep = roundtrip_check(random_form(tw, rng.choice([QQ, GF()]), rng))
            failures += not rep.passed
        print(f"P^{n}: {cfg.per_dim} forms in {time.perf_counter() - t0:.2f} s")
    print(f"failures: {failures}")
    return failures == 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-dim", type=int, default=Config.per_dim)
    ap.add_argument("--max-a", type=int, default=Config.max_a)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    raise SystemExit(0 if main(Config(a.per_dim, a.max_a, a.seed)) else 1)
