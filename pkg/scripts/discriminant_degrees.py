"""Tabulate discriminant degrees, squarefreeness and line containment for the builders."""

import argparse
import json
from dataclasses import asdict, dataclass

from evencliff.conicgeom import TAG_DISC_DEGREE, InstanceSpec, InstanceTag, make_instance
from evencliff.exactalg import GF, QQ, squarefree_check


@dataclass
class Config:
    seeds: int = 20
    field: str = "Q"
    squarefree: bool = True


def main(cfg: Config):
    field = QQ if cfg.field == "Q" else GF(int(cfg.field.split(":")[1]))
    rows = []
    for tag in TAG_DISC_DEGREE:
        degrees, reduced, contained = set(), 0, 0
        for seed in range(cfg.seeds):
            inst = make_instance(InstanceSpec(tag, seed, field))
            degrees.add(inst.disc_degree)
            if cfg.squarefree:
                reduced += squarefree_check(inst.disc)
            contained += bool(inst.notes.get("line_in_discriminant"))
        rows.append(
            {
                "tag": tag.value,
                "expected": TAG_DISC_DEGREE[tag],
                "observed": sorted(degrees),
                "squarefree": f"{reduced}/{cfg.seeds}" if cfg.squarefree else None,
                "line_in_disc": f"{contained}/{cfg.seeds}" if tag is InstanceTag.Type5n else None,
            }
        )
    print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
    return all(r["observed"] == [r["expected"]] for r in rows)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=Config.seeds)
    ap.add_argument("--field", default=Config.field)
    ap.add_argument("--no-squarefree", action="store_true")
    a = ap.parse_args()
    raise SystemExit(0 if main(Config(a.seeds, a.field, not a.no_squarefree)) else 1)
