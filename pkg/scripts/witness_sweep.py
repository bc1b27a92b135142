#!/usr/bin/env python3
"""Sweep non-perfectness witnesses over primes and adjunction depths.

For each (prime, depth) pair the script adjoins a depth-d p-root to the
rootless distinguished element of the chosen tower level and reports the
abelian quotient the adjunction stage surjects onto.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from loctower.adjunction import witness_nonperfect


@dataclass
class SweepConfig:
    level: int = 2
    primes: list[int] = field(default_factory=lambda: [2, 3, 5])
    max_depth: int = 3
    as_json: bool = False


def run_sweep(config: SweepConfig) -> list[dict]:
    rows = []
    for p in config.primes:
        for d in range(1, config.max_depth + 1):
            report = witness_nonperfect(config.level, p, d)
            rows.append(report.to_dict())
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--level", type=int, default=2, help="tower level (default 2)")
    parser.add_argument(
        "--primes", type=int, nargs="+", default=[2, 3, 5], metavar="P"
    )
    parser.add_argument("--max-depth", type=int, default=3, metavar="D")
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    config = SweepConfig(
        level=args.level,
        primes=args.primes,
        max_depth=args.max_depth,
        as_json=args.json,
    )
    rows = run_sweep(config)
    if config.as_json:
        print(json.dumps(rows, indent=2))
        return
    header = f"{'prime':>5} {'depth':>5} {'quotient':>10} {'t_image':>8} {'rootless':>8}"
    print(f"level {config.level} (base rank {rows[0]['base_rank']})")
    print(header)
    for row in rows:
        print(
            f"{row['prime']:>5} {row['depth']:>5} {row['quotient']:>10} "
            f"{row['t_image']:>8} {str(row['rootless']).lower():>8}"
        )


if __name__ == "__main__":
    main()
