"""Enumerate invariant profiles and compare the bounds under constraint ablations.

    python3 scripts/run_enumeration.py [--json out.json]
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from realenriques.enumeration import EnumerationConfig, bound_report, enumerate_profiles


@dataclass
class Row:
    label: str
    profiles: int
    max_s: int
    max_s_nor: int
    bound_violations: int
    b_zero_mismatches: int
    seconds: float


ABLATIONS = {
    "default": EnumerationConfig(),
    "no positivity rule": EnumerationConfig(positivity_rule=False),
    "no pairing-rank bound": EnumerationConfig(pairing_rank_bound=False),
    "neither": EnumerationConfig(positivity_rule=False, pairing_rank_bound=False),
    "literal delta parity": EnumerationConfig(literal_delta_parity=True),
}


def b_zero_mismatches(profiles):
    return sum(
        1 for p in profiles
        if p.s_sum and (p.b == 0) != (p.s == 1 and p.s_nor == 1 and p.r_theta == p.a_theta)
    )


def run(label, config):
    start = time.perf_counter()
    profiles = enumerate_profiles(config)
    rep = bound_report(profiles)
    return Row(label, rep.count, rep.max_s, rep.max_s_nor,
               len(rep.intermediate_violations) + len(rep.s_nor_violations),
               b_zero_mismatches(profiles), time.perf_counter() - start), rep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", help="write the table as JSON")
    args = ap.parse_args()
    rows = []
    for label, config in ABLATIONS.items():
        row, rep = run(label, config)
        rows.append(row)
        if label == "default":
            print("max s witnesses (theta):", sorted({p.theta for p in rep.s_witnesses}))
            print("max s_nor witnesses (theta):", sorted({p.theta for p in rep.s_nor_witnesses}))
    print(f"{'setting':24s} {'profiles':>8s} {'max s':>6s} {'max s_nor':>9s} {'bound viol.':>11s} "
          f"{'b=0 mism.':>9s} {'sec':>6s}")
    for r in rows:
        print(f"{r.label:24s} {r.profiles:8d} {r.max_s:6d} {r.max_s_nor:9d} {r.bound_violations:11d} "
              f"{r.b_zero_mismatches:9d} {r.seconds:6.2f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([asdict(r) for r in rows], fh, indent=2)


if __name__ == "__main__":
    main()
