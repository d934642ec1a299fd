#!/usr/bin/env python3
"""Pilot run for the regularity-trend acceptance threshold.

Runs `removal-lab regcurve` on G(n, p) for many graph seeds, measures how often
the s=8 defect is at most the s=0 defect, and writes the fixture consumed by
the acceptance binary. The acceptance run uses the seeds after the pilot
window, so the threshold is checked on held-out graphs.
"""

import argparse
import json
import subprocess
from fractions import Fraction
from pathlib import Path


def defect(entry):
    return Fraction(int(entry["num"]), int(entry["den"]))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--binary", default="build/removal-lab")
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--p", type=float, default=0.5)
    ap.add_argument("--poll-size", type=int, default=8)
    ap.add_argument("--pilot-trials", type=int, default=200)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed-base", type=int, default=1000)
    ap.add_argument("--floor", type=float, default=0.8, help="never commit a threshold below this")
    ap.add_argument("--out", default="tests/fixtures/regcurve_threshold.json")
    args = ap.parse_args()

    hits = 0
    fractions = []
    for t in range(args.pilot_trials):
        seed = args.seed_base + t
        cmd = [args.binary, "regcurve", "--random", f"{args.n},{args.p}", "--polls", f"0,{args.poll_size}",
               "--trials", "1", "--seed", str(seed)]
        rep = json.loads(subprocess.run(cmd, check=True, capture_output=True, text=True).stdout)
        d0 = defect(rep["curve"][0]["trials"][0])
        ds = defect(rep["curve"][1]["trials"][0])
        ok = ds <= d0
        hits += ok
        fractions.append(float(ds / d0) if d0 else 0.0)

    observed = hits / args.pilot_trials
    fixture = {
        "n": args.n,
        "p": args.p,
        "poll_size": args.poll_size,
        "trials": args.trials,
        "seed_base": args.seed_base,
        "threshold": args.floor,
        "pilot": {
            "trials": args.pilot_trials,
            "observed_fraction": observed,
            "median_ratio": sorted(fractions)[len(fractions) // 2],
        },
        "generator": "tools/pilot_regcurve.py",
    }
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps(fixture, indent=2) + "\n")
    print(json.dumps(fixture, indent=2))
    if observed < args.floor:
        print(f"warning: pilot fraction {observed:.3f} is below the committed threshold {args.floor}")


if __name__ == "__main__":
    main()
