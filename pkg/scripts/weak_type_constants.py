#!/usr/bin/env python3
"""Empirical weak-type constants for the maximal and V operators.

For each requested operator, runs a suite of random step functions per bit
depth and prints the per-depth maxima of the normalized superlevel sweeps
(or integral/pointwise ratios for M1/M2 and Sch-ratio).
"""
import argparse

import numpy as np

from wss.experiments import run_weak_type_suite, write_reports_csv


def family(operator: str, bits: int, count: int) -> list[str]:
    dim = 1 if operator in ("V", "Sch-ratio") else 2
    level = bits if dim == 1 else min(bits, 4)
    return [f"random-step:level={level},dim={dim}@B={bits}"] * count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--operators", nargs="+", default=["M", "M1", "V", "Sch-ratio"])
    ap.add_argument("--bits", type=int, nargs="+", default=[5, 6, 7])
    ap.add_argument("--count", type=int, default=25, help="functions per suite")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    lam = np.geomspace(1e-3, 1e2, 26).tolist()
    reports = []
    for operator in args.operators:
        maxima = []
        for bits in args.bits:
            needs_lambda = operator in ("M", "V", "V1", "V2")
            rep = run_weak_type_suite(
                operator,
                family(operator, bits, args.count),
                lam if needs_lambda else None,
                seed=args.seed,
            )
            reports.append(rep)
            maxima.append(rep.value("suite_max"))
        cells = " | ".join(f"B={b}: {m:.4f}" for b, m in zip(args.bits, maxima))
        drift = max(maxima) / min(maxima) if min(maxima) > 0 else float("inf")
        print(f"{operator:>9}: {cells} | drift x{drift:.3f}")

    if args.out:
        write_reports_csv(reports, args.out)
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
