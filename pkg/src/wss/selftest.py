"""Built-in oracle battery behind `wss selftest`.

Each check compares a fast path against its independent brute-force oracle
on small deterministic inputs and prints one PASS/FAIL line.
"""
from __future__ import annotations

import numpy as np

from . import oracles
from .dyadic import walsh_matrix
from .generators import random_grid_1d, random_grid_2d
from .maximal import dyadic_maximal, schipp_v
from .means import bmo_sequence_norm
from .sums import partial_sum_1d, quadratic_sums
from .transform import (
    inverse_wht_1d,
    inverse_wht_2d,
    naive_wht_1d,
    naive_wht_2d,
    wht_1d,
    wht_2d,
)


def _check_transform_1d() -> tuple[bool, str]:
    f = random_grid_1d(8, seed=101)
    gap = np.abs(wht_1d(f).coeffs - naive_wht_1d(f).coeffs).max()
    loop = np.abs(inverse_wht_1d(wht_1d(f)).samples - f.samples).max()
    return gap <= 1e-10 and loop <= 1e-12, f"fast-naive gap {gap:.3g}, round trip {loop:.3g}"


def _check_transform_2d() -> tuple[bool, str]:
    f = random_grid_2d(4, seed=202)
    gap = np.abs(wht_2d(f).coeffs - naive_wht_2d(f).coeffs).max()
    loop = np.abs(inverse_wht_2d(wht_2d(f)).samples - f.samples).max()
    return gap <= 1e-10 and loop <= 1e-12, f"fast-naive gap {gap:.3g}, round trip {loop:.3g}"


def _check_orthonormality() -> tuple[bool, str]:
    w = walsh_matrix(6).astype(np.int64)
    gram = w @ w.T
    ok = np.array_equal(gram, 64 * np.eye(64, dtype=np.int64))
    return ok, "exhaustive Gram matrix at 6 bits"


def _check_martingale() -> tuple[bool, str]:
    f = random_grid_1d(7, seed=303)
    worst = 0.0
    for level in range(8):
        s = partial_sum_1d(f, 1 << level).samples
        worst = max(worst, float(np.abs(s - oracles.cell_averages_1d(f, level)).max()))
    return worst <= 1e-12, f"cell-average gap {worst:.3g}"


def _check_quadratic_sums() -> tuple[bool, str]:
    f = random_grid_2d(4, seed=404)
    fast = quadratic_sums(f, mode="full")
    brute = oracles.diagonal_sums_brute(f)
    gap = float(np.abs(fast.values - brute).max())
    return gap <= 1e-10, f"incremental vs per-n synthesis gap {gap:.3g}"


def _check_bmo() -> tuple[bool, str]:
    rng = np.random.PCG64(505)
    raw = rng.random_raw(64)
    xi = ((raw >> np.uint64(52)).astype(np.int64) - 2048) / 64.0  # dyadic rationals
    fast = bmo_sequence_norm(xi)
    brute = oracles.bmo_sequence_brute(xi)
    return fast == brute, f"fast {fast!r} vs brute {brute!r}"


def _check_schipp_v() -> tuple[bool, str]:
    f = random_grid_1d(5, seed=606)
    gap = float(np.abs(schipp_v(f, 3).values - oracles.schipp_v_brute(f, 3)).max())
    return gap <= 1e-12, f"shell-sum vs direct t-sum gap {gap:.3g}"


def _check_dyadic_maximal() -> tuple[bool, str]:
    f = random_grid_2d(3, seed=707)
    gap = float(np.abs(dyadic_maximal(f).values - oracles.dyadic_maximal_brute(f)).max())
    return gap <= 1e-12, f"pyramid vs block-scan gap {gap:.3g}"


CHECKS = [
    ("transform-1d", _check_transform_1d),
    ("transform-2d", _check_transform_2d),
    ("orthonormality", _check_orthonormality),
    ("martingale", _check_martingale),
    ("quadratic-sums", _check_quadratic_sums),
    ("bmo-sequence", _check_bmo),
    ("schipp-v", _check_schipp_v),
    ("dyadic-maximal", _check_dyadic_maximal),
]


def run_selftest(out=print) -> int:
    """Run every oracle check; returns 0 when all pass."""
    failures = 0
    for name, check in CHECKS:
        ok, detail = check()
        out(f"selftest {name}: {'PASS' if ok else 'FAIL'} ({detail})")
        failures += not ok
    return 1 if failures else 0
