"""Dyadic and hybrid maximal functions and the Schipp V-operators.

All suprema over scales truncate at the grid level: beyond it every cell
average equals the sample value, so the truncation is exact for grid-resolved
step functions.  The t-integral inside V_n is an exact finite sum, because the
integrand is itself a dyadic step function at the grid resolution.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, UsageError
from .sums import partial_sum_1d
from .transform import DyadicGrid1D, DyadicGrid2D


@dataclass
class OperatorField:
    """Pointwise output of a (nonnegative) operator, with its label."""

    values: np.ndarray
    label: str
    bits: int

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.min() < 0:
            raise DataError(f"operator field {self.label!r} has negative entries")


def _axis_maximal(a: np.ndarray, bits: int, axis: int) -> np.ndarray:
    """Running max of dyadic block averages of |a| along one axis."""
    a = np.abs(np.moveaxis(a, axis, 0))
    best = a.copy()
    level = a
    for n in range(bits - 1, -1, -1):
        level = 0.5 * (level[0::2] + level[1::2])
        np.maximum(best, np.repeat(level, 1 << (bits - n), axis=0), out=best)
    return np.moveaxis(best, 0, axis)


def dyadic_maximal_1d(f: DyadicGrid1D) -> OperatorField:
    """1D dyadic maximal function: sup_n of the |f|-average over I_n(x)."""
    return OperatorField(_axis_maximal(f.samples, f.bits, 0), "M", f.bits)


def dyadic_maximal(f: DyadicGrid2D) -> OperatorField:
    """Dyadic maximal function over squares I_n(x) x I_n(y), built bottom-up."""
    a = np.abs(f.samples)
    best = a.copy()
    level = a
    for n in range(f.bits - 1, -1, -1):
        level = 0.25 * (
            level[0::2, 0::2] + level[0::2, 1::2] + level[1::2, 0::2] + level[1::2, 1::2]
        )
        scale = 1 << (f.bits - n)
        expanded = np.repeat(np.repeat(level, scale, axis=0), scale, axis=1)
        np.maximum(best, expanded, out=best)
    return OperatorField(best, "M", f.bits)


def hybrid_maximal_1(f: DyadicGrid2D) -> OperatorField:
    """M_1: the 1D dyadic maximal in x for each fixed y."""
    return OperatorField(_axis_maximal(f.samples, f.bits, 0), "M1", f.bits)


def hybrid_maximal_2(f: DyadicGrid2D) -> OperatorField:
    """M_2: the 1D dyadic maximal in y for each fixed x."""
    return OperatorField(_axis_maximal(f.samples, f.bits, 1), "M2", f.bits)


def _schipp_v_values(samples: np.ndarray, bits: int, n: int) -> np.ndarray:
    """V_n at every grid point.

    V_n(x)^2 = 2^-n int_0^1 ( sum_{j<n} 2^(j-1) 1_{I_j}(t) g(x+t+e_j) )^2 dt
    with g = S_{2^n} f and + the dyadic sum.  For t in the shell
    [2^-(k+1), 2^-k) only the terms j <= min(k, n-1) are active, and
    {x + t : t in shell k} is exactly the sibling of x's dyadic block of size
    2^(bits-k-1), so each shell contributes one block sum of the squared
    running profile c_m(u) = sum_{j<=m} 2^(j-1) g(u + e_j).
    """
    size = 1 << bits
    g = partial_sum_1d(DyadicGrid1D(bits, samples), 1 << n).samples
    idx = np.arange(size)
    c = 0.5 * g[idx ^ (1 << (bits - 1))]
    q = c * c
    acc = np.zeros(size)
    for k in range(bits):
        if 1 <= k <= n - 1:
            c = c + 2.0 ** (k - 1) * g[idx ^ (1 << (bits - 1 - k))]
            q = c * c
        block = 1 << (bits - k - 1)
        block_sums = q.reshape(size // block, block).sum(axis=1)
        acc += block_sums[(idx // block) ^ 1]
    acc += q  # the cell [0, 2^-bits): all j < n active, profile taken at x itself
    return np.sqrt(acc * 2.0 ** (-n - bits))


def schipp_v(f: DyadicGrid1D, n: int) -> OperatorField:
    """Schipp operator V_n: quadratic average of shifted smooth partial sums.

    The 2^(j-1) weights are taken literally (the j = 0 term carries 1/2) and
    the shift points are e_j = 2^-(j+1).
    """
    if not 1 <= n <= f.bits:
        raise UsageError(f"operator order {n} outside [1, {f.bits}]")
    return OperatorField(_schipp_v_values(f.samples, f.bits, n), f"V_{n}", f.bits)


def schipp_v_max(f: DyadicGrid1D) -> OperatorField:
    """V f = sup over n = 1..bits of V_n f."""
    best = _schipp_v_values(f.samples, f.bits, 1)
    for n in range(2, f.bits + 1):
        np.maximum(best, _schipp_v_values(f.samples, f.bits, n), out=best)
    return OperatorField(best, "V", f.bits)


def hybrid_v_1(f: DyadicGrid2D) -> OperatorField:
    """V_1: the 1D operator V applied in x to each slice f(., y)."""
    out = np.empty_like(f.samples)
    for iy in range(f.size):
        out[:, iy] = schipp_v_max(DyadicGrid1D(f.bits, f.samples[:, iy])).values
    return OperatorField(out, "V1", f.bits)


def hybrid_v_2(f: DyadicGrid2D) -> OperatorField:
    """V_2: the 1D operator V applied in y to each slice f(x, .)."""
    out = np.empty_like(f.samples)
    for ix in range(f.size):
        out[ix, :] = schipp_v_max(DyadicGrid1D(f.bits, f.samples[ix, :])).values
    return OperatorField(out, "V2", f.bits)


def superlevel_measure(field, lam: float) -> float:
    """Normalized counting measure of {field > lam}, lam > 0."""
    if not lam > 0:
        raise UsageError(f"superlevel threshold must be positive, got {lam}")
    values = getattr(field, "values", None)
    if values is None:
        values = getattr(field, "samples", None)
    if values is None:
        values = np.asarray(field, dtype=np.float64)
    return float((values > lam).mean())
