"""Walsh-Fourier analysis and synthesis in Paley order, 1D and 2D.

Analysis carries the 2**-bits measure factor so coefficients equal the
integrals int f w_k; synthesis carries no factor.  The fast paths are
natural-order Hadamard butterflies composed with a bit-reversal permutation
(Paley row k of the sampled Walsh matrix is natural row reverse(k)).  The
naive transforms evaluate the defining sums directly with a fixed ascending
summation order and serve as oracles for the fast paths.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import bit_reverse_permutation, validate_bits, walsh_matrix_f64
from .errors import DataError, UsageError


def _as_grid_array(values, dims: int) -> tuple[int, np.ndarray]:
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != dims:
        raise DataError(f"expected a {dims}D array, got shape {a.shape}")
    n = a.shape[0]
    if n < 2 or n & (n - 1):
        raise DataError(f"grid length {n} is not a power of two >= 2")
    if any(s != n for s in a.shape):
        raise DataError(f"grid must be square, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise DataError("grid contains non-finite samples")
    bits = n.bit_length() - 1
    validate_bits(bits, dims=dims)
    return bits, a


@dataclass
class DyadicGrid1D:
    """Step function on [0, 1), constant on cells of length 2**-bits.

    samples[i] is the value on [i 2^-bits, (i+1) 2^-bits).
    """

    bits: int
    samples: np.ndarray

    def __post_init__(self):
        got, arr = _as_grid_array(self.samples, 1)
        if got != self.bits:
            raise UsageError(f"declared {self.bits} bits but got 2^{got} samples")
        self.samples = arr

    @classmethod
    def from_samples(cls, values) -> "DyadicGrid1D":
        bits, arr = _as_grid_array(values, 1)
        return cls(bits, arr)

    @property
    def size(self) -> int:
        return 1 << self.bits

    def index_of(self, x: float) -> int:
        if not 0.0 <= x < 1.0:
            raise UsageError(f"point {x} outside [0, 1)")
        return int(x * self.size)

    def value_at(self, x: float) -> float:
        return float(self.samples[self.index_of(x)])


@dataclass
class DyadicGrid2D:
    """Step function on the unit square; samples[i, j] = f(i 2^-bits, j 2^-bits)."""

    bits: int
    samples: np.ndarray

    def __post_init__(self):
        got, arr = _as_grid_array(self.samples, 2)
        if got != self.bits:
            raise UsageError(f"declared {self.bits} bits but got a 2^{got} grid")
        self.samples = arr

    @classmethod
    def from_samples(cls, values) -> "DyadicGrid2D":
        bits, arr = _as_grid_array(values, 2)
        return cls(bits, arr)

    @property
    def size(self) -> int:
        return 1 << self.bits

    def value_at(self, x: float, y: float) -> float:
        if not (0.0 <= x < 1.0 and 0.0 <= y < 1.0):
            raise UsageError(f"point ({x}, {y}) outside the unit square")
        return float(self.samples[int(x * self.size), int(y * self.size)])


@dataclass
class Spectrum1D:
    """Walsh-Fourier coefficients in Paley order; coeffs[k] = f_hat(k)."""

    bits: int
    coeffs: np.ndarray

    def __post_init__(self):
        got, arr = _as_grid_array(self.coeffs, 1)
        if got != self.bits:
            raise UsageError(f"declared {self.bits} bits but got 2^{got} coefficients")
        self.coeffs = arr


@dataclass
class Spectrum2D:
    """2D Walsh-Fourier coefficients; coeffs[m, n] = f_hat(m, n)."""

    bits: int
    coeffs: np.ndarray

    def __post_init__(self):
        got, arr = _as_grid_array(self.coeffs, 2)
        if got != self.bits:
            raise UsageError(f"declared {self.bits} bits but got a 2^{got} grid")
        self.coeffs = arr


def _fwht(values: np.ndarray, axis: int) -> np.ndarray:
    """Natural-order fast Walsh-Hadamard butterfly along one axis.

    The reduction tree is fixed (pairs at stride 1, 2, 4, ...) so the output
    is bit-deterministic regardless of threading.
    """
    a = np.moveaxis(np.array(values, dtype=np.float64, copy=True), axis, -1)
    shape = a.shape
    n = shape[-1]
    h = 1
    while h < n:
        a = a.reshape(shape[:-1] + (n // (2 * h), 2, h))
        top = a[..., 0, :] + a[..., 1, :]
        bot = a[..., 0, :] - a[..., 1, :]
        a = np.stack((top, bot), axis=-2).reshape(shape)
        h *= 2
    return np.moveaxis(a, -1, axis)


def wht_1d(f: DyadicGrid1D) -> Spectrum1D:
    """Fast Paley-ordered analysis: coeffs[k] = 2^-bits sum_i f_i w_k(i)."""
    rev = bit_reverse_permutation(f.bits)
    return Spectrum1D(f.bits, _fwht(f.samples, 0)[rev] * 2.0 ** -f.bits)


def inverse_wht_1d(c: Spectrum1D) -> DyadicGrid1D:
    """Synthesis f(x) = sum_k coeffs[k] w_k(x); exact inverse of wht_1d."""
    rev = bit_reverse_permutation(c.bits)
    return DyadicGrid1D(c.bits, _fwht(c.coeffs[rev], 0))


def naive_wht_1d(f: DyadicGrid1D) -> Spectrum1D:
    """Definitional analysis oracle: direct double sum, ascending index."""
    w = walsh_matrix_f64(f.bits)
    coeffs = np.einsum("i,ki->k", f.samples, w, optimize=False)
    return Spectrum1D(f.bits, coeffs * 2.0 ** -f.bits)


def wht_2d(f: DyadicGrid2D) -> Spectrum2D:
    """Fast 2D analysis: 1D pass along x (axis 0), then along y (axis 1)."""
    rev = bit_reverse_permutation(f.bits)
    t = _fwht(f.samples, 0)[rev, :]
    t = _fwht(t, 1)[:, rev]
    return Spectrum2D(f.bits, t * 4.0 ** -f.bits)


def inverse_wht_2d(c: Spectrum2D) -> DyadicGrid2D:
    """2D synthesis; column pass (axis 1) then row pass (axis 0)."""
    rev = bit_reverse_permutation(c.bits)
    t = _fwht(c.coeffs[:, rev], 1)
    t = _fwht(t[rev, :], 0)
    return DyadicGrid2D(c.bits, t)


def naive_wht_2d(f: DyadicGrid2D) -> Spectrum2D:
    """Definitional 2D analysis oracle: literal quadruple sum."""
    w = walsh_matrix_f64(f.bits)
    coeffs = np.einsum("xy,mx,ny->mn", f.samples, w, w, optimize=False)
    return Spectrum2D(f.bits, coeffs * 4.0 ** -f.bits)


def translate(f: DyadicGrid1D, a_idx: int) -> DyadicGrid1D:
    """The grid of x -> f(x (+) a) where a = a_idx * 2**-bits."""
    if not 0 <= a_idx < f.size:
        raise UsageError(f"translation index {a_idx} outside [0, 2^{f.bits})")
    return DyadicGrid1D(f.bits, f.samples[np.arange(f.size) ^ a_idx])
