"""Exact arithmetic on the dyadic group sampled at resolution 2**bits.

A point x of [0, 1) is stored as a grid index ``idx`` with x = idx * 2**-bits.
The binary digits of x (most significant first) are the expansion coefficients
x_0, x_1, ..., so digit k of x is bit (bits-1-k) of ``idx``.  Dyadic addition
is XOR on indices, Rademacher functions read single expansion digits, and
Walsh functions (Paley order) are popcount parities.  Everything in this
module is integer-exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import UsageError

MAX_BITS_1D = 24
MAX_BITS_2D = 12


def validate_bits(bits: int, *, dims: int = 1) -> int:
    """Check a resolution parameter; returns it as a plain int."""
    if isinstance(bits, bool) or not isinstance(bits, (int, np.integer)):
        raise UsageError(f"bit depth must be an integer, got {bits!r}")
    limit = MAX_BITS_1D if dims == 1 else MAX_BITS_2D
    if not 1 <= bits <= limit:
        raise UsageError(f"bit depth {bits} outside [1, {limit}] for {dims}D grids")
    return int(bits)


def bit_reverse_int(idx: int, bits: int) -> int:
    """Reverse the low `bits` bits of a nonnegative integer."""
    out = 0
    for _ in range(bits):
        out = (out << 1) | (idx & 1)
        idx >>= 1
    return out


@lru_cache(maxsize=32)
def bit_reverse_permutation(bits: int) -> np.ndarray:
    """Permutation array p with p[i] = bit_reverse_int(i, bits)."""
    idx = np.arange(1 << bits, dtype=np.int64)
    out = np.zeros_like(idx)
    for _ in range(bits):
        out = (out << 1) | (idx & 1)
        idx = idx >> 1
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class DyadicPoint:
    """Grid point x = idx * 2**-bits of the unit interval."""

    idx: int
    bits: int

    def __post_init__(self):
        validate_bits(self.bits)
        if not 0 <= self.idx < (1 << self.bits):
            raise UsageError(f"index {self.idx} outside [0, 2^{self.bits})")

    @property
    def value(self) -> float:
        return self.idx / float(1 << self.bits)

    @classmethod
    def from_float(cls, x: float, bits: int) -> "DyadicPoint":
        validate_bits(bits)
        if not 0.0 <= x < 1.0:
            raise UsageError(f"point {x} outside [0, 1)")
        return cls(int(math.floor(x * (1 << bits))), bits)

    def expansion_bit(self, k: int) -> int:
        """Digit x_k of the dyadic expansion x = sum_k x_k 2^-(k+1)."""
        if not 0 <= k < self.bits:
            raise UsageError(f"expansion digit {k} not resolved at {self.bits} bits")
        return (self.idx >> (self.bits - 1 - k)) & 1


@dataclass(frozen=True)
class DyadicInterval:
    """Half-open dyadic interval [k 2^-n, (k+1) 2^-n) of level n."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 0:
            raise UsageError(f"interval level {self.n} must be >= 0")
        if not 0 <= self.k < (1 << self.n):
            raise UsageError(f"interval offset {self.k} outside [0, 2^{self.n})")

    @property
    def measure(self) -> float:
        return 2.0 ** -self.n

    @property
    def left(self) -> float:
        return self.k * 2.0 ** -self.n

    def contains(self, x: DyadicPoint) -> bool:
        if x.bits < self.n:
            raise UsageError("point resolution too coarse for this interval")
        return (x.idx >> (x.bits - self.n)) == self.k

    @classmethod
    def around(cls, x: DyadicPoint, n: int) -> "DyadicInterval":
        """The level-n interval containing x (the set x + [0, 2^-n))."""
        if not 0 <= n <= x.bits:
            raise UsageError(f"level {n} outside [0, {x.bits}]")
        return cls(n, x.idx >> (x.bits - n) if n else 0)


def dyadic_add(x: DyadicPoint, y: DyadicPoint) -> DyadicPoint:
    """Dyadic sum: digit-wise addition mod 2, i.e. XOR of grid indices."""
    if x.bits != y.bits:
        raise UsageError(f"mismatched bit depths {x.bits} and {y.bits}")
    return DyadicPoint(x.idx ^ y.idx, x.bits)


def unit_point(j: int, bits: int) -> DyadicPoint:
    """Group generator e_j = 2^-(j+1): the point whose expansion digit j is set."""
    validate_bits(bits)
    if not 0 <= j < bits:
        raise UsageError(f"generator index {j} not resolved at {bits} bits")
    return DyadicPoint(1 << (bits - 1 - j), bits)


def rademacher(n: int, x: DyadicPoint) -> int:
    """r_n(x) = +1 if digit x_n is 0, -1 if it is 1.  Requires n < bits."""
    if not 0 <= n < x.bits:
        raise UsageError(
            f"rademacher index {n} is not constant on cells of a {x.bits}-bit grid"
        )
    return 1 - 2 * x.expansion_bit(n)


def walsh(k: int, x: DyadicPoint) -> int:
    """Walsh function w_k(x) in Paley order.

    w_0 = 1 and w_k = prod r_{n_i} over the set bits n_i of k, which reduces
    to the parity of popcount(k & reversed_index).
    """
    if not 0 <= k < (1 << x.bits):
        raise UsageError(f"walsh index {k} outside [0, 2^{x.bits})")
    masked = k & bit_reverse_int(x.idx, x.bits)
    return -1 if masked.bit_count() & 1 else 1


def _dirichlet_pow2(j: int, x: DyadicPoint) -> int:
    # D_{2^j}(x) = 2^j on [0, 2^-j), 0 elsewhere.
    return (1 << j) if (x.idx >> (x.bits - j)) == 0 else 0


def dirichlet_kernel(n: int, x: DyadicPoint) -> int:
    """Walsh-Dirichlet kernel D_n(x) = sum_{k<n} w_k(x), exact integer.

    Uses the splitting D_{2^j + r} = D_{2^j} + w_{2^j} D_r, peeling the
    binary digits of n from the top.
    """
    if not 1 <= n <= (1 << x.bits):
        raise UsageError(f"kernel order {n} outside [1, 2^{x.bits}]")
    total = 0
    prefix = 0
    remaining = n
    while remaining:
        j = remaining.bit_length() - 1
        term = _dirichlet_pow2(j, x)
        if term:
            total += walsh(prefix, x) * term
        prefix |= 1 << j
        remaining -= 1 << j
    return total


def walsh_row(k: int, bits: int) -> np.ndarray:
    """Values of w_k at every grid point, as an int8 array of +-1."""
    validate_bits(bits)
    if not 0 <= k < (1 << bits):
        raise UsageError(f"walsh index {k} outside [0, 2^{bits})")
    rev = bit_reverse_permutation(bits)
    parity = (np.bitwise_count(np.int64(k) & rev) & 1).astype(np.int8)
    return (1 - 2 * parity).astype(np.int8)


@lru_cache(maxsize=8)
def walsh_matrix(bits: int) -> np.ndarray:
    """Paley-ordered Walsh matrix W[k, i] = w_k(i 2^-bits), int8, cached."""
    validate_bits(bits)
    if bits > 13:
        raise UsageError(f"refusing to materialize a 2^{bits} square Walsh matrix")
    rev = bit_reverse_permutation(bits)
    ks = np.arange(1 << bits, dtype=np.int64)
    parity = (np.bitwise_count(ks[:, None] & rev[None, :]) & 1).astype(np.int8)
    w = (1 - 2 * parity).astype(np.int8)
    w.setflags(write=False)
    return w


@lru_cache(maxsize=6)
def walsh_matrix_f64(bits: int) -> np.ndarray:
    """Float64 view of walsh_matrix, cached separately for hot loops."""
    w = walsh_matrix(bits).astype(np.float64)
    w.setflags(write=False)
    return w


def paley_from_sequency(s):
    """Paley index of the Walsh function with s sign changes (Gray code)."""
    s = np.asarray(s)
    return s ^ (s >> 1)


def sequency_from_paley(p, bits: int):
    """Sign-change count of the Paley-indexed Walsh function (inverse Gray code)."""
    p = np.asarray(p).copy()
    shift = 1
    while shift < bits:
        p = p ^ (p >> shift)
        shift *= 2
    return p
