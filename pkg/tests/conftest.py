import numpy as np
import pytest

from wss.generators import portable_uniforms


def dyadic_rationals(seed: int, count: int, scale_bits: int = 6, value_bits: int = 12) -> np.ndarray:
    """Random values m / 2**scale_bits with |m| < 2**value_bits.

    Sums, means over power-of-two blocks, squares and their differences of
    such values are all exact in float64, so independently coded reductions
    must agree bitwise.
    """
    u = portable_uniforms(seed, count)
    m = np.floor(u * (1 << (value_bits + 1))) - (1 << value_bits)
    return m / float(1 << scale_bits)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
