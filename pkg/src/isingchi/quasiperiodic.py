"""Generalized Fibonacci bit sequences and column-gauge sign strings.

The bit at position n is the floor difference

    p_j(n) = floor(gamma + (n+1)/alpha_j) - floor(gamma + n/alpha_j)

with alpha_j the metallic mean ((j+1) + sqrt((j+1)^2 + 4))/2; j = 0 gives
the golden ratio and the classic Fibonacci word.  Mapping bits to signs
and flipping lattice columns where the sign is -1 builds quasiperiodic
mixed-coupling models out of the uniform one by pure gauge, so their
susceptibility needs nothing beyond the uniform correlation table and the
sign autocorrelation computed here.
"""

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FibonacciSpec",
    "SignSequence",
    "WindowRangeError",
    "autocorrelation",
    "fib_bit",
    "fib_bits",
    "metallic_alpha",
    "sign_sequence",
]

DEFAULT_BIT_MAP = {0: 1, 1: -1}


class WindowRangeError(IndexError):
    """Requested lag range exceeds what the materialized window supports."""


def metallic_alpha(j):
    """The metallic mean alpha_j; alpha_0 is the golden ratio."""
    if j < 0 or j != int(j):
        raise ValueError("j must be a non-negative integer, got %r" % (j,))
    return ((j + 1) + math.sqrt((j + 1) ** 2 + 4)) / 2


@dataclass(frozen=True)
class FibonacciSpec:
    """Family index j and phase offset gamma of a generalized Fibonacci word."""

    j: int
    gamma: float = 0.0

    def __post_init__(self):
        if self.j < 0 or self.j != int(self.j):
            raise ValueError("j must be a non-negative integer, got %r"
                             % (self.j,))
        if not 0 <= self.gamma < 1:
            raise ValueError("gamma must lie in [0, 1), got %r" % (self.gamma,))

    @property
    def alpha(self):
        return metallic_alpha(self.j)


def fib_bit(spec, n):
    """Bit n of the word; defined for every integer n, values in {0, 1}.

    The defining line has slope 1/alpha < 1, so consecutive floors differ
    by 0 or 1 and nothing else.
    """
    inv = 1 / spec.alpha
    return int(math.floor(spec.gamma + (n + 1) * inv)
               - math.floor(spec.gamma + n * inv))


def fib_bits(spec, count, start=0):
    """Bits start..start+count-1 as an int array."""
    if count < 0:
        raise ValueError("count must be non-negative")
    n = np.arange(start, start + count + 1, dtype=np.float64)
    floors = np.floor(spec.gamma + n / spec.alpha)
    return np.diff(floors).astype(np.int64)


@dataclass(frozen=True)
class SignSequence:
    """A materialized window of signs derived from a Fibonacci word."""

    spec: FibonacciSpec
    bit_map: tuple
    window: int
    signs: np.ndarray = field(repr=False)


def sign_sequence(spec, N, bit_map=None):
    """Signs s(n) = bit_map[p_j(n)] for n = 0..N-1.

    The default map sends 0 to +1 and 1 to -1; any map into {+1, -1}
    is accepted, including the constant one that recovers the uniform
    model.
    """
    if N < 1:
        raise ValueError("window length must be at least 1, got %r" % (N,))
    bit_map = dict(DEFAULT_BIT_MAP if bit_map is None else bit_map)
    for b in (0, 1):
        if bit_map.get(b) not in (-1, 1):
            raise ValueError("bit_map must send %d to +1 or -1" % b)
    bits = fib_bits(spec, N)
    signs = np.where(bits == 0, bit_map[0], bit_map[1]).astype(np.int8)
    return SignSequence(spec=spec, bit_map=(bit_map[0], bit_map[1]),
                        window=N, signs=signs)


def autocorrelation(seq, delta_max):
    """kappa(Delta) = mean of s(n) s(n+Delta), Delta = 0..delta_max.

    Each lag is normalized over its own N - Delta products, which keeps
    every estimate unbiased; the window must be comfortably longer than
    the largest lag, enforced as delta_max < window/2.
    """
    if delta_max < 0:
        raise ValueError("delta_max must be non-negative")
    if delta_max >= seq.window / 2:
        raise WindowRangeError(
            "delta_max %d needs a window longer than %d, have %d"
            % (delta_max, 2 * delta_max, seq.window))
    s = seq.signs.astype(np.float64)
    n = seq.window
    out = np.empty(delta_max + 1)
    for d in range(delta_max + 1):
        out[d] = float(s[:n - d] @ s[d:n]) / (n - d)
    return out
