"""SplitMix64 random stream.

The algorithm is fixed so that seeded results reproduce bit-for-bit on every
platform and in reimplementations:

* state advances by the odd constant ``0x9E3779B97F4A7C15`` (mod 2**64);
* each output is the SplitMix64 finalizer applied to the new state;
* a float is the top 53 output bits divided by 2**53, i.e. ``out / 2**64``
  truncated to double precision, always in [0, 1).

Draws are vectorized with numpy ``uint64`` arithmetic, which wraps modulo
2**64 exactly like the scalar recurrence, so ``uniform(n)`` returns the same
numbers as ``n`` consecutive single draws.
"""

import math
from typing import Tuple, Union

import numpy as np

from ..core.constants import DEFAULT_SEED

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

Shape = Union[int, Tuple[int, ...]]


def _mix_scalar(z: int) -> int:
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


class Rng:
    """Seeded SplitMix64 stream.

    Not thread-safe: give each worker its own stream via :meth:`spawn`.
    """

    def __init__(self, seed: int = DEFAULT_SEED):
        self.seed = int(seed) & MASK64
        self._state = self.seed

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed:#x})"

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return _mix_scalar(self._state)

    def u64(self, count: int) -> np.ndarray:
        """Next ``count`` raw outputs as a uint64 array."""
        if count <= 0:
            return np.empty(0, dtype=np.uint64)
        steps = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            states = np.uint64(self._state) + steps * np.uint64(GOLDEN)
            out = _mix_array(states)
        self._state = (self._state + count * GOLDEN) & MASK64
        return out

    def uniform(self, shape: Shape = 1) -> np.ndarray:
        """Floats in [0, 1), filled in row-major order."""
        count = int(np.prod(shape))
        bits = self.u64(count) >> np.uint64(11)
        return (bits.astype(np.float64) * 2.0 ** -53).reshape(shape)

    def random(self) -> float:
        return float((self.next_u64() >> 11) * 2.0 ** -53)

    def normal(self, shape: Shape = 1) -> np.ndarray:
        """Standard normals by Box-Muller (two uniforms per output)."""
        count = int(np.prod(shape))
        u = self.uniform((count, 2))
        r = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        return (r * np.cos(2.0 * math.pi * u[:, 1])).reshape(shape)

    def integers(self, high: int, shape: Shape = 1) -> np.ndarray:
        """Integers in [0, high) by scaling uniforms."""
        idx = np.floor(self.uniform(shape) * high).astype(np.int64)
        return np.minimum(idx, high - 1)

    def spawn(self, index: int) -> "Rng":
        """Independent sub-stream determined by (seed, index) only."""
        return Rng(_mix_scalar((self.seed + (int(index) + 1) * GOLDEN) & MASK64))
