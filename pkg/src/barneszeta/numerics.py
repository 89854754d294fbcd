"""Low-level numeric kernels: compensated accumulation and power tables.

All large sums in this package are accumulated block-wise: each block is
reduced with numpy's pairwise summation and the block results are combined
in a Neumaier (improved Kahan) compensated accumulator.  That keeps results
independent of the block partition to well below 1e-12 relative, which the
higher-level determinism contracts rely on.
"""

from __future__ import annotations

import math

import numpy as np

#: Default number of elements processed per numpy block.
BLOCK = 1 << 20


class CompensatedSum:
    """Neumaier compensated accumulator for complex values."""

    __slots__ = ("_re", "_im", "_cre", "_cim")

    def __init__(self) -> None:
        self._re = 0.0
        self._im = 0.0
        self._cre = 0.0
        self._cim = 0.0

    def add(self, z: complex) -> None:
        x = z.real
        t = self._re + x
        if abs(self._re) >= abs(x):
            self._cre += (self._re - t) + x
        else:
            self._cre += (x - t) + self._re
        self._re = t

        y = z.imag
        t = self._im + y
        if abs(self._im) >= abs(y):
            self._cim += (self._im - t) + y
        else:
            self._cim += (y - t) + self._im
        self._im = t

    def add_array(self, values: np.ndarray) -> None:
        """Add a numpy array (pairwise-reduced, then compensated)."""
        if values.size:
            self.add(complex(values.sum()))

    @property
    def value(self) -> complex:
        return complex(self._re + self._cre, self._im + self._cim)


def fsum_complex(terms) -> complex:
    """Exactly-rounded sum of a small iterable of complex numbers."""
    ts = list(terms)
    return complex(math.fsum(t.real for t in ts), math.fsum(t.imag for t in ts))


def cpow(base: np.ndarray, exponent: complex) -> np.ndarray:
    """Elementwise ``base ** exponent`` for a strictly positive real array.

    Uses the much faster real power kernel when the exponent is real.
    """
    if exponent.imag == 0.0:
        return np.power(base, exponent.real)
    return np.power(base, complex(exponent))


def spow(base: float, exponent: complex) -> complex:
    """Scalar ``base ** exponent`` via the principal (real) logarithm."""
    if exponent.imag == 0.0:
        return complex(base ** exponent.real)
    lb = math.log(base)
    amp = math.exp(exponent.real * lb)
    ph = exponent.imag * lb
    return complex(amp * math.cos(ph), amp * math.sin(ph))


def block_ranges(n: int, block: int | None = None):
    """Yield ``(lo, hi)`` index pairs covering ``range(n)`` in blocks.

    ``block`` defaults to the module-level ``BLOCK`` read at call time, so
    the partition is adjustable (results must not depend on it).
    """
    if block is None:
        block = BLOCK
    lo = 0
    while lo < n:
        hi = min(lo + block, n)
        yield lo, hi
        lo = hi
