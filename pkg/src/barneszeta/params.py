"""Parameter objects, weight-structure analysis, and the denumerant.

The central domain object is :class:`BarnesParams`, a validated, immutable
``(a, w)`` pair describing the series

    sum over m in Z_{>=0}^r  of  (a + m . w)^(-s).

Weight commensurability matters for the diagonal (mean-square) constant:
exactly rational weights ``w_i = p_i / q`` admit an exact representation-
number series, while generic real weights are treated as linearly
independent over Q unless the caller declares otherwise.  Since no float
test can distinguish the two cases, :func:`analyze_weights` only ever infers
a rational structure from *exact* rational inputs (``fractions.Fraction`` or
``int``), never from floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence, Union

from .errors import (
    ConflictingDeclaration,
    EmptyWeights,
    InvalidParameter,
    NonPositiveShift,
    NonPositiveWeight,
    Overflow,
)

#: Largest exact count tolerated before :class:`Overflow` is raised.  Counts
#: are squared and converted to floats downstream, so the limit keeps the
#: square comfortably inside the double range (2**500 squared < 1.8e308).
DENUMERANT_LIMIT = 1 << 500

WeightInput = Union[float, int, Fraction]


@dataclass(frozen=True)
class BarnesParams:
    """Validated parameters ``(a, w)`` of a Barnes zeta series.

    ``r`` is implicitly ``len(w)``; it is exposed as a property so the pair
    can never be stored inconsistently.
    """

    a: float
    w: tuple[float, ...]

    @property
    def r(self) -> int:
        return len(self.w)

    @property
    def weight_sum(self) -> float:
        return math.fsum(self.w)

    @property
    def weight_product(self) -> float:
        return math.prod(self.w)


class WeightKind(str, Enum):
    ASSUMED_INDEPENDENT = "assumed_independent"
    RATIONAL = "rational"


@dataclass(frozen=True)
class WeightStructure:
    """Commensurability structure of a weight vector.

    For ``RATIONAL`` the weights are exactly ``p_i / q`` with a common
    denominator ``q >= 1`` and positive integer numerators ``p``.
    """

    kind: WeightKind
    q: Optional[int] = None
    p: Optional[tuple[int, ...]] = None

    @classmethod
    def independent(cls) -> "WeightStructure":
        return cls(kind=WeightKind.ASSUMED_INDEPENDENT)

    @classmethod
    def rational(cls, q: int, p: Sequence[int]) -> "WeightStructure":
        if q < 1 or any(pi < 1 for pi in p):
            raise InvalidParameter("rational structure requires q >= 1 and p_i >= 1")
        return cls(kind=WeightKind.RATIONAL, q=int(q), p=tuple(int(pi) for pi in p))


def validate_params(a: float, w: Sequence[float]) -> BarnesParams:
    """Validate and freeze ``(a, w)``.

    Values are stored verbatim (no normalisation).  Raises
    :class:`NonPositiveShift`, :class:`NonPositiveWeight` or
    :class:`EmptyWeights` on bad input.
    """
    a = float(a)
    if not math.isfinite(a) or a <= 0.0:
        raise NonPositiveShift(f"shift a must be finite and > 0, got {a!r}")
    ws = tuple(float(wi) for wi in w)
    if not ws:
        raise EmptyWeights("weight vector must be non-empty")
    for wi in ws:
        if not math.isfinite(wi) or wi <= 0.0:
            raise NonPositiveWeight(f"weights must be finite and > 0, got {wi!r}")
    return BarnesParams(a=a, w=ws)


def _is_exact(x: WeightInput) -> bool:
    return isinstance(x, Rational) and not isinstance(x, float)


def analyze_weights(
    w: Sequence[WeightInput],
    declared_mode: Optional[str] = None,
) -> WeightStructure:
    """Classify a weight vector as rational or assumed-independent.

    * Exact rational inputs (``Fraction``/``int``) yield a ``RATIONAL``
      structure with ``q = lcm`` of the denominators, unless the caller
      declares ``"independent"``.
    * Float inputs always yield ``ASSUMED_INDEPENDENT``; declaring them
      ``"rational"`` raises :class:`ConflictingDeclaration` because exactness
      cannot be recovered from a float.
    """
    if not w:
        raise EmptyWeights("weight vector must be non-empty")
    if declared_mode not in (None, "independent", "rational"):
        raise InvalidParameter(f"unknown declared_mode {declared_mode!r}")

    exact = all(_is_exact(wi) for wi in w)
    for wi in w:
        if (Fraction(wi) if _is_exact(wi) else Fraction(float(wi))) <= 0:
            raise NonPositiveWeight(f"weights must be > 0, got {wi!r}")

    if declared_mode == "independent":
        return WeightStructure.independent()
    if declared_mode == "rational" and not exact:
        raise ConflictingDeclaration(
            "weights were supplied as floats; exact rationals (e.g. '3/4') are "
            "required for the rational path"
        )
    if not exact:
        return WeightStructure.independent()

    fracs = [Fraction(wi) for wi in w]
    q = 1
    for f in fracs:
        q = math.lcm(q, f.denominator)
    p = tuple(int(f * q) for f in fracs)
    return WeightStructure.rational(q, p)


def denumerant_table(p: Sequence[int], k_max: int) -> list[int]:
    """Exact counts ``R(k)`` of solutions of ``m . p = k`` for ``k <= k_max``.

    Standard coin-counting dynamic programme over the numerators ``p``.
    Raises :class:`Overflow` if any count exceeds :data:`DENUMERANT_LIMIT`.
    """
    ps = [int(pi) for pi in p]
    if not ps:
        raise EmptyWeights("p must be non-empty")
    if any(pi < 1 for pi in ps):
        raise InvalidParameter("denumerant requires positive integer parts")
    if k_max < 0:
        raise InvalidParameter("k must be >= 0")
    ways = [0] * (k_max + 1)
    ways[0] = 1
    for c in ps:
        for j in range(c, k_max + 1):
            ways[j] += ways[j - c]
    if ways and max(ways) > DENUMERANT_LIMIT:
        raise Overflow(
            "representation count exceeds the supported integer width; "
            "reduce k or the number of parts"
        )
    return ways


def denumerant(p: Sequence[int], k: int) -> int:
    """Number of ways to write ``k`` as ``sum_i m_i p_i`` with ``m_i >= 0``."""
    return denumerant_table(p, k)[k]
