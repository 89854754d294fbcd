"""Independent reference evaluators ("oracles").

These implementations deliberately share no code with the production
evaluators in :mod:`barneszeta.evaluate`: the Hurwitz zeta is computed by
Euler--Maclaurin summation with Bernoulli corrections, the brute-force
multisum by direct box enumeration, and the equal-weight reduction by an
exact binomial-coefficient expansion into Hurwitz zetas.  Tests and the
acceptance gate compare the production evaluators against these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetExceeded,
    InvalidParameter,
    NonPositiveShift,
    PolePoint,
    SigmaTooSmall,
)
from .numerics import CompensatedSum, cpow, spow
from .params import BarnesParams

#: Guard radius around the Hurwitz pole at s = 1.
POLE_GUARD = 1e-6

#: Bernoulli numbers B_2, B_4, B_6, B_8 used in the correction sum, and
#: B_10 used in the remainder bound.
_B2K = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0)
_B10 = 5.0 / 66.0

#: Hard ceiling on the truncation point N (keeps pathological tolerance
#: requests from allocating unbounded arrays).
_N_CAP = 50_000_000


@dataclass(frozen=True)
class OracleValue:
    """A reference value together with the bound claimed for it."""

    value: complex
    claimed_abs_error: float

    def __post_init__(self) -> None:
        if not (
            math.isfinite(self.value.real)
            and math.isfinite(self.value.imag)
            and math.isfinite(self.claimed_abs_error)
            and self.claimed_abs_error > 0.0
        ):
            raise InvalidParameter("oracle value/error must be finite, error > 0")


def _pochhammer(s: complex, n: int) -> complex:
    out = complex(1.0)
    for j in range(n):
        out *= s + j
    return out


def hurwitz_zeta(s: complex, alpha: float, abs_tol: float = 1e-13) -> OracleValue:
    """Hurwitz zeta ``zeta(s, alpha) = sum_{n>=0} (n+alpha)^(-s)``.

    Euler--Maclaurin: head sum to ``N``, integral and half-term boundary
    pieces, Bernoulli corrections up to ``B_8``, and a remainder bound from
    the first omitted (``B_10``) term::

        |R| <= |B_10/10!| * |s(s+1)...(s+8)| * (N+alpha)^(-Re(s)-9)
                * |s+9| / (Re(s)+9)

    ``N`` is chosen so this bound is ``<= abs_tol``.  Valid for
    ``Re(s) > -1`` (all this package needs), ``alpha > 0``, ``s != 1``.
    """
    s = complex(s)
    sigma = s.real
    if alpha <= 0.0 or not math.isfinite(alpha):
        raise NonPositiveShift(f"alpha must be > 0, got {alpha!r}")
    if sigma <= -1.0:
        raise SigmaTooSmall(f"hurwitz_zeta requires Re(s) > -1, got {sigma}")
    if abs(s - 1.0) < POLE_GUARD:
        raise PolePoint(f"s = {s} is within {POLE_GUARD} of the pole at 1")
    if not (0.0 < abs_tol < 1.0):
        raise InvalidParameter("abs_tol must lie in (0, 1)")

    # Remainder-bound prefactor, independent of N.
    k_rem = _B10 / math.factorial(10) * abs(_pochhammer(s, 9)) * abs(s + 9) / (sigma + 9)
    # Solve k_rem * (N+alpha)^(-sigma-9) <= abs_tol for N.
    if k_rem <= abs_tol:
        base_needed = 1.0
    else:
        base_needed = (k_rem / abs_tol) ** (1.0 / (sigma + 9.0))
    n_terms = max(10, int(math.ceil(base_needed - alpha)) + 1, int(math.ceil(abs(s.imag) / 4.0)))
    if n_terms > _N_CAP:
        raise BudgetExceeded(f"hurwitz_zeta would need N = {n_terms} head terms")

    grid = alpha + np.arange(n_terms, dtype=float)
    acc = CompensatedSum()
    acc.add_array(cpow(grid, -s))
    head = acc.value

    base = alpha + n_terms
    tail = spow(base, 1.0 - s) / (s - 1.0) + 0.5 * spow(base, -s)
    corr = complex(0.0)
    for k, b2k in enumerate(_B2K, start=1):
        factor = b2k / math.factorial(2 * k) * _pochhammer(s, 2 * k - 1)
        corr += factor * spow(base, -s - (2 * k - 1))
    value = head + tail + corr

    remainder = k_rem * base ** (-sigma - 9.0)
    rounding = 1e-15 * (n_terms * base ** (-sigma) if sigma < 0 else 1.0 + abs(value))
    return OracleValue(value=value, claimed_abs_error=remainder + rounding)


def naive_multisum(params: BarnesParams, s: complex, cutoff: int) -> complex:
    """Brute-force box sum ``sum_{0 <= m_i <= cutoff} (a + m.w)^(-s)``.

    Unaccelerated and deliberately simple; ``(cutoff+1)^r`` must stay at or
    below 1e7.
    """
    s = complex(s)
    if cutoff < 0:
        raise InvalidParameter("cutoff must be >= 0")
    if (cutoff + 1) ** params.r > 10**7:
        raise BudgetExceeded(f"(cutoff+1)^r = {(cutoff + 1) ** params.r} exceeds 1e7")
    idx = np.arange(cutoff + 1, dtype=float)
    base = np.asarray(params.a, dtype=float)
    for wi in params.w:
        base = np.add.outer(base, wi * idx)
    acc = CompensatedSum()
    acc.add_array(cpow(base.ravel(), -s))
    return acc.value


def equal_weight_reduction(
    r: int, s: complex, a: float, abs_tol: float = 1e-12
) -> OracleValue:
    """Barnes zeta with all weights equal to one, via Hurwitz zetas.

    Collapsing the box sum along hyperplanes ``m_1 + ... + m_r = N`` gives
    ``sum_N binom(N+r-1, r-1) (a+N)^(-s)``; the binomial is a polynomial in
    ``N``, re-expanded in powers of ``(N+a)`` so the series becomes an exact
    finite combination ``sum_k c_k zeta(s-k, a)``.  Requires ``Re(s) > r``.
    """
    s = complex(s)
    if not 1 <= r <= 4:
        raise InvalidParameter("equal_weight_reduction supports 1 <= r <= 4")
    if a <= 0.0:
        raise NonPositiveShift(f"a must be > 0, got {a!r}")
    if s.real <= r:
        raise SigmaTooSmall(f"requires Re(s) > r = {r}, got {s.real}")

    # binom(N+r-1, r-1) = prod_{j=1}^{r-1} (N+j) / (r-1)!
    #                   = prod_{j=1}^{r-1} ((N+a) + (j-a)) / (r-1)!,
    # expanded here as a polynomial in u = N + a (ascending powers).
    coeffs = [1.0]
    for j in range(1, r):
        d = j - a
        nxt = [0.0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] += c * d
        coeffs = nxt
    fact = math.factorial(r - 1)

    value = complex(0.0)
    err = 0.0
    per_term_tol = abs_tol / (len(coeffs) * (1.0 + sum(abs(c) for c in coeffs) / fact))
    for k, c in enumerate(coeffs):
        if c == 0.0:
            continue
        hz = hurwitz_zeta(s - k, a, abs_tol=max(per_term_tol, 1e-15))
        value += (c / fact) * hz.value
        err += abs(c / fact) * hz.claimed_abs_error
    return OracleValue(value=value, claimed_abs_error=err + 1e-15 * (1.0 + abs(value)))
