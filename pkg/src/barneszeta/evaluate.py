"""Production evaluators for the Barnes multiple zeta function.

The function evaluated throughout is

    zeta_r(s, a, w) = sum over m in Z_{>=0}^r of (a + m.w)^(-s),

absolutely convergent for Re(s) > r, with simple poles at s = 1, ..., r and
analytic continuation into Re(s) > r - 1 reachable through the truncated-sum
representation below.

Two evaluation strategies are provided:

``eval_direct``
    Shell summation of the defining series over ``a + m.w <= X`` with a
    *rigorous* tail bound.  Packing unit cubes at the lattice points shows
    ``#{m : m.w <= y} <= (y + sum(w))^r / (r! prod(w))``, and a Stieltjes
    integral against that count bounds the discarded tail by

        B(X) = sigma/(sigma-r) * (1 + sum(w)/X)^r / (r! prod(w)) * X^(r-sigma)

    ``X`` is grown until ``B(X) <= rel_tol * |partial sum|``.

``eval_approx``
    The truncated box sum over ``0 <= m_i <= x`` plus a closed-form boundary
    correction assembled from the 2^r - 1 box corners,

        - sum_{E nonempty} (-1)^{|E|} (a + x*sum_{i in E} w_i)^(r-s)
          / ((s-1)...(s-r) w_1...w_r),

    valid for Re(s) > r - 1 provided ``|t| <= 2*pi*x / C`` with ``C > 1``;
    the neglected remainder decays like ``x^(r-1-sigma)``.

``eval_auto`` dispatches between the two and doubles the truncation length
until a requested relative tolerance is met or the term cap is reached.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Optional

import numpy as np

from .errors import (
    BudgetExceeded,
    InvalidParameter,
    NearPole,
    SigmaTooSmall,
    TruncationTooShort,
)
from .numerics import CompensatedSum, block_ranges, cpow, fsum_complex, spow
from .params import BarnesParams, validate_params

#: Exclusion radius around the poles s = 1, ..., r.
POLE_GUARD = 1e-6
#: Default proportionality constant in the validity condition |t| <= 2*pi*x/C.
C_DEFAULT = 2.0
#: Multiplier of the heuristic error estimate K_err * x^(r-1-sigma).
K_ERR = 10.0
#: Default cap on lattice terms per evaluation; see :func:`resolve_term_cap`.
DEFAULT_TERM_CAP = 10**8
#: Environment variable overriding the default term cap.
TERM_CAP_ENV = "BARNES_TERM_CAP"
#: Floor and safety factor of the automatic truncation length.
X_MIN = 50.0
X_SAFETY = 2.0
#: Fixed multiplier of the computable remainder surrogate in em_block_sum.
REMAINDER_MULTIPLIER = 2.0


class ErrKind(str, Enum):
    RIGOROUS = "rigorous_bound"
    HEURISTIC = "heuristic_estimate"


class Method(str, Enum):
    DIRECT = "direct_series"
    APPROX = "approx_formula"


@dataclass(frozen=True)
class EvalResult:
    """Value of one evaluation together with its error information."""

    value: complex
    err_estimate: float
    err_kind: ErrKind
    method: Method
    terms_used: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value.real) and math.isfinite(self.value.imag)):
            raise InvalidParameter("evaluation produced a non-finite value")
        if not (math.isfinite(self.err_estimate) and self.err_estimate >= 0.0):
            raise InvalidParameter("error estimate must be finite and >= 0")
        if self.terms_used < 1:
            raise InvalidParameter("terms_used must be >= 1")


@dataclass(frozen=True)
class BoxRange:
    """Per-axis summation ranges ``p_i <= m_i <= q_i`` (real endpoints)."""

    ranges: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not self.ranges:
            raise InvalidParameter("BoxRange needs at least one axis")
        for p, q in self.ranges:
            if not (0.0 <= p < q) or not (math.isfinite(p) and math.isfinite(q)):
                raise InvalidParameter(f"each range needs 0 <= p < q, got ({p}, {q})")


def resolve_term_cap(term_cap: Optional[int] = None) -> int:
    """Effective term cap: explicit argument > environment > default."""
    if term_cap is not None:
        cap = int(term_cap)
    else:
        env = os.environ.get(TERM_CAP_ENV)
        cap = int(float(env)) if env else DEFAULT_TERM_CAP
    if cap < 1:
        raise InvalidParameter(f"term cap must be >= 1, got {cap}")
    return cap


def _check_pole_guard(s: complex, r: int) -> None:
    for j in range(1, r + 1):
        if abs(s - j) < POLE_GUARD:
            raise NearPole(f"s = {s} is within {POLE_GUARD} of the pole at {j}")


def _require_rel_tol(rel_tol: float) -> float:
    if not (1e-14 < rel_tol < 1.0):
        raise InvalidParameter(f"rel_tol must lie in (1e-14, 1), got {rel_tol!r}")
    return float(rel_tol)


# ---------------------------------------------------------------------------
# lattice enumeration
# ---------------------------------------------------------------------------

def _sum_band(params: BarnesParams, s: complex, lo: float, hi: float,
              acc: CompensatedSum) -> int:
    """Add ``(a + m.w)^(-s)`` over all m with ``lo < a + m.w <= hi``.

    Returns the number of lattice points visited.  Successive bands tile
    exactly because both cuts use the same floor computation.
    """
    a, w = params.a, params.w
    w0 = w[0]

    def axis_range(offset: float) -> tuple[int, int]:
        m_hi = math.floor((hi - offset) / w0)
        m_lo = max(0, math.floor((lo - offset) / w0) + 1)
        return m_lo, m_hi

    count = 0

    def recurse(depth: int, offset: float) -> None:
        nonlocal count
        if depth == 0:
            m_lo, m_hi = axis_range(offset)
            if m_hi < m_lo:
                return
            n = m_hi - m_lo + 1
            for blo, bhi in block_ranges(n):
                base = offset + w0 * np.arange(m_lo + blo, m_lo + bhi, dtype=float)
                acc.add_array(cpow(base, -s))
            count += n
            return
        wi = w[depth]
        top = math.floor((hi - offset) / wi)
        for m in range(top + 1):
            recurse(depth - 1, offset + m * wi)

    recurse(params.r - 1, a)
    return count


def _count_region(params: BarnesParams, hi: float) -> int:
    """Exact ``#{m >= 0 : a + m.w <= hi}`` (vectorised over the last axis)."""
    a, w = params.a, params.w
    w0 = w[0]

    def counts_for(offsets: np.ndarray) -> int:
        inner = np.floor((hi - offsets) / w0).astype(np.int64) + 1
        return int(inner[inner > 0].sum())

    if params.r == 1:
        return counts_for(np.asarray([a]))
    if params.r == 2:
        top = math.floor((hi - a) / w[1])
        if top < 0:
            return 0
        return counts_for(a + w[1] * np.arange(top + 1, dtype=float))

    total = 0

    def recurse(depth: int, offset: float) -> None:
        nonlocal total
        if depth == 1:
            top = math.floor((hi - offset) / w[1])
            if top >= 0:
                total += counts_for(offset + w[1] * np.arange(top + 1, dtype=float))
            return
        top = math.floor((hi - offset) / w[depth])
        for m in range(top + 1):
            recurse(depth - 1, offset + m * w[depth])

    recurse(params.r - 1, a)
    return total


def direct_tail_bound(params: BarnesParams, sigma: float, X: float) -> float:
    """Rigorous bound on ``sum_{a+m.w > X} (a+m.w)^(-sigma)`` for sigma > r."""
    r = params.r
    ws = params.weight_sum
    return (
        sigma / (sigma - r)
        * (1.0 + ws / X) ** r
        / (math.factorial(r) * params.weight_product)
        * X ** (r - sigma)
    )


def _solve_tail_x(params: BarnesParams, sigma: float, target: float, x_hint: float) -> float:
    """Smallest X (approximately) with ``direct_tail_bound(X) <= target``."""
    r = params.r
    x = max(x_hint, params.a + params.weight_sum)
    for _ in range(3):
        pref = (
            sigma / (sigma - r)
            * (1.0 + params.weight_sum / x) ** r
            / (math.factorial(r) * params.weight_product)
        )
        x = (pref / target) ** (1.0 / (sigma - r))
    return x


def eval_direct(
    params: BarnesParams,
    s: complex,
    rel_tol: float,
    term_cap: Optional[int] = None,
) -> EvalResult:
    """Direct shell summation with a rigorous relative tail bound.

    Requires ``Re(s) > r``.  Raises :class:`BudgetExceeded` when the
    truncation radius implied by ``rel_tol`` needs more lattice terms than
    the term cap (the bound decays only like ``X^(r-sigma)``, so this is the
    normal outcome for ``sigma`` close to ``r`` at tight tolerances).
    """
    s = complex(s)
    sigma = s.real
    r = params.r
    rel_tol = _require_rel_tol(rel_tol)
    cap = resolve_term_cap(term_cap)
    if sigma <= r:
        raise SigmaTooSmall(f"direct series requires Re(s) > r = {r}, got {sigma}")

    acc = CompensatedSum()
    x_lo = 0.0
    x_hi = params.a + 16.0 * max(params.w)
    terms = _sum_band(params, s, x_lo, x_hi, acc)
    x_lo = x_hi

    for _ in range(200):
        abs_s = abs(acc.value)
        bound = direct_tail_bound(params, sigma, x_lo)
        if abs_s > 0.0 and bound <= rel_tol * abs_s:
            return EvalResult(
                value=acc.value,
                err_estimate=bound,
                err_kind=ErrKind.RIGOROUS,
                method=Method.DIRECT,
                terms_used=terms,
            )
        scale = abs_s if abs_s > 0.0 else params.a ** (-sigma) * 1e-2
        x_hi = _solve_tail_x(params, sigma, 0.45 * rel_tol * scale, x_lo)
        x_hi = max(x_hi, 1.25 * x_lo)
        # Cheap volume estimate first (in log space: X may be astronomically
        # large near sigma = r), exact enumeration only if plausible.
        log_vol = r * math.log(max(x_hi - params.a, 1.0)) - math.log(
            math.factorial(r) * params.weight_product
        )
        if log_vol > math.log(1.05 * cap):
            raise BudgetExceeded(
                f"direct series at s={s} needs ~1e{log_vol / math.log(10.0):.1f} "
                f"terms for rel_tol={rel_tol:g}; cap is {cap}"
            )
        terms += _sum_band(params, s, x_lo, x_hi, acc)
        if terms > cap:
            raise BudgetExceeded(
                f"direct series at s={s} exceeded the term cap {cap}"
            )
        x_lo = x_hi
    raise BudgetExceeded("direct series did not reach its tail target")


# ---------------------------------------------------------------------------
# truncated formula with boundary correction
# ---------------------------------------------------------------------------

def boundary_correction(params: BarnesParams, s: complex, x: float) -> complex:
    """Closed-form boundary term of the truncated box sum.

    ``- sum over nonempty subsets E of (-1)^{|E|} (a + x * sum_{i in E} w_i)^(r-s)``
    divided by ``(s-1)...(s-r) * w_1...w_r``.  For r = 1 this is
    ``(a + x w)^(1-s) / ((s-1) w)``.
    """
    s = complex(s)
    r = params.r
    if x <= 0.0 or not math.isfinite(x):
        raise InvalidParameter(f"x must be finite and > 0, got {x!r}")
    _check_pole_guard(s, r)
    denom = params.weight_product
    for j in range(1, r + 1):
        denom *= s - j
    terms = []
    for mask in range(1, 1 << r):
        wsum = sum(params.w[i] for i in range(r) if mask >> i & 1)
        sign = -1.0 if bin(mask).count("1") % 2 else 1.0
        terms.append(sign * spow(params.a + x * wsum, r - s))
    return -fsum_complex(terms) / denom


def em_block_sum(params: BarnesParams, s: complex, box: BoxRange) -> tuple[complex, float]:
    """Euler--Maclaurin main term of a box partial sum, plus a remainder surrogate.

    For the box ``prod [p_i, q_i]`` the main term is::

        1/((s-1)...(s-r) w_1...w_r)
            * sum over corners b (b_i in {p_i, q_i})
              of (-1)^{#(b_i = q_i)} (a + b.w)^(r-s)

    The returned remainder estimate is a computable surrogate for the
    neglected Euler--Maclaurin corrections,
    ``REMAINDER_MULTIPLIER * sum_i sum_{c_j in {p_j,q_j}, j <= i}
    (prod_{j<i} c_j) * c_i^(r-i-sigma)`` with each ``c`` floored at 1.
    Valid for ``Re(s) > r - 1`` and s away from the poles.
    """
    s = complex(s)
    r = params.r
    sigma = s.real
    if len(box.ranges) != r:
        raise InvalidParameter(f"box has {len(box.ranges)} axes, params have r = {r}")
    if sigma <= r - 1:
        raise SigmaTooSmall(f"requires Re(s) > r - 1 = {r - 1}, got {sigma}")
    _check_pole_guard(s, r)

    denom = params.weight_product
    for j in range(1, r + 1):
        denom *= s - j
    corner_terms = []
    for choice in product((0, 1), repeat=r):
        b = [box.ranges[i][choice[i]] for i in range(r)]
        sign = -1.0 if sum(choice) % 2 else 1.0
        base = params.a + math.fsum(b[i] * params.w[i] for i in range(r))
        corner_terms.append(sign * spow(base, r - s))
    main = fsum_complex(corner_terms) / denom

    remainder = 0.0
    for i in range(1, r + 1):
        for cs in product(*(box.ranges[j] for j in range(i))):
            lead = 1.0
            for cj in cs[:-1]:
                lead *= max(cj, 1.0)
            remainder += lead * max(cs[-1], 1.0) ** (r - i - sigma)
    return main, REMAINDER_MULTIPLIER * remainder


def _box_sum(params: BarnesParams, s: complex, n: int) -> complex:
    """Plain box sum over ``0 <= m_i <= n`` (chunked, compensated)."""
    a, w = params.a, params.w
    w0 = w[0]
    acc = CompensatedSum()
    inner = w0 * np.arange(n + 1, dtype=float)

    def recurse(depth: int, offset: float) -> None:
        if depth == 0:
            for blo, bhi in block_ranges(n + 1):
                acc.add_array(cpow(offset + inner[blo:bhi], -s))
            return
        for m in range(n + 1):
            recurse(depth - 1, offset + m * w[depth])

    recurse(params.r - 1, a)
    return acc.value


def eval_approx(
    params: BarnesParams,
    s: complex,
    x: float,
    C: float = C_DEFAULT,
    term_cap: Optional[int] = None,
) -> EvalResult:
    """Truncated box sum plus boundary correction.

    ``value = sum_{0 <= m_i <= floor(x)} (a+m.w)^(-s) + boundary_correction``
    with heuristic error ``K_ERR * x^(r-1-sigma)``; requires
    ``Re(s) > r - 1``, ``x >= 1`` and ``|Im(s)| <= 2*pi*x / C``.
    """
    s = complex(s)
    sigma = s.real
    r = params.r
    if not (C > 1.0):
        raise InvalidParameter(f"C must be > 1, got {C!r}")
    if x < 1.0 or not math.isfinite(x):
        raise InvalidParameter(f"x must be >= 1, got {x!r}")
    if sigma <= r - 1:
        raise SigmaTooSmall(f"requires Re(s) > r - 1 = {r - 1}, got {sigma}")
    if abs(s.imag) > 2.0 * math.pi * x / C:
        raise TruncationTooShort(
            f"|t| = {abs(s.imag):g} exceeds 2*pi*x/C = {2.0 * math.pi * x / C:g}"
        )
    _check_pole_guard(s, r)
    cap = resolve_term_cap(term_cap)
    n = math.floor(x)
    terms = (n + 1) ** r
    if terms > cap:
        raise BudgetExceeded(f"box sum needs (floor(x)+1)^r = {terms} terms; cap is {cap}")
    value = _box_sum(params, s, n) + boundary_correction(params, s, x)
    return EvalResult(
        value=value,
        err_estimate=K_ERR * x ** (r - 1 - sigma),
        err_kind=ErrKind.HEURISTIC,
        method=Method.APPROX,
        terms_used=terms,
    )


def eval_auto(
    params: BarnesParams,
    s: complex,
    rel_tol: float,
    C: float = C_DEFAULT,
    x_min: float = X_MIN,
    x_safety: float = X_SAFETY,
    term_cap: Optional[int] = None,
    max_doublings: Optional[int] = None,
) -> EvalResult:
    """Dispatching evaluator.

    For ``Re(s) > r + 0.1`` and ``|Im(s)| <= 5`` the direct series is tried
    first (it carries a rigorous bound); if its truncation radius would
    exceed the term cap, evaluation falls back to the truncated formula.
    The truncated formula starts at ``x = x_safety * max(x_min, C|t|/2pi)``
    and doubles ``x`` (within the term cap) until the first difference of
    successive values or the heuristic error estimate drops below
    ``rel_tol * |value|``.  ``max_doublings = 0`` pins the evaluation at the
    starting ``x`` (the fixed-truncation policy used by the mean-square
    integrator).
    """
    s = complex(s)
    sigma = s.real
    r = params.r
    rel_tol = _require_rel_tol(rel_tol)
    if sigma <= r - 1:
        raise SigmaTooSmall(f"requires Re(s) > r - 1 = {r - 1}, got {sigma}")
    _check_pole_guard(s, r)
    cap = resolve_term_cap(term_cap)

    if sigma > r + 0.1 and abs(s.imag) <= 5.0:
        try:
            return eval_direct(params, s, rel_tol, term_cap=cap)
        except BudgetExceeded:
            pass  # fall through to the truncated formula

    x = x_safety * max(x_min, C * abs(s.imag) / (2.0 * math.pi))
    if (math.floor(x) + 1) ** r > cap:
        raise BudgetExceeded(
            f"starting truncation x = {x:g} already needs more than {cap} terms"
        )
    result = eval_approx(params, s, x, C=C, term_cap=cap)
    if max_doublings == 0:
        return result

    doublings = 0
    while max_doublings is None or doublings < max_doublings:
        x2 = 2.0 * x
        if (math.floor(x2) + 1) ** r > cap:
            return result  # cap reached: best value within budget
        nxt = eval_approx(params, s, x2, C=C, term_cap=cap)
        diff = abs(nxt.value - result.value)
        scale = abs(nxt.value)
        result, x = nxt, x2
        doublings += 1
        if scale > 0.0 and (diff <= rel_tol * scale or nxt.err_estimate <= rel_tol * scale):
            return result
    return result


# ---------------------------------------------------------------------------
# telescoping boundary identity (exact self-test)
# ---------------------------------------------------------------------------

def boundary_identity_check(
    a: float,
    w: tuple[float, ...] | list[float],
    s: complex,
    x: float,
    N: float,
) -> tuple[complex, complex]:
    """Exact telescoping identity behind the boundary correction.

    Splitting each axis of the box ``[0, N]^r`` into ``(0, x)`` and
    ``(x, N)`` and summing the signed corner terms of every block except the
    all-``(0, x)`` one telescopes to pure boundary differences::

        lhs = sum over interval assignments != all-(0,x)
                sum over corners b of (-1)^{#(b_i = q_i)} (a + b.w)^(r-s)
        rhs = sum over nonempty subsets E of
                (-1)^{|E|} [ (a + N*sum_E w)^(r-s) - (a + x*sum_E w)^(r-s) ]

    Returns ``(lhs, rhs)``; they agree exactly, so the floating-point
    difference is pure rounding.  Valid for any complex s (the identity is
    algebraic); r = len(w) must be at most 5 and ``1 <= x <= N``.
    """
    params = validate_params(a, w)
    r = params.r
    s = complex(s)
    if r > 5:
        raise InvalidParameter(f"identity check supports r <= 5, got r = {r}")
    if not (1.0 <= x <= N):
        raise InvalidParameter(f"need 1 <= x <= N, got x = {x}, N = {N}")

    low, high = (0.0, x), (x, N)
    lhs_terms = []
    for assignment in product((low, high), repeat=r):
        if all(iv is low for iv in assignment):
            continue
        for choice in product((0, 1), repeat=r):
            b_dot_w = math.fsum(
                assignment[i][choice[i]] * params.w[i] for i in range(r)
            )
            sign = -1.0 if sum(choice) % 2 else 1.0
            lhs_terms.append(sign * spow(params.a + b_dot_w, r - s))
    lhs = fsum_complex(lhs_terms)

    rhs_terms = []
    for mask in range(1, 1 << r):
        wsum = sum(params.w[i] for i in range(r) if mask >> i & 1)
        sign = -1.0 if bin(mask).count("1") % 2 else 1.0
        rhs_terms.append(sign * spow(params.a + N * wsum, r - s))
        rhs_terms.append(-sign * spow(params.a + x * wsum, r - s))
    rhs = fsum_complex(rhs_terms)
    return lhs, rhs
