"""The diagonal constant zeta-tilde_r(sigma, a, w).

zeta-tilde is the double series over pairs (m, n) of nonnegative integer
tuples with ``m.w = n.w`` of ``(a + m.w)^(-2*sigma)`` — the coefficient of T
in the mean-square asymptotics of ``zeta_r(sigma + it)``.

Two weight structures are computable:

* **AssumedIndependent** — Q-linearly independent weights force ``m = n``,
  so the series collapses to ``zeta_r(2*sigma, a, w)``; evaluated by the
  direct-series engine.  Requires ``2*sigma > r``.
* **Rational** — weights ``w_i = p_i / q`` share the lattice ``(1/q) Z``;
  grouping by ``k = q * m.w`` gives ``sum_k R(k)^2 (a + k/q)^(-2*sigma)``
  with ``R(k)`` the denumerant (representation count) of ``k`` by the parts
  ``p``.  Since ``R(k) = O(k^(r-1))``, convergence requires
  ``sigma > r - 1/2``.

The rational series converges far too slowly for tight tolerances when
``2*sigma - (2r - 1)`` is small, so it is evaluated through the exact
quasi-polynomial structure of the denumerant: ``R(rho + j*L)`` with
``L = lcm(p)`` is a polynomial in ``j`` of degree ``r - 1`` for every
residue ``rho``.  The fit is done in exact rational arithmetic from the
dynamic-programming table and verified at two extra points, the square is
shifted into powers of ``(j + beta)``, and each power contributes a Hurwitz
zeta tail — giving near machine-precision results at any ``sigma`` in
range.  Very large ``L`` falls back to plain truncation with a rigorous
binomial-majorant tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import (
    BudgetExceeded,
    ConflictingDeclaration,
    InvalidParameter,
    SigmaTooSmall,
    UnsupportedWeightStructure,
)
from .evaluate import eval_direct, resolve_term_cap
from .numerics import CompensatedSum
from .oracle import hurwitz_zeta
from .params import BarnesParams, WeightKind, WeightStructure, denumerant_table

#: Largest lcm(p) for which the quasi-polynomial path is used.
QUASI_L_LIMIT = 10_000


class TildePath(str, Enum):
    INDEPENDENT_REDUCTION = "independent_reduction"
    RATIONAL_SERIES = "rational_series"


@dataclass(frozen=True)
class TildeResult:
    """Diagonal constant with the path that produced it."""

    value: float
    err_estimate: float
    path: TildePath

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value) and self.value > 0.0):
            raise InvalidParameter("tilde value must be finite and > 0")
        if not (math.isfinite(self.err_estimate) and self.err_estimate >= 0.0):
            raise InvalidParameter("err_estimate must be finite and >= 0")


def _require_rel_tol(rel_tol: float) -> float:
    if not (1e-14 < rel_tol < 1.0):
        raise InvalidParameter(f"rel_tol must lie in (1e-14, 1), got {rel_tol!r}")
    return float(rel_tol)


def tilde_zeta(
    params: BarnesParams,
    sigma: float,
    structure: WeightStructure,
    rel_tol: float,
    term_cap: Optional[int] = None,
) -> TildeResult:
    """Compute the diagonal constant for the declared weight structure."""
    sigma = float(sigma)
    rel_tol = _require_rel_tol(rel_tol)
    r = params.r

    if structure.kind == WeightKind.ASSUMED_INDEPENDENT:
        if not (2.0 * sigma > r):
            raise SigmaTooSmall(
                f"independent reduction requires 2*sigma > r = {r}, got sigma = {sigma}"
            )
        res = eval_direct(params, complex(2.0 * sigma), rel_tol, term_cap=term_cap)
        return TildeResult(
            value=res.value.real,
            err_estimate=res.err_estimate,
            path=TildePath.INDEPENDENT_REDUCTION,
        )

    if structure.kind == WeightKind.RATIONAL:
        if not (sigma > r - 0.5):
            raise SigmaTooSmall(
                f"rational series requires sigma > r - 1/2 = {r - 0.5}, got {sigma}"
            )
        q, p = structure.q, structure.p
        if q is None or p is None or len(p) != r:
            raise UnsupportedWeightStructure(
                "rational structure is missing its lattice data (q, p)"
            )
        for wi, pi in zip(params.w, p):
            if abs(wi - pi / q) > 1e-12 * abs(wi):
                raise ConflictingDeclaration(
                    f"declared p/q = {pi}/{q} does not match weight {wi!r}"
                )
        value, err = _rational_series(params.a, q, p, sigma, rel_tol, term_cap)
        return TildeResult(value=value, err_estimate=err, path=TildePath.RATIONAL_SERIES)

    raise UnsupportedWeightStructure(f"unsupported weight structure: {structure.kind!r}")


# ---------------------------------------------------------------------------
# rational path
# ---------------------------------------------------------------------------

def _newton_fit(values: list[int]) -> list[Fraction]:
    """Exact monomial coefficients of the polynomial through (j, values[j])."""
    n = len(values)
    diffs = [Fraction(v) for v in values]
    deltas = [diffs[0]]
    for level in range(1, n):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        deltas.append(diffs[0])
    # P(j) = sum_k deltas[k] * C(j, k); expand C(j, k) to monomials.
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]  # C(j, 0) = 1
    for k in range(n):
        if k > 0:
            # C(j, k) = C(j, k-1) * (j - (k-1)) / k
            new = [Fraction(0)] * (len(basis) + 1)
            for i, c in enumerate(basis):
                new[i + 1] += c
                new[i] -= c * (k - 1)
            basis = [c / k for c in new]
        for i, c in enumerate(basis):
            coeffs[i] += deltas[k] * c
    return coeffs


def _poly_eval(coeffs: list[Fraction], j: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * j + c
    return acc


def _poly_square(coeffs: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (2 * len(coeffs) - 1)
    for i, ci in enumerate(coeffs):
        for j, cj in enumerate(coeffs):
            out[i + j] += ci * cj
    return out


def _poly_shift(coeffs: list[float], beta: float) -> list[float]:
    """Rewrite ``sum c_d j^d`` as ``sum g_d (j + beta)^d`` (g = shift by -beta)."""
    # P(j) = P((j + beta) - beta): expand each ((u) - beta)^d in u = j + beta.
    n = len(coeffs)
    g = [0.0] * n
    for d, c in enumerate(coeffs):
        if c == 0.0:
            continue
        for k in range(d + 1):
            g[k] += c * math.comb(d, k) * (-beta) ** (d - k)
    return g


def _rational_series(
    a: float,
    q: int,
    p: tuple[int, ...],
    sigma: float,
    rel_tol: float,
    term_cap: Optional[int],
) -> tuple[float, float]:
    r = len(p)
    L = math.lcm(*p)
    if L <= QUASI_L_LIMIT:
        return _rational_quasi(a, q, p, L, sigma, rel_tol)
    return _rational_truncated(a, q, p, sigma, rel_tol, term_cap)


def _rational_quasi(
    a: float, q: int, p: tuple[int, ...], L: int, sigma: float, rel_tol: float
) -> tuple[float, float]:
    """Head sum + exact quasi-polynomial fit + Hurwitz zeta tails."""
    r = len(p)
    j0 = r + 2  # tail starts at k = j0 * L; fit uses j = 0..r-1, checks r, r+1
    k_max = j0 * L - 1
    table = denumerant_table(p, k_max)

    head = CompensatedSum()
    for k in range(j0 * L):
        rk = table[k]
        if rk:
            head.add(complex(float(rk * rk) * (a + k / q) ** (-2.0 * sigma)))
    head_val = head.value.real

    # Per-residue polynomial fit (exact), squared, shifted to (j + beta)^d.
    two_sigma = 2.0 * sigma
    scale = (L / q) ** (-two_sigma)
    shifted: list[tuple[float, list[float]]] = []  # (beta, g coefficients)
    for rho in range(L):
        vals = [int(table[rho + j * L]) for j in range(r + 2)]
        if not any(vals):
            continue
        coeffs = _newton_fit(vals[:r])
        for j in (r, r + 1):
            if _poly_eval(coeffs, j) != vals[j]:
                raise RuntimeError(
                    "denumerant quasi-polynomial fit failed verification "
                    f"(p={p}, residue {rho})"
                )
        sq = _poly_square(coeffs)
        beta = (a * q + rho) / L
        g = _poly_shift([float(c) for c in sq], beta)
        shifted.append((beta, g))

    # Distribute the error budget over the Hurwitz tail calls.
    weight_total = sum(
        abs(gd) * scale * max(1.0, (beta + j0) ** (d + 1 - two_sigma))
        for beta, g in shifted
        for d, gd in enumerate(g)
        if gd != 0.0
    )
    target_abs = 0.5 * rel_tol * max(head_val, (a ** (-two_sigma)))
    tail = CompensatedSum()
    err = 0.0
    for beta, g in shifted:
        for d, gd in enumerate(g):
            if gd == 0.0:
                continue
            s_d = two_sigma - d
            weight = abs(gd) * scale * max(1.0, (beta + j0) ** (d + 1 - two_sigma))
            tol_d = max(1e-15, target_abs * weight / max(weight_total, 1e-300) /
                        max(abs(gd) * scale, 1e-300))
            hz = hurwitz_zeta(complex(s_d), beta + j0, abs_tol=min(tol_d, 1e-6))
            tail.add(complex(gd * scale * hz.value.real))
            err += abs(gd) * scale * hz.claimed_abs_error
    value = head_val + tail.value.real
    err += 1e-15 * abs(value) * (j0 * L + len(shifted))
    return value, err


def _rational_truncated(
    a: float,
    q: int,
    p: tuple[int, ...],
    sigma: float,
    rel_tol: float,
    term_cap: Optional[int],
) -> tuple[float, float]:
    """Plain truncation with the rigorous binomial-majorant tail bound.

    ``R(k) <= binom(k + r - 1, r - 1) <= (k + r)^(r-1) / (r-1)!`` gives

        tail(K) <= q^(2 sigma) / ((r-1)!)^2 * (1 + r/K)^(2r-2)
                   * K^(2r-1-2 sigma) / (2 sigma - (2r-1)).
    """
    r = len(p)
    cap = resolve_term_cap(term_cap)
    two_sigma = 2.0 * sigma
    expo = two_sigma - (2 * r - 1)  # > 0 by precondition
    fact = math.factorial(r - 1) ** 2

    def tail_bound(K: float) -> float:
        return (
            q ** two_sigma / fact * (1.0 + r / K) ** (2 * r - 2) * K ** (-expo) / expo
        )

    # Estimate the head cheaply to set the absolute target.
    probe = denumerant_table(p, min(2000, cap))
    head_probe = math.fsum(
        float(v * v) * (a + k / q) ** (-two_sigma) for k, v in enumerate(probe) if v
    )
    target = 0.5 * rel_tol * max(head_probe, a ** (-two_sigma))
    K = 1000.0
    for _ in range(4):
        K = (q ** two_sigma / fact * (1.0 + r / K) ** (2 * r - 2) / (expo * target)) ** (
            1.0 / expo
        )
    K_int = int(math.ceil(K)) + 1
    if K_int > cap:
        raise BudgetExceeded(
            f"rational series needs {K_int} terms for rel_tol={rel_tol:g}; "
            f"cap is {cap}"
        )
    table = denumerant_table(p, K_int)
    acc = CompensatedSum()
    for k, v in enumerate(table):
        if v:
            acc.add(complex(float(v * v) * (a + k / q) ** (-two_sigma)))
    value = acc.value.real
    err = tail_bound(float(K_int)) + 1e-15 * value * K_int
    return value, err
