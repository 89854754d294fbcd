"""Exception hierarchy for the barneszeta package.

Two families matter to callers:

* ``DomainError`` -- the request itself is invalid (bad parameters, a point
  too close to a pole, a truncation length too short for the requested
  imaginary part, ...).  The CLI maps these to exit code 2.
* ``ResourceError`` -- the request is valid but cannot be met within the
  configured budgets (term caps, evaluation caps, integer-width limits).
  The CLI maps these to exit code 3.
"""


class BarnesZetaError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BarnesZetaError):
    """Invalid input: parameter or domain precondition violated."""


class ResourceError(BarnesZetaError):
    """Valid input whose evaluation exceeds a configured budget."""


# -- parameter validation --------------------------------------------------

class NonPositiveShift(DomainError):
    """The shift ``a`` must be strictly positive."""


class NonPositiveWeight(DomainError):
    """Every weight ``w_i`` must be strictly positive."""


class EmptyWeights(DomainError):
    """The weight vector must contain at least one entry."""


class ConflictingDeclaration(DomainError):
    """Declared weight structure contradicts the supplied weights."""


class UnsupportedWeightStructure(DomainError):
    """Weight structure not handled by the requested operation."""


class InvalidParameter(DomainError):
    """Generic precondition violation (tolerance range, grid shape, ...)."""


# -- analytic-domain violations --------------------------------------------

class SigmaTooSmall(DomainError):
    """Re(s) below the convergence/validity threshold of the operation."""


class NearPole(DomainError):
    """s is within the pole guard of one of the poles at s = 1, ..., r."""


class PolePoint(DomainError):
    """Exact (or near-exact) pole of the Hurwitz zeta at s = 1."""


class TruncationTooShort(DomainError):
    """Truncation length x too small for the requested imaginary part."""


class InsufficientCheckpoints(DomainError):
    """Too few usable checkpoints for a residual-exponent fit."""


# -- resource limits --------------------------------------------------------

class BudgetExceeded(ResourceError):
    """Required work exceeds the configured term or evaluation cap."""


class Overflow(ResourceError):
    """Exact integer count grew beyond the supported width."""
