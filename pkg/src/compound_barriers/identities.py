"""Closed algebraic forms for hyperbolic functions of summed inverses.

These five identities are the machinery that turns rapidity-space bounds
into rational expressions in T, R, N.  Each function returns the closed
form and equals the naive transcendental evaluation (e.g.
``sinh(asinh(a) + asinh(b))``) to double-precision accuracy over its
natural domain.
"""

from __future__ import annotations

import math

from .errors import DomainError


def _check_finite(a: float, b: float) -> None:
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError(f"arguments must be finite, got {a!r}, {b!r}")


def sinh_sum_asinh(a: float, b: float) -> float:
    """sinh(asinh a + asinh b) = a sqrt(1+b^2) + b sqrt(1+a^2)."""
    _check_finite(a, b)
    return a * math.sqrt(1.0 + b * b) + b * math.sqrt(1.0 + a * a)


def cosh_sum_asinh(a: float, b: float) -> float:
    """cosh(asinh a + asinh b) = sqrt(1+a^2) sqrt(1+b^2) + a b."""
    _check_finite(a, b)
    return math.sqrt(1.0 + a * a) * math.sqrt(1.0 + b * b) + a * b


def cosh_sum_acosh(a: float, b: float) -> float:
    """cosh(acosh a + acosh b) = a b + sqrt(a^2-1) sqrt(b^2-1), for a, b >= 1."""
    _check_finite(a, b)
    if a < 1.0 or b < 1.0:
        raise DomainError(f"acosh arguments must be >= 1, got {a!r}, {b!r}")
    return a * b + math.sqrt(a * a - 1.0) * math.sqrt(b * b - 1.0)


def tanh_sum_atanh(a: float, b: float) -> float:
    """tanh(atanh a + atanh b) = (a + b)/(1 + a b), for |a|, |b| < 1."""
    _check_finite(a, b)
    if abs(a) >= 1.0 or abs(b) >= 1.0:
        raise DomainError(f"atanh arguments must satisfy |x| < 1, got {a!r}, {b!r}")
    return (a + b) / (1.0 + a * b)


def sech_sum_asech(a: float, b: float) -> float:
    """sech(asech a + asech b) = a b / (1 + sqrt(1-a^2) sqrt(1-b^2)).

    Domain a, b in (0, 1].  Follows from the acosh identity applied to the
    reciprocals, which is what makes the rational transmission bound work.
    """
    _check_finite(a, b)
    if not (0.0 < a <= 1.0 and 0.0 < b <= 1.0):
        raise DomainError(f"asech arguments must lie in (0, 1], got {a!r}, {b!r}")
    return a * b / (1.0 + math.sqrt(1.0 - a * a) * math.sqrt(1.0 - b * b))
