"""Exact transfer-matrix algebra for 1D scattering / parametric excitation.

A barrier (or excitation episode) is represented by the pair of Bogoliubov
coefficients (alpha, beta) of the 2x2 matrix

    M = [[alpha, beta], [beta*, alpha*]],     |alpha|^2 - |beta|^2 = 1,

which always admits the polar form

    alpha = cosh(theta) e^{i phi_alpha},  beta = sinh(theta) e^{i phi_beta},

with rapidity theta = acosh|alpha| >= 0.  Conventions used throughout:

* compound systems compose left-to-right: the first matrix is the first
  barrier encountered, M_total = M_1 M_2 ... M_n (order matters);
* translating a barrier by a multiplies beta by e^{+2ika} and leaves alpha
  untouched, so theta, T, R and N are position independent;
* amplitudes are taken as t = 1/alpha = sech(theta) e^{-i phi_alpha} and
  r = beta/alpha = tanh(theta) e^{-i(phi_alpha - phi_beta)}.

Everything here is an immutable value and every function is pure, so the
module is thread-safe without qualification.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import reduce

from .errors import (
    DomainError,
    EmptySequenceError,
    NormalizationError,
    RapidityOverflowError,
)

# Absolute tolerance on |alpha|^2 - |beta|^2 - 1 for externally supplied
# coefficients (desk scale, theta <= 20 keeps doubles far inside this).
NORM_TOL = 1e-10

# Rapidities beyond this are refused outright: cosh overflows doubles near
# 710 and composition round-off is already enormous well before that.
RAPIDITY_LIMIT = 350.0

# Composition results are only rejected when the invariant error exceeds
# what honest double-precision round-off could produce, i.e. when the
# entries are numerically meaningless (catastrophic cancellation from a
# huge intermediate rapidity collapsing back to order one).
_SANITY_TOL = 1e-6

_TWO_PI = 2.0 * math.pi


def _wrap_angle(phi: float) -> float:
    """Reduce an angle to the principal branch (-pi, pi]."""
    m = math.fmod(phi, _TWO_PI)
    if m <= -math.pi:
        m += _TWO_PI
    elif m > math.pi:
        m -= _TWO_PI
    return m


def _is_finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True, slots=True)
class TransferMatrix:
    """Validated Bogoliubov pair (alpha, beta) with |alpha|^2 - |beta|^2 = 1.

    Construction sanity-checks the invariant at a loose, scale-aware
    tolerance that only trips on numerically meaningless data; use
    :func:`make_transfer` to enforce the strict normalization contract on
    externally supplied coefficients.
    """

    alpha: complex
    beta: complex

    def __post_init__(self):
        a = complex(self.alpha)
        b = complex(self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if not (_is_finite(a) and _is_finite(b)):
            raise DomainError(f"non-finite Bogoliubov coefficients: alpha={a}, beta={b}")
        a2 = a.real * a.real + a.imag * a.imag
        b2 = b.real * b.real + b.imag * b.imag
        if abs(a2 - b2 - 1.0) > _SANITY_TOL * max(1.0, a2):
            raise NormalizationError(
                f"|alpha|^2 - |beta|^2 = {a2 - b2!r}, not 1: numerically meaningless pair"
            )


@dataclass(frozen=True, slots=True)
class HyperbolicParams:
    """Polar form (theta, phi_alpha, phi_beta); phases stored in (-pi, pi].

    A phase whose modulus vanishes carries no information and is normalized
    to 0 by :func:`to_polar`.
    """

    theta: float
    phi_alpha: float
    phi_beta: float

    def __post_init__(self):
        t = float(self.theta)
        if not math.isfinite(t) or t < 0.0:
            raise DomainError(f"rapidity must be finite and >= 0, got {self.theta!r}")
        for name in ("phi_alpha", "phi_beta"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, _wrap_angle(v))
        object.__setattr__(self, "theta", t)


@dataclass(frozen=True, slots=True)
class ScatteringAmplitudes:
    """Transmission/reflection amplitude pair with |t|^2 + |r|^2 = 1."""

    t: complex
    r: complex

    def __post_init__(self):
        if not (_is_finite(self.t) and _is_finite(self.r)):
            raise DomainError("non-finite amplitudes")
        total = abs(self.t) ** 2 + abs(self.r) ** 2
        if abs(total - 1.0) > 10 * NORM_TOL:
            raise NormalizationError(f"|t|^2 + |r|^2 = {total!r}, not 1")

    @property
    def T(self) -> float:
        return abs(self.t) ** 2

    @property
    def R(self) -> float:
        return abs(self.r) ** 2


def make_transfer(alpha: complex, beta: complex) -> TransferMatrix:
    """Validate raw Bogoliubov coefficients into a TransferMatrix.

    Raises NormalizationError when | |alpha|^2 - |beta|^2 - 1 | > NORM_TOL;
    this strict absolute check is meant for desk-scale input, construct via
    from_polar for large rapidities.
    """
    a, b = complex(alpha), complex(beta)
    if not (_is_finite(a) and _is_finite(b)):
        raise DomainError(f"non-finite input: alpha={alpha!r}, beta={beta!r}")
    err = abs(a) ** 2 - abs(b) ** 2 - 1.0
    if abs(err) > NORM_TOL:
        raise NormalizationError(
            f"|alpha|^2 - |beta|^2 - 1 = {err!r} exceeds tolerance {NORM_TOL}"
        )
    return TransferMatrix(a, b)


IDENTITY = TransferMatrix(1.0 + 0.0j, 0.0j)


def from_polar(p: HyperbolicParams) -> TransferMatrix:
    """Build the matrix cosh(theta) e^{i phi_alpha}, sinh(theta) e^{i phi_beta}.

    Normalized by construction; refuses theta beyond RAPIDITY_LIMIT.
    """
    if p.theta > RAPIDITY_LIMIT:
        raise RapidityOverflowError(
            f"theta = {p.theta!r} exceeds trusted range {RAPIDITY_LIMIT}"
        )
    return TransferMatrix(
        cmath.rect(math.cosh(p.theta), p.phi_alpha),
        cmath.rect(math.sinh(p.theta), p.phi_beta),
    )


def to_polar(m: TransferMatrix) -> HyperbolicParams:
    """Invert from_polar: theta = acosh|alpha| (clamped), phases = args.

    Float noise can leave |alpha| marginally below 1; it is clamped so the
    rapidity is always defined.  beta == 0 yields phi_beta = 0.
    """
    theta = math.acosh(max(abs(m.alpha), 1.0))
    phi_alpha = _wrap_angle(cmath.phase(m.alpha))
    phi_beta = _wrap_angle(cmath.phase(m.beta)) if m.beta != 0 else 0.0
    return HyperbolicParams(theta, phi_alpha, phi_beta)


def compose(m1: TransferMatrix, m2: TransferMatrix) -> TransferMatrix:
    """Product M1 M2 in Bogoliubov form (M1 is traversed first).

        alpha = alpha1 alpha2 + beta1 beta2*,
        beta  = alpha1 beta2  + beta1 alpha2*.

    Not commutative.  Raises RapidityOverflowError when the result leaves
    the trusted range, NormalizationError on catastrophic float loss.
    """
    alpha = m1.alpha * m2.alpha + m1.beta * m2.beta.conjugate()
    beta = m1.alpha * m2.beta + m1.beta * m2.alpha.conjugate()
    if not (_is_finite(alpha) and _is_finite(beta)):
        raise RapidityOverflowError("composition overflowed double precision")
    if abs(alpha) > math.cosh(RAPIDITY_LIMIT):
        raise RapidityOverflowError(
            f"composed rapidity exceeds trusted range {RAPIDITY_LIMIT}"
        )
    return TransferMatrix(alpha, beta)


def compose_sequence(ms: list[TransferMatrix] | tuple[TransferMatrix, ...]) -> TransferMatrix:
    """Left-to-right fold of compose; [M1, ..., Mn] -> M1 M2 ... Mn."""
    if len(ms) == 0:
        raise EmptySequenceError("cannot compose an empty sequence of matrices")
    return reduce(compose, ms)


def shift(m: TransferMatrix, k: float, a: float) -> TransferMatrix:
    """Translate the barrier by a at wavenumber k: beta -> beta e^{+2ika}.

    alpha (hence theta, T, R, N) is untouched.
    """
    if not (math.isfinite(k) and k > 0.0):
        raise DomainError(f"wavenumber must be finite and > 0, got {k!r}")
    if not math.isfinite(a):
        raise DomainError(f"displacement must be finite, got {a!r}")
    return TransferMatrix(m.alpha, m.beta * cmath.exp(2j * k * a))


def amplitudes(m: TransferMatrix) -> ScatteringAmplitudes:
    """Amplitudes t = 1/alpha, r = beta/alpha (so T = 1/|alpha|^2, T + R = 1)."""
    return ScatteringAmplitudes(1.0 / m.alpha, m.beta / m.alpha)


def particle_number(m: TransferMatrix) -> float:
    """Quanta excited by this episode acting alone: N = |beta|^2 = sinh^2(theta)."""
    return abs(m.beta) ** 2
