"""Phase-free bounds on compound scattering and particle production.

Given only the per-barrier rapidities theta_i = acosh|alpha_i| (equivalently
the individual T_i, R_i or N_i), the compound rapidity of any arrangement is
confined to the interval [B_n, S_n] with

    S_n = sum_i theta_i,
    B_n = max(2 theta_peak - S_n, 0),       theta_peak = max_i theta_i,

and B_n is also produced by a Heaviside recursion (kept as an independent
cross-check).  Converting the interval edges gives the six envelopes

    T in [sech^2 S_n, sech^2 B_n],   R in [tanh^2 B_n, tanh^2 S_n],
    N in [sinh^2 B_n, sinh^2 S_n].

All computation happens in rapidity space; probabilities appear only at the
report boundary, which avoids both cosh overflow and the cancellation that
plagues the rational forms near T -> 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, EmptySequenceError, RapidityOverflowError
from .transfer import RAPIDITY_LIMIT, TransferMatrix, to_polar

__all__ = [
    "RapiditySequence",
    "BoundsReport",
    "ResonanceAssessment",
    "ProductionAssessment",
    "theta_from_T",
    "theta_from_R",
    "theta_from_N",
    "T_from_theta",
    "R_from_theta",
    "N_from_theta",
    "two_barrier_T_bounds",
    "two_barrier_R_bounds",
    "two_barrier_N_bounds",
    "two_barrier_T_bounds_rational",
    "two_barrier_R_bounds_rational",
    "two_barrier_N_bounds_rational",
    "s_n",
    "b_n_iterative",
    "b_n_closed",
    "bounds_report",
    "classical_transmission",
    "resonance_possible",
    "production_guaranteed",
]


@dataclass(frozen=True, slots=True)
class RapiditySequence:
    """Per-barrier rapidities theta_i >= 0, one entry per barrier/episode."""

    thetas: tuple[float, ...]

    def __post_init__(self):
        ts = tuple(float(t) for t in self.thetas)
        for t in ts:
            if not math.isfinite(t) or t < 0.0:
                raise DomainError(f"rapidities must be finite and >= 0, got {t!r}")
        object.__setattr__(self, "thetas", ts)

    def __len__(self) -> int:
        return len(self.thetas)

    def __iter__(self):
        return iter(self.thetas)

    @classmethod
    def from_transmissions(cls, ts: Iterable[float]) -> "RapiditySequence":
        return cls(tuple(theta_from_T(t) for t in ts))

    @classmethod
    def from_reflections(cls, rs: Iterable[float]) -> "RapiditySequence":
        return cls(tuple(theta_from_R(r) for r in rs))

    @classmethod
    def from_particle_numbers(cls, ns: Iterable[float]) -> "RapiditySequence":
        return cls(tuple(theta_from_N(n) for n in ns))

    @classmethod
    def from_matrices(cls, ms: Iterable[TransferMatrix]) -> "RapiditySequence":
        return cls(tuple(to_polar(m).theta for m in ms))


# ---------------------------------------------------------------------------
# theta <-> probability conversions (the hyperbolic "length" of a barrier)
# ---------------------------------------------------------------------------

def theta_from_T(T: float) -> float:
    """Rapidity from transmission probability: asech(sqrt T), T in (0, 1].

    Evaluated as asinh(sqrt((1-T)/T)), which is exact at T = 1 and avoids
    the acosh conditioning cliff near it.  T = 0 would map to infinity and
    is rejected.
    """
    if not math.isfinite(T) or not (0.0 < T <= 1.0):
        raise DomainError(f"transmission probability must lie in (0, 1], got {T!r}")
    return math.asinh(math.sqrt((1.0 - T) / T))


def theta_from_R(R: float) -> float:
    """Rapidity from reflection probability: atanh(sqrt R), R in [0, 1)."""
    if not math.isfinite(R) or not (0.0 <= R < 1.0):
        raise DomainError(f"reflection probability must lie in [0, 1), got {R!r}")
    return math.atanh(math.sqrt(R))


def theta_from_N(N: float) -> float:
    """Rapidity from particle number: asinh(sqrt N), N >= 0."""
    if not math.isfinite(N) or N < 0.0:
        raise DomainError(f"particle number must be finite and >= 0, got {N!r}")
    return math.asinh(math.sqrt(N))


def _check_theta(theta: float) -> float:
    t = float(theta)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError(f"rapidity must be finite and >= 0, got {theta!r}")
    if t > RAPIDITY_LIMIT:
        raise RapidityOverflowError(f"rapidity {t!r} exceeds trusted range {RAPIDITY_LIMIT}")
    return t


def T_from_theta(theta: float) -> float:
    """T = sech^2(theta), computed overflow-free."""
    t = _check_theta(theta)
    e = math.exp(-t)
    sech = 2.0 * e / (1.0 + e * e)
    return sech * sech


def R_from_theta(theta: float) -> float:
    """R = tanh^2(theta)."""
    t = _check_theta(theta)
    th = math.tanh(t)
    return th * th


def N_from_theta(theta: float) -> float:
    """N = sinh^2(theta)."""
    t = _check_theta(theta)
    s = math.sinh(t)
    return s * s


# ---------------------------------------------------------------------------
# two-barrier closed forms
# ---------------------------------------------------------------------------

def _check_T(T: float, name: str) -> None:
    if not math.isfinite(T) or not (0.0 < T <= 1.0):
        raise DomainError(f"{name} must lie in (0, 1], got {T!r}")


def two_barrier_T_bounds(T1: float, T2: float) -> tuple[float, float]:
    """Attainable transmission interval for two barriers, phases unknown.

    [sech^2(theta1 + theta2), sech^2(theta1 - theta2)]; equal barriers give
    an upper edge of exactly 1 (the resonance condition).
    """
    _check_T(T1, "T1")
    _check_T(T2, "T2")
    t1, t2 = theta_from_T(T1), theta_from_T(T2)
    return T_from_theta(t1 + t2), T_from_theta(abs(t1 - t2))


def two_barrier_T_bounds_rational(T1: float, T2: float) -> tuple[float, float]:
    """Rational-algebraic cross-check of two_barrier_T_bounds.

        T_low  = T1 T2 / (1 + sqrt(1-T1) sqrt(1-T2))^2
        T_high = min(1, T1 T2 / (1 - sqrt(1-T1) sqrt(1-T2))^2)

    The subtracted denominator is evaluated as
    (T1 + T2 - T1 T2) / (1 + sqrt(1-T1) sqrt(1-T2)) to dodge cancellation
    for small T.  T1 == T2 yields exactly 1 (the 0-width resonance case).
    """
    _check_T(T1, "T1")
    _check_T(T2, "T2")
    s1s2 = math.sqrt(1.0 - T1) * math.sqrt(1.0 - T2)
    low = T1 * T2 / (1.0 + s1s2) ** 2
    if T1 == T2:
        high = 1.0
    else:
        denom = (T1 + T2 - T1 * T2) / (1.0 + s1s2)
        high = min(1.0, T1 * T2 / (denom * denom))
    return low, high


def _check_R(R: float, name: str) -> None:
    if not math.isfinite(R) or not (0.0 <= R < 1.0):
        raise DomainError(f"{name} must lie in [0, 1), got {R!r}")


def two_barrier_R_bounds(R1: float, R2: float) -> tuple[float, float]:
    """Attainable reflection interval: [tanh^2(th1 - th2), tanh^2(th1 + th2)]."""
    _check_R(R1, "R1")
    _check_R(R2, "R2")
    t1, t2 = theta_from_R(R1), theta_from_R(R2)
    return R_from_theta(abs(t1 - t2)), R_from_theta(t1 + t2)


def two_barrier_R_bounds_rational(R1: float, R2: float) -> tuple[float, float]:
    """Rational-algebraic cross-check of two_barrier_R_bounds.

        R_high = ((sqrt R1 + sqrt R2) / (1 + sqrt(R1 R2)))^2
        R_low  = ((sqrt R1 - sqrt R2) / (1 - sqrt(R1 R2)))^2

    Differences are evaluated cancellation-free; equal reflections give an
    exact lower edge of 0 (total destructive interference is possible).
    """
    _check_R(R1, "R1")
    _check_R(R2, "R2")
    r1, r2 = math.sqrt(R1), math.sqrt(R2)
    high = ((r1 + r2) / (1.0 + r1 * r2)) ** 2
    if R1 == R2:
        low = 0.0
    else:
        num = (R1 - R2) / (r1 + r2)
        den = (1.0 - R1 * R2) / (1.0 + r1 * r2)
        low = (num / den) ** 2
    return low, high


def _check_N(N: float, name: str) -> None:
    if not math.isfinite(N) or N < 0.0:
        raise DomainError(f"{name} must be finite and >= 0, got {N!r}")


def two_barrier_N_bounds(N1: float, N2: float) -> tuple[float, float]:
    """Attainable particle-production interval for two episodes.

    [sinh^2(th1 - th2), sinh^2(th1 + th2)] with th = asinh(sqrt N); equal
    episodes give a lower edge of exactly 0 (complete cancellation).
    """
    _check_N(N1, "N1")
    _check_N(N2, "N2")
    t1, t2 = theta_from_N(N1), theta_from_N(N2)
    return N_from_theta(abs(t1 - t2)), N_from_theta(t1 + t2)


def two_barrier_N_bounds_rational(N1: float, N2: float) -> tuple[float, float]:
    """Rational-algebraic cross-check of two_barrier_N_bounds.

        N_hi/lo = (sqrt(N1 (N2+1)) +- sqrt(N2 (N1+1)))^2

    expanded to N1 + N2 + 2 N1 N2 +- 2 sqrt(N1 N2 (N1+1)(N2+1)), which for
    the difference is evaluated through (N1 - N2)/(x + y) to stay exact
    near N1 = N2.
    """
    _check_N(N1, "N1")
    _check_N(N2, "N2")
    x = math.sqrt(N1 * (N2 + 1.0))
    y = math.sqrt(N2 * (N1 + 1.0))
    if x + y == 0.0:
        return 0.0, 0.0
    low = ((N1 - N2) / (x + y)) ** 2
    high = N1 + N2 + 2.0 * N1 * N2 + 2.0 * math.sqrt(N1 * N2 * (N1 + 1.0) * (N2 + 1.0))
    return low, high


# ---------------------------------------------------------------------------
# n-barrier interval [B_n, S_n]
# ---------------------------------------------------------------------------

def s_n(seq: RapiditySequence) -> float:
    """Upper edge S_n = sum of rapidities (exactly permutation invariant)."""
    return math.fsum(seq.thetas)


def b_n_iterative(seq: RapiditySequence) -> float:
    """Lower edge B_n by the Heaviside recursion.

        B_1 = theta_1,
        B_{m+1} = (t - S_m) H(t - S_m) + (B_m - t) H(B_m - t),  t = theta_{m+1}.

    Kept deliberately literal as an independent route to b_n_closed.
    """
    if len(seq) == 0:
        raise EmptySequenceError("B_n needs at least one rapidity")

    def heaviside(x: float) -> float:
        return 1.0 if x > 0.0 else 0.0

    b = seq.thetas[0]
    s = seq.thetas[0]
    for t in seq.thetas[1:]:
        b = (t - s) * heaviside(t - s) + (b - t) * heaviside(b - t)
        s += t
    return b


def b_n_closed(seq: RapiditySequence) -> float:
    """Lower edge B_n = max(2 theta_peak - S_n, 0), closed form.

    A totally symmetric function of the rapidities; nonzero only when one
    barrier outweighs all the others combined.  Any argmax serves as the
    peak: the value is tie-independent.
    """
    if len(seq) == 0:
        raise EmptySequenceError("B_n needs at least one rapidity")
    return max(2.0 * max(seq.thetas) - math.fsum(seq.thetas), 0.0)


@dataclass(frozen=True, slots=True)
class BoundsReport:
    """Interval [b_n, s_n] and the derived T/R/N/|alpha|/|beta| envelopes."""

    s_n: float
    b_n: float
    theta_peak: float
    theta_off_peak: float
    t_interval: tuple[float, float]
    r_interval: tuple[float, float]
    n_interval: tuple[float, float]
    alpha_mod_interval: tuple[float, float]
    beta_mod_interval: tuple[float, float]

    def __post_init__(self):
        if not (0.0 <= self.b_n <= self.s_n):
            raise DomainError(f"need 0 <= B_n <= S_n, got B={self.b_n!r}, S={self.s_n!r}")
        for name in ("t_interval", "r_interval", "n_interval",
                     "alpha_mod_interval", "beta_mod_interval"):
            lo, hi = getattr(self, name)
            if not (lo <= hi):
                raise DomainError(f"{name} is not ordered: [{lo!r}, {hi!r}]")
        for name in ("t_interval", "r_interval"):
            lo, hi = getattr(self, name)
            if not (0.0 <= lo and hi <= 1.0):
                raise DomainError(f"{name} escapes [0, 1]: [{lo!r}, {hi!r}]")


def bounds_report(seq: RapiditySequence) -> BoundsReport:
    """Full envelope report for a barrier/episode sequence.

        T in [sech^2 S_n, sech^2 B_n]      R in [tanh^2 B_n, tanh^2 S_n]
        N in [sinh^2 B_n, sinh^2 S_n]      |alpha| in [cosh B_n, cosh S_n]
                                           |beta|  in [sinh B_n, sinh S_n]
    """
    if len(seq) == 0:
        raise EmptySequenceError("a bounds report needs at least one rapidity")
    s = s_n(seq)
    if s > RAPIDITY_LIMIT:
        raise RapidityOverflowError(f"S_n = {s!r} exceeds trusted range {RAPIDITY_LIMIT}")
    b = b_n_closed(seq)
    peak = max(seq.thetas)
    return BoundsReport(
        s_n=s,
        b_n=b,
        theta_peak=peak,
        theta_off_peak=s - peak,
        t_interval=(T_from_theta(s), T_from_theta(b)),
        r_interval=(R_from_theta(b), R_from_theta(s)),
        n_interval=(N_from_theta(b), N_from_theta(s)),
        alpha_mod_interval=(math.cosh(b), math.cosh(s)),
        beta_mod_interval=(math.sinh(b), math.sinh(s)),
    )


# ---------------------------------------------------------------------------
# classical comparison and the resonance / production criteria
# ---------------------------------------------------------------------------

def classical_transmission(ts: Sequence[float]) -> float:
    """Particle (no-interference) limit: plain product of the T_i."""
    for T in ts:
        if not math.isfinite(T) or not (0.0 <= T <= 1.0):
            raise DomainError(f"classical transmission needs T in [0, 1], got {T!r}")
    return math.prod(ts)


@dataclass(frozen=True, slots=True)
class ResonanceAssessment:
    """Outcome of the perfect-transmission necessary condition.

    t_peak is the transmission of the peak (most opaque) barrier, i.e. the
    smallest individual T_i = sech^2(theta_peak).
    """

    possible: bool
    margin: float
    t_peak: float
    t_min: float
    threshold: float


def resonance_possible(ts: Sequence[float]) -> ResonanceAssessment:
    """Necessary (not sufficient) condition for a perfect resonance T = 1.

    Perfect transmission requires 2 theta_peak <= S_n, i.e. B_n = 0; the
    verdict is computed exactly in rapidity space.  In probabilities the
    same condition reads

        sech^2(theta_peak) >= 2 sqrt(T_min) / (1 + sqrt(T_min)),

    with T_min = sech^2(S_n) (sech^2 falls with theta, so the rapidity
    inequality flips when converted); margin = t_peak - threshold, so
    possible <=> margin >= 0 up to float rounding at the exact boundary.
    """
    if len(ts) == 0:
        raise EmptySequenceError("resonance check needs at least one barrier")
    seq = RapiditySequence.from_transmissions(ts)
    possible = b_n_closed(seq) == 0.0
    t_min = T_from_theta(s_n(seq))
    root = math.sqrt(t_min)
    threshold = 2.0 * root / (1.0 + root)
    t_peak = T_from_theta(max(seq.thetas))
    return ResonanceAssessment(
        possible=possible,
        margin=t_peak - threshold,
        t_peak=t_peak,
        t_min=t_min,
        threshold=threshold,
    )


@dataclass(frozen=True, slots=True)
class ProductionAssessment:
    """Outcome of the guaranteed-particle-production sufficient condition."""

    guaranteed: bool
    n_min: float
    n_peak: float
    n_max: float
    threshold: float


def production_guaranteed(ns: Sequence[float]) -> ProductionAssessment:
    """Sufficient condition for nonzero net production across episodes.

    Complete cancellation requires 2 theta_peak <= S_n, so B_n > 0 (checked
    exactly in rapidity space) guarantees N >= sinh^2(B_n) > 0.  In terms
    of the episode numbers this is N_peak > (sqrt(N_max + 1) - 1)/2 with
    N_max = sinh^2(S_n); that threshold is reported alongside.
    """
    if len(ns) == 0:
        raise EmptySequenceError("production check needs at least one episode")
    seq = RapiditySequence.from_particle_numbers(ns)
    b = b_n_closed(seq)
    n_max = N_from_theta(s_n(seq))
    return ProductionAssessment(
        guaranteed=b > 0.0,
        n_min=N_from_theta(b),
        n_peak=max(ns),
        n_max=n_max,
        threshold=(math.sqrt(n_max + 1.0) - 1.0) / 2.0,
    )
