"""Exact transfer matrices for concrete 1D barriers.

Units: hbar = 2m = 1, so a wave of wavenumber k > 0 has energy E = k^2 and
the stationary equation reads psi'' = (V - E) psi.

Each barrier is solved at the origin and then moved to its position with
the translation rule (beta picks up e^{+2ika}), which keeps T, R and N
independent of placement.  The matrices are written in the wave basis that
makes that rule hold; with the package's amplitude convention (t = 1/alpha)
the left-incidence amplitudes come out conjugated (t_phys = 1/alpha*), a
pure gauge difference with identical probabilities.  The documented
convention check lives in the test suite, which pins composed multi-barrier
transmission against direct numerical integration of the wave equation.

Supported shapes:

* Rectangular(height, width): V = V0 on an interval of width L (V0 < 0 is a
  well); E = V0 is handled by the analytic limit, E > V0 by the
  trigonometric branch, all through one stable formula.
* Delta(strength): V = lam * delta(x); lam < 0 allowed.
* PiecewiseConstant(segments): adjacent constant slabs, composed internally.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, OverlapError, RapidityOverflowError
from .transfer import RAPIDITY_LIMIT, TransferMatrix, compose_sequence, shift

__all__ = [
    "Rectangular",
    "Delta",
    "PiecewiseConstant",
    "BarrierSpec",
    "WaveContext",
    "support",
    "transfer_of",
    "scenario_transfer",
]


@dataclass(frozen=True, slots=True)
class WaveContext:
    """Scattering wavenumber k > 0 (energy E = k^2)."""

    k: float

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise DomainError(f"wavenumber must be finite and > 0, got {self.k!r}")

    @property
    def energy(self) -> float:
        return self.k * self.k


@dataclass(frozen=True, slots=True)
class Rectangular:
    """Rectangular barrier of height V0 and width L > 0, centered at position."""

    height: float
    width: float
    position: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.height, self.width, self.position)):
            raise DomainError("rectangular barrier parameters must be finite")
        if self.width <= 0.0:
            raise DomainError(f"barrier width must be > 0, got {self.width!r}")


@dataclass(frozen=True, slots=True)
class Delta:
    """Delta barrier V = strength * delta(x - position); wells allowed."""

    strength: float
    position: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.strength) and math.isfinite(self.position)):
            raise DomainError("delta barrier parameters must be finite")


@dataclass(frozen=True, slots=True)
class PiecewiseConstant:
    """Adjacent constant slabs (height, width), centered as a whole at position."""

    segments: tuple[tuple[float, float], ...]
    position: float = 0.0

    def __post_init__(self):
        segs = tuple((float(h), float(w)) for h, w in self.segments)
        if len(segs) == 0:
            raise DomainError("piecewise barrier needs at least one segment")
        for h, w in segs:
            if not (math.isfinite(h) and math.isfinite(w)):
                raise DomainError("slab parameters must be finite")
            if w <= 0.0:
                raise DomainError(f"slab width must be > 0, got {w!r}")
        if not math.isfinite(self.position):
            raise DomainError("position must be finite")
        object.__setattr__(self, "segments", segs)

    @property
    def total_width(self) -> float:
        return math.fsum(w for _, w in self.segments)


BarrierSpec = Rectangular | Delta | PiecewiseConstant


def support(spec: BarrierSpec) -> tuple[float, float]:
    """Closed support [lo, hi] of the barrier; a point for delta barriers."""
    if isinstance(spec, Rectangular):
        half = 0.5 * spec.width
        return spec.position - half, spec.position + half
    if isinstance(spec, Delta):
        return spec.position, spec.position
    if isinstance(spec, PiecewiseConstant):
        half = 0.5 * spec.total_width
        return spec.position - half, spec.position + half
    raise DomainError(f"unknown barrier kind: {spec!r}")


def _slab_profile(u: float, length: float) -> tuple[float, float]:
    """C = cos-or-cosh(sqrt|u| L) and S = sin-or-sinh(sqrt|u| L)/sqrt|u|.

    u = V0 - E selects the branch; the u -> 0 limit (S -> L) is the E = V0
    degeneracy, handled by series so there is no removable-singularity
    branch point.
    """
    x = abs(u) * length * length
    if x < 1e-12:
        # series in u L^2: C = 1 + uL^2/2, S = L (1 + uL^2/6)
        return 1.0 + 0.5 * u * length * length, length * (1.0 + u * length * length / 6.0)
    w = math.sqrt(abs(u))
    if u > 0.0:
        if w * length > RAPIDITY_LIMIT:
            raise RapidityOverflowError(
                f"slab opacity kappa*L = {w * length!r} exceeds trusted range "
                f"{RAPIDITY_LIMIT}"
            )
        return math.cosh(w * length), math.sinh(w * length) / w
    return math.cos(w * length), math.sin(w * length) / w


def _rectangular_at_origin(height: float, width: float, k: float) -> TransferMatrix:
    """Transfer matrix of a centered slab of height V0 and width L.

        alpha = e^{-ikL} [C + i (2E - V0)/(2k) S],   beta = -i V0/(2k) S,

    with C, S from _slab_profile(V0 - E, L); |alpha|^2 - |beta|^2 = C^2 -
    (V0-E) S^2 = 1 identically on every branch.
    """
    e = k * k
    c, s = _slab_profile(height - e, width)
    half_through = 0.5 * (2.0 * e - height) / k * s
    half_coupling = 0.5 * height / k * s
    alpha = cmath.exp(-1j * k * width) * complex(c, half_through)
    beta = complex(0.0, -half_coupling)
    return TransferMatrix(alpha, beta)


def _delta_at_origin(strength: float, k: float) -> TransferMatrix:
    """Transfer matrix of strength*delta(x): alpha = 1 - i g, beta = -i g, g = strength/(2k)."""
    g = 0.5 * strength / k
    return TransferMatrix(complex(1.0, -g), complex(0.0, -g))


def transfer_of(spec: BarrierSpec, ctx: WaveContext) -> TransferMatrix:
    """Exact transfer matrix of the barrier at its position.

    Computed at the origin and then translated, so probabilities never
    depend on placement.  Contract values: Delta(lam) has
    T = 1/(1 + (lam/2k)^2); Rectangular(V0, L) below the barrier top has
    T = [1 + V0^2 sinh^2(kappa L) / (4E(V0-E))]^{-1}, kappa = sqrt(V0-E).
    """
    k = ctx.k
    if isinstance(spec, Rectangular):
        origin = _rectangular_at_origin(spec.height, spec.width, k)
    elif isinstance(spec, Delta):
        origin = _delta_at_origin(spec.strength, k)
    elif isinstance(spec, PiecewiseConstant):
        left = -0.5 * spec.total_width
        parts = []
        for h, w in spec.segments:
            parts.append(shift(_rectangular_at_origin(h, w, k), k, left + 0.5 * w))
            left += w
        origin = compose_sequence(parts)
    else:
        raise DomainError(f"unknown barrier kind: {spec!r}")
    return shift(origin, k, spec.position)


def check_layout(specs: list[BarrierSpec] | tuple[BarrierSpec, ...]) -> None:
    """Reject sequences whose closed supports intersect or are out of order.

    Closed supports mean touching edges count as overlap; two delta
    barriers at the same point are likewise rejected.
    """
    for earlier, later in zip(specs, specs[1:]):
        lo_e, hi_e = support(earlier)
        lo_l, hi_l = support(later)
        if hi_e >= lo_l:
            raise OverlapError(
                f"barrier supports [{lo_e}, {hi_e}] and [{lo_l}, {hi_l}] "
                "intersect or are not position-sorted"
            )


def scenario_transfer(specs: list[BarrierSpec] | tuple[BarrierSpec, ...],
                      ctx: WaveContext) -> TransferMatrix:
    """Compound matrix of position-sorted, non-overlapping barriers.

    Spatial order equals composition order (first barrier leftmost).
    """
    check_layout(specs)
    return compose_sequence([transfer_of(spec, ctx) for spec in specs])
