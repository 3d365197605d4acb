"""Mean energy density of one- and two-mode excitations, and its minima.

Natural units throughout: hbar = c = 1 and the mode normalization volume is
fixed at 1, so densities carry units of (angular) frequency.  Moments enter
through the (n, R, gamma) parameterization of :mod:`subvacuum.state_families`.

Two geometries are supported.  Traveling plane waves give

    rho = n1 w1 + n2 w2
        + R1 w1 cos(2(k1.x - w1 t) + g1) + R2 w2 cos(2(k2.x - w2 t) + g2)
        + sqrt(w1 w2) (1 + khat1.khat2) [ R3 cos((k2-k1).x - (w2-w1)t + g3)
                                        + R4 cos((k2+k1).x - (w2+w1)t + g4) ],

while standing waves along one axis give the product-of-cosines analogue with
a factor 2 on the cross channels.  The numeric minimizer scans the span of
the wave vectors (the density depends on x only through the k.x phases) plus
time, then polishes with a Nelder-Mead refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .state_families import OneModeMoments, TwoModeMoments, f_sigma

__all__ = [
    "ModeGeometry",
    "SpacetimePoint",
    "DensityProfile",
    "rho_one_mode",
    "rho_min_one_mode",
    "rho_two_mode_traveling",
    "rho_two_mode_standing",
    "rho_min_two_mode_numeric",
    "density_profile",
    "rho_min_br_closed",
    "br_vs_2sq_gap",
    "rho_min_ecs_aligned",
    "spacetime_average",
]

_KINDS = ("traveling", "standing")


@dataclass(frozen=True)
class ModeGeometry:
    """Frequencies and propagation directions of the two modes.

    ``khat1``/``khat2`` are unit propagation directions, used only for
    traveling waves; standing waves depend on a single spatial coordinate.
    """

    kind: str
    omega1: float
    omega2: float
    khat1: tuple[float, float, float] = (0.0, 0.0, 1.0)
    khat2: tuple[float, float, float] = (0.0, 0.0, 1.0)

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if not (self.omega1 > 0 and self.omega2 > 0):
            raise ValueError("frequencies must be positive")
        if self.kind == "traveling":
            for k in (self.khat1, self.khat2):
                if abs(math.sqrt(sum(c * c for c in k)) - 1.0) > 1e-12:
                    raise ValueError(f"propagation direction {k} is not a unit vector")

    def cos_angle(self) -> float:
        """khat1 . khat2 — the geometric factor (1 + cos) weights cross terms."""
        return float(sum(a * b for a, b in zip(self.khat1, self.khat2)))


@dataclass(frozen=True)
class SpacetimePoint:
    x: tuple[float, float, float]
    t: float

    def __post_init__(self) -> None:
        if not all(map(math.isfinite, (*self.x, self.t))):
            raise ValueError("spacetime point must be finite")


@dataclass(frozen=True)
class DensityProfile:
    """Sampled density values plus the refined minimum over the scan window."""

    samples: tuple[tuple[SpacetimePoint, float], ...]
    min_found: tuple[SpacetimePoint, float]


def rho_one_mode(
    m: OneModeMoments,
    omega: float,
    kind: str,
    u: float | tuple[float, float],
) -> float:
    """Single-mode density at a given phase (traveling) or point (standing).

    For ``kind='traveling'``, ``u`` is the full propagation phase
    2(k.x - omega t) and rho = omega (n + R cos(u + gamma)).  For
    ``kind='standing'``, ``u`` encodes the point as a pair (x, t) and
    rho = omega (n + R cos(2 omega x) cos(2 omega t - gamma)).
    """
    if omega <= 0:
        raise ValueError("omega must be positive")
    if kind == "traveling":
        phase = float(u)  # type: ignore[arg-type]
        return omega * (m.n + m.pair_mag * math.cos(phase + m.pair_phase))
    if kind == "standing":
        x, t = u  # type: ignore[misc]
        return omega * (
            m.n
            + m.pair_mag * math.cos(2.0 * omega * x) * math.cos(2.0 * omega * t - m.pair_phase)
        )
    raise ValueError(f"kind must be one of {_KINDS}, got {kind!r}")


def rho_min_one_mode(m: OneModeMoments, omega: float) -> float:
    """Global minimum -omega (R - n); negative exactly when R > n."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    return -omega * (m.pair_mag - m.n)


def _traveling_rho(m: TwoModeMoments, g: ModeGeometry, s1, s2, t):
    """Vectorized traveling-wave density on the wave-vector span.

    The spatial point is x = s1 khat1 + s2 khat2, so k1.x = w1 (s1 + c s2)
    and k2.x = w2 (c s1 + s2) with c = khat1.khat2.
    """
    w1, w2 = g.omega1, g.omega2
    c = g.cos_angle()
    k1x = w1 * (s1 + c * s2)
    k2x = w2 * (c * s1 + s2)
    geom = math.sqrt(w1 * w2) * (1.0 + c)
    return (
        m.n1 * w1
        + m.n2 * w2
        + m.R1 * w1 * np.cos(2.0 * (k1x - w1 * t) + m.gamma1)
        + m.R2 * w2 * np.cos(2.0 * (k2x - w2 * t) + m.gamma2)
        + m.R3 * geom * np.cos((k2x - k1x) - (w2 - w1) * t + m.gamma3)
        + m.R4 * geom * np.cos((k2x + k1x) - (w2 + w1) * t + m.gamma4)
    )


def _standing_rho(m: TwoModeMoments, g: ModeGeometry, x, t):
    """Vectorized standing-wave density along the cavity axis."""
    w1, w2 = g.omega1, g.omega2
    cross = 2.0 * math.sqrt(w1 * w2)
    return (
        m.n1 * w1
        + m.n2 * w2
        + m.R1 * w1 * np.cos(2.0 * w1 * x) * np.cos(2.0 * w1 * t - m.gamma1)
        + m.R2 * w2 * np.cos(2.0 * w2 * x) * np.cos(2.0 * w2 * t - m.gamma2)
        + m.R3 * cross * np.cos((w2 - w1) * x) * np.cos((w2 - w1) * t - m.gamma3)
        + m.R4 * cross * np.cos((w1 + w2) * x) * np.cos((w1 + w2) * t - m.gamma4)
    )


def rho_two_mode_traveling(m: TwoModeMoments, g: ModeGeometry, p: SpacetimePoint) -> float:
    """Traveling-wave density at an explicit spacetime point."""
    if g.kind != "traveling":
        raise ValueError("geometry kind must be 'traveling'")
    w1, w2 = g.omega1, g.omega2
    x = np.asarray(p.x, dtype=float)
    k1 = w1 * np.asarray(g.khat1, dtype=float)
    k2 = w2 * np.asarray(g.khat2, dtype=float)
    k1x = float(k1 @ x)
    k2x = float(k2 @ x)
    geom = math.sqrt(w1 * w2) * (1.0 + g.cos_angle())
    return float(
        m.n1 * w1
        + m.n2 * w2
        + m.R1 * w1 * math.cos(2.0 * (k1x - w1 * p.t) + m.gamma1)
        + m.R2 * w2 * math.cos(2.0 * (k2x - w2 * p.t) + m.gamma2)
        + m.R3 * geom * math.cos((k2x - k1x) - (w2 - w1) * p.t + m.gamma3)
        + m.R4 * geom * math.cos((k2x + k1x) - (w2 + w1) * p.t + m.gamma4)
    )


def rho_two_mode_standing(m: TwoModeMoments, g: ModeGeometry, p: SpacetimePoint) -> float:
    """Standing-wave density; the pattern depends on x only through p.x[0]."""
    if g.kind != "standing":
        raise ValueError("geometry kind must be 'standing'")
    return float(_standing_rho(m, g, p.x[0], p.t))


def _moments_finite(m: TwoModeMoments) -> bool:
    vals = (m.n1, m.n2, m.R1, m.R2, m.R3, m.R4, m.gamma1, m.gamma2, m.gamma3, m.gamma4)
    return all(map(math.isfinite, vals))


def rho_min_two_mode_numeric(
    m: TwoModeMoments, g: ModeGeometry, window: float, grid_n: int
) -> tuple[SpacetimePoint, float]:
    """Numeric minimum of the density over x in the wave-vector span, t in [0, window].

    A dense grid scan (``grid_n`` points per axis, ties broken toward the
    smallest t then the smallest spatial coordinates) seeds a Nelder-Mead
    polish; the polished value is kept only if it improves on the best
    sample, so the result is always <= every sampled value.
    """
    if grid_n < 16:
        raise ValueError("grid_n must be at least 16")
    if window <= 0:
        raise ValueError("window must be positive")
    if not _moments_finite(m):
        raise ValueError("non-finite moments")

    axis = np.linspace(0.0, window, grid_n)
    if g.kind == "standing":
        tt, xx = np.meshgrid(axis, axis, indexing="ij")
        vals = _standing_rho(m, g, xx, tt)
        it, ix = np.unravel_index(int(np.argmin(vals)), vals.shape)
        best = np.array([axis[it], axis[ix]])

        def objective(q):
            return float(_standing_rho(m, g, q[1], q[0]))

    else:
        parallel = abs(abs(g.cos_angle()) - 1.0) < 1e-12
        if parallel:
            tt, s1 = np.meshgrid(axis, axis, indexing="ij")
            vals = _traveling_rho(m, g, s1, 0.0, tt)
            it, i1 = np.unravel_index(int(np.argmin(vals)), vals.shape)
            best = np.array([axis[it], axis[i1]])

            def objective(q):
                return float(_traveling_rho(m, g, q[1], 0.0, q[0]))

        else:
            tt, s1, s2 = np.meshgrid(axis, axis, axis, indexing="ij")
            vals = _traveling_rho(m, g, s1, s2, tt)
            it, i1, i2 = np.unravel_index(int(np.argmin(vals)), vals.shape)
            best = np.array([axis[it], axis[i1], axis[i2]])

            def objective(q):
                return float(_traveling_rho(m, g, q[1], q[2], q[0]))

    best_val = float(np.min(vals))
    res = minimize(
        objective,
        best,
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000, "maxfev": 8000},
    )
    if res.fun < best_val:
        best, best_val = np.asarray(res.x, dtype=float), float(res.fun)

    if g.kind == "standing":
        point = SpacetimePoint(x=(float(best[1]), 0.0, 0.0), t=float(best[0]))
    else:
        k1 = np.asarray(g.khat1, dtype=float)
        k2 = np.asarray(g.khat2, dtype=float)
        s2 = float(best[2]) if best.size == 3 else 0.0
        xvec = float(best[1]) * k1 + s2 * k2
        point = SpacetimePoint(x=(float(xvec[0]), float(xvec[1]), float(xvec[2])), t=float(best[0]))
    return point, best_val


def density_profile(
    m: TwoModeMoments, g: ModeGeometry, window: float, grid_n: int
) -> DensityProfile:
    """Grid of density samples plus the refined minimum, for data export.

    Samples are emitted in (t, space...) lexicographic order on the same
    axes the minimizer scans.
    """
    point_min, val_min = rho_min_two_mode_numeric(m, g, window, grid_n)
    axis = np.linspace(0.0, window, grid_n)
    samples: list[tuple[SpacetimePoint, float]] = []
    if g.kind == "standing":
        for t in axis:
            for x in axis:
                p = SpacetimePoint(x=(float(x), 0.0, 0.0), t=float(t))
                samples.append((p, rho_two_mode_standing(m, g, p)))
    else:
        k1 = np.asarray(g.khat1, dtype=float)
        k2 = np.asarray(g.khat2, dtype=float)
        parallel = abs(abs(g.cos_angle()) - 1.0) < 1e-12
        for t in axis:
            for s1 in axis:
                if parallel:
                    xv = s1 * k1
                    p = SpacetimePoint(x=(float(xv[0]), float(xv[1]), float(xv[2])), t=float(t))
                    samples.append((p, rho_two_mode_traveling(m, g, p)))
                else:
                    for s2 in axis:
                        xv = s1 * k1 + s2 * k2
                        p = SpacetimePoint(
                            x=(float(xv[0]), float(xv[1]), float(xv[2])), t=float(t)
                        )
                        samples.append((p, rho_two_mode_traveling(m, g, p)))
    return DensityProfile(samples=tuple(samples), min_found=(point_min, val_min))


def rho_min_br_closed(r: float, delta: float, omega1: float, omega2: float) -> float:
    """Closed-form minimum for the two-mode squeezed vacuum, aligned traveling modes.

    -sinh r [2 sqrt(w1 w2) cosh r - (w1 + w2) sinh r].  The squeeze phase
    ``delta`` moves the location of the minimum but not its depth; it is
    accepted for interface symmetry.  Alignment means khat1.khat2 = 1, so the
    cross-channel geometric factor is 2.
    """
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    if not (omega1 > 0 and omega2 > 0):
        raise ValueError("frequencies must be positive")
    del delta
    s, c = math.sinh(r), math.cosh(r)
    return -s * (2.0 * math.sqrt(omega1 * omega2) * c - (omega1 + omega2) * s)


def br_vs_2sq_gap(r: float, omega1: float, omega2: float) -> float:
    """How much deeper one two-mode squeezed vacuum digs than two one-mode ones.

    sinh r cosh r (sqrt(w1) - sqrt(w2))^2 >= 0, vanishing only at equal
    frequencies.
    """
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    if not (omega1 > 0 and omega2 > 0):
        raise ValueError("frequencies must be positive")
    return math.sinh(r) * math.cosh(r) * (math.sqrt(omega1) - math.sqrt(omega2)) ** 2


def rho_min_ecs_aligned(sigma: float, omega: float) -> float:
    """Deepest density of the aligned entangled coherent state: -4 omega f(sigma)."""
    if omega <= 0:
        raise ValueError("omega must be positive")
    return -4.0 * omega * f_sigma(sigma)


def spacetime_average(m: TwoModeMoments, g: ModeGeometry) -> float:
    """Average density over a full common period: the oscillations cancel.

    Equals n1 w1 + n2 w2 and is therefore never negative — negative energy
    densities are strictly local.
    """
    return m.n1 * g.omega1 + m.n2 * g.omega2
