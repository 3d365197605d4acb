"""Closed-form quadratic moments for the quantum states under study.

Each family maps a small parameter record to the moments that fix the mode's
energy density: the occupation number together with the magnitude and phase
of every non-vanishing quadratic ladder expectation.  Single-mode families
produce :class:`OneModeMoments`; entangled families produce
:class:`TwoModeMoments`.

All expressions here are cross-checked against the truncated number-basis
evaluation in :mod:`subvacuum.fock_oracle`; the test suite pins that
agreement to near machine precision.  Where a published expression failed
that cross-check, the moments shipped here are the oracle-confirmed variant
(see the verification report for the side-by-side residuals).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DegenerateStateError",
    "OneModeMoments",
    "TwoModeMoments",
    "CoherentPair",
    "SqueezedPair",
    "CoherentSqueezed",
    "VacuumSqueezed",
    "BarnettRadmore",
    "ZhangReal",
    "EntangledCoherent",
    "FamilyParams",
    "wrap_angle",
    "coherent_superposition_moments",
    "squeezed_vacuum_moments",
    "superposed_squeezed_moments",
    "coherent_plus_squeezed_moments",
    "vacuum_plus_squeezed_moments",
    "barnett_radmore_moments",
    "zhang_moments",
    "zhang_small_r_asymptotics",
    "entangled_coherent_moments",
    "f_sigma",
]

#: Normalization denominators below this are treated as a degenerate state.
DEGENERATE_DENOMINATOR = 1e-13


class DegenerateStateError(ValueError):
    """The requested superposition has (numerically) zero norm."""


def wrap_angle(x: float) -> float:
    """Reduce an angle to the interval (-pi, pi]."""
    y = float(np.remainder(x + np.pi, 2.0 * np.pi)) - np.pi
    return np.pi if y <= -np.pi else y


def _polar(z: complex) -> tuple[float, float]:
    """Magnitude and wrapped phase; zero magnitude gets phase 0 by convention."""
    mag = abs(z)
    if mag < 1e-15:
        return 0.0, 0.0
    return float(mag), wrap_angle(float(np.angle(z)))


@dataclass(frozen=True)
class OneModeMoments:
    """Single-mode moment triple: occupation, pair magnitude, pair phase.

    ``pair_mag`` is |<a^2>| and ``pair_phase`` its argument in (-pi, pi];
    the occupation ``n`` is <a^dag a>.
    """

    n: float
    pair_mag: float
    pair_phase: float


@dataclass(frozen=True)
class TwoModeMoments:
    """Two-mode moments: occupations plus the four quadratic channels.

    Channels 1 and 2 are the single-mode pairs <a^2> and <b^2>; channel 3 is
    the beam-splitter moment <a^dag b>; channel 4 the pair-creation moment
    <a b>.  Each is stored as (magnitude, phase in (-pi, pi]).
    """

    n1: float
    n2: float
    R1: float
    R2: float
    R3: float
    R4: float
    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float


# --------------------------------------------------------------------------
# Parameter records.  One frozen dataclass per family; together they form the
# FamilyParams union consumed by the optimizer and the command-line tool.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoherentPair:
    """Superposition of two coherent states, |alpha> + eta |beta>."""

    alpha: complex
    beta: complex
    eta: complex


@dataclass(frozen=True)
class SqueezedPair:
    """Superposition of opposite squeezed vacua along the real axis.

    The state is |r> + eta |-r| built from squeeze phases 0 and pi; ``r``
    must be non-negative.
    """

    r: float
    eta: complex


@dataclass(frozen=True)
class CoherentSqueezed:
    """Squeezed vacuum plus a coherent state: |r, delta> + eta |alpha>."""

    r: float
    delta: float
    alpha: complex
    eta: complex


@dataclass(frozen=True)
class VacuumSqueezed:
    """Squeezed vacuum (phase 0) plus the vacuum: |r> + eta |0>."""

    r: float
    eta: complex


@dataclass(frozen=True)
class BarnettRadmore:
    """Two-mode squeezed vacuum with magnitude ``r`` and phase ``delta``."""

    r: float
    delta: float


@dataclass(frozen=True)
class ZhangReal:
    """Phase superposition of doubly-squeezed vacua with relative phase theta.

    Both modes carry the same real squeeze magnitude ``r``; the two branches
    squeeze along opposite axes.
    """

    r: float
    theta: float


@dataclass(frozen=True)
class EntangledCoherent:
    """Entangled coherent state built from amplitudes sigma e^{i delta_k}.

    The two branches carry opposite signs and a relative phase theta.
    """

    sigma: float
    theta: float
    delta1: float
    delta2: float


FamilyParams = (
    CoherentPair
    | SqueezedPair
    | CoherentSqueezed
    | VacuumSqueezed
    | BarnettRadmore
    | ZhangReal
    | EntangledCoherent
)


def _check_denominator(d: float, context: str) -> None:
    if d < DEGENERATE_DENOMINATOR:
        raise DegenerateStateError(f"{context}: normalization denominator {d:.3e}")


# --------------------------------------------------------------------------
# Single-mode families
# --------------------------------------------------------------------------


def coherent_superposition_moments(params: CoherentPair) -> OneModeMoments:
    """Moments of N(|alpha> + eta |beta>).

    The overlap <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta)
    weights every cross term.  Raises :class:`DegenerateStateError` when the
    two branches cancel.
    """
    alpha, beta, eta = params.alpha, params.beta, params.eta
    ov = np.exp(-(abs(alpha) ** 2 + abs(beta) ** 2) / 2.0 + np.conj(alpha) * beta)
    denom = 1.0 + abs(eta) ** 2 + 2.0 * (eta * ov).real
    _check_denominator(denom, "coherent pair")
    norm2 = 1.0 / denom
    n = norm2 * (
        abs(alpha) ** 2
        + abs(eta * beta) ** 2
        + 2.0 * (eta * np.conj(alpha) * beta * ov).real
    )
    pair = norm2 * (
        alpha**2
        + abs(eta) ** 2 * beta**2
        + eta * beta**2 * ov
        + np.conj(eta) * alpha**2 * np.conj(ov)
    )
    mag, phase = _polar(pair)
    return OneModeMoments(n=float(n), pair_mag=mag, pair_phase=phase)


def squeezed_vacuum_moments(r: float, delta: float) -> OneModeMoments:
    """Moments of a single squeezed vacuum: n = sinh^2 r, |<a^2>| = sinh r cosh r."""
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    s, c = np.sinh(r), np.cosh(r)
    mag, phase = _polar(-np.exp(1j * delta) * s * c)
    return OneModeMoments(n=float(s * s), pair_mag=mag, pair_phase=phase)


def superposed_squeezed_moments(params: SqueezedPair) -> OneModeMoments:
    """Moments of N(|r> + eta |-r>) for opposite real squeeze axes.

    The branch overlap is 1/sqrt(cosh 2r); cross moments pick up the factor
    (sech 2r)^{3/2} relative to the diagonal ones.
    """
    r, eta = params.r, params.eta
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    s, c = np.sinh(r), np.cosh(r)
    c2 = np.cosh(2.0 * r)
    ov = 1.0 / np.sqrt(c2)
    denom = 1.0 + abs(eta) ** 2 + 2.0 * eta.real * ov
    _check_denominator(denom, "superposed squeezed")
    norm2 = 1.0 / denom
    cross_n = s * s / c2**1.5
    cross_pair = s * c / c2**1.5
    n = norm2 * (s * s * (1.0 + abs(eta) ** 2) - 2.0 * eta.real * cross_n)
    pair = norm2 * ((abs(eta) ** 2 - 1.0) * s * c + 2j * eta.imag * cross_pair)
    mag, phase = _polar(pair)
    return OneModeMoments(n=float(n), pair_mag=mag, pair_phase=phase)


def coherent_plus_squeezed_moments(params: CoherentSqueezed) -> OneModeMoments:
    """Moments of N(|r, delta> + eta |alpha>).

    Parameters
    ----------
    params:
        Squeeze magnitude and phase, coherent amplitude, superposition weight.

    Notes
    -----
    The squeezed-coherent overlap is
    sqrt(sech r) exp(-|alpha|^2/2) exp(-e^{-i delta} alpha^2 tanh(r)/2),
    and the mixed ladder moments carry one extra tanh(r) per pair index.
    """
    r, delta, alpha, eta = params.r, params.delta, params.alpha, params.eta
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    s, c, t = np.sinh(r), np.cosh(r), np.tanh(r)
    root_sech = np.sqrt(1.0 / np.cosh(r))
    gauss = np.exp(-abs(alpha) ** 2 / 2.0)
    twist = np.exp(-0.5 * np.exp(-1j * delta) * alpha**2 * t)
    ov = gauss * root_sech * twist
    denom = 1.0 + abs(eta) ** 2 + 2.0 * (eta * ov).real
    _check_denominator(denom, "coherent plus squeezed")
    norm2 = 1.0 / denom
    n = norm2 * (
        s * s
        + abs(eta * alpha) ** 2
        - 2.0 * gauss * root_sech * t * (eta * np.exp(-1j * delta) * alpha**2 * twist).real
    )
    pair = norm2 * (
        -s * c * np.exp(1j * delta)
        + abs(eta) ** 2 * alpha**2
        + eta * alpha**2 * ov
        + np.conj(eta)
        * gauss
        * root_sech
        * (np.conj(alpha) ** 2 * np.exp(1j * delta) * t - 1.0)
        * np.exp(1j * delta)
        * t
        * np.conj(twist)
    )
    mag, phase = _polar(pair)
    return OneModeMoments(n=float(n), pair_mag=mag, pair_phase=phase)


def vacuum_plus_squeezed_moments(params: VacuumSqueezed) -> OneModeMoments:
    """Moments of N(|r> + eta |0>).

    At the singular corner eta -> -1, r -> 0 the normalized state tends to
    the two-photon ket, so that limit (n = 2, vanishing pair moment) is
    returned instead of an error.
    """
    r, eta = params.r, params.eta
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    s, c = np.sinh(r), np.cosh(r)
    sech = 1.0 / np.cosh(r)
    denom = 1.0 + abs(eta) ** 2 + 2.0 * eta.real * np.sqrt(sech)
    if denom < DEGENERATE_DENOMINATOR:
        return OneModeMoments(n=2.0, pair_mag=0.0, pair_phase=0.0)
    norm2 = 1.0 / denom
    n = norm2 * s * s
    pair = -norm2 * s * c * (1.0 + np.conj(eta) * sech**2.5)
    mag, phase = _polar(pair)
    return OneModeMoments(n=float(n), pair_mag=mag, pair_phase=phase)


# --------------------------------------------------------------------------
# Two-mode families
# --------------------------------------------------------------------------


def barnett_radmore_moments(params: BarnettRadmore) -> TwoModeMoments:
    """Two-mode squeezed vacuum: equal occupations, pair-creation channel only."""
    r, delta = params.r, params.delta
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    s, c = np.sinh(r), np.cosh(r)
    mag4, phase4 = _polar(-np.exp(1j * delta) * s * c)
    return TwoModeMoments(
        n1=float(s * s),
        n2=float(s * s),
        R1=0.0,
        R2=0.0,
        R3=0.0,
        R4=mag4,
        gamma1=0.0,
        gamma2=0.0,
        gamma3=0.0,
        gamma4=phase4,
    )


def zhang_moments(params: ZhangReal) -> TwoModeMoments:
    """Phase-superposed doubly-squeezed vacua; only the single-mode pairs survive.

    Degenerate normalization (theta = pi at r = 0) raises
    :class:`DegenerateStateError`.
    """
    r, theta = params.r, params.theta
    if r < 0:
        raise ValueError("squeeze magnitude must be non-negative")
    s = np.sinh(r)
    c2 = np.cosh(2.0 * r)
    denom = 2.0 * (1.0 + np.cos(theta) / c2)
    _check_denominator(denom, "phase-superposed squeezed pair")
    norm2 = 1.0 / denom
    n = 2.0 * norm2 * s * s * (1.0 - np.cos(theta) / c2**2)
    pair = -1j * norm2 * np.sin(theta) * np.sinh(2.0 * r) / c2**2
    mag, phase = _polar(pair)
    return TwoModeMoments(
        n1=float(n),
        n2=float(n),
        R1=mag,
        R2=mag,
        R3=0.0,
        R4=0.0,
        gamma1=phase,
        gamma2=phase,
        gamma3=0.0,
        gamma4=0.0,
    )


def zhang_small_r_asymptotics(theta: float) -> tuple[float, float]:
    """Leading small-squeeze coefficients (c_n, c_R) for the phase-superposed pair.

    The occupation behaves as c_n r^2 and the pair magnitude as c_R r with

        c_n = (1 - cos theta) / (1 + cos theta),   c_R = |sin theta| / (1 + cos theta).

    theta = pi makes both denominators vanish and raises ZeroDivisionError.
    """
    denom = 1.0 + np.cos(theta)
    if abs(denom) < 1e-15:
        raise ZeroDivisionError("asymptotic coefficients diverge at theta = pi")
    c_n = (1.0 - np.cos(theta)) / denom
    c_r = abs(np.sin(theta)) / denom
    return float(c_n), float(c_r)


def entangled_coherent_moments(params: EntangledCoherent) -> TwoModeMoments:
    """Moments of N(|alpha, beta> + e^{i theta} |-alpha, -beta>).

    Amplitudes are alpha = sigma e^{i delta1}, beta = sigma e^{i delta2}.
    Because both branches are eigenstates of a^2, b^2 and ab, those channels
    keep their bare coherent values; only the occupations and the
    beam-splitter channel feel the superposition.  sigma = 0 with theta = pi
    is degenerate.
    """
    sigma, theta = params.sigma, params.theta
    if sigma < 0:
        raise ValueError("coherent magnitude must be non-negative")
    alpha = sigma * np.exp(1j * params.delta1)
    beta = sigma * np.exp(1j * params.delta2)
    overlap4 = np.exp(-4.0 * sigma**2)
    denom = 2.0 * (1.0 + np.cos(theta) * overlap4)
    _check_denominator(denom, "entangled coherent")
    norm2 = 1.0 / denom
    n = 2.0 * norm2 * sigma**2 * (1.0 - np.cos(theta) * overlap4)
    mag1, phase1 = _polar(alpha**2)
    mag2, phase2 = _polar(beta**2)
    mag3, phase3 = _polar(2.0 * norm2 * np.conj(alpha) * beta * (1.0 - np.cos(theta) * overlap4))
    mag4, phase4 = _polar(alpha * beta)
    return TwoModeMoments(
        n1=float(n),
        n2=float(n),
        R1=mag1,
        R2=mag2,
        R3=mag3,
        R4=mag4,
        gamma1=phase1,
        gamma2=phase2,
        gamma3=phase3,
        gamma4=phase4,
    )


def f_sigma(sigma: float) -> float:
    """Depth profile of the aligned entangled-coherent minimum.

    f(sigma) = sigma^2 e^{-2 sigma^2} (1 + e^{-2 sigma^2}) / (1 + e^{-4 sigma^2});
    the deepest aligned minimum is -4 omega f(sigma) in natural units.
    """
    e2 = np.exp(-2.0 * sigma**2)
    return float(sigma**2 * e2 * (1.0 + e2) / (1.0 + e2 * e2))
