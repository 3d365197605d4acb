"""Randomized cross-validation of every closed-form moment against the oracle.

For each state family we draw parameters from a seeded stream inside
oracle-safe bounds (squeeze magnitudes <= 2.5, coherent amplitudes <= 3,
superposition weights <= 4 in magnitude), build the state in the truncated
number basis with an auto-sized cutoff, and demand that every closed-form
moment agree with the brute-force value to max(1e-8, 10 x tail mass).

A second report checks the hyperbolic matrix-element identities used inside
the closed forms (squeezed-squeezed and squeezed-coherent overlaps and ladder
moments) at fixed squeeze values, including a side-by-side comparison of the
two published variants of the cross pair moment's denominator — the
(1 + tanh^2 r)^{3/2} form is the one the oracle confirms; the (1 + tanh r)^{3/2}
variant is reported for the record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import fock_oracle as oracle
from .state_families import (
    BarnettRadmore,
    CoherentPair,
    CoherentSqueezed,
    EntangledCoherent,
    OneModeMoments,
    SqueezedPair,
    TwoModeMoments,
    VacuumSqueezed,
    ZhangReal,
    barnett_radmore_moments,
    coherent_plus_squeezed_moments,
    coherent_superposition_moments,
    entangled_coherent_moments,
    superposed_squeezed_moments,
    vacuum_plus_squeezed_moments,
    zhang_moments,
)

__all__ = [
    "VerifyReport",
    "IdentityRow",
    "FAMILIES",
    "verify_family",
    "verify_all",
    "appendix_identity_report",
]

#: Draw guard: parameter draws keeping the normalization denominator above
#: this are accepted; closer-to-degenerate draws are redrawn (the closed
#: forms and the oracle both lose precision as 1/denominator blows up).
_DENOM_GUARD = 1e-6

#: Auto-cutoff target for verification states.  Truncating at cutoff M with
#: tail mass t perturbs the moments by up to ~M*t (the lost terms carry ladder
#: weights of order M), so the target must sit well below 1e-8 / M for the
#: max(1e-8, 10 x tail) tolerance to hold at its floor.  1e-12 keeps the
#: worst case near 4e-9 even at the largest draw (r = 2.5, M = 4096).
_TAIL_TARGET = 1e-12


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one family's randomized oracle comparison."""

    family: str
    draws: int
    max_abs_deviation: float
    worst_params: dict[str, float]
    tail_bound: float
    passed: bool


@dataclass(frozen=True)
class IdentityRow:
    """One matrix-element identity checked at one squeeze value.

    ``required=False`` marks informational rows (the rejected published
    variant) that do not gate the verification exit status.
    """

    name: str
    r: float
    deviation: float
    tolerance: float
    passed: bool
    required: bool = True
    note: str = ""


def _one_mode_deviation(cm: OneModeMoments, om: oracle.OracleMoments) -> float:
    pair = cm.pair_mag * np.exp(1j * cm.pair_phase)
    return max(abs(cm.n - om.n_a), abs(pair - om.a2))


def _two_mode_deviation(cm: TwoModeMoments, om: oracle.OracleMoments) -> float:
    def channel(mag: float, ph: float) -> complex:
        return mag * np.exp(1j * ph)

    return max(
        abs(cm.n1 - om.n_a),
        abs(cm.n2 - om.n_b),
        abs(channel(cm.R1, cm.gamma1) - om.a2),
        abs(channel(cm.R2, cm.gamma2) - om.b2),
        abs(channel(cm.R3, cm.gamma3) - om.adag_b),
        abs(channel(cm.R4, cm.gamma4) - om.ab),
    )


def _unit_phase(rng: np.random.Generator) -> float:
    return float(rng.uniform(0.0, 2.0 * math.pi))


# Each drawer returns (params dict for the report, deviation, tail mass).


def _draw_coherent_pair(rng, cap):
    while True:
        a = rng.uniform(0.0, 3.0) * np.exp(1j * _unit_phase(rng))
        b = rng.uniform(0.0, 3.0) * np.exp(1j * _unit_phase(rng))
        eta = rng.uniform(0.0, 4.0) * np.exp(1j * _unit_phase(rng))
        ov = np.exp(-(abs(a) ** 2 + abs(b) ** 2) / 2.0 + np.conj(a) * b)
        if 1.0 + abs(eta) ** 2 + 2.0 * (eta * ov).real >= _DENOM_GUARD:
            break
    cut = max(oracle.coherent_cutoff_for(a, _TAIL_TARGET, cap),
              oracle.coherent_cutoff_for(b, _TAIL_TARGET, cap))
    state = oracle.superpose(
        [(1.0, oracle.coherent_vector(a, cut)), (complex(eta), oracle.coherent_vector(b, cut))]
    )
    cm = coherent_superposition_moments(CoherentPair(alpha=a, beta=b, eta=eta))
    dev = _one_mode_deviation(cm, oracle.one_mode_moments(state))
    params = {
        "alpha_abs": float(abs(a)), "alpha_arg": float(np.angle(a)),
        "beta_abs": float(abs(b)), "beta_arg": float(np.angle(b)),
        "eta_abs": float(abs(eta)), "eta_arg": float(np.angle(eta)),
    }
    return params, dev, oracle.tail_mass(state)


def _draw_superposed_squeezed(rng, cap):
    while True:
        r = float(rng.uniform(0.0, 2.5))
        eta = rng.uniform(0.0, 4.0) * np.exp(1j * _unit_phase(rng))
        if 1.0 + abs(eta) ** 2 + 2.0 * eta.real / math.sqrt(math.cosh(2 * r)) >= _DENOM_GUARD:
            break
    cut = oracle.squeezed_cutoff_for(r, _TAIL_TARGET, cap)
    state = oracle.superpose(
        [
            (1.0, oracle.squeezed_vacuum_vector(r, 0.0, cut, strict=True)),
            (complex(eta), oracle.squeezed_vacuum_vector(r, math.pi, cut, strict=True)),
        ]
    )
    cm = superposed_squeezed_moments(SqueezedPair(r=r, eta=eta))
    dev = _one_mode_deviation(cm, oracle.one_mode_moments(state))
    params = {"r": r, "eta_abs": float(abs(eta)), "eta_arg": float(np.angle(eta))}
    return params, dev, oracle.tail_mass(state)


def _draw_coherent_squeezed(rng, cap):
    while True:
        r = float(rng.uniform(0.0, 2.5))
        delta = _unit_phase(rng)
        a = rng.uniform(0.0, 3.0) * np.exp(1j * _unit_phase(rng))
        eta = rng.uniform(0.0, 4.0) * np.exp(1j * _unit_phase(rng))
        ov = (
            np.exp(-abs(a) ** 2 / 2.0)
            * math.sqrt(1.0 / math.cosh(r))
            * np.exp(-0.5 * np.exp(-1j * delta) * a**2 * math.tanh(r))
        )
        if 1.0 + abs(eta) ** 2 + 2.0 * (eta * ov).real >= _DENOM_GUARD:
            break
    cut = max(oracle.squeezed_cutoff_for(r, _TAIL_TARGET, cap),
              oracle.coherent_cutoff_for(a, _TAIL_TARGET, cap))
    state = oracle.superpose(
        [
            (1.0, oracle.squeezed_vacuum_vector(r, delta, cut, strict=True)),
            (complex(eta), oracle.coherent_vector(a, cut)),
        ]
    )
    cm = coherent_plus_squeezed_moments(CoherentSqueezed(r=r, delta=delta, alpha=a, eta=eta))
    dev = _one_mode_deviation(cm, oracle.one_mode_moments(state))
    params = {
        "r": r, "delta": delta,
        "alpha_abs": float(abs(a)), "alpha_arg": float(np.angle(a)),
        "eta_abs": float(abs(eta)), "eta_arg": float(np.angle(eta)),
    }
    return params, dev, oracle.tail_mass(state)


def _draw_vacuum_squeezed(rng, cap):
    while True:
        r = float(rng.uniform(0.0, 2.5))
        eta = rng.uniform(0.0, 4.0) * np.exp(1j * _unit_phase(rng))
        if 1.0 + abs(eta) ** 2 + 2.0 * eta.real * math.sqrt(1 / math.cosh(r)) >= _DENOM_GUARD:
            break
    cut = oracle.squeezed_cutoff_for(r, _TAIL_TARGET, cap)
    state = oracle.superpose(
        [
            (1.0, oracle.squeezed_vacuum_vector(r, 0.0, cut, strict=True)),
            (complex(eta), oracle.coherent_vector(0.0, cut)),
        ]
    )
    cm = vacuum_plus_squeezed_moments(VacuumSqueezed(r=r, eta=eta))
    dev = _one_mode_deviation(cm, oracle.one_mode_moments(state))
    params = {"r": r, "eta_abs": float(abs(eta)), "eta_arg": float(np.angle(eta))}
    return params, dev, oracle.tail_mass(state)


def _draw_barnett_radmore(rng, cap):
    r = float(rng.uniform(0.0, 2.5))
    delta = _unit_phase(rng)
    cut = oracle.squeezed_cutoff_for(r, _TAIL_TARGET, cap)
    state = oracle.two_mode_squeezed_vector(r, delta, cut, strict=True)
    cm = barnett_radmore_moments(BarnettRadmore(r=r, delta=delta))
    dev = _two_mode_deviation(cm, oracle.two_mode_moments(state))
    return {"r": r, "delta": delta}, float(dev), oracle.tail_mass(state)


def _draw_zhang(rng, cap):
    while True:
        r = float(rng.uniform(0.0, 2.5))
        theta = _unit_phase(rng)
        if 2.0 * (1.0 + math.cos(theta) / math.cosh(2 * r)) >= _DENOM_GUARD:
            break
    cut = oracle.squeezed_cutoff_for(r, _TAIL_TARGET, cap)
    minus = oracle.squeezed_vacuum_vector(r, math.pi, cut, strict=True)
    plus = oracle.squeezed_vacuum_vector(r, 0.0, cut, strict=True)
    state = oracle.superpose_two_mode(
        [
            (1.0, oracle.product_state(minus, minus)),
            (np.exp(1j * theta), oracle.product_state(plus, plus)),
        ]
    )
    cm = zhang_moments(ZhangReal(r=r, theta=theta))
    dev = _two_mode_deviation(cm, oracle.two_mode_moments(state))
    return {"r": r, "theta": theta}, float(dev), oracle.tail_mass(state)


def _draw_entangled_coherent(rng, cap):
    while True:
        sigma = float(rng.uniform(0.0, 3.0))
        theta = _unit_phase(rng)
        d1 = _unit_phase(rng)
        d2 = _unit_phase(rng)
        if 2.0 * (1.0 + math.cos(theta) * math.exp(-4.0 * sigma**2)) >= _DENOM_GUARD:
            break
    a = sigma * np.exp(1j * d1)
    b = sigma * np.exp(1j * d2)
    cut = max(oracle.coherent_cutoff_for(a, _TAIL_TARGET, cap),
              oracle.coherent_cutoff_for(b, _TAIL_TARGET, cap))
    state = oracle.superpose_two_mode(
        [
            (1.0, oracle.product_state(oracle.coherent_vector(a, cut),
                                       oracle.coherent_vector(b, cut))),
            (np.exp(1j * theta), oracle.product_state(oracle.coherent_vector(-a, cut),
                                                      oracle.coherent_vector(-b, cut))),
        ]
    )
    cm = entangled_coherent_moments(
        EntangledCoherent(sigma=sigma, theta=theta, delta1=d1, delta2=d2)
    )
    dev = _two_mode_deviation(cm, oracle.two_mode_moments(state))
    return {"sigma": sigma, "theta": theta, "delta1": d1, "delta2": d2}, dev, oracle.tail_mass(state)


_DRAWERS = {
    "coherent-pair": _draw_coherent_pair,
    "superposed-squeezed": _draw_superposed_squeezed,
    "coherent-squeezed": _draw_coherent_squeezed,
    "vacuum-squeezed": _draw_vacuum_squeezed,
    "barnett-radmore": _draw_barnett_radmore,
    "zhang": _draw_zhang,
    "entangled-coherent": _draw_entangled_coherent,
}

FAMILIES: tuple[str, ...] = tuple(_DRAWERS)


def verify_family(family: str, draws: int, seed: int, cutoff_cap: int = 4096) -> VerifyReport:
    """Randomized oracle comparison for one family.

    Per-draw tolerance is max(1e-8, 10 x tail mass); the report carries the
    largest deviation, the parameters that produced it, and the largest tail
    mass encountered.
    """
    if family not in _DRAWERS:
        raise KeyError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if draws < 0:
        raise ValueError("draws must be non-negative")
    drawer = _DRAWERS[family]
    rng = np.random.default_rng([seed, FAMILIES.index(family)])
    max_dev = 0.0
    worst: dict[str, float] = {}
    tail_bound = 0.0
    passed = True
    for _ in range(draws):
        params, dev, tail = drawer(rng, cutoff_cap)
        dev, tail = float(dev), float(tail)
        tail_bound = max(tail_bound, tail)
        if dev > max(1e-8, 10.0 * tail):
            passed = False
        if dev > max_dev:
            max_dev = dev
            worst = params
    return VerifyReport(
        family=family,
        draws=draws,
        max_abs_deviation=max_dev,
        worst_params=worst,
        tail_bound=tail_bound,
        passed=passed,
    )


def verify_all(
    families: Iterable[str] | None = None,
    draws: int = 100,
    seed: int = 7,
    cutoff_cap: int = 4096,
) -> list[VerifyReport]:
    """Run verify_family over the requested families (all by default)."""
    return [
        verify_family(f, draws, seed, cutoff_cap)
        for f in (FAMILIES if families is None else tuple(families))
    ]


# --------------------------------------------------------------------------
# Matrix-element identities behind the closed forms
# --------------------------------------------------------------------------


def _expect_number_between(bra: oracle.FockVector, ket: oracle.FockVector) -> complex:
    idx = np.arange(bra.amps.size)
    return complex(np.sum(np.conj(bra.amps) * idx * ket.amps))


def _expect_pair_between(bra: oracle.FockVector, ket: oracle.FockVector) -> complex:
    idx = np.arange(bra.amps.size, dtype=float)
    w = np.sqrt((idx[:-2] + 1.0) * (idx[:-2] + 2.0))
    return complex(np.sum(np.conj(bra.amps[:-2]) * w * ket.amps[2:]))


def _expect_create_pair_between(bra: oracle.FockVector, ket: oracle.FockVector) -> complex:
    idx = np.arange(bra.amps.size, dtype=float)
    w = np.sqrt((idx[:-2] + 1.0) * (idx[:-2] + 2.0))
    return complex(np.sum(np.conj(bra.amps[2:]) * w * ket.amps[:-2]))


def appendix_identity_report(
    r_values: Iterable[float] = (0.5, 1.0, 2.0),
    alpha: float = 0.6,
    cutoff_cap: int = 8192,
) -> list[IdentityRow]:
    """Check the hyperbolic matrix-element identities at fixed squeeze values.

    Covers overlaps and ladder moments between opposite squeezed vacua and
    between a squeezed vacuum and a coherent state.  The cross pair moment is
    evaluated in both published denominator variants; only the tanh-squared
    form is required to pass, the other row records the measured discrepancy.
    """
    rows: list[IdentityRow] = []
    tol = 1e-10
    for r in r_values:
        cut = oracle.squeezed_cutoff_for(r, 1e-12, cutoff_cap)
        cut = max(cut, oracle.coherent_cutoff_for(alpha, 1e-12, cutoff_cap))
        ket = oracle.squeezed_vacuum_vector(r, 0.0, cut)
        bra_minus = oracle.squeezed_vacuum_vector(r, math.pi, cut)
        coh = oracle.coherent_vector(alpha, cut)
        t, sech = math.tanh(r), 1.0 / math.cosh(r)

        dev = abs(oracle.inner(bra_minus, ket) - math.sqrt(1.0 / math.cosh(2 * r)))
        rows.append(IdentityRow("overlap-opposite-squeezed", r, float(dev), tol, dev <= tol))

        closed = -sech * t * t / (1.0 + t * t) ** 1.5
        dev = abs(_expect_number_between(bra_minus, ket) - closed)
        rows.append(IdentityRow("occupation-opposite-squeezed", r, float(dev), tol, dev <= tol))

        pair = _expect_pair_between(bra_minus, ket)
        closed_sq = -sech * t / (1.0 + t * t) ** 1.5
        dev = abs(pair - closed_sq)
        rows.append(
            IdentityRow("pair-opposite-squeezed[tanh^2 denominator]", r, float(dev), tol, dev <= tol)
        )
        closed_alt = -sech * t / (1.0 + t) ** 1.5
        dev_alt = abs(pair - closed_alt)
        rows.append(
            IdentityRow(
                "pair-opposite-squeezed[tanh denominator]",
                r,
                float(dev_alt),
                tol,
                dev_alt <= tol,
                required=False,
                note="rejected variant, reported for adjudication",
            )
        )

        # squeezed-coherent elements at delta = 0
        g = math.exp(-(alpha**2) / 2.0) * math.sqrt(sech)
        twist = math.exp(-0.5 * alpha**2 * t)
        dev = abs(oracle.inner(ket, coh) - g * twist)
        rows.append(IdentityRow("overlap-squeezed-coherent", r, float(dev), tol, dev <= tol))

        closed_n = -g * alpha**2 * t * twist
        dev = abs(_expect_number_between(ket, coh) - closed_n)
        rows.append(IdentityRow("occupation-squeezed-coherent", r, float(dev), tol, dev <= tol))

        closed_cp = g * (alpha**2 * t - 1.0) * t * twist
        dev = abs(_expect_create_pair_between(ket, coh) - closed_cp)
        rows.append(IdentityRow("create-pair-squeezed-coherent", r, float(dev), tol, dev <= tol))
    return rows
