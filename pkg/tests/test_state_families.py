"""Closed-form moment tests for every state family.

Where a closed form has a distinctive exact consequence (a flat direction, an
exact zero, a hyperbolic identity) the test pins it at near machine precision;
where the value is simply "what the algebra gives", the expected number was
cross-checked against the number-basis oracle first and is frozen here to
nine-plus digits.
"""

import math

import numpy as np
import pytest
from scipy.special import lambertw

import subvacuum.state_families as sf

TAU = 2.0 * math.pi

# Location of the flat ridge of F = R - n for even coherent superpositions:
# N(|c + a> + |c - a>) has F independent of the real displacement c, and the
# optimal half-separation a* gives F = W(1/e) (Lambert W).
A_STAR = 0.7995200256282121
F_RIDGE = float(lambertw(math.exp(-1.0)).real)  # 0.2784645427610738


def one_mode_F(m: sf.OneModeMoments) -> float:
    return m.pair_mag - m.n


# ---------------------------------------------------------------------------
# wrap_angle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "raw,expected",
    [
        (0.0, 0.0),
        (math.pi, math.pi),
        (-math.pi, math.pi),
        (3.0 * math.pi, math.pi),
        (TAU + 0.25, 0.25),
        (-0.25, -0.25),
    ],
)
def test_wrap_angle_lands_in_half_open_interval(raw, expected):
    w = sf.wrap_angle(raw)
    assert -math.pi < w <= math.pi
    assert w == pytest.approx(expected, abs=1e-12)


# ---------------------------------------------------------------------------
# Squeezed vacuum
# ---------------------------------------------------------------------------


class TestSqueezedVacuum:
    def test_hyperbolic_moments(self):
        m = sf.squeezed_vacuum_moments(1.0, 0.0)
        assert m.n == pytest.approx(math.sinh(1.0) ** 2, abs=1e-14)
        assert m.pair_mag == pytest.approx(math.sinh(1.0) * math.cosh(1.0), abs=1e-14)

    def test_pair_phase_opposes_squeeze_axis(self):
        # <a^2> = -e^{i delta} sinh r cosh r, so gamma = delta + pi (wrapped).
        m = sf.squeezed_vacuum_moments(0.8, 0.4)
        assert m.pair_phase == pytest.approx(sf.wrap_angle(0.4 + math.pi), abs=1e-12)
        m5 = sf.squeezed_vacuum_moments(0.8, 5.0)
        assert m5.pair_phase == pytest.approx(5.0 + math.pi - TAU, abs=1e-12)

    def test_f_approaches_half(self):
        # R - n climbs to 1/2.  Beyond r ~ 8 the moments are ~1e7 and their
        # float64 difference is quantized in ~1e-8 steps, so strict
        # monotonicity of the computed sequence only holds below that.
        rs = np.linspace(0.0, 8.0, 161)
        f = [one_mode_F(sf.squeezed_vacuum_moments(r, 0.0)) for r in rs]
        assert all(b > a for a, b in zip(f, f[1:]))
        assert f[-1] < 0.5
        assert one_mode_F(sf.squeezed_vacuum_moments(5.0, 0.0)) > 0.49

    def test_f_cancellation_stays_below_ulp_budget(self):
        # On the full [0, 10] range the difference R - n deviates from the
        # exact (1 - e^{-2r})/2 by at most one ulp of the moments (~3e-8 at
        # r = 10); measured worst case 1.7e-8.
        rs = np.linspace(0.0, 10.0, 401)
        worst = max(
            abs(one_mode_F(sf.squeezed_vacuum_moments(float(r), 0.0)) - 0.5 * (1 - math.exp(-2 * r)))
            for r in rs
        )
        assert worst < 3e-8

    def test_exact_closed_form_for_f(self):
        # R - n = (1 - e^{-2r}) / 2 exactly.
        for r in (0.3, 1.7, 4.2):
            got = one_mode_F(sf.squeezed_vacuum_moments(r, 2.2))
            assert got == pytest.approx(0.5 * (1.0 - math.exp(-2.0 * r)), abs=1e-12)

    def test_negative_squeeze_rejected(self):
        with pytest.raises(ValueError):
            sf.squeezed_vacuum_moments(-1.0, 0.0)


# ---------------------------------------------------------------------------
# Coherent superpositions N(|alpha> + eta |beta>)
# ---------------------------------------------------------------------------


class TestCoherentPairMoments:
    def test_eta_zero_reduces_to_single_coherent(self):
        alpha = 1.1 * np.exp(0.7j)
        m = sf.coherent_superposition_moments(sf.CoherentPair(alpha, 2.0, 0.0))
        assert m.n == pytest.approx(abs(alpha) ** 2, abs=1e-12)
        assert m.pair_mag == pytest.approx(abs(alpha) ** 2, abs=1e-12)
        assert m.pair_phase == pytest.approx(sf.wrap_angle(2 * np.angle(alpha)), abs=1e-12)

    def test_identical_branches_recover_coherent_state(self):
        m = sf.coherent_superposition_moments(sf.CoherentPair(0.9, 0.9, 1.0))
        assert one_mode_F(m) == pytest.approx(0.0, abs=1e-12)
        assert m.n == pytest.approx(0.81, abs=1e-12)

    def test_branch_swap_symmetry(self):
        # N(|a> + eta |b>) and N(|b> + (1/eta) |a>) are the same ray.
        a, b, eta = 0.6 + 0.2j, 1.4 * np.exp(2.1j), 0.8 * np.exp(-0.5j)
        m1 = sf.coherent_superposition_moments(sf.CoherentPair(a, b, eta))
        m2 = sf.coherent_superposition_moments(sf.CoherentPair(b, a, 1.0 / eta))
        assert m1.n == pytest.approx(m2.n, abs=1e-10)
        assert m1.pair_mag == pytest.approx(m2.pair_mag, abs=1e-10)
        assert m1.pair_phase == pytest.approx(m2.pair_phase, abs=1e-10)

    def test_mode_phase_rotation_shifts_gamma_only(self):
        a, b, eta = 0.7, 1.2 * np.exp(0.4j), 1.3 * np.exp(1.9j)
        phi = 0.81
        m0 = sf.coherent_superposition_moments(sf.CoherentPair(a, b, eta))
        m1 = sf.coherent_superposition_moments(
            sf.CoherentPair(a * np.exp(1j * phi), b * np.exp(1j * phi), eta)
        )
        assert m1.n == pytest.approx(m0.n, abs=1e-12)
        assert m1.pair_mag == pytest.approx(m0.pair_mag, abs=1e-12)
        assert sf.wrap_angle(m1.pair_phase - m0.pair_phase - 2 * phi) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_destructive_normalization_raises(self):
        with pytest.raises(sf.DegenerateStateError):
            sf.coherent_superposition_moments(sf.CoherentPair(0.5, 0.5, -1.0))

    def test_flat_ridge_of_even_superpositions(self):
        """Real displacement of the even two-branch state never changes F.

        The occupation grows by exactly c^2 while R grows in lockstep, so the
        entire segment is one maximum of F at the Lambert-W level.
        """
        for c in (0.0, -0.3, 0.5, -A_STAR, 1.1):
            m = sf.coherent_superposition_moments(sf.CoherentPair(c + A_STAR, c - A_STAR, 1.0))
            assert one_mode_F(m) == pytest.approx(F_RIDGE, abs=1e-12)

    def test_ridge_endpoint_occupations(self):
        centered = sf.coherent_superposition_moments(sf.CoherentPair(A_STAR, -A_STAR, 1.0))
        shifted = sf.coherent_superposition_moments(sf.CoherentPair(0.0, 2 * A_STAR, 1.0))
        assert centered.n == pytest.approx(0.3607677286194632, abs=1e-12)
        assert shifted.n == pytest.approx(1.0, abs=1e-12)
        assert one_mode_F(shifted) == pytest.approx(F_RIDGE, abs=1e-12)


# ---------------------------------------------------------------------------
# Superposed opposite squeezes N(|r> + eta |-r>)
# ---------------------------------------------------------------------------


class TestSuperposedSqueezed:
    def test_eta_zero_reduction(self):
        m = sf.superposed_squeezed_moments(sf.SqueezedPair(1.3, 0.0))
        ref = sf.squeezed_vacuum_moments(1.3, 0.0)
        assert m.n == pytest.approx(ref.n, abs=1e-12)
        assert m.pair_mag == pytest.approx(ref.pair_mag, abs=1e-12)

    def test_equal_weights_kill_the_pair_moment(self):
        # At eta = -1 the surviving pair contribution is purely the
        # imaginary cross term, which vanishes for real eta.
        m = sf.superposed_squeezed_moments(sf.SqueezedPair(1.0, -1.0))
        assert m.pair_mag == 0.0
        assert m.n == pytest.approx(3.2415980313088735, abs=1e-9)

    def test_occupation_exceeds_single_branch_at_eta_minus_one(self):
        for r in (0.5, 1.0, 2.0):
            m = sf.superposed_squeezed_moments(sf.SqueezedPair(r, -1.0))
            assert m.n > math.sinh(r) ** 2

    def test_degenerate_at_zero_squeeze(self):
        with pytest.raises(sf.DegenerateStateError):
            sf.superposed_squeezed_moments(sf.SqueezedPair(0.0, -1.0))


# ---------------------------------------------------------------------------
# Squeezed vacuum plus coherent / plus vacuum
# ---------------------------------------------------------------------------


class TestCoherentPlusSqueezed:
    def test_eta_zero_reduction(self):
        m = sf.coherent_plus_squeezed_moments(sf.CoherentSqueezed(0.9, 1.2, 0.5, 0.0))
        ref = sf.squeezed_vacuum_moments(0.9, 1.2)
        assert m.n == pytest.approx(ref.n, abs=1e-12)
        assert m.pair_mag == pytest.approx(ref.pair_mag, abs=1e-12)
        assert m.pair_phase == pytest.approx(ref.pair_phase, abs=1e-12)

    def test_sign_alternation_along_r(self):
        # alpha = 0.6, eta = 1: F starts positive, dips negative, recovers.
        f = {
            r: one_mode_F(sf.coherent_plus_squeezed_moments(sf.CoherentSqueezed(r, 0.0, 0.6, 1.0)))
            for r in (0.1, 0.4, 1.0)
        }
        assert f[0.1] == pytest.approx(0.04509562726489158, abs=1e-11)
        assert f[0.4] == pytest.approx(-0.07526152877361264, abs=1e-11)
        assert f[1.0] == pytest.approx(0.04628319116999635, abs=1e-11)

    def test_vacuum_branch_value_at_deep_squeeze(self):
        m = sf.coherent_plus_squeezed_moments(sf.CoherentSqueezed(5.0, 0.0, 0.0, 1.0))
        assert one_mode_F(m) == pytest.approx(0.27598744783972506, abs=1e-11)


class TestVacuumPlusSqueezed:
    def test_eta_zero_reduction(self):
        m = sf.vacuum_plus_squeezed_moments(sf.VacuumSqueezed(1.4, 0.0))
        ref = sf.squeezed_vacuum_moments(1.4, 0.0)
        assert m.n == pytest.approx(ref.n, abs=1e-12)
        assert m.pair_mag == pytest.approx(ref.pair_mag, abs=1e-12)

    def test_f_profile_at_eta_minus_one(self):
        m2 = sf.vacuum_plus_squeezed_moments(sf.VacuumSqueezed(2.0, -1.0))
        m6 = sf.vacuum_plus_squeezed_moments(sf.VacuumSqueezed(6.0, -1.0))
        assert one_mode_F(m2) == pytest.approx(-0.006370229324739185, abs=1e-11)
        assert one_mode_F(m6) == pytest.approx(0.23106323914180393, abs=1e-11)

    def test_degenerate_limit_is_two_photon_state(self):
        # As r -> 0 with eta = -1 the normalized state tends to |2>, whose
        # occupation is 2 with a vanishing pair moment.
        m = sf.vacuum_plus_squeezed_moments(sf.VacuumSqueezed(0.0, -1.0))
        assert m == sf.OneModeMoments(2.0, 0.0, 0.0)
        near = sf.vacuum_plus_squeezed_moments(sf.VacuumSqueezed(1e-5, -1.0))
        assert near.n == pytest.approx(2.0, abs=1e-4)


# ---------------------------------------------------------------------------
# Two-mode families
# ---------------------------------------------------------------------------


class TestBarnettRadmore:
    def test_channel_structure(self):
        m = sf.barnett_radmore_moments(sf.BarnettRadmore(1.0, 0.0))
        assert m.n1 == pytest.approx(math.sinh(1.0) ** 2, abs=1e-14)
        assert m.n2 == m.n1
        assert m.R1 == m.R2 == m.R3 == 0.0
        assert m.R4 == pytest.approx(math.sinh(1.0) * math.cosh(1.0), abs=1e-14)
        assert m.gamma4 == pytest.approx(math.pi, abs=1e-12)

    def test_pair_phase_tracks_squeeze_phase(self):
        m = sf.barnett_radmore_moments(sf.BarnettRadmore(0.7, 5.0))
        assert m.gamma4 == pytest.approx(sf.wrap_angle(5.0 + math.pi), abs=1e-12)


class TestZhang:
    def test_cross_term_free_angle(self):
        # theta = pi/2 removes the interference term from the occupation.
        m = sf.zhang_moments(sf.ZhangReal(0.5, math.pi / 2))
        assert m.n1 == pytest.approx(math.sinh(0.5) ** 2, abs=1e-12)
        assert m.n2 == m.n1
        assert m.R1 == pytest.approx(0.24677717378228653, abs=1e-12)
        assert m.R2 == m.R1
        assert m.R3 == 0.0 and m.R4 == 0.0
        assert m.gamma1 == pytest.approx(-math.pi / 2, abs=1e-12)

    def test_theta_zero_collapses_pair_channel(self):
        # Equal-weight branches: n1 = sinh^2 r (1 - sech 2r) after the
        # normalization cancels one (1 + sech 2r) factor, and sin(0) kills
        # the pair channel entirely.
        r = 0.8
        m = sf.zhang_moments(sf.ZhangReal(r, 0.0))
        expected = math.sinh(r) ** 2 * (1.0 - 1.0 / math.cosh(2 * r))
        assert m.n1 == pytest.approx(expected, abs=1e-12)
        assert m.R1 == 0.0

    def test_degenerate_combination(self):
        with pytest.raises(sf.DegenerateStateError):
            sf.zhang_moments(sf.ZhangReal(0.0, math.pi))

    def test_small_r_asymptotics(self):
        theta = 0.99 * math.pi
        c_n, c_r = sf.zhang_small_r_asymptotics(theta)
        assert c_n == pytest.approx((1 - math.cos(theta)) / (1 + math.cos(theta)), rel=1e-12)
        assert c_r == pytest.approx(abs(math.sin(theta)) / (1 + math.cos(theta)), rel=1e-12)
        r = 1e-4
        m = sf.zhang_moments(sf.ZhangReal(r, theta))
        assert m.n1 == pytest.approx(c_n * r * r, rel=1e-2)
        assert m.R1 == pytest.approx(c_r * r, rel=1e-2)

    def test_asymptotics_blow_up_at_pi(self):
        with pytest.raises(ZeroDivisionError):
            sf.zhang_small_r_asymptotics(math.pi)


class TestEntangledCoherent:
    def test_aligned_zero_phase_values(self):
        m = sf.entangled_coherent_moments(sf.EntangledCoherent(0.7, 0.0, 0.0, 0.0))
        assert m.n1 == pytest.approx(0.36900229338608037, abs=1e-12)
        assert m.n2 == m.n1
        assert m.R1 == pytest.approx(0.49, abs=1e-12)
        assert m.R2 == pytest.approx(0.49, abs=1e-12)
        assert m.R3 == pytest.approx(m.n1, abs=1e-12)
        assert m.R4 == pytest.approx(0.49, abs=1e-12)

    def test_branch_amplitude_phases_carry_into_channels(self):
        d1, d2 = 0.8, -1.1
        m = sf.entangled_coherent_moments(sf.EntangledCoherent(0.5, 1.0, d1, d2))
        assert m.gamma1 == pytest.approx(sf.wrap_angle(2 * d1), abs=1e-12)
        assert m.gamma2 == pytest.approx(sf.wrap_angle(2 * d2), abs=1e-12)
        assert m.gamma4 == pytest.approx(sf.wrap_angle(d1 + d2), abs=1e-12)

    def test_degenerate_combination(self):
        with pytest.raises(sf.DegenerateStateError):
            sf.entangled_coherent_moments(sf.EntangledCoherent(0.0, math.pi, 0.0, 0.0))


def test_f_sigma_peak_region():
    assert sf.f_sigma(0.7) == pytest.approx(0.2216954006302608, abs=1e-12)
    assert sf.f_sigma(0.0) == 0.0
    # The depth profile decays once the branches decohere.
    assert sf.f_sigma(3.0) < 1e-6


def test_f_sigma_interior_maximum():
    sigmas = np.linspace(0.0, 3.0, 3001)
    vals = np.array([sf.f_sigma(s) for s in sigmas])
    k = int(np.argmax(vals))
    assert 0.65 < sigmas[k] < 0.75
    assert vals[k] == pytest.approx(0.2216980685, abs=1e-6)
