"""Projected-ascent machinery: gradients, single ascents, multi-start dedup."""

import math

import numpy as np
import pytest

from subvacuum.optimizer import (
    AscentFailure,
    SearchConfig,
    SearchSpace,
    ascend,
    coherent_pair_space,
    fd_gradient,
    multi_start,
    objective_F,
    vacuum_squeezed_space,
)
from subvacuum.state_families import (
    DegenerateStateError,
    OneModeMoments,
    VacuumSqueezed,
    vacuum_plus_squeezed_moments,
)

PI = math.pi

# Optimal half-separation of the even coherent superposition and the common
# objective value along its displacement ridge (lambertW(1/e), reached at
# alpha = beta = A_STAR as well as at the displaced endpoint (0, 2 A_STAR)).
A_STAR = 0.7995200256282121
F_RIDGE = 0.2784645427610738


def quadratic_space(lower=(-10.0, -10.0), upper=(10.0, 10.0)) -> SearchSpace:
    """Synthetic concave objective F = 3 - (p0-1)^2 - 2(p1+0.5)^2."""

    def moments(p: np.ndarray) -> OneModeMoments:
        q = (p[0] - 1.0) ** 2 + 2.0 * (p[1] + 0.5) ** 2
        return OneModeMoments(n=q - 3.0, pair_mag=0.0, pair_phase=0.0)

    return SearchSpace(
        family="synthetic",
        names=("p0", "p1"),
        lower=lower,
        upper=upper,
        angular=(False, False),
        moments_of=moments,
    )


class TestSearchSpace:
    def test_rejects_misaligned_fields(self):
        with pytest.raises(ValueError, match="align"):
            SearchSpace(
                family="bad",
                names=("a", "b"),
                lower=(0.0,),
                upper=(1.0, 1.0),
                angular=(False, False),
                moments_of=lambda p: OneModeMoments(0.0, 0.0, 0.0),
            )

    def test_rejects_inverted_bounds(self):
        with pytest.raises(ValueError, match="lower"):
            SearchSpace(
                family="bad",
                names=("a",),
                lower=(2.0,),
                upper=(1.0,),
                angular=(False,),
                moments_of=lambda p: OneModeMoments(0.0, 0.0, 0.0),
            )

    def test_clamp_clips_box_and_wraps_angles(self):
        space = coherent_pair_space()
        q = space.clamp(np.array([-1.0, 5.0, 2.0, -0.1, 2.0 * PI + 0.3]))
        assert q[0] == 0.0
        assert q[1] == 3.0
        assert q[2] == 2.0
        assert q[3] == pytest.approx(2.0 * PI - 0.1, abs=1e-12)
        assert q[4] == pytest.approx(0.3, abs=1e-12)


class TestSearchConfig:
    def test_defaults_valid(self):
        cfg = SearchConfig()
        assert cfg.starts == 64 and cfg.max_iters == 500

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"starts": 0},
            {"armijo_c": 0.0},
            {"armijo_c": 1.0},
            {"fd_step": 0.0},
            {"step_init": -1.0},
            {"grad_tol": 0.0},
            {"max_iters": 0},
        ],
    )
    def test_rejects_bad_hyperparameters(self, kwargs):
        with pytest.raises(ValueError):
            SearchConfig(**kwargs)


class TestObjective:
    def test_ridge_endpoints_share_the_lambert_value(self):
        space = coherent_pair_space()
        cat = objective_F(space, np.array([A_STAR, A_STAR, 1.0, PI, 0.0]))
        displaced = objective_F(space, np.array([0.0, 2.0 * A_STAR, 1.0, 0.0, 0.0]))
        assert cat == pytest.approx(F_RIDGE, abs=1e-12)
        assert displaced == pytest.approx(F_RIDGE, abs=1e-12)

    def test_degenerate_point_maps_to_minus_infinity(self):
        # beta = alpha with eta = -1 annihilates the superposition.
        space = coherent_pair_space()
        val = objective_F(space, np.array([0.5, 0.5, 1.0, 0.0, PI]))
        assert val == -math.inf

    def test_quadratic_value(self):
        space = quadratic_space()
        assert objective_F(space, np.array([1.0, -0.5])) == pytest.approx(3.0)
        assert objective_F(space, np.array([0.0, 0.0])) == pytest.approx(1.5)


class TestGradient:
    def test_central_difference_matches_analytic_on_quadratic(self):
        space = quadratic_space()
        g = fd_gradient(space, np.array([0.0, 0.0]), 1e-5)
        # dF/dp = (-2(p0-1), -4(p1+0.5)) = (2, -2) at the origin
        assert g == pytest.approx([2.0, -2.0], abs=1e-8)

    def test_one_sided_at_box_boundary(self):
        space = quadratic_space(lower=(0.0, -10.0), upper=(10.0, 10.0))
        g = fd_gradient(space, np.array([0.0, 0.0]), 1e-5)
        assert g == pytest.approx([2.0, -2.0], abs=1e-3)

    def test_pinched_coordinate_gets_zero_gradient(self):
        space = quadratic_space(lower=(-10.0, 1.5), upper=(10.0, 1.5))
        g = fd_gradient(space, np.array([0.0, 1.5]), 1e-5)
        assert g[1] == 0.0

    def test_flat_ridge_gradient_vanishes_in_full_phase_space(self):
        # Unpinning the first coherent phase adds the displacement direction
        # to the box; along the ridge the objective is constant, so the full
        # 6-coordinate gradient is numerically zero everywhere on it.
        space = coherent_pair_space(free_delta1=True)
        for c in (0.1, 0.3, 0.4):
            a1, a2 = c + A_STAR, c - A_STAR
            p = np.array(
                [
                    abs(a1),
                    abs(a2),
                    1.0,
                    0.0 if a1 >= 0 else PI,
                    0.0 if a2 >= 0 else PI,
                    0.0,
                ]
            )
            assert objective_F(space, p) == pytest.approx(F_RIDGE, abs=1e-12)
            grad_norm = float(np.linalg.norm(fd_gradient(space, p, 1e-5)))
            assert grad_norm < 1e-6

    def test_raises_when_no_stencil_survives(self):
        def moments(p: np.ndarray) -> OneModeMoments:
            if abs(p[0]) > 1e-12:
                raise DegenerateStateError("off-center")
            return OneModeMoments(0.0, 0.0, 0.0)

        space = SearchSpace(
            family="needle",
            names=("p0",),
            lower=(-1.0,),
            upper=(1.0,),
            angular=(False,),
            moments_of=moments,
        )
        with pytest.raises(AscentFailure, match="stencil"):
            fd_gradient(space, np.array([0.0]), 1e-5)


class TestAscend:
    def test_converges_to_interior_maximum(self):
        space = quadratic_space()
        ext = ascend(space, [0.0, 0.0], SearchConfig(starts=1, seed=0))
        assert ext.converged
        assert ext.grad_norm <= 1e-7
        assert ext.params[0] == pytest.approx(1.0, abs=1e-6)
        assert ext.params[1] == pytest.approx(-0.5, abs=1e-6)
        assert ext.F == pytest.approx(3.0, abs=1e-12)

    def test_start_at_maximum_terminates_immediately(self):
        space = quadratic_space()
        ext = ascend(space, [1.0, -0.5], SearchConfig(starts=1, seed=0))
        assert ext.converged
        assert ext.iterations == 0
        assert ext.F == pytest.approx(3.0)

    def test_pins_to_boundary_when_maximum_lies_outside(self):
        space = quadratic_space(lower=(-10.0, -10.0), upper=(0.5, 10.0))
        ext = ascend(space, [-1.0, 0.0], SearchConfig(starts=1, seed=0))
        assert ext.converged
        assert ext.params[0] == pytest.approx(0.5, abs=1e-9)
        assert ext.params[1] == pytest.approx(-0.5, abs=1e-6)

    def test_degenerate_start_raises(self):
        space = coherent_pair_space()
        with pytest.raises(AscentFailure, match="undefined"):
            ascend(space, [0.5, 0.5, 1.0, 0.0, PI], SearchConfig(starts=1, seed=0))

    def test_never_finishes_below_its_start(self):
        space = coherent_pair_space()
        cfg = SearchConfig(starts=1, seed=0, max_iters=40)
        rng = np.random.default_rng(9)
        lo, hi = np.array(space.lower), np.array(space.upper)
        for _ in range(20):
            p0 = lo + (hi - lo) * rng.uniform(size=space.dim)
            f0 = objective_F(space, p0)
            if not math.isfinite(f0):
                continue
            ext = ascend(space, p0, cfg)
            assert ext.F >= f0 - 1e-12


class TestMultiStart:
    def test_deterministic_and_fully_accounted(self):
        space = coherent_pair_space()
        cfg = SearchConfig(starts=8, seed=42)
        report = multi_start(space, cfg)
        assert report == multi_start(space, cfg)
        assert report.starts == 8 and report.seed == 42
        assert report.failed_starts == 0
        assert sum(e.members for e in report.extrema) == 8

    def test_sorted_descending_and_near_ridge_top(self):
        space = coherent_pair_space()
        report = multi_start(space, SearchConfig(starts=8, seed=42))
        values = [e.F for e in report.extrema]
        assert values == sorted(values, reverse=True)
        # 8 starts already get within ~3e-7 of the ridge value but cannot
        # exceed it.
        assert values[0] == pytest.approx(F_RIDGE, abs=1e-5)
        assert values[0] <= F_RIDGE + 1e-9

    def test_swap_symmetric_finds_cluster_together(self):
        # The top cluster from this seed collects both orientations of the
        # displaced-cat endpoint, one of them amplitude-swapped; without the
        # canonical map they would count as separate extrema.
        space = coherent_pair_space()
        report = multi_start(space, SearchConfig(starts=8, seed=42))
        top = report.extrema[0]
        assert top.members >= 2

    def test_canonical_map_merges_swapped_representation(self):
        space = coherent_pair_space()
        assert space.canonical is not None
        p = np.array([0.3, 1.2, 2.0, 0.5, 1.0])
        swapped = np.array([1.2, 0.3, 0.5, 2.0 * PI - 0.5, 2.0 * PI - 1.0])
        assert space.canonical(p) == pytest.approx(space.canonical(swapped), abs=1e-12)

    def test_canonical_map_zeroes_meaningless_phase(self):
        space = coherent_pair_space()
        rep = space.canonical(np.array([0.0, 1.0, 1.0, 2.3, 0.7]))
        assert rep[3] == 0.0

    def test_vacuum_squeezed_slice_pins_to_upper_bound(self):
        space = vacuum_squeezed_space()
        report = multi_start(space, SearchConfig(starts=6, seed=3))
        assert len(report.extrema) == 1
        top = report.extrema[0]
        assert top.params == (3.0,)
        assert top.converged and top.grad_norm == 0.0
        assert top.members == 6
        m = vacuum_plus_squeezed_moments(VacuumSqueezed(r=3.0, eta=-1.0))
        assert top.F == m.pair_mag - m.n
