import numpy as np
import pytest

from csplan.envgen import (
    R2GenParams,
    R7GenParams,
    default_arm,
    find_shelf_slot,
    generate_environment,
    generate_problem,
    measure_gaps_at,
    plan_walls,
)
from csplan.geometry import fk_points, is_config_free, is_edge_free

RES = 0.125


def passage_interiors(seed, gen_params):
    """Interior point of each wall's passage, from the deterministic wall
    plan: tube center for straight walls, channel midpoint for zigzags."""
    points = []
    for spec in plan_walls(seed, gen_params):
        if spec.style == "straight":
            (x0, x1), (g_lo, g_hi) = spec.x_bands[0], spec.gaps[0]
            points.append(np.array([(x0 + x1) / 2, (g_lo + g_hi) / 2]))
        else:
            (xa, xb) = spec.x_bands
            (ga, gb) = spec.gaps
            cx = (xa[1] + xb[0]) / 2
            cy = (sum(ga) / 2 + sum(gb) / 2) / 2
            points.append(np.array([cx, cy]))
    return points


class TestGenerateEnvironment:
    def test_deterministic(self):
        a = generate_environment(42, "r2-point")
        b = generate_environment(42, "r2-point")
        assert a.bounds == b.bounds
        assert a.obstacles == b.obstacles

    def test_distinct_seeds_differ(self):
        assert generate_environment(1, "r2-point").obstacles != generate_environment(
            2, "r2-point"
        ).obstacles

    def test_no_walls_empty(self):
        env = generate_environment(0, "r2-point", R2GenParams(n_walls=0))
        assert env.obstacles == ()

    def test_gap_widths_match_plan(self):
        gen = R2GenParams(n_walls=2)
        lo_w, hi_w = gen.passage_width_range
        for seed in range(10):
            env = generate_environment(seed, "r2-point", gen)
            specs = plan_walls(seed, gen)
            assert len(specs) == 2
            for spec in specs:
                for (x0, x1), (g_lo, g_hi) in zip(spec.x_bands, spec.gaps):
                    gaps = measure_gaps_at(env, (x0 + x1) / 2)
                    widths = [hi - lo for lo, hi in gaps]
                    # exactly one opening per sub-wall, inside the range
                    assert len(gaps) == 1
                    assert lo_w - 1e-9 <= widths[0] <= hi_w + 1e-9
                    assert gaps[0] == pytest.approx((g_lo, g_hi))

    def test_passage_interiors_are_free(self):
        gen = R2GenParams()
        for seed in range(6):
            env = generate_environment(seed, "r2-point", gen)
            for p in passage_interiors(seed, gen):
                assert is_config_free(env, None, p)

    def test_passage_exceeds_twice_resolution(self):
        gen = R2GenParams()
        assert gen.passage_width_range[0] > 2 * RES

    def test_infeasible_params_raise(self):
        with pytest.raises(ValueError):
            generate_environment(0, "r2-point", R2GenParams(passage_width_range=(11.0, 12.0)))
        with pytest.raises(ValueError):
            generate_environment(0, "r2-point", R2GenParams(n_walls=8))

    def test_unknown_domain(self):
        with pytest.raises(ValueError):
            generate_environment(0, "r3-blimp")

    def test_obstacles_inside_bounds(self):
        for seed in range(8):
            env = generate_environment(seed, "r2-point")
            bx0, by0, bx1, by1 = env.bounds
            for ox0, oy0, ox1, oy1 in env.obstacles:
                assert bx0 <= ox0 < ox1 <= bx1
                assert by0 <= oy0 < oy1 <= by1


class TestGenerateProblem:
    def test_empty_env_raises(self, empty_env):
        with pytest.raises(RuntimeError):
            generate_problem(empty_env, 0, "r2-point", max_draws=500)

    def test_straight_segment_blocked(self):
        for seed in range(6):
            env = generate_environment(seed, "r2-point")
            problem = generate_problem(env, seed, "r2-point", edge_resolution=RES)
            assert not is_edge_free(
                env, None, problem.start, problem.goal, RES
            )

    def test_start_goal_on_opposite_extremes(self):
        env = generate_environment(5, "r2-point")
        problem = generate_problem(env, 5, "r2-point", edge_resolution=RES)
        xs = sorted([problem.start[0], problem.goal[0]])
        assert xs[0] < 2.0 and xs[1] > 10.0

    def test_deterministic(self):
        env = generate_environment(9, "r2-point")
        a = generate_problem(env, 9, "r2-point", edge_resolution=RES)
        b = generate_problem(env, 9, "r2-point", edge_resolution=RES)
        assert np.array_equal(a.start, b.start)
        assert np.array_equal(a.goal, b.goal)


class TestArmDomain:
    def test_shelf_env_and_slot(self):
        gen = R7GenParams()
        for seed in range(5):
            env = generate_environment(seed, "r7-arm", gen)
            assert len(env.obstacles) == 2
            x_lo, x_hi, y_lo, y_hi = find_shelf_slot(env)
            lo_w, hi_w = gen.slot_width_range
            assert lo_w - 1e-9 <= x_hi - x_lo <= hi_w + 1e-9
            assert y_hi - y_lo == pytest.approx(gen.shelf_thickness)

    def test_slot_missing_raises(self, empty_env):
        with pytest.raises(ValueError):
            find_shelf_slot(empty_env)

    def test_problem_threads_the_slot(self):
        gen = R7GenParams()
        arm = default_arm(gen)
        for seed in range(5):
            env = generate_environment(seed, "r7-arm", gen)
            problem = generate_problem(
                env, seed, "r7-arm", robot=arm, params=gen, edge_resolution=0.025
            )
            _, _, y_lo, y_hi = find_shelf_slot(env)
            start_pts = fk_points(arm, problem.start[None])[0]
            goal_pts = fk_points(arm, problem.goal[None])[0]
            assert np.all(start_pts[:, 1] < y_lo)  # folded below the shelf
            assert goal_pts[-1, 1] > y_hi  # hand through the slot
            assert not is_edge_free(
                env, arm, problem.start, problem.goal, 0.025
            )

    def test_generation_robust_over_seeds(self):
        gen = R7GenParams()
        arm = default_arm(gen)
        for seed in range(25):
            env = generate_environment(seed, "r7-arm", gen)
            problem = generate_problem(
                env, seed, "r7-arm", robot=arm, params=gen, edge_resolution=0.025
            )
            assert problem.dim == 7
