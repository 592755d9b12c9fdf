import numpy as np
import pytest

from csplan.geometry import (
    ArmModel,
    CollisionChecker,
    Environment,
    Path,
    PlanningProblem,
    as_config,
    distance,
    forward_kinematics,
    is_config_free,
    is_edge_free,
    is_point_free,
    segments_intersect_rects,
    validate_path,
)

UNIT_ARM = ArmModel(
    base=(0.0, 0.0),
    link_lengths=(1.0,) * 7,
    joint_limits=((-np.pi, np.pi),) * 7,
)


def test_as_config_rejects_nan():
    with pytest.raises(ValueError):
        as_config([1.0, float("nan")])
    with pytest.raises(ValueError):
        as_config([[1.0, 2.0]])


def test_environment_invariants():
    with pytest.raises(ValueError):
        Environment((0, 0, 10, 10), ((3, 3, 3, 5),))  # zero width
    with pytest.raises(ValueError):
        Environment((0, 0, 10, 10), ((8, 8, 11, 9),))  # outside bounds
    env = Environment((0, 0, 10, 10), ((1, 1, 2, 2),))
    assert env.obstacle_array.shape == (1, 4)


class TestIsPointFree:
    def test_empty_obstacles(self):
        env = Environment((0, 0, 10, 10), ())
        assert is_point_free(env, (5.0, 5.0))

    def test_inside_obstacle(self):
        env = Environment((0, 0, 10, 10), ((2, 2, 4, 4),))
        assert not is_point_free(env, (3.0, 3.0))

    def test_obstacle_boundary_is_occupied(self):
        env = Environment((0, 0, 10, 10), ((2, 2, 4, 4),))
        assert not is_point_free(env, (2.0, 3.0))
        assert not is_point_free(env, (4.0, 4.0))

    def test_outside_bounds(self):
        env = Environment((0, 0, 10, 10), ())
        assert not is_point_free(env, (-0.1, 5.0))
        assert not is_point_free(env, (5.0, 10.1))


class TestForwardKinematics:
    def test_straight_chain(self):
        pts = forward_kinematics(UNIT_ARM, np.zeros(7))
        expected = [(float(k), 0.0) for k in range(8)]
        assert np.allclose(pts, expected)

    def test_rotated_straight_chain(self):
        q = np.array([np.pi / 2, 0, 0, 0, 0, 0, 0])
        pts = forward_kinematics(UNIT_ARM, q)
        expected = [(0.0, float(k)) for k in range(8)]
        assert np.allclose(pts, expected, atol=1e-12)

    def test_elbow_bend(self):
        # first link up, second link bent back to horizontal: joint 2 at (1, 1)
        q = np.array([np.pi / 2, -np.pi / 2, 0, 0, 0, 0, 0])
        pts = forward_kinematics(UNIT_ARM, q)
        assert np.allclose(pts[2], (1.0, 1.0), atol=1e-12)

    def test_link_lengths_preserved(self):
        rng = np.random.default_rng(5)
        arm = ArmModel(
            base=(2.0, 3.0),
            link_lengths=tuple(rng.uniform(0.3, 1.5, 7)),
            joint_limits=((-np.pi, np.pi),) * 7,
        )
        for _ in range(50):
            q = rng.uniform(-np.pi, np.pi, 7)
            pts = forward_kinematics(arm, q)
            assert pts.shape == (8, 2)
            seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
            assert np.all(np.abs(seg - np.asarray(arm.link_lengths)) < 1e-9)

    def test_joint_limit_violation(self):
        arm = ArmModel(
            base=(0, 0), link_lengths=(1.0,) * 7, joint_limits=((-1.0, 1.0),) * 7
        )
        with pytest.raises(ValueError):
            forward_kinematics(arm, np.array([1.5, 0, 0, 0, 0, 0, 0]))

    def test_arm_model_validation(self):
        with pytest.raises(ValueError):
            ArmModel((0, 0), (1.0,) * 6, ((-1, 1),) * 7)
        with pytest.raises(ValueError):
            ArmModel((0, 0), (1.0,) * 6 + (-1.0,), ((-1, 1),) * 7)
        with pytest.raises(ValueError):
            ArmModel((0, 0), (1.0,) * 7, ((1, -1),) * 7)


class TestIsConfigFree:
    def test_point_robot_empty(self):
        env = Environment((0, 0, 10, 10), ())
        assert is_config_free(env, None, np.array([4.0, 4.0]))

    def test_dimension_mismatch(self):
        env = Environment((0, 0, 10, 10), ())
        with pytest.raises(ValueError):
            is_config_free(env, None, np.zeros(7))
        with pytest.raises(ValueError):
            is_config_free(env, UNIT_ARM, np.zeros(2))

    def test_arm_link_through_obstacle(self):
        # link from (0,0) to (1,0) passes through an obstacle straddling it
        env = Environment((-10, -10, 10, 10), ((0.4, -0.2, 0.6, 0.2),))
        assert not is_config_free(env, UNIT_ARM, np.zeros(7))

    def test_arm_free_region(self):
        env = Environment((-10, -10, 10, 10), ((8, 8, 9, 9),))
        assert is_config_free(env, UNIT_ARM, np.zeros(7))

    def test_arm_outside_bounds_not_free(self):
        env = Environment((-2, -2, 2, 2), ())
        assert not is_config_free(env, UNIT_ARM, np.zeros(7))  # reach 7 > bounds

    def test_arm_agrees_with_exact_segment_oracle(self):
        rng = np.random.default_rng(11)
        env = Environment(
            (-8, -8, 8, 8),
            ((1.0, -3.0, 2.5, 3.0), (-4.0, 2.0, -1.0, 3.5), (3.0, 3.0, 6.0, 6.0)),
        )
        arm = UNIT_ARM
        from csplan.geometry import fk_points

        for _ in range(200):
            q = rng.uniform(-np.pi / 2, np.pi / 2, 7)
            joints = fk_points(arm, q[None])[0]
            hits = segments_intersect_rects(
                joints[:-1], joints[1:], env.obstacle_array
            )
            expected = not hits.any() and np.all(np.abs(joints) <= 8)
            assert is_config_free(env, arm, q) == expected


class TestSegmentsIntersectRects:
    RECT = np.array([[2.0, 2.0, 4.0, 4.0]])

    def cases(self):
        return [
            ((0, 0), (1, 1), False),  # fully outside
            ((0, 3), (6, 3), True),  # -straight through
            ((3, 3), (3.5, 3.5), True),  # fully inside
            ((0, 0), (2, 2), True),  # touches corner exactly
            ((0, 2), (6, 2), True),  # collinear with bottom edge
            ((0, 4.5), (6, 4.5), False),  # parallel above
            ((2, 0), (2, 6), True),  # collinear with left edge
            ((1, 1), (1, 5), False),  # vertical to the left
            ((3, 3), (3, 3), True),  # degenerate point inside
            ((1, 1), (1, 1), False),  # degenerate point outside
        ]

    def test_hand_cases(self):
        for a, b, expected in self.cases():
            got = bool(
                segments_intersect_rects(
                    np.array(a, dtype=float), np.array(b, dtype=float), self.RECT
                ).any()
            )
            assert got == expected, (a, b)


class TestIsEdgeFree:
    def test_zero_length_edge(self):
        env = Environment((0, 0, 10, 10), ((2, 2, 4, 4),))
        q = np.array([5.0, 5.0])
        assert is_edge_free(env, None, q, q, 0.25)
        assert is_edge_free(env, None, q, q, 0.25) == is_config_free(env, None, q)

    def test_segment_through_obstacle(self):
        env = Environment((0, 0, 10, 10), ((4, 4, 6, 6),))
        assert not is_edge_free(env, None, np.array([1, 5]), np.array([9, 5]), 0.25)

    def test_empty_env_any_edge(self):
        env = Environment((0, 0, 10, 10), ())
        rng = np.random.default_rng(3)
        for _ in range(20):
            a, b = rng.uniform(0, 10, (2, 2))
            assert is_edge_free(env, None, a, b, 0.5)

    @staticmethod
    def _clip_segment(a, b, rect):
        """Independent Liang-Barsky clipper: chord of segment a->b inside
        rect, as a fraction of |ab| (0 when they miss)."""
        x0, y0, x1, y1 = rect
        d = b - a
        t_lo, t_hi = 0.0, 1.0
        for p, q in (
            (-d[0], a[0] - x0),
            (d[0], x1 - a[0]),
            (-d[1], a[1] - y0),
            (d[1], y1 - a[1]),
        ):
            if p == 0:
                if q < 0:
                    return 0.0
                continue
            t = q / p
            if p < 0:
                t_lo = max(t_lo, t)
            else:
                t_hi = min(t_hi, t)
        return max(0.0, t_hi - t_lo)

    def test_agrees_with_exact_oracle_on_fat_obstacles(self):
        # Sampled edge checking matches exact segment intersection whenever
        # every obstacle side exceeds twice the resolution, except for
        # tangential grazes whose chord is shorter than the sample spacing;
        # those are skipped (they are exactly what sampling cannot see).
        res = 0.2
        rng = np.random.default_rng(42)
        checked = 0
        for _ in range(500):
            w, h = rng.uniform(2.5 * res, 3.0, 2)
            x0, y0 = rng.uniform(0.5, 9.5 - max(w, h), 2)
            rect = (x0, y0, x0 + w, y0 + h)
            env = Environment((0, 0, 10, 10), (rect,))
            a, b = rng.uniform(0, 10, (2, 2))
            chord = self._clip_segment(a, b, rect) * float(np.linalg.norm(b - a))
            if 0.0 < chord < 2.0 * res:
                continue
            exact_hit = chord > 0.0
            assert exact_hit == bool(
                segments_intersect_rects(a, b, env.obstacle_array).any()
            )
            assert is_edge_free(env, None, a, b, res) == (not exact_hit)
            checked += 1
        assert checked > 450


class TestDistance:
    def test_zero(self):
        q = np.array([1.0, 2.0])
        assert distance(q, q) == 0.0

    def test_three_four_five(self):
        assert distance(np.array([0.0, 0.0]), np.array([3.0, 4.0])) == 5.0

    def test_symmetry_and_triangle(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            a, b = rng.uniform(-5, 5, (2, 7))
            assert distance(a, b) == distance(b, a)
        for _ in range(300):
            a, b, c = rng.uniform(-5, 5, (3, 7))
            assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            distance(np.zeros(2), np.zeros(7))


class TestPlanningProblemAndPath:
    def test_colliding_start_rejected(self):
        env = Environment((0, 0, 10, 10), ((2, 2, 4, 4),))
        with pytest.raises(ValueError):
            PlanningProblem(np.array([3.0, 3.0]), np.array([8.0, 8.0]), env, None)

    def test_path_needs_two_waypoints(self):
        with pytest.raises(ValueError):
            Path((np.array([0.0, 0.0]),))

    def test_path_length(self):
        p = Path((np.array([0.0, 0.0]), np.array([3.0, 4.0]), np.array([3.0, 6.0])))
        assert p.length() == pytest.approx(7.0)

    def test_validate_path(self, gap_problem):
        good = Path(
            (
                gap_problem.start,
                np.array([6.0, 6.0]),
                gap_problem.goal,
            )
        )
        assert validate_path(gap_problem, good, 0.125)
        blocked = Path((gap_problem.start, np.array([10.5, 2.0])))
        assert not validate_path(gap_problem, blocked, 0.125)  # endpoint mismatch
        through_wall = Path(
            (gap_problem.start, np.array([1.5, 2.0]), np.array([10.5, 2.0]), gap_problem.goal)
        )
        assert not validate_path(gap_problem, through_wall, 0.125)


class TestCollisionChecker:
    def test_counts_configs(self, empty_env):
        ch = CollisionChecker(empty_env, None, 0.25)
        ch.config_free(np.array([1.0, 1.0]))
        assert ch.checks == 1
        before = ch.checks
        assert ch.edge_free(np.array([0.5, 0.5]), np.array([1.5, 0.5]))
        assert ch.checks == before + 5  # length 1.0 at res 0.25: 5 samples

    def test_edge_free_matches_pure_function(self, gap_wall_env):
        ch = CollisionChecker(gap_wall_env, None, 0.125)
        rng = np.random.default_rng(9)
        for _ in range(100):
            a, b = rng.uniform(0, 12, (2, 2))
            assert ch.edge_free(a, b) == is_edge_free(gap_wall_env, None, a, b, 0.125)
