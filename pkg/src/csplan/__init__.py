"""Critical-source motion planning: find bottleneck regions with a
pluggable proposer, then plan through them with local sampling trees."""

from .geometry import (
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
    validate_path,
)
from .grids import OccupancyGrid, load_grid, preprocess_grid, rasterize, save_grid
from .roadmap import Roadmap, UnionFind, build_sparse_graph, halton
from .sources import (
    CriticalSourceSet,
    GcsParams,
    ProposalSet,
    bridge_test_proposer,
    get_critical_sources,
    load_proposals,
    oracle_bottleneck_proposer,
    save_proposals,
    uniform_proposer,
)
from .planners import (
    PlannerParams,
    PlannerResult,
    Tree,
    csrrt_plan,
    densify_local_graphs,
    expand_local_graphs,
    lcsrrt_plan,
    lego_anytime_plan,
    nearest_vertex,
    random_node_in_ball,
    rrt_connect_plan,
    steer,
)
from .envgen import (
    R2GenParams,
    R7GenParams,
    default_arm,
    generate_environment,
    generate_problem,
)
from .bench import BenchConfig, RunRecord, config_for_domain, run_benchmark
from .svg import render_svg

__version__ = "0.1.0"
