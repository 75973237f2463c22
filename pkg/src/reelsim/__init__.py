"""Power-struggle simulator.

Agents hold power, allocate signed fractions of it at each other, and
the update rule amplifies help less than harm. On top of that one-step
dynamic sit sampled stage games, a folk-style rationality filter over
Monte Carlo lines of play, and probability trees of future states.
"""

from .core import (
    EPS_SUM,
    ModelParams,
    State,
    TacticMatrixError,
    build_multiplier_matrix,
    evolve,
    is_valid_tactic_matrix,
    normalize_sizes,
    step_update,
    update_sizes,
    validate_tactic_matrix,
)
from .equilibrium import (
    DEFAULT_CANDIDATES,
    DEFAULT_MAX_PROFILES,
    StageGame,
    best_response,
    minimax_vector,
    payoff_tensor,
    profile_matrix,
    sample_candidates,
    stage_game,
    stage_nash_equilibria,
    stage_payoffs,
)
from .exports import (
    export_frames_json,
    export_reel_table_csv,
    export_reels_json,
    export_sizes_csv,
    export_state_dot,
    export_tree_dot,
)
from .frames import (
    Frame,
    FrameDistribution,
    LineOfPlay,
    TransitionDiagnostics,
    cluster_first_moves,
    folk_filter,
    frame_weight,
    generate_line,
    transition_distribution,
)
from .reels import (
    LEAF_ALL_DEAD,
    LEAF_EMPTY,
    LEAF_MAX_DEPTH,
    LEAF_PRUNED,
    Reel,
    ReelEdge,
    ReelNode,
    build_reel_tree,
    enumerate_reels,
    reel_probability,
)
from .sampling import (
    CANDIDATE_STREAM,
    LINE_STREAM,
    NODE_STREAM,
    PROFILE_STREAM,
    SamplerConfig,
    derive_node_seed,
    matrix_from_grid,
    round_tactic_matrix,
    round_to_grid,
    sample_tactic_matrix,
    sample_tactic_vector,
    substream,
)
from .scenario import (
    Scenario,
    ScenarioError,
    SimSettings,
    parse_scenario,
    serialize_scenario,
    with_seed,
)
from .utility import (
    expected_utility,
    inertia_probability,
    intertemporal_utility,
    positional_utility,
    tactical_distance,
)

__version__ = "0.1.0"

__all__ = [
    "CANDIDATE_STREAM",
    "DEFAULT_CANDIDATES",
    "DEFAULT_MAX_PROFILES",
    "EPS_SUM",
    "Frame",
    "FrameDistribution",
    "LEAF_ALL_DEAD",
    "LEAF_EMPTY",
    "LEAF_MAX_DEPTH",
    "LEAF_PRUNED",
    "LINE_STREAM",
    "LineOfPlay",
    "ModelParams",
    "NODE_STREAM",
    "PROFILE_STREAM",
    "Reel",
    "ReelEdge",
    "ReelNode",
    "SamplerConfig",
    "Scenario",
    "ScenarioError",
    "SimSettings",
    "StageGame",
    "State",
    "TacticMatrixError",
    "TransitionDiagnostics",
    "best_response",
    "build_multiplier_matrix",
    "build_reel_tree",
    "cluster_first_moves",
    "derive_node_seed",
    "enumerate_reels",
    "evolve",
    "expected_utility",
    "export_frames_json",
    "export_reel_table_csv",
    "export_reels_json",
    "export_sizes_csv",
    "export_state_dot",
    "export_tree_dot",
    "folk_filter",
    "frame_weight",
    "generate_line",
    "inertia_probability",
    "intertemporal_utility",
    "is_valid_tactic_matrix",
    "matrix_from_grid",
    "minimax_vector",
    "normalize_sizes",
    "parse_scenario",
    "payoff_tensor",
    "positional_utility",
    "profile_matrix",
    "reel_probability",
    "round_tactic_matrix",
    "round_to_grid",
    "sample_candidates",
    "sample_tactic_matrix",
    "sample_tactic_vector",
    "serialize_scenario",
    "stage_game",
    "stage_nash_equilibria",
    "stage_payoffs",
    "step_update",
    "substream",
    "tactical_distance",
    "transition_distribution",
    "update_sizes",
    "validate_tactic_matrix",
    "with_seed",
]
