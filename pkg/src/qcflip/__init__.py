"""Simulator and analysis toolkit for nested quantum coin-flipping protocols
over noisy channels."""

from .analytics import (
    SweepResult,
    check_no_total_control,
    ideal_case_table,
    justice_error,
    nested_cheat_prob,
    nested_cheat_prob_noisy,
    scenario_analytic,
    sweep_alice,
)
from .config import (
    ConfigError,
    ElementConfig,
    ScenarioConfig,
    build_framework,
    build_profile,
    load_config,
    parse_config,
    serialize_config,
)
from .elements import (
    ElementProfile,
    NoiseSetting,
    bbbg09_profile,
    chailloux_profile,
    ideal_profile,
    noisy_alice_prob,
    noisy_bob_prob,
)
from .engine import (
    SCENARIOS,
    FrameworkSpec,
    RunOutcome,
    TrialStats,
    estimate,
    run_cheat_alice,
    run_cheat_bob,
    run_honest,
)
from .fairness import (
    FairSolution,
    SolverFailure,
    compose_chailloux,
    nested_with_perfect,
    solve_fair_bbbg09,
)
from .quantum import (
    DensityOperator,
    DilationChannel,
    KrausChannel,
    Povm,
    apply_channel,
    basis_state,
    computational_povm,
    dilate,
    error_rate,
    make_standard_channel,
    maximally_mixed,
    measure_probability,
    plus_state,
)

__version__ = "0.1.0"

__all__ = [
    "SCENARIOS",
    "ConfigError",
    "DensityOperator",
    "DilationChannel",
    "ElementConfig",
    "ElementProfile",
    "FairSolution",
    "FrameworkSpec",
    "KrausChannel",
    "NoiseSetting",
    "Povm",
    "RunOutcome",
    "ScenarioConfig",
    "SolverFailure",
    "SweepResult",
    "TrialStats",
    "apply_channel",
    "basis_state",
    "bbbg09_profile",
    "build_framework",
    "build_profile",
    "chailloux_profile",
    "check_no_total_control",
    "compose_chailloux",
    "computational_povm",
    "dilate",
    "error_rate",
    "estimate",
    "ideal_case_table",
    "ideal_profile",
    "justice_error",
    "load_config",
    "make_standard_channel",
    "maximally_mixed",
    "measure_probability",
    "nested_cheat_prob",
    "nested_cheat_prob_noisy",
    "nested_with_perfect",
    "noisy_alice_prob",
    "noisy_bob_prob",
    "parse_config",
    "plus_state",
    "run_cheat_alice",
    "run_cheat_bob",
    "run_honest",
    "scenario_analytic",
    "serialize_config",
    "solve_fair_bbbg09",
    "sweep_alice",
]
