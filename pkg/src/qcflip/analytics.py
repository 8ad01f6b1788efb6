"""Closed-form evaluation of the nested framework's security quantities.

These are the analytic counterparts of the Monte Carlo engine: the nested
cheating probability (a cheater wins at some level, having escalated through
the earlier ones), the justice-error rate (an honest run escalates through
every level), the ideal-elements reference table, and parameter sweeps over
the channel error rate.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Sequence
from dataclasses import dataclass

from .elements import ElementProfile, NoiseSetting, noisy_alice_prob, noisy_bob_prob
from .engine import FrameworkSpec


def nested_cheat_prob(level_probs: Sequence[float]) -> float:
    """Total win probability over nested levels:
    ``sum_i P_i * prod_{j<i} (1 - P_j)`` (the empty product is 1).

    Equivalently ``1 - prod_i (1 - P_i)``: the cheater loses only by failing
    every level.
    """
    if len(level_probs) == 0:
        raise ValueError("level_probs must be non-empty")
    total = 0.0
    survival = 1.0
    for prob in level_probs:
        if not 0.0 <= prob <= 1.0:
            raise ValueError(f"level probability {prob} outside [0, 1]")
        total += prob * survival
        survival *= 1.0 - prob
    return total


def nested_cheat_prob_noisy(spec: FrameworkSpec, party: str) -> float:
    """Nested cheating probability with per-level noisy values for ``party``
    ("alice" or "bob")."""
    if party == "alice":
        probs = [noisy_alice_prob(e, spec.noise) for e in spec.elements]
    elif party == "bob":
        probs = [noisy_bob_prob(e, spec.noise) for e in spec.elements]
    else:
        raise ValueError(f"party must be 'alice' or 'bob', got {party!r}")
    return nested_cheat_prob(probs)


def check_no_total_control(level_probs: Sequence[float]) -> bool:
    """True when the nested win probability stays strictly below 1.

    Every entry must lie strictly inside (0.5, 1); the check is evaluated via
    the survival product ``prod (1 - P_i) > 0``, which cannot saturate in
    floating point the way the sum form can.
    """
    if len(level_probs) == 0:
        raise ValueError("level_probs must be non-empty")
    survival = 1.0
    for prob in level_probs:
        if not 0.5 < prob < 1.0:
            raise ValueError(
                f"level probability {prob} outside the open interval (0.5, 1)"
            )
        survival *= 1.0 - prob
    return survival > 0.0


def justice_error(p_stars: Sequence[float], p_e: float) -> float:
    """Probability that an honest run escalates through all ``N`` levels:
    ``prod_i (1 - p_star_i) * p_e^N``."""
    if len(p_stars) == 0:
        raise ValueError("p_stars must be non-empty")
    if not 0.0 <= p_e <= 0.5:
        raise ValueError(f"p_e must be in [0, 0.5], got {p_e}")
    rate = 1.0
    for p_star in p_stars:
        if not 0.0 <= p_star <= 1.0:
            raise ValueError(f"p_star {p_star} outside [0, 1]")
        rate *= (1.0 - p_star) * p_e
    return rate


def scenario_analytic(spec: FrameworkSpec, scenario: str) -> float:
    """Closed-form value matched by ``engine.estimate`` for each scenario."""
    if scenario == "honest_failure":
        return justice_error([e.p_star for e in spec.elements], spec.noise.p_e)
    if scenario == "cheat_alice":
        return nested_cheat_prob_noisy(spec, "alice")
    if scenario == "cheat_bob":
        return nested_cheat_prob_noisy(spec, "bob")
    if scenario == "honest_coin0":
        return 0.5
    raise ValueError(f"unknown scenario {scenario!r}")


@dataclass(frozen=True)
class TableRow:
    depth: int
    element_prob: float
    cheat_prob: float
    bias: float


def ideal_case_table() -> list[TableRow]:
    """Reference table for stacks of 2..6 perfect elements.

    Cheat probabilities are exact (``1 - 0.5^N``); four-decimal rounding is
    left to presentation.
    """
    rows = []
    for depth in range(2, 7):
        cheat = nested_cheat_prob([0.5] * depth)
        rows.append(
            TableRow(depth=depth, element_prob=0.5, cheat_prob=cheat, bias=cheat - 0.5)
        )
    return rows


@dataclass(frozen=True)
class SweepResult:
    """Curves of a probability over a grid of channel error rates."""

    grid: tuple[float, ...]
    curves: dict[str, tuple[float, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "grid", tuple(self.grid))
        object.__setattr__(
            self, "curves", {k: tuple(v) for k, v in self.curves.items()}
        )
        for label, values in self.curves.items():
            if len(values) != len(self.grid):
                raise ValueError(f"curve {label!r} length != grid length")
            if any(not 0.0 <= v <= 1.0 for v in values):
                raise ValueError(f"curve {label!r} has values outside [0, 1]")


def default_error_grid(step: float = 0.01) -> tuple[float, ...]:
    """Channel error rates 0 .. 0.5 inclusive, spaced by ``step``."""
    if not 0.0 < step <= 0.5:
        raise ValueError(f"grid step must be in (0, 0.5], got {step}")
    count = int(0.5 / step + 1e-9)
    return tuple(min(i * step, 0.5) for i in range(count + 1))


def sweep_alice(
    base_profile: ElementProfile,
    n_values: Sequence[int] = (),
    p_values: Sequence[float] = (),
    p_e_grid: Sequence[float] | None = None,
) -> SweepResult:
    """Alice's nested success probability as a function of the error rate.

    One curve labeled ``N=k`` per entry of ``n_values`` (stack of k copies of
    ``base_profile``), and one labeled ``p=x`` per entry of ``p_values``
    (two-level stack with the base profile's p replaced by x).
    """
    if not n_values and not p_values:
        raise ValueError("nothing to sweep: n_values and p_values both empty")
    grid = tuple(p_e_grid) if p_e_grid is not None else default_error_grid()
    if not grid:
        raise ValueError("p_e_grid must be non-empty")

    curves: dict[str, tuple[float, ...]] = {}
    for depth in n_values:
        if depth < 1:
            raise ValueError(f"curve depth must be >= 1, got {depth}")
        curves[f"N={depth}"] = _alice_curve(base_profile, depth, grid)
    for p in p_values:
        profile = dataclasses.replace(base_profile, p=p)
        curves[f"p={p:g}"] = _alice_curve(profile, 2, grid)
    return SweepResult(grid=grid, curves=curves)


def _alice_curve(
    profile: ElementProfile, depth: int, grid: tuple[float, ...]
) -> tuple[float, ...]:
    values = []
    for p_e in grid:
        per_level = noisy_alice_prob(profile, NoiseSetting(p_e=p_e))
        values.append(nested_cheat_prob([per_level] * depth))
    return tuple(values)
