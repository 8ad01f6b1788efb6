"""Fair-parameter solving for two-level stacks backed by a perfect element.

A framework made of one real element on top of a perfect one gives the
composed cheating probability ``p + (1 - p) * 0.5``, so its bias is ``p / 2``.
The fair point for a BBBG09 element equates Alice's and Bob's element-level
probabilities, ``3/4 + c * alpha * beta = alpha^2`` under
``alpha^2 + beta^2 = 1``; since the composition is strictly monotone in the
element probability, equality at the element scale is equivalent to equality
at the framework scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .elements import COEFFICIENTS

_BRACKET_LOW = 0.75
_BRACKET_HIGH = 1.0 - 1e-9
_MAX_BISECTIONS = 200


class SolverFailure(RuntimeError):
    """The bracketing root finder could not certify a solution."""


@dataclass(frozen=True)
class FairSolution:
    """Solved fair parameters for a BBBG09 element over a perfect one."""

    alpha_sq: float
    beta_sq: float
    common_cheat_prob: float
    framework_bias: float
    coefficient_used: str

    def __post_init__(self) -> None:
        if abs(self.alpha_sq + self.beta_sq - 1.0) > 1e-12:
            raise ValueError("alpha_sq + beta_sq must equal 1")
        if not 0.0 <= self.framework_bias < 0.5:
            raise ValueError(f"framework bias {self.framework_bias} outside [0, 0.5)")

    @property
    def framework_cheat_prob(self) -> float:
        return nested_with_perfect(self.common_cheat_prob)


def nested_with_perfect(p: float) -> float:
    """Cheating probability of a two-level stack whose second element is
    perfect: win at level one, or escalate and win the fair coin half the
    time."""
    if not 0.5 <= p < 1.0:
        raise ValueError(f"p must be in [0.5, 1), got {p}")
    return p + (1.0 - p) * 0.5


def solve_fair_bbbg09(coefficient: str = "half", tolerance: float = 1e-10) -> FairSolution:
    """Solve ``3/4 + c * sqrt(s(1-s)) = s`` for ``s = alpha^2`` by bisection.

    ``coefficient`` selects c = 1/2 ("half") or c = 1/4 ("quarter");
    ``tolerance`` bounds the residual at the returned root and must be in
    (0, 1e-6]. Deterministic: identical inputs give identical outputs.
    """
    if coefficient not in COEFFICIENTS:
        raise ValueError(f"coefficient must be one of {COEFFICIENTS}, got {coefficient!r}")
    if not 0.0 < tolerance <= 1e-6:
        raise ValueError(f"tolerance must be in (0, 1e-6], got {tolerance}")
    c = 0.5 if coefficient == "half" else 0.25

    def residual(s: float) -> float:
        return 0.75 + c * math.sqrt(s * (1.0 - s)) - s

    low, high = _BRACKET_LOW, _BRACKET_HIGH
    f_low, f_high = residual(low), residual(high)
    if f_low == 0.0:
        root = low
    elif f_high == 0.0:
        root = high
    else:
        if (f_low > 0.0) == (f_high > 0.0):
            raise SolverFailure(
                f"no sign change on [{low}, {high}] for coefficient {coefficient!r}"
            )
        for _ in range(_MAX_BISECTIONS):
            mid = 0.5 * (low + high)
            f_mid = residual(mid)
            if f_mid == 0.0 or high - low <= 1e-15:
                break
            if (f_mid > 0.0) == (f_low > 0.0):
                low, f_low = mid, f_mid
            else:
                high, f_high = mid, f_mid
        root = 0.5 * (low + high)

    if abs(residual(root)) > tolerance:
        raise SolverFailure(
            f"bisection residual {residual(root):.3e} exceeds tolerance {tolerance:.3e}"
        )
    if 4.0 * root - 3.0 < 0.0:
        # The squared equation has a second root below 3/4; it can never be
        # produced by a bracket starting at 3/4, but reject it explicitly.
        raise SolverFailure(f"root {root} is the spurious branch (4s - 3 < 0)")
    return FairSolution(
        alpha_sq=root,
        beta_sq=1.0 - root,
        common_cheat_prob=root,
        framework_bias=root / 2.0,
        coefficient_used=coefficient,
    )


@dataclass(frozen=True)
class PerfectBackedComposition:
    """A named element composed with a perfect second level."""

    element: str
    element_cheat_prob: float
    framework_cheat_prob: float
    framework_bias: float


def compose_chailloux() -> PerfectBackedComposition:
    """Chailloux's element over a perfect one: fair by symmetry (both
    parties' element probabilities are 0.859)."""
    prob = nested_with_perfect(0.859)
    return PerfectBackedComposition(
        element="chailloux",
        element_cheat_prob=0.859,
        framework_cheat_prob=prob,
        framework_bias=prob - 0.5,
    )
