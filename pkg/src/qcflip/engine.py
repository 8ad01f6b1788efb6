"""Probabilistic execution of the nested protocol framework.

A framework is an ordered stack of protocol elements over one noise setting.
Honest runs either settle on a uniformly random coin at some level or
escalate when a blinding-area event (genuine noise masquerading as cheating)
occurs; escalating past the last level is a failure. Cheating runs win a
level with the party's noisy cheating probability and otherwise escalate.

The Monte Carlo estimator derives every trial's randomness from a
counter-based Philox stream keyed by the seed: trial ``i`` owns stream draws
``[i * (depth + 1), (i + 1) * (depth + 1))`` (one uniform per level plus one
coin draw, consumed whether or not the run uses them all). Results are
therefore bit-identical for a given (spec, scenario, trials, seed) no matter
how trials are chunked or how many workers run them.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox

from .elements import ElementProfile, NoiseSetting, noisy_alice_prob, noisy_bob_prob

MAX_DEPTH = 64
SCENARIOS = ("honest_failure", "cheat_alice", "cheat_bob", "honest_coin0")

_CHUNK = 1 << 16


@dataclass(frozen=True)
class FrameworkSpec:
    """An ordered stack of elements plus the channel noise they run over."""

    elements: tuple[ElementProfile, ...]
    noise: NoiseSetting

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        if not 1 <= len(self.elements) <= MAX_DEPTH:
            raise ValueError(
                f"a framework needs between 1 and {MAX_DEPTH} elements, "
                f"got {len(self.elements)}"
            )

    @property
    def depth(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class RunOutcome:
    """One honest execution: a coin bit, or ``coin=None`` for failure.

    ``ba_trace[i]`` records whether level ``i`` escalated; a failure is
    exactly an all-true trace of full depth.
    """

    coin: int | None
    levels_used: int
    ba_trace: tuple[bool, ...]

    @property
    def failed(self) -> bool:
        return self.coin is None

    def to_dict(self) -> dict:
        return {
            "result": "failure" if self.failed else f"coin:{self.coin}",
            "levels_used": self.levels_used,
            "ba_trace": list(self.ba_trace),
        }


@dataclass(frozen=True)
class TrialStats:
    """Aggregated Monte Carlo result: ``estimate = successes / trials`` and
    the binomial standard error. For the honest_coin0 scenario ``trials``
    counts only the settled (non-failure) runs being conditioned on."""

    trials: int
    successes: int
    estimate: float
    std_error: float
    seed: int


def _check_seed(seed: int) -> None:
    if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an integer in [0, 2^64), got {seed!r}")


def _ba_probs(spec: FrameworkSpec) -> np.ndarray:
    # A level escalates when the round was verifiable (1 - p_star) and the
    # channel flipped the evidence (p_e).
    return np.array([(1.0 - e.p_star) * spec.noise.p_e for e in spec.elements])


def _cheat_probs(spec: FrameworkSpec, party: str) -> np.ndarray:
    win = noisy_alice_prob if party == "alice" else noisy_bob_prob
    return np.array([win(e, spec.noise) for e in spec.elements])


def run_honest(spec: FrameworkSpec, rng: Generator) -> RunOutcome:
    """Execute one honest run, drawing ``depth + 1`` uniforms up front."""
    draws = rng.random(spec.depth + 1)
    ba = _ba_probs(spec)
    trace: list[bool] = []
    for level in range(spec.depth):
        if draws[level] < ba[level]:
            trace.append(True)
            continue
        trace.append(False)
        coin = 0 if draws[-1] < 0.5 else 1
        return RunOutcome(coin=coin, levels_used=level + 1, ba_trace=tuple(trace))
    return RunOutcome(coin=None, levels_used=spec.depth, ba_trace=tuple(trace))


def run_cheat_alice(spec: FrameworkSpec, rng: Generator) -> bool:
    """One cheating-Alice run; True when she forces her coin at some level."""
    return _run_cheat(spec, rng, "alice")


def run_cheat_bob(spec: FrameworkSpec, rng: Generator) -> bool:
    """One cheating-Bob run; True when he forces his coin at some level."""
    return _run_cheat(spec, rng, "bob")


def _run_cheat(spec: FrameworkSpec, rng: Generator, party: str) -> bool:
    draws = rng.random(spec.depth + 1)
    win = _cheat_probs(spec, party)
    for level in range(spec.depth):
        if draws[level] < win[level]:
            return True
        # Otherwise a blinding-area event escalates to the next level.
    return False


def _trial_uniforms(
    seed: int, draws_per_trial: int, first_trial: int, count: int
) -> np.ndarray:
    """Uniforms for trials [first_trial, first_trial + count) as a
    (count, draws_per_trial) array, spliced out of the seed-keyed Philox
    stream by absolute draw position."""
    first_draw = first_trial * draws_per_trial
    block, offset = divmod(first_draw, 4)
    gen = Generator(Philox(key=seed, counter=block))
    flat = gen.random(offset + count * draws_per_trial)
    return flat[offset:].reshape(count, draws_per_trial)


def _tally(uniforms: np.ndarray, level_probs: np.ndarray, scenario: str) -> tuple[int, int]:
    """Count (successes, eligible trials) for one block of uniforms."""
    events = uniforms[:, :-1] < level_probs
    if scenario == "honest_failure":
        return int(events.all(axis=1).sum()), uniforms.shape[0]
    if scenario in ("cheat_alice", "cheat_bob"):
        return int(events.any(axis=1).sum()), uniforms.shape[0]
    # honest_coin0: condition on the run settling on a coin.
    settled = ~events.all(axis=1)
    coin0 = uniforms[:, -1] < 0.5
    return int((settled & coin0).sum()), int(settled.sum())


def estimate(
    spec: FrameworkSpec,
    scenario: str,
    trials: int,
    seed: int,
    workers: int | None = None,
) -> TrialStats:
    """Monte Carlo frequency of ``scenario`` over ``trials`` runs.

    Scenarios: honest_failure (all levels escalate), cheat_alice / cheat_bob
    (the cheater forces the coin), honest_coin0 (coin bit 0, conditional on
    the run settling). Deterministic in (spec, scenario, trials, seed);
    ``workers`` only fans independent chunks out over threads.
    """
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}, expected one of {SCENARIOS}")
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    _check_seed(seed)

    if scenario in ("honest_failure", "honest_coin0"):
        probs = _ba_probs(spec)
    else:
        probs = _cheat_probs(spec, "alice" if scenario == "cheat_alice" else "bob")

    draws_per_trial = spec.depth + 1

    def work(start: int) -> tuple[int, int]:
        count = min(_CHUNK, trials - start)
        uniforms = _trial_uniforms(seed, draws_per_trial, start, count)
        return _tally(uniforms, probs, scenario)

    starts = range(0, trials, _CHUNK)
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(work, starts))
    else:
        parts = [work(start) for start in starts]

    successes = sum(s for s, _ in parts)
    eligible = sum(e for _, e in parts)
    if eligible == 0:
        raise RuntimeError(
            "honest_coin0: every run ended in failure, no settled runs to condition on"
        )
    freq = successes / eligible
    std_error = math.sqrt(freq * (1.0 - freq) / eligible)
    return TrialStats(
        trials=eligible,
        successes=successes,
        estimate=freq,
        std_error=std_error,
        seed=seed,
    )
