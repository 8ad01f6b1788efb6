"""Security profiles of single-shot coin-flipping protocol elements.

An element is abstracted to its noiseless security signature: ``p`` (the best
cheating Alice can do), ``q`` (the best cheating Bob can do) and ``p_star``
(the probability that Bob cannot verify Alice's claim at all, e.g. a
measurement-basis mismatch in two-basis protocols). The two ``noisy_*``
mappings translate the signature to cheating probabilities over a channel
with bit error rate ``p_e``: an unverifiable round stays a win for the
cheater, a verifiable round survives scrutiny either because it was honest
looking (rate ``1 - p_e``) or because genuine noise flipped the evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

COEFFICIENTS = ("half", "quarter")


@dataclass(frozen=True)
class ElementProfile:
    """Noiseless security signature of one protocol element."""

    name: str
    p: float
    q: float
    p_star: float

    def __post_init__(self) -> None:
        if not 0.5 <= self.p < 1.0:
            raise ValueError(f"p must be in [0.5, 1), got {self.p}")
        if not 0.5 <= self.q < 1.0:
            raise ValueError(f"q must be in [0.5, 1), got {self.q}")
        if not 0.0 <= self.p_star <= self.p:
            raise ValueError(
                f"p_star must be in [0, p={self.p}], got {self.p_star}"
            )

    @property
    def is_perfect(self) -> bool:
        """Both parties capped at the honest 1/2."""
        return self.p == 0.5 and self.q == 0.5


@dataclass(frozen=True)
class NoiseSetting:
    """Channel quality: bit error rate ``p_e`` and the (fixed) loss 1."""

    p_e: float
    eta: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_e <= 0.5:
            raise ValueError(f"p_e must be in [0, 0.5], got {self.p_e}")
        if self.eta != 1.0:
            raise ValueError("only the lossless setting eta = 1 is supported")


NOISELESS = NoiseSetting(p_e=0.0)


def noisy_alice_prob(profile: ElementProfile, noise: NoiseSetting) -> float:
    """Alice's cheating success probability over a noisy channel.

    Affine in ``p_e`` with slope ``1 + p_star - 2p``; equals ``p`` at
    ``p_e = 0``.
    """
    p, p_star, p_e = profile.p, profile.p_star, noise.p_e
    return p_star + (p - p_star) * (1.0 - p_e) + (1.0 - p) * p_e


def noisy_bob_prob(profile: ElementProfile, noise: NoiseSetting) -> float:
    """Bob's cheating success probability over a noisy channel.

    Affine in ``p_e`` with slope ``1 - 2q``; equals ``q`` at ``p_e = 0``.
    """
    q, p_e = profile.q, noise.p_e
    return q * (1.0 - p_e) + (1.0 - q) * p_e


def ideal_profile() -> ElementProfile:
    """A perfect element: both cheat probabilities 0.5, always verifiable."""
    return ElementProfile(name="ideal", p=0.5, q=0.5, p_star=0.0)


def bbbg09_profile(alpha_sq: float, coefficient: str = "half") -> ElementProfile:
    """Loss-tolerant BBBG09 element with state overlap ``alpha_sq``.

    Alice's cheat probability is ``3/4 + c * alpha * beta`` with
    ``beta^2 = 1 - alpha^2``; the coefficient c is selectable:

        "half"     c = 1/2 (default; the reading whose fair point is
                   alpha_sq = 0.9)
        "quarter"  c = 1/4 (the alternative reading)

    Bob's cheat probability is ``alpha_sq``; two-basis encoding leaves half
    of the rounds unverifiable (``p_star = 0.5``).
    """
    if coefficient not in COEFFICIENTS:
        raise ValueError(f"coefficient must be one of {COEFFICIENTS}, got {coefficient!r}")
    if not 0.5 <= alpha_sq < 1.0:
        raise ValueError(f"alpha_sq must be in [0.5, 1), got {alpha_sq}")
    c = 0.5 if coefficient == "half" else 0.25
    alpha_beta = math.sqrt(alpha_sq * (1.0 - alpha_sq))
    return ElementProfile(
        name=f"bbbg09(alpha_sq={alpha_sq:g},{coefficient})",
        p=0.75 + c * alpha_beta,
        q=alpha_sq,
        p_star=0.5,
    )


def chailloux_profile() -> ElementProfile:
    """Chailloux's encrypted variant of BBBG09: bias 0.359 for both parties."""
    return ElementProfile(name="chailloux", p=0.859, q=0.859, p_star=0.5)
