"""Seeded simulation of repeated play on the two desks.

Randomness comes from SplitMix64, chosen so the stream is reproducible
bit-for-bit across platforms and easy to re-implement:

    state_{k+1} = (state_k + 0x9E3779B97F4A7C15) mod 2^64
    output_k    = mix(state_{k+1})

where mix is the xor-shift-multiply finalizer (shifts 30/27/31 with
multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).  A uniform in
[0, 1) takes the top 53 bits of the output: (output >> 11) * 2**-53.
An outcome with probability p is drawn as ``uniform < p``.

Within a round the draw order is frozen: Alice odd, Alice even, Bob odd,
Bob even (two draws, Alice then Bob, in the correlated-joint variant).
Changing either the generator or the order is a breaking change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classical import (
    JointDistribution,
    bilinear_payoff,
    classical_matrix,
    desk_payoff,
)
from .equilibrium import payoff_surface
from .geometry import probabilities_from_angle
from .quantum import GameSpec

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def rng_advance(state: int) -> int:
    """Next SplitMix64 state."""
    return (state + _GAMMA) & _MASK64


def rng_output(state: int) -> int:
    """64-bit output word for a state (the SplitMix64 finalizer)."""
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def rng_uniform(state: int) -> tuple[float, int]:
    """Advance the stream once; return (uniform in [0, 1), next state)."""
    state = rng_advance(state)
    return (rng_output(state) >> 11) * 2.0 ** -53, state


def _mix_vec(states: np.ndarray) -> np.ndarray:
    z = states.copy()
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return z


def _uniform_block(seed: int, count: int) -> np.ndarray:
    """The first ``count`` uniforms of the stream seeded at ``seed``.

    SplitMix64's state advance is a constant increment, so the whole
    block is generated in one vectorized pass; the values equal ``count``
    successive rng_uniform calls exactly.
    """
    steps = np.arange(1, count + 1, dtype=np.uint64)
    states = np.uint64(seed & _MASK64) + np.uint64(_GAMMA) * steps
    return (_mix_vec(states) >> np.uint64(11)) * 2.0 ** -53


@dataclass(frozen=True)
class SimReport:
    """Summary of one simulation run."""

    rounds: int
    empirical_mean: float
    std_error: float
    analytic_mean: float
    per_desk_means: tuple[float, float]
    seed: int

    def to_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "empirical_mean": self.empirical_mean,
            "std_error": self.std_error,
            "analytic_mean": self.analytic_mean,
            "per_desk_means": {"odd": self.per_desk_means[0],
                               "even": self.per_desk_means[1]},
            "seed": self.seed,
        }


def _desk_payoff_arrays(c, alice_odd_yes, alice_even_yes, bob_odd_yes, bob_even_yes):
    """Vectorized desk payoffs from boolean yes/no outcome arrays."""
    odd = c.c3 * (alice_odd_yes & ~bob_odd_yes) + c.c1 * (~alice_odd_yes & bob_odd_yes)
    even = c.c4 * (alice_even_yes & ~bob_even_yes) + c.c2 * (~alice_even_yes & bob_even_yes)
    return odd, even


def play_round(
    spec: GameSpec, alpha: float, beta: float, rng_state: int
) -> tuple[float, tuple[float, float], int]:
    """Play both desks once; returns (payoff, (odd, even), next rng state).

    Each player's two desk actions are independent coin flips with the
    probabilities their angle induces, so repeated rounds realize the
    product-form joint over compound strategies.
    """
    p = probabilities_from_angle(alpha, spec.alice_frame)
    q = probabilities_from_angle(beta, spec.bob_frame)
    u_ao, rng_state = rng_uniform(rng_state)
    u_ae, rng_state = rng_uniform(rng_state)
    u_bo, rng_state = rng_uniform(rng_state)
    u_be, rng_state = rng_uniform(rng_state)
    odd, even = desk_payoff(
        1 if u_ao < p.p1 else 3,
        2 if u_ae < p.p2 else 4,
        1 if u_bo < q.p1 else 3,
        2 if u_be < q.p2 else 4,
        spec.coefficients,
    )
    return odd + even, (odd, even), rng_state


def simulate(
    spec: GameSpec, alpha: float, beta: float, rounds: int, seed: int
) -> SimReport:
    """Average payoff over ``rounds`` independent rounds of play_round.

    Produces the identical outcome stream to chaining play_round from
    ``seed``; the draws are just generated in one vectorized block.
    """
    totals, odd, even = _simulated_payoffs(spec, alpha, beta, rounds, seed)
    return _report(totals, odd, even, payoff_surface(spec, alpha, beta),
                   rounds, seed)


def _simulated_payoffs(spec, alpha, beta, rounds, seed):
    if rounds < 1:
        raise ValueError("need at least one round")
    p = probabilities_from_angle(alpha, spec.alice_frame)
    q = probabilities_from_angle(beta, spec.bob_frame)
    u = _uniform_block(seed, 4 * rounds).reshape(rounds, 4)
    odd, even = _desk_payoff_arrays(
        spec.coefficients, u[:, 0] < p.p1, u[:, 1] < p.p2,
        u[:, 2] < q.p1, u[:, 3] < q.p2,
    )
    return odd + even, odd, even


def simulate_joint(
    spec: GameSpec,
    alice: JointDistribution,
    bob: JointDistribution,
    rounds: int,
    seed: int,
) -> SimReport:
    """Simulation variant with arbitrary (possibly correlated) joints.

    Each round draws one compound strategy per player (Alice first) from
    their joint distribution.  Lets classically correlated desk play be
    contrasted with the product-form rounds of ``simulate``; the expected
    payoff depends on the joints only through their marginals.
    """
    if rounds < 1:
        raise ValueError("need at least one round")
    u = _uniform_block(seed, 2 * rounds).reshape(rounds, 2)
    a_idx = _compound_indices(u[:, 0], alice)
    b_idx = _compound_indices(u[:, 1], bob)
    # compound index -> desk outcomes: odd yes for 1-2/1-4, even yes for 1-2/3-2
    odd, even = _desk_payoff_arrays(
        spec.coefficients, a_idx <= 1, (a_idx % 2) == 0,
        b_idx <= 1, (b_idx % 2) == 0,
    )
    analytic = bilinear_payoff(classical_matrix(spec.coefficients), alice, bob)
    return _report(odd + even, odd, even, analytic, rounds, seed)


def _compound_indices(uniforms: np.ndarray, joint: JointDistribution) -> np.ndarray:
    """Inverse-CDF draw over the fixed compound-strategy order."""
    edges = np.cumsum(joint.as_vector())[:3]
    return np.searchsorted(edges, uniforms, side="right")


def _report(totals, odd, even, analytic, rounds, seed):
    spread = float(np.std(totals, ddof=1)) if rounds > 1 else 0.0
    return SimReport(
        rounds=rounds,
        empirical_mean=float(np.mean(totals)),
        std_error=spread / math.sqrt(rounds),
        analytic_mean=analytic,
        per_desk_means=(float(np.mean(odd)), float(np.mean(even))),
        seed=seed,
    )
