"""Statevector simulation of the multi-copy controlled-SWAP estimation circuit.

The register holds r ancilla qubits and r + 1 copies of the state.  After a
Hadamard on every ancilla, ancilla k (k = 1..r) controls a SWAP of the
A-subsystems of copies k and k+1 (B parts are spectators - the statistics
depend on rho_A only), then a second Hadamard layer and measurement.

Gates within the chain share copies, so neighbouring controlled-SWAPs do not
commute.  The chain is scheduled the only way a depth-2 physical layout can
run it: all odd-position gates (mutually disjoint) in one layer, then all
even-position gates.  The all-zeros probability of that schedule is exactly

    p(0..0) = 2^(-r) * sum over subsets X of the r chain positions of
              prod over maximal runs in X of m_(len(run)+1),

a run of L consecutive transpositions composing to an (L+1)-cycle with
expectation m_(L+1) = Tr rho_A^(L+1).  A strictly serial left-to-right
schedule produces a different distribution from r = 3 on; see the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .config import DimensionCapError
from .measures import CoefficientScheme, icem_pure
from .states import (
    EPS_RANK,
    Bipartition,
    MomentVector,
    PureState,
    schmidt_decompose,
)

_SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class SwapTestOutcome:
    """Exact ancilla measurement distribution, keyed by bitstring.

    Bit k of a key (leftmost = k = 1) is the outcome of ancilla k.
    """

    probabilities: dict[str, float]
    r: int

    def __post_init__(self) -> None:
        probs = dict(self.probabilities)
        if len(probs) != 2**self.r:
            raise ValueError(f"expected {2 ** self.r} outcomes, got {len(probs)}")
        if any(p < -1e-12 for p in probs.values()):
            raise ValueError("negative probability in outcome distribution")
        total = sum(probs.values())
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"distribution sums to {total!r}, not 1")
        object.__setattr__(self, "probabilities", probs)

    @property
    def p_zero(self) -> float:
        return self.probabilities["0" * self.r]


def _chain_layers(r: int) -> list[list[int]]:
    """Depth-2 schedule: odd chain positions (0-indexed even) first, then even."""
    return [[k for k in range(r) if k % 2 == 0], [k for k in range(r) if k % 2 == 1]]


def simulate_swap_test(
    state: PureState, cut: Bipartition, r: int
) -> SwapTestOutcome:
    """Exact distribution of the r-ancilla circuit on r + 1 copies of `state`."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if cut.n_subsystems != state.n_subsystems:
        raise ValueError("cut does not match the state's subsystem count")
    D = state.dim
    total = 2**r * D ** (r + 1)
    if total > config.SWAP_AMPLITUDE_CAP:
        raise DimensionCapError(
            f"swap-test register needs {total} amplitudes, cap is "
            f"{config.SWAP_AMPLITUDE_CAP}"
        )

    # one copy, reshaped so the swapped block comes first
    pos = list(cut.subset)
    rest = [i for i in range(state.n_subsystems) if i not in cut.subset]
    dA = math.prod(state.dims[i] for i in pos)
    dB = D // dA
    copy = state.amplitudes.reshape(state.dims).transpose(pos + rest).reshape(dA, dB)

    # register tensor: [2]*r ancillas then (dA, dB) per copy
    reg = np.zeros([2] * r, dtype=complex)
    reg[(0,) * r] = 1.0
    for _ in range(r + 1):
        reg = np.tensordot(reg, copy, axes=0)

    def hadamard(s: np.ndarray, k: int) -> np.ndarray:
        s0 = np.take(s, 0, axis=k)
        s1 = np.take(s, 1, axis=k)
        return np.stack(((s0 + s1) * _SQRT_HALF, (s0 - s1) * _SQRT_HALF), axis=k)

    def controlled_swap(s: np.ndarray, k: int) -> np.ndarray:
        # swap the A axes of copies k and k+1 on the ancilla-k = 1 slice
        a1 = r + 2 * k
        a2 = r + 2 * (k + 1)
        idx = [slice(None)] * s.ndim
        idx[k] = 1
        s = s.copy()
        s[tuple(idx)] = np.swapaxes(s[tuple(idx)], a1 - 1, a2 - 1)
        return s

    for k in range(r):
        reg = hadamard(reg, k)
    for layer in _chain_layers(r):
        for k in layer:
            reg = controlled_swap(reg, k)
    for k in range(r):
        reg = hadamard(reg, k)

    probs = (np.abs(reg.reshape([2] * r + [-1])) ** 2).sum(axis=-1)
    flat = probs.reshape(-1)
    outcome = {format(z, f"0{r}b"): float(flat[z]) for z in range(2**r)}
    return SwapTestOutcome(outcome, r)


def p_zero_closed_form(m: MomentVector, r: int) -> float:
    """All-zeros probability from moments alone, by run decomposition.

    Enumerates the 2^r subsets of chain positions; each maximal run of L
    consecutive positions contributes a factor m_(L+1).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if len(m) < r + 1:
        raise ValueError(f"need moments up to order {r + 1}, got {len(m)}")
    total = 0.0
    for x in range(2**r):
        prod = 1.0
        run = 0
        for k in range(r):
            if x >> k & 1:
                run += 1
            else:
                if run:
                    prod *= m[run]  # m[run] is m_(run+1)
                run = 0
        if run:
            prod *= m[run]
        total += prod
    return total / 2**r


@dataclass(frozen=True)
class ShotSummary:
    """Sampled counts plus the derived estimate of 1 - p(0..0)."""

    shots: int
    counts: dict[str, int]
    p_zero_estimate: float
    standard_error: float


def sample_outcome(outcome: SwapTestOutcome, shots: int, seed) -> ShotSummary:
    """Multinomial sampling of the exact distribution, seeded."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = np.random.default_rng(seed)
    keys = sorted(outcome.probabilities)
    probs = np.array([outcome.probabilities[k] for k in keys])
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    draws = rng.multinomial(shots, probs)
    counts = {k: int(c) for k, c in zip(keys, draws) if c}
    p_hat = draws[keys.index("0" * outcome.r)] / shots
    stderr = math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / shots)
    return ShotSummary(shots, counts, float(p_hat), float(stderr))


@dataclass(frozen=True)
class SwapCheckReport:
    """Side-by-side values for one state and cut: circuit vs formulas.

    `simulated` and `closed_form` are 1 - p(0..0) from the circuit and from
    the run-decomposition formula; the two measure columns evaluate the
    moment formula under each coefficient scheme at the detected rank.
    """

    r: int
    simulated: float
    closed_form: float
    icem_binomial: float
    icem_permutation: float

    def differences(self) -> dict[str, float]:
        pairs = {
            "simulated-closed_form": self.simulated - self.closed_form,
            "simulated-binomial": self.simulated - self.icem_binomial,
            "simulated-permutation": self.simulated - self.icem_permutation,
            "closed_form-binomial": self.closed_form - self.icem_binomial,
        }
        return {k: abs(v) for k, v in pairs.items()}


def swap_check(
    state: PureState,
    cut: Bipartition,
    eps_rank: float = EPS_RANK,
    r: int | None = None,
) -> SwapCheckReport:
    """Run the circuit at the state's Schmidt rank and compare against formulas."""
    spec = schmidt_decompose(state, cut, eps_rank)
    r_used = r if r is not None else max(spec.rank - 1, 1)
    outcome = simulate_swap_test(state, cut, r_used)
    moments = spec.moments(r_used + 1)
    closed = p_zero_closed_form(moments, r_used)
    return SwapCheckReport(
        r=r_used,
        simulated=1.0 - outcome.p_zero,
        closed_form=1.0 - closed,
        icem_binomial=icem_pure(spec, CoefficientScheme.BINOMIAL).value,
        icem_permutation=icem_pure(spec, CoefficientScheme.PERMUTATION).value,
    )
