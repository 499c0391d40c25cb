"""Convex-roof extension of the pure-state measure to mixed states.

roof(rho) = min over pure-state decompositions {p_j, |psi_j>} of rho of
sum_j p_j * C(|psi_j>).  Every size-m decomposition of rho arises from an
m x R matrix U with orthonormal columns (R = rank of rho) acting on the
weighted eigenvector matrix: |psi~_j> = sum_i U_ji sqrt(q_i) |e_i>, with
p_j = <psi~_j|psi~_j>.  The minimization is a seeded multi-restart local
search over U; the result is an upper bound on the true roof (local search
certifies no global minimum) and is labeled as such wherever it is printed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .measures import CoefficientScheme, icem_pure, scheme_coefficients
from .states import (
    EPS_RANK,
    Bipartition,
    DensityMatrix,
    PureState,
    schmidt_decompose,
)

# eigenvalues of rho below this carry no weight and are dropped from the search
_WEIGHT_CUTOFF = 1e-12


@dataclass(frozen=True)
class Ensemble:
    """A pure-state decomposition: weights p_j and matching states."""

    weights: tuple[float, ...]
    states: tuple[PureState, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(self.states):
            raise ValueError("one weight per state required")
        if not self.states:
            raise ValueError("ensemble must not be empty")
        dims = self.states[0].dims
        if any(s.dims != dims for s in self.states):
            raise ValueError("all ensemble members must share the same dims")
        w = tuple(float(x) for x in self.weights)
        if any(x < -1e-12 for x in w):
            raise ValueError("weights must be nonnegative")
        if abs(sum(w) - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {sum(w)!r}")
        object.__setattr__(self, "weights", w)

    def density_matrix(self) -> DensityMatrix:
        """The mixed state this ensemble represents."""
        dims = self.states[0].dims
        rho = np.zeros((self.states[0].dim,) * 2, dtype=complex)
        for p, s in zip(self.weights, self.states):
            rho += p * np.outer(s.amplitudes, s.amplitudes.conj())
        return DensityMatrix(rho, dims, tuple(range(len(dims))))


@dataclass(frozen=True)
class RoofConfig:
    """Search knobs; defaults match the documented search recipe."""

    restarts: int = 32
    tol: float = 1e-7
    patience: int = 50
    m: int | None = None  # ensemble size; default min(rank^2, 16), at least rank
    seed: int = 0
    maxiter: int = 500


@dataclass(frozen=True)
class RoofResult:
    value: float  # upper bound on the roof
    best_ensemble: Ensemble
    restarts_used: int
    converged: bool

    def __post_init__(self) -> None:
        if self.value < 0.0:
            raise ValueError("roof value cannot be negative")


def ensemble_average(
    e: Ensemble,
    cut: Bipartition,
    scheme: CoefficientScheme = CoefficientScheme.BINOMIAL,
    eps_rank: float = EPS_RANK,
) -> float:
    """Weighted average of icem_pure over the members: an upper bound on the roof."""
    total = 0.0
    for p, s in zip(e.weights, e.states):
        if p <= 0.0:
            continue
        total += p * icem_pure(schmidt_decompose(s, cut, eps_rank), scheme).value
    return total


def _member_objective(
    V: np.ndarray,
    d_small: int,
    small_first: bool,
    scheme: CoefficientScheme,
    eps_rank: float,
) -> float:
    """sum_j p_j * C(psi_j) for unnormalized member rows V (cut-ordered)."""
    p = np.einsum("jk,jk->j", V, V.conj()).real
    T = V.reshape(V.shape[0], d_small, -1) if small_first else V.reshape(
        V.shape[0], -1, d_small
    )
    if small_first:
        red = np.einsum("jab,jcb->jac", T, T.conj())
    else:
        red = np.einsum("jab,jac->jbc", T.conj(), T)
    lam = np.linalg.eigvalsh(red)  # ascending, rows sum to p_j
    total = 0.0
    for j, pj in enumerate(p):
        if pj < _WEIGHT_CUTOFF:
            continue
        lj = np.clip(lam[j][::-1] / pj, 0.0, 1.0)
        r = int(np.sum(lj > eps_rank)) - 1
        if r <= 0:
            continue
        weights = scheme_coefficients(r, scheme)
        moments = [float(np.sum(lj ** (i + 1))) for i in range(r + 1)]
        if scheme is CoefficientScheme.BINOMIAL:
            val = max(
                sum(w / 2.0**r * (1.0 - m) for w, m in zip(weights, moments)), 0.0
            )
        else:
            val = 1.0 - sum(w * m for w, m in zip(weights, moments)) / 2.0**r
        total += pj * val
    return total


def roof_minimize(
    rho: DensityMatrix,
    cut: Bipartition,
    scheme: CoefficientScheme = CoefficientScheme.BINOMIAL,
    config: RoofConfig | None = None,
    eps_rank: float = EPS_RANK,
) -> RoofResult:
    """Upper bound on the convex roof by multi-restart local search.

    Deterministic for a fixed (config, seed); restarts stop early once the
    best value has gone `config.patience` consecutive restarts without
    improving by more than `config.tol`, and `converged` reports whether the
    final stall stretch covered the (clipped) patience window.
    """
    cfg = config or RoofConfig()
    if cut.n_subsystems != len(rho.dims):
        raise ValueError("cut does not match the state's subsystem count")
    q, E = np.linalg.eigh(rho.matrix)
    keep = q > _WEIGHT_CUTOFF
    q, E = q[keep], E[:, keep]
    R = int(q.size)
    m = cfg.m if cfg.m is not None else max(min(R * R, 16), R)
    if m < R:
        raise ValueError(f"ensemble size m = {m} below rank(rho) = {R}")

    # permute eigenvectors so a member vector reshapes directly as (cut, rest)
    n = len(rho.dims)
    pos = list(cut.subset)
    rest = [i for i in range(n) if i not in cut.subset]
    perm = pos + rest
    E_perm = E.reshape(rho.dims + (R,)).transpose(perm + [n]).reshape(rho.dim, R)
    dA = math.prod(rho.dims[i] for i in pos)
    dB = rho.dim // dA
    small_first = dA <= dB
    d_small = min(dA, dB)
    sq = np.sqrt(q)

    def objective(theta: np.ndarray) -> float:
        G = theta[: m * R].reshape(m, R) + 1j * theta[m * R :].reshape(m, R)
        U, _ = np.linalg.qr(G)
        V = (U * sq[None, :]) @ E_perm.T
        return _member_objective(V, d_small, small_first, scheme, eps_rank)

    rng = np.random.default_rng(cfg.seed)
    best_val = np.inf
    best_theta: np.ndarray | None = None
    stall = 0
    used = 0
    for _ in range(cfg.restarts):
        used += 1
        theta0 = rng.standard_normal(2 * m * R)
        res = minimize(
            objective,
            theta0,
            method="L-BFGS-B",
            options={"maxiter": cfg.maxiter, "ftol": 1e-13, "gtol": 1e-11},
        )
        if res.fun < best_val:
            stall = 0 if res.fun < best_val - cfg.tol else stall + 1
            best_val = float(res.fun)
            best_theta = np.asarray(res.x)
        else:
            stall += 1
        if stall >= cfg.patience:
            break
    converged = stall >= min(cfg.patience, used - 1)

    assert best_theta is not None
    G = best_theta[: m * R].reshape(m, R) + 1j * best_theta[m * R :].reshape(m, R)
    U, _ = np.linalg.qr(G)
    V = (U * sq[None, :]) @ E.T  # original axis order for the member states
    p = np.einsum("jk,jk->j", V, V.conj()).real
    keep_rows = p > _WEIGHT_CUTOFF
    p_kept = p[keep_rows]
    weights = tuple(float(x) for x in p_kept / p_kept.sum())
    members = tuple(
        PureState(rho.dims, V[j] / math.sqrt(p[j]))
        for j in np.nonzero(keep_rows)[0]
    )
    ensemble = Ensemble(weights, members)
    rebuilt = ensemble.density_matrix().matrix
    drift = float(np.linalg.norm(rebuilt - rho.matrix))
    if drift > 1e-8:
        raise RuntimeError(f"ensemble reconstruction drifted: Frobenius {drift!r}")
    value = ensemble_average(ensemble, cut, scheme, eps_rank)
    return RoofResult(max(value, 0.0), ensemble, used, bool(converged))
