"""Multi-qudit state representations and the spectral primitives built on them.

Pure states are flat amplitude vectors in row-major order (last subsystem
index varies fastest).  Density matrices carry their per-subsystem dimensions
and labels so partial traces compose.  Everything downstream consumes either
a SchmidtSpectrum (eigenvalues of a reduced state across a cut) or a
MomentVector (power traces m_k = Tr rho^k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import config
from .config import DimensionCapError

EPS_RANK = config.EPS_RANK


@dataclass(frozen=True)
class PureState:
    """Normalized pure state of one or more qudits."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
        total = math.prod(dims)
        if total > config.STATE_AMPLITUDE_CAP:
            raise DimensionCapError(
                f"state has {total} amplitudes, cap is {config.STATE_AMPLITUDE_CAP}"
            )
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.size != total:
            raise ValueError(
                f"amplitude count {amp.size} does not match product of dims {total}"
            )
        norm_sq = float(np.real(np.vdot(amp, amp)))
        if abs(norm_sq - 1.0) > 1e-10:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def n_subsystems(self) -> int:
        return len(self.dims)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed state on a labeled collection of qudits.

    `labels` identify which subsystems of the original system this matrix
    describes; `dims` are the matching per-subsystem dimensions.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]
    labels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        dims = tuple(int(d) for d in self.dims)
        raw_labels = self.labels if self.labels is not None else range(len(dims))
        labels = tuple(int(x) for x in raw_labels)
        if len(labels) != len(dims):
            raise ValueError("labels and dims must have equal length")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate subsystem labels: {labels}")
        if any(d < 2 for d in dims):
            raise ValueError(f"subsystem dimensions must all be >= 2, got {dims}")
        mat = np.asarray(self.matrix, dtype=complex)
        total = math.prod(dims)
        if mat.shape != (total, total):
            raise ValueError(f"matrix shape {mat.shape} does not match dims {dims}")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-10:
            raise ValueError("matrix is not Hermitian within 1e-10")
        tr = float(np.real(np.trace(mat)))
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"trace must be 1, got {tr!r}")
        lo = float(np.min(np.linalg.eigvalsh(mat)))
        if lo < -1e-9:
            raise ValueError(f"matrix is not positive semidefinite: min eigenvalue {lo!r}")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Bipartition:
    """A cut of subsystems {0..n-1} into a nonempty proper subset and its complement."""

    subset: tuple[int, ...]
    n_subsystems: int

    def __post_init__(self) -> None:
        n = int(self.n_subsystems)
        subset = tuple(sorted(int(x) for x in self.subset))
        if n < 2:
            raise ValueError("a bipartition needs at least two subsystems")
        if len(set(subset)) != len(subset):
            raise ValueError(f"duplicate labels in cut: {self.subset}")
        if any(x < 0 or x >= n for x in subset):
            raise ValueError(f"cut labels {subset} out of range for {n} subsystems")
        if not subset or len(subset) == n:
            raise ValueError("cut must be a nonempty proper subset")
        object.__setattr__(self, "subset", subset)
        object.__setattr__(self, "n_subsystems", n)

    @property
    def complement(self) -> tuple[int, ...]:
        inside = set(self.subset)
        return tuple(i for i in range(self.n_subsystems) if i not in inside)


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Eigenvalues of a reduced state: a sorted probability vector plus its rank."""

    values: tuple[float, ...]
    rank: int

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValueError("spectrum must not be empty")
        if any(v < 0.0 or v > 1.0 for v in vals):
            raise ValueError(f"spectrum entries must lie in [0, 1]: {vals}")
        if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            raise ValueError("spectrum must be sorted nonincreasing")
        if abs(sum(vals) - 1.0) > 1e-9:
            raise ValueError(f"spectrum must sum to 1, got {sum(vals)!r}")
        rank = int(self.rank)
        if rank < 1 or rank > len(vals):
            raise ValueError(f"rank {rank} inconsistent with {len(vals)} values")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "rank", rank)

    @classmethod
    def from_values(cls, values, eps_rank: float = EPS_RANK) -> "SchmidtSpectrum":
        """Clamp, sort, renormalize (if the sum drifted) and count the rank."""
        vals = np.clip(np.real(np.asarray(values, dtype=float)), 0.0, 1.0)
        vals = np.sort(vals)[::-1]
        total = float(vals.sum())
        if total <= 0.0:
            raise ValueError("spectrum has no positive weight")
        if abs(total - 1.0) > 1e-12:
            vals = vals / total
        rank = int(np.sum(vals > eps_rank))
        rank = max(rank, 1)
        return cls(tuple(float(v) for v in vals), rank)

    def moments(self, K: int) -> "MomentVector":
        """Power sums m_k = sum_i lambda_i^k for k = 1..K."""
        if K < 1:
            raise ValueError("K must be >= 1")
        lam = np.asarray(self.values)
        return MomentVector(tuple(float(np.sum(lam**k)) for k in range(1, K + 1)))


@dataclass(frozen=True)
class MomentVector:
    """Power traces [m_1, ..., m_K] of a density matrix, m_k = Tr rho^k."""

    moments: tuple[float, ...]

    def __post_init__(self) -> None:
        mom = tuple(float(m) for m in self.moments)
        if not mom:
            raise ValueError("moment vector must not be empty")
        if abs(mom[0] - 1.0) > 1e-9:
            raise ValueError(f"m_1 must equal 1, got {mom[0]!r}")
        for k, m in enumerate(mom):
            if m < -1e-9 or m > 1.0 + 1e-9:
                raise ValueError(f"m_{k + 1} = {m!r} outside [0, 1]")
        for k in range(len(mom) - 1):
            if mom[k + 1] > mom[k] + 1e-9:
                raise ValueError("moments of a state must be nonincreasing")
        object.__setattr__(self, "moments", mom)

    def __len__(self) -> int:
        return len(self.moments)

    def __getitem__(self, k: int) -> float:
        return self.moments[k]


def _keep_positions(labels: tuple[int, ...], keep) -> list[int]:
    keep = sorted(set(int(x) for x in keep))
    if not keep:
        raise ValueError("keep set must not be empty")
    positions = []
    for x in keep:
        if x not in labels:
            raise ValueError(f"unknown subsystem label {x}; state has {labels}")
        positions.append(labels.index(x))
    return positions


def partial_trace(state: PureState | DensityMatrix, keep) -> DensityMatrix:
    """Reduced density matrix on the `keep` subsystems (labels, not positions)."""
    if isinstance(state, PureState):
        labels = tuple(range(state.n_subsystems))
        pos = _keep_positions(labels, keep)
        rest = [i for i in range(state.n_subsystems) if i not in pos]
        dA = math.prod(state.dims[i] for i in pos)
        dB = math.prod(state.dims[i] for i in rest)
        T = state.amplitudes.reshape(state.dims).transpose(pos + rest).reshape(dA, dB)
        rho = T @ T.conj().T
        return DensityMatrix(
            rho,
            tuple(state.dims[i] for i in pos),
            tuple(labels[i] for i in pos),
        )
    if isinstance(state, DensityMatrix):
        pos = _keep_positions(state.labels, keep)
        n = len(state.dims)
        if len(pos) == n:
            return state
        tensor = state.matrix.reshape(state.dims + state.dims)
        # einsum subscripts: traced row/col axes share a letter
        letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
        row = list(letters[:n])
        col = list(letters[n : 2 * n])
        for i in range(n):
            if i not in pos:
                col[i] = row[i]
        out = "".join(row[i] for i in pos) + "".join(letters[n + i] for i in pos)
        rho = np.einsum("".join(row) + "".join(col) + "->" + out, tensor)
        dA = math.prod(state.dims[i] for i in pos)
        return DensityMatrix(
            rho.reshape(dA, dA),
            tuple(state.dims[i] for i in pos),
            tuple(state.labels[i] for i in pos),
        )
    raise TypeError(f"expected PureState or DensityMatrix, got {type(state).__name__}")


def schmidt_decompose(
    state: PureState, cut: Bipartition, eps_rank: float = EPS_RANK
) -> SchmidtSpectrum:
    """Spectrum of the reduced state across `cut`, computed on the smaller side."""
    if cut.n_subsystems != state.n_subsystems:
        raise ValueError(
            f"cut is over {cut.n_subsystems} subsystems, state has {state.n_subsystems}"
        )
    dA = math.prod(state.dims[i] for i in cut.subset)
    dB = state.dim // dA
    side = cut.subset if dA <= dB else cut.complement
    rho = partial_trace(state, side)
    evals = np.linalg.eigvalsh(rho.matrix)
    return SchmidtSpectrum.from_values(evals, eps_rank=eps_rank)


def trace_powers(rho: DensityMatrix, K: int) -> MomentVector:
    """MomentVector [m_1..m_K] from one Hermitian eigendecomposition of rho."""
    if K < 1:
        raise ValueError("K must be >= 1")
    lam = np.clip(np.linalg.eigvalsh(rho.matrix), 0.0, None)
    return MomentVector(tuple(float(np.sum(lam**k)) for k in range(1, K + 1)))


def random_pure_state(dims, seed) -> PureState:
    """Haar-like random state: normalized vector of standard complex Gaussians."""
    dims = tuple(int(d) for d in dims)
    rng = np.random.default_rng(seed)
    total = math.prod(dims)
    v = rng.standard_normal(total) + 1j * rng.standard_normal(total)
    v /= np.linalg.norm(v)
    return PureState(dims, v)
