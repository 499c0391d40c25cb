"""The fixed-purity ellipse of rank-3 spectra and the measure sweep along it.

Probability vectors (b1, b2, 1 - b1 - b2) with b1^2 + b2^2 + (1-b1-b2)^2
= 7/18 form an ellipse in the (b1, b2) plane, centred at (1/3, 1/3).  Every
point of it is a valid spectrum (all three entries stay inside [0.14, 0.54]),
so the sweep parameter t in [0, 2pi) covers the whole locus.

All states on the ellipse share m_2 = 7/18, yet the measure varies with t
because it also sees m_3; the sweep against the fixed reference spectrum
(1/2, 1/3, 1/6) crosses zero exactly where the swept spectrum is a
permutation of the reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .config import EPS_RANK
from .measures import CoefficientScheme, icem_pure
from .states import SchmidtSpectrum

M2_TARGET = 7.0 / 18.0
REFERENCE_SPECTRUM = (0.5, 1.0 / 3.0, 1.0 / 6.0)

_U_SCALE = 1.0 / math.sqrt(54.0)  # semi-axis along (1,1)/sqrt(2)
_V_SCALE = 1.0 / math.sqrt(18.0)  # semi-axis along (1,-1)/sqrt(2)
_SQRT_HALF = 1.0 / math.sqrt(2.0)


def ellipse_point(t: float) -> tuple[float, float]:
    """(b1, b2) on the fixed-purity ellipse at sweep angle t."""
    u = math.cos(t) * _U_SCALE
    v = math.sin(t) * _V_SCALE
    return (
        1.0 / 3.0 + (u + v) * _SQRT_HALF,
        1.0 / 3.0 + (u - v) * _SQRT_HALF,
    )


def spectrum_at(t: float, eps_rank: float = EPS_RANK) -> SchmidtSpectrum:
    """The swept spectrum at angle t, sorted into canonical order."""
    b1, b2 = ellipse_point(t)
    return SchmidtSpectrum.from_values((b1, b2, 1.0 - b1 - b2), eps_rank)


def measure_gap(t: float, scheme: CoefficientScheme) -> float:
    """Measure of the swept spectrum minus the reference value at angle t."""
    ref = SchmidtSpectrum.from_values(REFERENCE_SPECTRUM)
    return (
        icem_pure(spectrum_at(t), scheme).value - icem_pure(ref, scheme).value
    )


@dataclass(frozen=True)
class SweepData:
    """Grid samples of both curves plus the refined equality angles."""

    t: np.ndarray
    swept: np.ndarray
    reference: np.ndarray
    equal_flag: np.ndarray  # 1 where |swept - reference| < 1e-9 on the grid
    equality_t: tuple[float, ...]  # refined crossings, ascending


def sweep(
    samples: int,
    scheme: CoefficientScheme = CoefficientScheme.BINOMIAL,
) -> SweepData:
    """Sample both curves on a uniform grid and refine every crossing."""
    if samples < 8:
        raise ValueError("samples must be >= 8")
    ref_value = icem_pure(SchmidtSpectrum.from_values(REFERENCE_SPECTRUM), scheme).value
    ts = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    swept = np.array([icem_pure(spectrum_at(t), scheme).value for t in ts])
    gap = swept - ref_value

    roots: list[float] = []
    n = len(ts)
    for i in range(n):
        j = (i + 1) % n
        a, b = ts[i], ts[i] + 2.0 * math.pi / samples
        ga, gb = gap[i], gap[j]
        if abs(ga) < 1e-13:
            roots.append(float(a))  # the grid hit the crossing dead on
        elif ga * gb < 0.0 and abs(gb) >= 1e-13:
            roots.append(
                float(brentq(lambda t: measure_gap(t, scheme), a, b, xtol=1e-13))
            )
    roots = _dedupe_angles(sorted(roots))
    return SweepData(
        t=ts,
        swept=swept,
        reference=np.full(n, ref_value),
        equal_flag=(np.abs(gap) < 1e-9).astype(int),
        equality_t=tuple(roots),
    )


def _dedupe_angles(roots: list[float], min_sep: float = 1e-6) -> list[float]:
    """Collapse near-duplicate angles, treating 0 and 2pi as the same point."""
    out: list[float] = []
    for t in roots:
        if out and t - out[-1] < min_sep:
            continue
        out.append(t)
    if len(out) > 1 and (out[0] + 2.0 * math.pi) - out[-1] < min_sep:
        out.pop()
    return out
