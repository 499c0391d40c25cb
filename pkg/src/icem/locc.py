"""LOCC transformability between pure bipartite states, from spectra alone.

Nielsen's criterion: |x> -> |y> under LOCC iff the Schmidt spectrum of y
majorizes that of x.  The component monotones C_i supply an independent
necessary condition (all C_i(x) >= C_i(y) when the transform is possible);
`locc_verdict` combines both and enforces their consistency.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measures import CoefficientScheme, icem_component
from .states import SchmidtSpectrum

TIE_TOL = 1e-12
COMPONENT_TOL = 1e-12


def _padded(x: SchmidtSpectrum, y: SchmidtSpectrum) -> tuple[np.ndarray, np.ndarray]:
    n = max(len(x.values), len(y.values))
    xv = np.zeros(n)
    yv = np.zeros(n)
    xv[: len(x.values)] = x.values
    yv[: len(y.values)] = y.values
    return xv, yv


def majorizes(x: SchmidtSpectrum, y: SchmidtSpectrum, tie_tol: float = TIE_TOL) -> bool:
    """True when x majorizes y: every partial sum of x dominates y's.

    Spectra are already sorted nonincreasing and are zero-padded to a common
    length; ties within `tie_tol` count as satisfied.
    """
    xv, yv = _padded(x, y)
    return bool(np.all(np.cumsum(xv) >= np.cumsum(yv) - tie_tol))


@dataclass(frozen=True)
class ComponentComparison:
    """One row of the monotone table: C_i for both states and the ordering flag."""

    index: int
    c_x: float
    c_y: float
    satisfied: bool  # c_x >= c_y - COMPONENT_TOL


def compare_components(
    x: SchmidtSpectrum,
    y: SchmidtSpectrum,
    scheme: CoefficientScheme = CoefficientScheme.BINOMIAL,
) -> tuple[ComponentComparison, ...]:
    """Per-component necessary condition for x -> y, ranks aligned upward.

    Both spectra are evaluated at the larger of the two ranks so the
    component lists line up even when one state has lower Schmidt rank.
    """
    rank = max(x.rank, y.rank)
    rows = []
    for i in range(rank):
        cx = icem_component(x, i, scheme, force_rank=rank)
        cy = icem_component(y, i, scheme, force_rank=rank)
        rows.append(ComponentComparison(i, cx, cy, cx >= cy - COMPONENT_TOL))
    return tuple(rows)


@dataclass(frozen=True)
class LoccVerdict:
    """Majorization verdicts for both directions plus monotone consistency.

    The component condition is necessary, so `forward` without
    `components_forward_consistent` (or the mirror pair) is mathematically
    impossible; construction rejects such a combination outright.
    """

    forward: bool
    backward: bool
    components_forward_consistent: bool
    components_backward_consistent: bool

    def __post_init__(self) -> None:
        if self.forward and not self.components_forward_consistent:
            raise ValueError(
                "majorization allows x -> y but a component monotone increased"
            )
        if self.backward and not self.components_backward_consistent:
            raise ValueError(
                "majorization allows y -> x but a component monotone increased"
            )


def locc_verdict(
    x: SchmidtSpectrum,
    y: SchmidtSpectrum,
    scheme: CoefficientScheme = CoefficientScheme.BINOMIAL,
) -> LoccVerdict:
    """Combined LOCC verdict for the pair (x, y)."""
    rows = compare_components(x, y, scheme)
    return LoccVerdict(
        forward=majorizes(y, x),
        backward=majorizes(x, y),
        components_forward_consistent=all(r.satisfied for r in rows),
        components_backward_consistent=all(
            r.c_y >= r.c_x - COMPONENT_TOL for r in rows
        ),
    )
