"""Conversions between power traces and characteristic-polynomial coefficients.

For a spectrum (lambda_1..lambda_d) with F(x) = prod_i (x - lambda_i), the
coefficients a_k are the elementary symmetric polynomials of the lambda_i and
relate to the power traces m_k = sum_i lambda_i^k through Newton's identities

    a_{k+1} = 1/(k+1) * sum_{l=0}^{k} (-1)^l a_{k-l} m_{l+1},   a_0 = 1.

Both directions are implemented, plus spectrum recovery from the polynomial
roots.  Either list therefore carries the same information as the spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import EPS_RANK, MomentVector, SchmidtSpectrum


@dataclass(frozen=True)
class CharCoeffs:
    """Coefficients [a_1..a_d] of the spectrum's characteristic polynomial (a_0 = 1)."""

    coeffs: tuple[float, ...]

    def __post_init__(self) -> None:
        cs = tuple(float(c) for c in self.coeffs)
        if not cs:
            raise ValueError("coefficient list must not be empty")
        if abs(cs[0] - 1.0) > 1e-9:
            raise ValueError(f"a_1 must equal 1 (the trace), got {cs[0]!r}")
        for k, c in enumerate(cs):
            if c < -1e-9:
                raise ValueError(f"a_{k + 1} = {c!r} negative beyond tolerance")
        object.__setattr__(self, "coeffs", cs)

    def __len__(self) -> int:
        return len(self.coeffs)


def coeffs_from_moments(m: MomentVector) -> CharCoeffs:
    """[a_1..a_d] from [m_1..m_d] via the forward recursion."""
    mom = m.moments
    a = [1.0]  # a_0
    for k in range(len(mom)):
        acc = 0.0
        for l in range(k + 1):
            acc += (-1.0) ** l * a[k - l] * mom[l]
        a.append(acc / (k + 1))
    return CharCoeffs(tuple(a[1:]))


def moments_from_coeffs(a: CharCoeffs) -> MomentVector:
    """[m_1..m_d] from [a_1..a_d]; the same recursion solved for m_{k+1}."""
    av = (1.0,) + a.coeffs  # av[k] = a_k
    mom: list[float] = []
    for k in range(len(a.coeffs)):
        acc = 0.0
        for l in range(k):
            acc += (-1.0) ** l * av[k - l] * mom[l]
        mk = (-1.0) ** k * ((k + 1) * av[k + 1] - acc)
        if mk < -1e-9 or mk > 1.0 + 1e-9:
            raise ValueError(
                f"inconsistent coefficients: reconstructed m_{k + 1} = {mk!r} "
                "outside [0, 1]"
            )
        mom.append(mk)
    return MomentVector(tuple(mom))


def _collapse_root_clusters(poly: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Replace companion-eigenvalue clusters that behave like multiple roots.

    Eigenvalues of the companion matrix scatter around an m-fold root on a
    ring of radius ~eps**(1/m): for m >= 3 the spurious imaginary parts
    alone would trip any realness check, and the real parts are far less
    accurate than the coefficients allow.  Distinct real roots, however
    closely packed, come back exactly real, so a cluster is only treated
    when it shows the complex-scatter symptom (or sits entirely within the
    1e-8 radius where refinement cannot matter).  A treated cluster is
    collapsed onto one real root of multiplicity m when Newton's method on
    the (m-1)-th derivative — where that root is simple — lands on a point
    at which p, p', ..., p^(m-1) all vanish to within evaluation roundoff;
    otherwise the cluster is split at its widest gap and retried, so
    genuinely distinct (or genuinely complex) roots pass through untouched.
    """
    d = len(poly) - 1
    derivs = [poly]
    for _ in range(d):
        derivs.append(np.polyder(derivs[-1]))
    abs_derivs = [np.abs(q) for q in derivs]
    eps = float(np.finfo(float).eps)
    imag_tol = 1e-9

    def vanishes_to_roundoff(x: float, m: int) -> bool:
        for k in range(m):
            bound = float(np.polyval(abs_derivs[k], abs(x)))
            if abs(float(np.polyval(derivs[k], x))) > 1e4 * eps * bound:
                return False
        return True

    def polish(center: float, m: int) -> float:
        x = center
        q, qp = derivs[m - 1], derivs[m]
        for _ in range(60):
            fpx = float(np.polyval(qp, x))
            if fpx == 0.0 or abs(x - center) > 0.1:
                return center
            step = float(np.polyval(q, x)) / fpx
            x -= step
            if abs(step) <= 1e-17 + 1e-16 * abs(x):
                break
        return x

    def handle(cluster: np.ndarray, out: list[complex]) -> None:
        m = len(cluster)
        if m == 1:
            out.append(complex(cluster[0]))
            return
        span = float(cluster.real.max() - cluster.real.min())
        if float(np.max(np.abs(cluster.imag))) <= imag_tol and span > 1e-8:
            out.extend(complex(r) for r in cluster)
            return
        x = polish(float(np.mean(cluster.real)), m)
        if vanishes_to_roundoff(x, m):
            out.extend([complex(x)] * m)
            return
        gaps = np.diff(cluster.real)
        if len(gaps) == 0 or np.max(gaps) <= 0.0:
            out.extend(complex(r) for r in cluster)
            return
        split = int(np.argmax(gaps)) + 1
        handle(cluster[:split], out)
        handle(cluster[split:], out)

    order = np.argsort(roots.real)
    rs = roots[order]
    base = 4.0 * eps ** (1.0 / max(d, 1))
    out: list[complex] = []
    start = 0
    for i in range(1, len(rs) + 1):
        if i < len(rs):
            link = base + 2.0 * (abs(rs[i].imag) + abs(rs[i - 1].imag))
        if i == len(rs) or abs(rs[i] - rs[i - 1]) > link:
            handle(rs[start:i], out)
            start = i
    return np.asarray(out, dtype=complex)


def spectrum_from_coeffs(a: CharCoeffs, eps_rank: float = EPS_RANK) -> SchmidtSpectrum:
    """Roots of x^d - a_1 x^(d-1) + a_2 x^(d-2) - ..., sorted descending.

    Initial estimates come from the companion matrix; clusters of estimates
    consistent with a multiple root are collapsed onto one polished value
    (see _collapse_root_clusters), which keeps degenerate spectra such as
    the maximally entangled ones recoverable to near machine precision.
    """
    d = len(a.coeffs)
    poly = np.empty(d + 1)
    poly[0] = 1.0
    for k, c in enumerate(a.coeffs, start=1):
        poly[k] = (-1.0) ** k * c
    roots = np.roots(poly)  # companion-matrix eigenvalues
    if len(roots):
        roots = _collapse_root_clusters(poly, roots)
    resid = float(np.max(np.abs(roots.imag))) if len(roots) else 0.0
    if resid > 1e-7:
        raise ValueError(
            f"spectrum recovery failed: root imaginary residue {resid!r} exceeds 1e-7"
        )
    return SchmidtSpectrum.from_values(roots.real, eps_rank=eps_rank)
