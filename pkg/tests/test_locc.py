import numpy as np
import pytest

from icem import (
    CoefficientScheme,
    LoccVerdict,
    SchmidtSpectrum,
    compare_components,
    locc_verdict,
    majorizes,
)

BIN = CoefficientScheme.BINOMIAL
PERM = CoefficientScheme.PERMUTATION

SPEC_A = SchmidtSpectrum.from_values((0.5, 0.4, 0.1))
SPEC_B = SchmidtSpectrum.from_values((0.55, 0.3, 0.15))


def comparable_pair(rng, d):
    """(x, y) with x majorizing y: y = Tx for a random doubly stochastic T."""
    w = rng.random(d) + 1e-3
    x = w / w.sum()
    T = np.zeros((d, d))
    weights = rng.random(rng.integers(2, 6))
    weights /= weights.sum()
    for wk in weights:
        T += wk * np.eye(d)[rng.permutation(d)]
    y = T @ x
    return (
        SchmidtSpectrum.from_values(x),
        SchmidtSpectrum.from_values(y),
    )


def test_majorizes_basics():
    top = SchmidtSpectrum.from_values((1.0, 0.0))
    bell = SchmidtSpectrum.from_values((0.5, 0.5))
    assert majorizes(top, bell)
    assert not majorizes(bell, top)
    assert majorizes(bell, bell)


def test_majorizes_handles_unequal_lengths():
    three = SchmidtSpectrum.from_values((0.5, 0.3, 0.2))
    two = SchmidtSpectrum.from_values((0.7, 0.3))
    assert majorizes(two, three)
    assert not majorizes(three, two)


def test_incomparable_pair_neither_direction():
    assert not majorizes(SPEC_A, SPEC_B)
    assert not majorizes(SPEC_B, SPEC_A)
    verdict = locc_verdict(SPEC_A, SPEC_B)
    assert not verdict.forward
    assert not verdict.backward


def test_component_table_known_values():
    rows = compare_components(SPEC_A, SPEC_B)
    assert rows[0].c_x == rows[0].c_y == 0.0
    assert abs(rows[1].c_x - 0.29) < 1e-12
    assert abs(rows[1].c_y - 0.2925) < 1e-12
    assert abs(rows[2].c_x - 0.2025) < 1e-12
    assert abs(rows[2].c_y - 0.2008125) < 1e-12
    assert not rows[1].satisfied  # C_1 increases, so A -> B is impossible
    assert rows[2].satisfied  # ... yet C_2 decreases, so B -> A is too


def test_identical_spectra_equivalent():
    verdict = locc_verdict(SPEC_A, SPEC_A)
    assert verdict.forward and verdict.backward
    assert verdict.components_forward_consistent
    assert verdict.components_backward_consistent


def test_forward_only_pair():
    bell = SchmidtSpectrum.from_values((0.5, 0.5))
    top = SchmidtSpectrum.from_values((1.0, 0.0))
    verdict = locc_verdict(bell, top)
    assert verdict.forward and not verdict.backward


def test_rank_alignment_pads_components():
    three = SchmidtSpectrum.from_values((0.5, 0.3, 0.2))
    two = SchmidtSpectrum.from_values((0.7, 0.3))
    rows = compare_components(three, two)
    assert len(rows) == 3  # evaluated at the larger rank


def test_verdict_invariant_rejects_contradiction():
    with pytest.raises(ValueError, match="component monotone"):
        LoccVerdict(
            forward=True,
            backward=False,
            components_forward_consistent=False,
            components_backward_consistent=True,
        )


@pytest.mark.parametrize("scheme", [BIN, PERM])
def test_random_comparable_pairs_never_violate_monotones(scheme):
    rng = np.random.default_rng(77)
    for _ in range(1000):
        d = int(rng.integers(2, 9))
        x, y = comparable_pair(rng, d)
        assert majorizes(x, y)
        # y -> x is LOCC-allowed, so every component must shrink along it
        rows = compare_components(y, x, scheme)
        assert all(r.satisfied for r in rows)
        locc_verdict(y, x, scheme)  # construction enforces the invariant
