import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from icem import PureState, random_pure_state, read_state_file, write_state_file
from icem.cli import main

from conftest import FIXTURE_DIR


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


PHI1 = FIXTURE_DIR / "phi1.json"
PHI2 = FIXTURE_DIR / "phi2.json"
RANK4 = FIXTURE_DIR / "rank4.json"


def test_measure_phi1(capsys):
    code, out, _ = run(capsys, "measure", PHI1, "--cut", "0")
    assert code == 0
    assert "value 0.513888889" in out
    assert "scheme binomial" in out
    assert "rank 3" in out
    assert "C_1 0.305555556" in out
    assert "C_2 0.208333333" in out
    assert "concurrence 0.957427108" in out
    assert "concentratable 0.305555556" in out
    assert "verdict entangled" in out


def test_measure_phi2(capsys):
    code, out, _ = run(capsys, "measure", PHI2, "--cut", "0")
    assert code == 0
    assert "value 0.512586806" in out


def test_measure_printed_scheme(capsys):
    code, out, _ = run(capsys, "measure", PHI1, "--cut", "0", "--scheme", "printed")
    assert code == 0
    assert "value 0.472222222" in out
    assert "scheme printed" in out


def test_measure_product_state_is_separable(capsys):
    code, out, _ = run(capsys, "measure", FIXTURE_DIR / "product.json", "--cut", "0")
    assert code == 0
    assert "value 0" in out.splitlines()[0]
    assert "verdict separable" in out


def test_measure_force_rank(capsys):
    code, out, _ = run(capsys, "measure", PHI1, "--cut", "0", "--force-rank", "4")
    assert code == 0
    assert "rank 4" in out


def test_measure_bad_cut_exits_3(capsys):
    code, _, err = run(capsys, "measure", PHI1, "--cut", "5")
    assert code == 3
    assert "error" in err


def test_measure_density_file_exits_3(capsys, tmp_path):
    path = tmp_path / "mixed.json"
    payload = {
        "dims": [2, 2],
        "kind": "density",
        "matrix": [
            [[0.25 if i == j else 0.0, 0.0] for j in range(4)] for i in range(4)
        ],
    }
    path.write_text(json.dumps(payload))
    code, _, err = run(capsys, "measure", path, "--cut", "0")
    assert code == 3
    assert "pure state" in err


def test_parse_error_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "measure", bad, "--cut", "0")
    assert code == 2
    assert "line 1" in err


def test_missing_field_exits_2(capsys, tmp_path):
    bad = tmp_path / "nofield.json"
    bad.write_text(json.dumps({"dims": [2, 2], "kind": "pure"}))
    code, _, err = run(capsys, "measure", bad, "--cut", "0")
    assert code == 2
    assert "amplitudes" in err


def test_missing_file_exits_2(capsys):
    code, _, _ = run(capsys, "measure", "no/such/file.json", "--cut", "0")
    assert code == 2


def test_cap_exceeded_exits_4(capsys, tmp_path):
    state = random_pure_state((2,) * 6, seed=1)
    path = tmp_path / "big.json"
    write_state_file(path, state)
    code, _, err = run(capsys, "swaptest", path, "--cut", "0,1,2", "--ancillas", "5")
    assert code == 4
    assert "cap" in err


def test_multipartite_ghz(capsys):
    code, out, _ = run(capsys, "multipartite", FIXTURE_DIR / "ghz3.json")
    assert code == 0
    assert "arithmetic 0.25" in out
    assert "geometric 0.25" in out
    assert "verdict genuinely-entangled" in out


def test_multipartite_zero_bell(capsys):
    code, out, _ = run(capsys, "multipartite", FIXTURE_DIR / "zero_bell.json")
    assert code == 0
    assert "geometric 0" in out
    assert "verdict entangled-not-genuine" in out


def test_classify_prints_only_verdict(capsys):
    code, out, _ = run(capsys, "classify", FIXTURE_DIR / "w3.json")
    assert code == 0
    assert out.strip() == "genuinely-entangled"


def test_locc_incomparable_table(capsys):
    code, out, _ = run(
        capsys, "locc", FIXTURE_DIR / "spec_a.json", FIXTURE_DIR / "spec_b.json"
    )
    assert code == 0
    assert "verdict incomparable" in out
    assert "1 0.29 0.2925 no" in out
    assert "2 0.2025 0.2008125 yes" in out


def test_locc_equivalent(capsys):
    code, out, _ = run(
        capsys, "locc", FIXTURE_DIR / "spec_a.json", FIXTURE_DIR / "spec_a.json"
    )
    assert code == 0
    assert "verdict equivalent" in out


def test_locc_forward_only(capsys, tmp_path):
    x = tmp_path / "x.json"
    y = tmp_path / "y.json"
    x.write_text(json.dumps([0.5, 0.5]))
    y.write_text(json.dumps([1.0, 0.0]))
    code, out, _ = run(capsys, "locc", x, y)
    assert code == 0
    assert "verdict forward" in out


def test_roof_on_pure_bell(capsys):
    code, out, _ = run(
        capsys, "roof", FIXTURE_DIR / "bell.json", "--cut", "0", "--restarts", "2"
    )
    assert code == 0
    assert "value 0.25" in out
    assert "ensemble-size 1" in out


def test_swaptest_report(capsys):
    code, out, _ = run(
        capsys, "swaptest", RANK4, "--cut", "0", "--shots", "4000", "--seed", "5"
    )
    assert code == 0
    assert "r 3" in out
    assert "simulated 0.721825" in out
    assert "closed-form 0.721825" in out
    assert "icem-binomial 0.720575" in out
    assert "|simulated-binomial| 0.00125" in out
    assert "shots 4000" in out
    assert "stderr" in out


def test_figure1_csv(capsys, tmp_path):
    out_path = tmp_path / "f1.csv"
    code, _, _ = run(capsys, "figure1", "--samples", "64", "--output", out_path)
    assert code == 0
    rows = list(csv.reader(out_path.open()))
    assert rows[0] == ["beta1", "beta2"]
    assert len(rows) == 65
    for b1s, b2s in rows[1:]:
        b1, b2 = float(b1s), float(b2s)
        q = b1 * b1 + b2 * b2 + (1 - b1 - b2) ** 2
        assert abs(q - 7.0 / 18.0) < 1e-8  # limited by the 9-digit print format


def test_figure1_contains_special_points(capsys, tmp_path):
    out_path = tmp_path / "f1.csv"
    code, _, _ = run(capsys, "figure1", "--samples", "360", "--output", out_path)
    assert code == 0
    pts = [
        (float(a), float(b)) for a, b in list(csv.reader(out_path.open()))[1:]
    ]
    b2_special = (9.0 + math.sqrt(13.0)) / 24.0
    for target in [(0.5, 1.0 / 3.0), (0.25, b2_special)]:
        best = min(math.hypot(a - target[0], b - target[1]) for a, b in pts)
        assert best < 0.01  # the dense grid passes right through both points


def test_figure1_deterministic(capsys, tmp_path):
    a_path = tmp_path / "a.csv"
    b_path = tmp_path / "b.csv"
    run(capsys, "figure1", "--samples", "50", "--output", a_path)
    run(capsys, "figure1", "--samples", "50", "--output", b_path)
    assert a_path.read_bytes() == b_path.read_bytes()


def test_figure2_csv_and_equality_points(capsys, tmp_path):
    out_path = tmp_path / "f2.csv"
    code, _, err = run(capsys, "figure2", "--samples", "360", "--output", out_path)
    assert code == 0
    rows = list(csv.reader(out_path.open()))
    assert rows[0] == ["t", "icem_phi2", "icem_phi1", "equal_flag"]
    assert len(rows) == 361
    ref_col = {row[2] for row in rows[1:]}
    assert ref_col == {"0.513888889"}
    flagged = [row for row in rows[1:] if row[3] == "1"]
    assert len(flagged) == 6  # the 360-grid hits every permutation point exactly
    equality_lines = [l for l in err.splitlines() if l.startswith("equality")]
    assert len(equality_lines) == 6


def test_figure2_stdout_mode(capsys):
    code, out, err = run(capsys, "figure2", "--samples", "36")
    assert code == 0
    assert out.splitlines()[0] == "t,icem_phi2,icem_phi1,equal_flag"
    assert len(out.splitlines()) == 37


def test_plot_files_render(capsys, tmp_path):
    png1 = tmp_path / "f1.png"
    png2 = tmp_path / "f2.png"
    run(capsys, "figure1", "--samples", "36", "--output", tmp_path / "a.csv",
        "--plot", png1)
    run(capsys, "figure2", "--samples", "36", "--output", tmp_path / "b.csv",
        "--plot", png2)
    assert png1.stat().st_size > 1000
    assert png2.stat().st_size > 1000
    assert png1.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_state_file_roundtrip_bit_exact(tmp_path):
    state = random_pure_state((2, 3, 2), seed=99)
    path = tmp_path / "state.json"
    write_state_file(path, state)
    back = read_state_file(path)
    assert isinstance(back, PureState)
    assert back.dims == state.dims
    assert np.array_equal(back.amplitudes, state.amplitudes)
    write_state_file(tmp_path / "again.json", back)
    assert (tmp_path / "again.json").read_text() == path.read_text()


def test_density_file_roundtrip(tmp_path):
    from icem import DensityMatrix, partial_trace

    state = random_pure_state((2, 2, 2), seed=5)
    rho = partial_trace(state, (0, 1))
    path = tmp_path / "rho.json"
    write_state_file(path, DensityMatrix(rho.matrix, rho.dims))
    back = read_state_file(path)
    assert isinstance(back, DensityMatrix)
    assert np.array_equal(back.matrix, rho.matrix)


def test_unknown_kind_exits_2(capsys, tmp_path):
    bad = tmp_path / "kind.json"
    bad.write_text(json.dumps({"dims": [2], "kind": "stabilizer"}))
    code, _, err = run(capsys, "measure", bad, "--cut", "0")
    assert code == 2
    assert "stabilizer" in err


def test_locc_bad_spectrum_file_exits_2(capsys, tmp_path):
    bad = tmp_path / "spec.json"
    bad.write_text(json.dumps({"values": "not-a-list"}))
    code, _, err = run(capsys, "locc", bad, bad)
    assert code == 2
    assert "values" in err


def test_console_script_is_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "icem.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    for name in ["measure", "multipartite", "locc", "roof", "swaptest",
                 "figure1", "figure2", "classify"]:
        assert name in proc.stdout
