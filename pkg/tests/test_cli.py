import shlex
import subprocess
import sys

import numpy as np
import pytest

from antizeno.cli import CsvDocument, main, read_csv


def run(tmp_path, *args, name="out.csv"):
    path = tmp_path / name
    code = main(list(args) + ["--out", str(path)])
    return code, path


def test_spectrum(tmp_path):
    code, path = run(tmp_path, "spectrum", "--omega-min", "0.79", "--omega-max", "1.21",
                     "--omega-points", "43")
    assert code == 0
    cols, data, footer = read_csv(path)
    assert cols == ["omega (freq)", "G_bare (freq)", "G_physical (freq)"]
    assert data.shape == (43, 3)
    centre = data[np.isclose(data[:, 0], 1.0)][0]
    assert centre[1] == pytest.approx(0.0159155, abs=1e-7)
    assert centre[2] == pytest.approx(centre[1] * 16 / 9, rel=1e-11)
    assert data[0, 1] == 0 and data[-1, 1] == 0
    assert footer["scenario"] == "spectrum"
    assert footer["version"].startswith("antizeno ")


def test_spectrum_edge_point_nudged(tmp_path, caplog):
    code, path = run(tmp_path, "spectrum", "--omega-min", "0.8", "--omega-max", "1.2",
                     "--omega-points", "5")
    assert code == 0
    _, data, _ = read_csv(path)
    assert np.all(np.isfinite(data))
    assert data[0, 0] > 0.8 and data[-1, 0] < 1.2
    assert "band edge" in caplog.text


def test_zeno_scan(tmp_path):
    code, path = run(tmp_path, "zeno-scan", "--tau-points", "12", "--n-measurements", "3")
    assert code == 0
    cols, data, footer = read_csv(path)
    assert len(cols) == 7 and cols[-1] == "P_physical (1)"
    assert data.shape == (12, 7)
    assert data[0, 0] == pytest.approx(0.5) and data[-1, 0] == pytest.approx(100.0)
    assert np.all(data[:, 1:3] > 0)
    np.testing.assert_allclose(data[:, 5], np.exp(-data[:, 1] * 3 * data[:, 0]), rtol=1e-10)
    assert np.all(data[:, 3] == 0)  # Omega = 2 lies outside the band


def test_zeno_scan_linear_grid(tmp_path):
    code, path = run(tmp_path, "zeno-scan", "--no-log", "--tau-min", "1", "--tau-max", "4",
                     "--tau-points", "4")
    assert code == 0
    np.testing.assert_allclose(read_csv(path)[1][:, 0], [1, 2, 3, 4])


def test_exact_default_writes_three_files(tmp_path):
    code, path = run(tmp_path, "exact", "--t-points", "101", name="edge.csv")
    assert code == 0
    for Om in ("1.198", "1.2", "1.203"):
        cols, data, footer = read_csv(tmp_path / f"edge_Omega{Om}.csv")
        assert cols == ["t (1/freq)", "survival (1)", "rate (freq)"]
        assert data[0, 1] == pytest.approx(1.0, abs=1e-8)
        assert "A1=" in footer["poles"]


def test_exact_bare_state_shifts_level(tmp_path):
    code, path = run(tmp_path, "exact", "--Omega", "2", "--state", "bare", "--t-points", "11")
    assert code == 0
    assert "Omega_eff=2.00334" in read_csv(path)[2]["params"]
    code, _ = run(tmp_path, "exact", "--Omega", "2", "--state", "physical", name="p.csv")
    assert code == 2
    assert not (tmp_path / "p.csv").exists()


def test_oracle_check_default_passes(tmp_path, capsys):
    code, path = run(tmp_path, "oracle-check")
    assert code == 0
    assert "PASS" in capsys.readouterr().err
    cols, data, footer = read_csv(path)
    assert data.shape == (2001, 4)
    assert data[:, 3].max() < 1e-6


def test_oracle_check_small_ring_refused(tmp_path):
    code, path = run(tmp_path, "oracle-check", "--N", "64")
    assert code == 2
    assert not path.exists()


def test_oracle_check_failure_exit(tmp_path):
    code, path = run(tmp_path, "oracle-check", "--N", "16", "--t-max", "20", "--t-points", "201",
                     "--tol", "1e-12")
    assert code == 4
    assert "FAIL" in read_csv(path)[2]["result"]


def test_device(tmp_path):
    code, path = run(tmp_path, "device", "--EJ", "5", "--ng", "0.5", "--Ec", "1")
    assert code == 0
    cols, data, footer = read_csv(path)
    assert data[0, 2] == pytest.approx(10.0)
    assert data[0, 5] == 1 and data[0, 6] == 1
    code, _ = run(tmp_path, "device", "--EJ", "0.5", "--ng", "0.5", "--flux-ratio", "0.5",
                  "--Ec", "1", name="deg.csv")
    assert code == 2


@pytest.mark.parametrize("args", [
    ["spectrum", "--omega-points", "0"],
    ["zeno-scan", "--tau-min", "0"],
    ["zeno-scan", "--tau-points", "0"],
    ["spectrum", "--zeta", "-1"],
    ["exact", "--g", "-0.1"],
    ["spectrum", "--bogus"],
])
def test_invalid_input_writes_nothing(tmp_path, args):
    code, path = run(tmp_path, *args)
    assert code == 2
    assert not path.exists()


def test_unwritable_destination(tmp_path):
    assert main(["spectrum", "--out", str(tmp_path / "missing" / "x.csv")]) == 2


def test_footer_reproduces_output(tmp_path):
    code, path = run(tmp_path, "zeno-scan", "--tau-points", "7", "--g", "0.05")
    first = path.read_text()
    args = shlex.split(read_csv(path)[2]["args"])
    i = args.index("--out")
    args[i + 1] = str(tmp_path / "again.csv")
    assert main(args) == 0
    def body(text):
        return [ln for ln in text.splitlines() if not ln.startswith("# args:")]

    assert body((tmp_path / "again.csv").read_text()) == body(first)


def test_rows_use_twelve_significant_digits():
    text = CsvDocument(["a"], [[1 / 3], [-0.0], [True]]).render()
    assert text.splitlines()[1:] == ["0.333333333333", "0", "1"]
    with pytest.raises(ValueError):
        CsvDocument(["a", "b"], [[1.0]]).render()


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "antizeno", "device", "--EJ", "3", "--ng", "0.5",
                          "--Ec", "1"], capture_output=True, text=True, check=True)
    assert out.stdout.startswith("Bx (energy)")
