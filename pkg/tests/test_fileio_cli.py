"""File formats, manifests, determinism, and CLI exit codes."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

import xstates as xs
from xstates import fileio
from xstates.cli import main


def run_cli(*args):
    return main(list(args))


class TestStateFiles:
    def test_round_trip(self, tmp_path):
        x = xs.validate(0.4, 0.3, 0.2, 0.1, z=0.1 + 0.05j, w=0.12 - 0.03j)
        path = tmp_path / "state.json"
        fileio.save_state(str(path), x)
        y = fileio.load_state(str(path))
        assert y == x  # 17 significant digits round-trip exactly

    def test_matrix_form_accepted(self, tmp_path):
        x = xs.werner(0.5)
        m = x.to_matrix()
        obj = {"matrix": [[[v.real, v.imag] for v in row] for row in m]}
        path = tmp_path / "matrix.json"
        path.write_text(json.dumps(obj))
        y = fileio.load_state(str(path))
        assert y.a == pytest.approx(x.a, abs=1e-15)
        assert complex(y.w) == pytest.approx(complex(x.w), abs=1e-15)

    def test_corpus_round_trip(self, tmp_path):
        states = [xs.random_xstate(3, i) for i in range(20)]
        path = tmp_path / "corpus.jsonl"
        fileio.save_corpus(str(path), states)
        assert fileio.load_corpus(str(path)) == states

    def test_seventeen_digit_floats(self):
        text = fileio.dumps({"x": 1.0 / 3.0})
        assert json.loads(text)["x"] == 1.0 / 3.0
        assert "0.33333333333333331" in text


class TestOperatorParsing:
    def test_pauli_string(self):
        m = fileio.operator_from_obj("ZI")
        assert np.abs(m - np.kron(np.diag([1.0, -1.0]), np.eye(2))).max() == 0.0

    def test_pauli_combination(self):
        m = fileio.operator_from_obj({"ZZ": 1.0, "XX": 0.5})
        expected = xs.pauli_string_matrix("ZZ") + 0.5 * xs.pauli_string_matrix("XX")
        assert np.abs(m - expected).max() == 0.0

    def test_nested_matrix(self):
        obj = [[[1, 0], [0, 0], [0, 0], [0, 0]],
               [[0, 0], [1, 0], [0, 0], [0, 0]],
               [[0, 0], [0, 0], [1, 0], [0, 0]],
               [[0, 0], [0, 0], [0, 0], [1, 0]]]
        assert np.abs(fileio.operator_from_obj(obj) - np.eye(4)).max() == 0.0

    def test_bad_string_rejected(self):
        with pytest.raises(ValueError):
            fileio.operator_from_obj("QQ")


class TestMeasuresCommand:
    def test_report_file_and_manifest(self, tmp_path):
        state = tmp_path / "w.json"
        fileio.save_state(str(state), xs.werner(0.5))
        out = tmp_path / "report.json"
        rc = run_cli("measures", "--in", str(state), "--out", str(out))
        assert rc == 0
        rep = json.loads(out.read_text())
        assert rep["concurrence"] == pytest.approx(0.25)
        assert rep["schmidt_number"] == 4
        manifest = json.loads((tmp_path / "report.json.manifest.json").read_text())
        assert manifest["subcommand"] == "measures"
        assert manifest["status"] == "ok"

    def test_csv_format(self, tmp_path):
        state = tmp_path / "w.json"
        fileio.save_state(str(state), xs.bell(0))
        out = tmp_path / "report.csv"
        assert run_cli("measures", "--in", str(state), "--out", str(out), "--format", "csv") == 0
        header, row = out.read_text().strip().split("\n")
        assert header.split(",")[0] == "concurrence"
        assert float(row.split(",")[0]) == 1.0

    def test_csv_leaves_missing_mmm_empty(self, tmp_path):
        state = tmp_path / "generic.json"
        fileio.save_state(str(state), xs.validate(0.4, 0.3, 0.2, 0.1, z=0.1))
        out = tmp_path / "report.csv"
        assert run_cli("measures", "--in", str(state), "--out", str(out), "--format", "csv") == 0
        header, row = out.read_text().strip().split("\n")
        cells = dict(zip(header.split(","), row.split(",")))
        assert cells["mmm_discord"] == ""
        assert cells["side"] == "B"

    def test_side_flag_switches_measured_subsystem(self, tmp_path):
        x = xs.validate(0.4, 0.3, 0.2, 0.1, z=0.1, w=0.05)
        state = tmp_path / "s.json"
        fileio.save_state(str(state), x)
        out = tmp_path / "report.json"
        assert run_cli("measures", "--in", str(state), "--out", str(out), "--side", "A") == 0
        rep = json.loads(out.read_text())
        assert rep["side"] == "A"
        assert rep["approx_discord"] == pytest.approx(xs.approx_discord(x, side="A").q)
        assert rep["approx_discord"] != pytest.approx(xs.approx_discord(x, side="B").q)

    def test_invalid_state_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"a": 0.25, "b": 0.25, "c": 0.25, "d": 0.25,
                                   "z": {"re": 0.3, "im": 0.0}}))
        assert run_cli("measures", "--in", str(bad)) == 2
        assert "positivity bound" in capsys.readouterr().err

    def test_unparseable_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        proc = subprocess.run(
            [sys.executable, "-m", "xstates.cli", "measures", "--in", str(bad)],
            capture_output=True,
        )
        assert proc.returncode == 2


class TestGenCommand:
    def test_deterministic_output_bytes(self, tmp_path):
        out1 = tmp_path / "c1.jsonl"
        out2 = tmp_path / "c2.jsonl"
        assert run_cli("gen", "--n", "50", "--seed", "7", "--out", str(out1)) == 0
        assert run_cli("gen", "--n", "50", "--seed", "7", "--out", str(out2)) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_all_valid_and_manifest_fraction(self, tmp_path):
        out = tmp_path / "c.jsonl"
        assert run_cli("gen", "--n", "100", "--seed", "1", "--out", str(out)) == 0
        states = fileio.load_corpus(str(out))
        assert len(states) == 100
        manifest = json.loads((tmp_path / "c.jsonl.manifest.json").read_text())
        measured = sum(1 for s in states if xs.concurrence(s) > 0) / 100
        assert manifest["frac_entangled"] == pytest.approx(measured)


class TestValidateApproxCommand:
    def test_small_campaign(self, tmp_path):
        out = tmp_path / "stats.json"
        assert run_cli("validate-approx", "--n", "100", "--seed", "1",
                       "--grid", "48", "--out", str(out)) == 0
        stats = json.loads(out.read_text())
        assert stats["n"] == 100
        assert stats["max_err"] < 1e-3
        rerun = tmp_path / "stats2.json"
        assert run_cli("validate-approx", "--n", "100", "--seed", "1",
                       "--grid", "48", "--out", str(rerun)) == 0
        assert out.read_bytes() == rerun.read_bytes()


class TestEvolveCommand:
    def write_config(self, tmp_path, **overrides):
        cfg = {
            "initial_state": {"a": 0.5, "b": 0.0, "c": 0.0, "d": 0.5,
                              "w": {"re": 0.5, "im": 0.0}},
            "operators": ["ZI"],
            "rates": [1.0],
            "dt": 1e-3,
            "t_max": 0.1,
            "sample_every": 10,
            "measures": ["concurrence"],
        }
        cfg.update(overrides)
        path = tmp_path / "config.json"
        path.write_text(json.dumps(cfg))
        return path

    def test_dephasing_trajectory(self, tmp_path):
        cfg = self.write_config(tmp_path)
        out = tmp_path / "traj.csv"
        assert run_cli("evolve", "--in", str(cfg), "--out", str(out)) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "time,a,b,c,d,z_re,z_im,w_re,w_im,concurrence"
        for line in lines[1:]:
            vals = [float(v) for v in line.split(",")]
            t, w_re, conc = vals[0], vals[7], vals[9]
            assert w_re == pytest.approx(0.5 * math.exp(-4.0 * t), abs=1e-8)
            assert conc == pytest.approx(math.exp(-4.0 * t), abs=1e-8)
        manifest = json.loads((tmp_path / "traj.csv.manifest.json").read_text())
        assert manifest["esd_time"] is None
        assert manifest["max_leakage"] <= 1e-10

    def test_zero_rate_constant_columns(self, tmp_path):
        cfg = self.write_config(tmp_path, rates=[0.0])
        out = tmp_path / "traj.csv"
        assert run_cli("evolve", "--in", str(cfg), "--out", str(out)) == 0
        rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
        w_values = {row[7] for row in rows}
        assert len(w_values) == 1

    def test_esd_reported_in_manifest(self, tmp_path):
        def as_obj(m):
            return [[[v.real, v.imag] for v in row] for row in m]

        sm = np.array([[0, 1], [0, 0]], dtype=complex)
        cfg = self.write_config(
            tmp_path,
            initial_state={"a": 0.475, "b": 0.025, "c": 0.025, "d": 0.475,
                           "w": {"re": 0.45, "im": 0.0}},
            operators=[as_obj(np.kron(sm, np.eye(2))), as_obj(np.kron(np.eye(2), sm))],
            rates=[1.0, 1.0],
            t_max=2.0,
            sample_every=100,
        )
        out = tmp_path / "esd.csv"
        assert run_cli("evolve", "--in", str(cfg), "--out", str(out)) == 0
        manifest = json.loads((tmp_path / "esd.csv.manifest.json").read_text())
        t_exact = -math.log(1.0 - (0.45 - 0.025) / 0.475) / 2.0
        assert manifest["esd_time"] == pytest.approx(t_exact, abs=1e-4)

    def test_cross_grade_config_exits_4(self, tmp_path):
        cfg = self.write_config(
            tmp_path,
            operators=["ZI", "XI"],
            h=[[1.0, 0.5], [0.5, 1.0]],
        )
        cfg_obj = json.loads(cfg.read_text())
        del cfg_obj["rates"]
        cfg.write_text(json.dumps(cfg_obj))
        out = tmp_path / "traj.csv"
        assert run_cli("evolve", "--in", str(cfg), "--out", str(out)) == 4
        assert not out.exists()
        manifest = json.loads((tmp_path / "traj.csv.manifest.json").read_text())
        assert manifest["status"] == "error"


class TestCheckCommand:
    def test_damping_kraus_preserving(self, tmp_path):
        g = 0.3
        k0 = np.kron(np.diag([1.0, math.sqrt(1 - g)]), np.eye(2))
        k1 = np.kron(math.sqrt(g) * np.array([[0, 1], [0, 0]]), np.eye(2))
        obj = {"kraus": [[[[v.real, v.imag] for v in row] for row in k] for k in (k0, k1)]}
        path = tmp_path / "ad.json"
        path.write_text(json.dumps(obj))
        assert run_cli("check", "--in", str(path)) == 0

    def test_hadamard_channel_not_preserving(self, tmp_path):
        h2 = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
        k = np.kron(h2, np.eye(2))
        obj = {"kraus": [[[[v, 0.0] for v in row] for row in k]]}
        path = tmp_path / "had.json"
        path.write_text(json.dumps(obj))
        assert run_cli("check", "--in", str(path)) == 1

    def test_incomplete_kraus_exits_2(self, tmp_path):
        obj = {"kraus": [[[[0.5, 0], [0, 0], [0, 0], [0, 0]],
                          [[0, 0], [0.5, 0], [0, 0], [0, 0]],
                          [[0, 0], [0, 0], [0.5, 0], [0, 0]],
                          [[0, 0], [0, 0], [0, 0], [0.5, 0]]]]}
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(obj))
        assert run_cli("check", "--in", str(path)) == 2

    def test_lindblad_config(self, tmp_path):
        obj = {"lindblad": {"operators": ["ZI"], "rates": [0.5]}}
        path = tmp_path / "lb.json"
        path.write_text(json.dumps(obj))
        assert run_cli("check", "--in", str(path)) == 0
