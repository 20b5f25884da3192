import json

import numpy as np
import pytest

from mqca.cli import main
from mqca.gates import build_tau, parse_tau_dump


def write_json(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")


@pytest.fixture
def small_program(tmp_path):
    path = tmp_path / "prog.json"
    write_json(path, {"s": 1, "r": 2, "columns": ["10", "01"]})
    return path


class TestCompileCommand:
    def test_empty_circuit(self, tmp_path, capsys):
        circ = tmp_path / "c.json"
        out = tmp_path / "p.json"
        write_json(circ, {"rows": 2, "gates": []})
        assert main(["compile", str(circ), "--out", str(out)]) == 0
        prog = json.loads(out.read_text())
        assert prog["r"] == 20
        assert all(c == "00" for c in prog["columns"])

    def test_t_gate_column(self, tmp_path):
        circ = tmp_path / "c.json"
        out = tmp_path / "p.json"
        write_json(circ, {"rows": 2, "gates": [{"g": "T", "q": 0}]})
        assert main(["compile", str(circ), "--out", str(out)]) == 0
        prog = json.loads(out.read_text())
        assert prog["columns"][0] == "10"

    def test_parse_error_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        assert main(["compile", str(bad)]) == 2

    def test_non_adjacent_cz_exit_3(self, tmp_path):
        circ = tmp_path / "c.json"
        write_json(circ, {"rows": 4, "gates": [{"g": "CZ", "a": 0, "b": 2}]})
        assert main(["compile", str(circ)]) == 3


class TestRunCommand:
    def test_identity_like_program(self, small_program, tmp_path):
        out = tmp_path / "out.json"
        assert main(["run", str(small_program), "--out", str(out)]) == 0
        result = json.loads(out.read_text())
        amps = np.array([complex(re, im) for re, im in result["amplitudes"]])
        assert abs(np.linalg.norm(amps) - 1) < 1e-10
        assert result["metadata"]["t"] == 2

    def test_backends_agree(self, small_program, tmp_path):
        out_f = tmp_path / "f.json"
        out_d = tmp_path / "d.json"
        assert main(["run", str(small_program), "--backend", "factored",
                     "--out", str(out_f)]) == 0
        assert main(["run", str(small_program), "--backend", "dense",
                     "--out", str(out_d)]) == 0
        a = np.array([complex(re, im) for re, im in
                      json.loads(out_f.read_text())["amplitudes"]])
        b = np.array([complex(re, im) for re, im in
                      json.loads(out_d.read_text())["amplitudes"]])
        assert abs(np.vdot(a, b)) >= 1 - 1e-10

    def test_sampling_deterministic(self, small_program, tmp_path):
        outs = []
        for name in ("s1.json", "s2.json"):
            out = tmp_path / name
            assert main(["run", str(small_program), "--backend", "dense",
                         "--samples", "50", "--seed", "7",
                         "--out", str(out)]) == 0
            outs.append(json.loads(out.read_text())["samples"])
        assert outs[0] == outs[1]

    def test_factored_planar_exit_3(self, small_program):
        assert main(["run", str(small_program), "--backend", "factored",
                     "--topology", "planar"]) == 3

    def test_memory_guard_exit_4(self, tmp_path):
        prog = tmp_path / "big.json"
        write_json(prog, {"s": 2, "r": 4, "columns": ["0000"] * 4})
        assert main(["run", str(prog), "--backend", "dense"]) == 4


class TestVerifyCommand:
    def test_stock_program_passes(self, small_program, tmp_path):
        out = tmp_path / "rep.json"
        assert main(["verify", str(small_program), "--out", str(out)]) == 0
        reports = json.loads(out.read_text())
        assert {r["check"] for r in reports} == {
            "occupancy", "cross-backend", "torus-schmidt-rank",
            "planar-wavefront"}
        assert all(r["pass"] for r in reports)

    def test_planar_small_case_passes(self, tmp_path):
        prog = tmp_path / "p.json"
        write_json(prog, {"s": 1, "r": 3,
                          "columns": ["11", "01", "10"]})
        out = tmp_path / "rep.json"
        assert main(["verify", str(prog), "--out", str(out)]) == 0


class TestTauCommand:
    def test_dump_parses_to_unitary(self, capsys):
        assert main(["tau"]) == 0
        text = capsys.readouterr().out
        m = parse_tau_dump(text)
        assert m.shape == (16, 16)
        assert np.max(np.abs(m.conj().T @ m - np.eye(16))) <= 1e-12
        assert np.allclose(m, build_tau(), atol=1e-15)

    def test_dump_byte_identical(self, capsys):
        main(["tau"])
        first = capsys.readouterr().out
        main(["tau"])
        assert capsys.readouterr().out == first
