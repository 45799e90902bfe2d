import json

import pytest

from nlosc.cli import run


@pytest.fixture
def capture(capsys):
    def invoke(argv):
        code = run(argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


REPRESENTATIVE = [
    ["spectrum", "--lambda", "-1", "--L", "0", "--n-max", "3"],
    ["states", "--lambda", "-1", "--L", "0", "--n", "1", "--grid", "0.1:0.9:8"],
    ["gram", "--lambda", "0.1", "--L", "0", "--n-max", "10", "--format", "json"],
    ["veff", "--lambda", "0.5", "--L", "1", "--grid", "0.5:2:5"],
    ["classical", "--mode", "planar", "--lambda", "1", "--t-end", "2", "--samples", "5"],
]


class TestSpectrumCommand:
    def test_csv_values(self, capture):
        code, out, _ = capture(["spectrum", "--lambda", "-1", "--L", "0", "--n-max", "3"])
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "n,L,Lambda,e,admissible"
        assert len(lines) == 5
        energies = [float(line.split(",")[3]) for line in lines[1:]]
        assert energies == [1.5, 7.5, 17.5, 31.5]
        assert all(line.endswith("true") for line in lines[1:])

    def test_no_bound_states_exit_1(self, capture):
        code, out, err = capture(["spectrum", "--lambda", "1", "--L", "0", "--n-max", "3"])
        assert code == 1
        assert out == ""
        assert "no bound states" in err
        assert err.count("\n") == 1  # one-line diagnostic

    def test_admissible_flag_column(self, capture):
        code, out, _ = capture(["spectrum", "--lambda", "0.1", "--L", "0", "--n-max", "6"])
        assert code == 0
        flags = [line.split(",")[4] for line in out.strip().split("\n")[1:]]
        assert flags == ["true"] * 5 + ["false"] * 2


class TestStatesCommand:
    def test_schema_and_endpoint(self, capture):
        # the grid stops short of the finite endpoint, where the weight is singular
        code, out, _ = capture(
            ["states", "--lambda", "-1", "--L", "0", "--n", "0", "--grid", "0.5:0.99:3"]
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "y,R,weight"
        assert len(lines) == 4

    def test_ho_branch_for_tiny_lambda(self, capture):
        code, out, _ = capture(
            ["states", "--lambda", "0", "--L", "0", "--n", "0", "--grid", "0.5:1.0:3"]
        )
        assert code == 0
        assert out.startswith("y,R,weight")


class TestGramCommand:
    def test_truncation_and_json_shape(self, capture):
        code, out, _ = capture(["gram", "--lambda", "0.1", "--L", "0", "--n-max", "10", "--format", "json"])
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "gram"
        assert doc["params"]["size"] == 5
        assert len(doc["data"]) == 25
        for cell in doc["data"]:
            target = 1.0 if cell["i"] == cell["j"] else 0.0
            assert abs(cell["value"] - target) < 1e-8


class TestOtherCommands:
    def test_shoot(self, capture):
        code, out, _ = capture(["shoot", "--lambda", "-0.5", "--L", "0", "--n", "0"])
        assert code == 0
        header, row = out.strip().split("\n")
        fields = dict(zip(header.split(","), row.split(",")))
        assert abs(float(fields["abs_diff"])) < 1e-6

    def test_limit(self, capture):
        code, out, _ = capture(["limit", "--lambda", "0.001", "--L", "0", "--n", "0"])
        assert code == 0
        assert float(out.strip().split("\n")[1].split(",")[3]) < 5e-3

    def test_classical_1d(self, capture):
        code, out, _ = capture(
            ["classical", "--mode", "1d", "--lambda", "1", "--x0", "0.5", "--t-end", "1", "--samples", "4"]
        )
        assert code == 0
        assert out.startswith("t,x,v,H")

    def test_classical_error_exit_1(self, capture):
        code, _, err = capture(
            [
                "classical", "--mode", "1d", "--lambda", "-1", "--x0", "0.999",
                "--v0", "2", "--t-end", "10", "--tol", "1e-3",
            ]
        )
        assert code == 1
        assert "error:" in err

    def test_veff(self, capture):
        code, out, _ = capture(["veff", "--lambda", "1", "--L", "1", "--grid", "1:2:2"])
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "r,V_eff"
        assert float(lines[1].split(",")[1]) == pytest.approx(2.25, rel=1e-14)


class TestUsageErrors:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as exc:
            run(["frobnicate"])
        assert exc.value.code == 2

    def test_missing_required_flag(self):
        with pytest.raises(SystemExit) as exc:
            run(["spectrum", "--L", "0", "--n-max", "3"])
        assert exc.value.code == 2

    def test_bad_grid(self):
        with pytest.raises(SystemExit) as exc:
            run(["states", "--lambda", "-1", "--n", "0", "--grid", "1:2"])
        assert exc.value.code == 2


class TestDeterminismAndOutput:
    @pytest.mark.parametrize("argv", REPRESENTATIVE, ids=[a[0] for a in REPRESENTATIVE])
    def test_byte_identical_runs(self, capture, argv):
        code1, out1, _ = capture(argv)
        code2, out2, _ = capture(argv)
        assert code1 == code2 == 0
        assert out1 == out2
        assert len(out1) > 0

    def test_out_file(self, capture, tmp_path):
        target = tmp_path / "spec.csv"
        code, out, _ = capture(
            ["spectrum", "--lambda", "-1", "--L", "0", "--n-max", "1", "--out", str(target)]
        )
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("n,L,Lambda,e,admissible")
