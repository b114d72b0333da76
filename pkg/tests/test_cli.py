import pytest

from fracmatch.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSampleSolve:
    def test_round_trip(self, tmp_path, capsys):
        path = tmp_path / "h.txt"
        code, _, _ = run_cli(capsys, "sample", "--n", "9", "--r", "3",
                             "--k", "2", "--seed", "5", "--out", str(path))
        assert code == 0
        text = path.read_text()
        assert text.splitlines()[0] == "3 9"
        assert "# seed = 5" in text

        code, out, _ = run_cli(capsys, "solve", str(path))
        assert code == 0
        assert out.startswith("nu_star ")
        assert "tau_star" in out
        assert "# perfect = " in out

    def test_solve_float_mode(self, tmp_path, capsys):
        path = tmp_path / "h.txt"
        path.write_text("2 3\n0 1\n1 2\n")
        code, out, _ = run_cli(capsys, "solve", str(path), "--mode", "float")
        assert code == 0
        assert out.splitlines()[0] == "nu_star 1.0"

    def test_sample_to_stdout(self, capsys):
        code, out, _ = run_cli(capsys, "sample", "--n", "6", "--r", "2",
                               "--k", "1", "--seed", "0")
        assert code == 0
        assert out.splitlines()[0] == "2 6"

    def test_partite_sample(self, tmp_path, capsys):
        path = tmp_path / "p.txt"
        code, _, _ = run_cli(capsys, "sample", "--host", "partite", "--n", "3",
                             "--r", "2", "--k", "1", "--seed", "1",
                             "--out", str(path))
        assert code == 0
        assert path.read_text().splitlines()[0] == "2 6 partite 3"


class TestExpandCheck:
    def test_single_edge_strict(self, tmp_path, capsys):
        path = tmp_path / "h.txt"
        path.write_text("3 3\n0 1 2\n")
        code, out, _ = run_cli(capsys, "expand-check", str(path), "--strict")
        assert code == 0
        lines = out.splitlines()
        assert "fails" in lines[0]
        assert "verdict=false" in lines
        assert "witness_x=0" in lines
        assert "witness_y=1" in lines
        assert "exhaustive=true" in lines

    def test_partite_check(self, tmp_path, capsys):
        path = tmp_path / "h.txt"
        path.write_text("2 4 partite 2\n0 2\n0 3\n1 2\n1 3\n")
        code, out, _ = run_cli(capsys, "expand-check", str(path),
                               "--epsilon", "2/5", "--lambda", "1")
        assert code == 0
        assert "verdict=true" in out.splitlines()

    def test_holding_verdict(self, tmp_path, capsys):
        path = tmp_path / "h.txt"
        path.write_text("2 3\n0 1\n0 2\n1 2\n")
        code, out, _ = run_cli(capsys, "expand-check", str(path))
        assert code == 0
        assert "verdict=true" in out.splitlines()
        assert "witness_x" not in out


class TestProcess:
    def test_writes_trace_with_marks(self, tmp_path, capsys):
        path = tmp_path / "t.txt"
        code, _, _ = run_cli(capsys, "process", "--n", "12", "--r", "3",
                             "--seed", "2", "--out", str(path))
        assert code == 0
        text = path.read_text()
        assert "# T = " in text
        assert "# xi 0 " in text

    def test_fixed_steps(self, capsys):
        code, out, _ = run_cli(capsys, "process", "--n", "10", "--r", "2",
                               "--seed", "1", "--steps", "3")
        assert code == 0
        assert len([l for l in out.splitlines()
                    if l and not l.startswith("#")]) == 4  # header + 3 edges


class TestExperimentCommand:
    def test_csv_to_stdout(self, capsys):
        code, out, _ = run_cli(capsys, "experiment", "kout-pfm", "--n", "9",
                               "--r", "3", "--k", "1", "--trials", "2",
                               "--seed", "0")
        assert code == 0
        assert out.splitlines()[0].startswith("trial,seed,")

    def test_k_range_and_outfile(self, tmp_path, capsys):
        out_path = tmp_path / "e.csv"
        code, out, _ = run_cli(capsys, "experiment", "kout-pfm", "--n", "9",
                               "--r", "3", "--k-range", "1..2", "--trials",
                               "2", "--seed", "0", "--out", str(out_path))
        assert code == 0
        assert "pfm_frequency_k=1" in out
        assert out_path.exists()


class TestExitCodes:
    def test_input_error_is_2(self, capsys):
        code, _, err = run_cli(capsys, "sample", "--n", "2", "--r", "3",
                               "--k", "1")
        assert code == 2
        assert "error:" in err

    def test_bad_file_is_2(self, capsys):
        code, _, _ = run_cli(capsys, "solve", "/nonexistent/file.txt")
        assert code == 2

    def test_argparse_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["experiment", "kout-pfm", "--n", "9", "--r", "3",
                  "--k-range", "bogus"])
        assert exc.value.code == 2
