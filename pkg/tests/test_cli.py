import json

import pytest

from densym.cli import main, parse_rational


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_accepts_integers_and_fractions(self):
        assert str(parse_rational("-3/7")) == "-3/7"
        assert parse_rational("4") == 4

    def test_rejects_decimals(self):
        with pytest.raises(ValueError):
            parse_rational("0.5")
        with pytest.raises(ValueError):
            parse_rational("1e-3")


class TestClassify:
    def test_spec_example_t2(self, capsys):
        code, out, _ = run(capsys, "classify", "-k", "3",
                           "--lambda", "-1/2", "--mu", "3/2")
        assert code == 0
        data = json.loads(out)
        assert data["algebra"] == "t2"
        assert data["local_dim"] + data["nonlocal_dim"] == 3

    def test_spec_example_b_plus_r(self, capsys):
        code, out, _ = run(capsys, "classify", "-k", "2",
                           "--lambda", "0", "--mu", "1")
        assert code == 0
        data = json.loads(out)
        assert data["algebra"] == "b+R" and data["total"] == 5

    def test_spec_example_line_a(self, capsys):
        code, out, _ = run(capsys, "classify", "-k", "1", "--lambda", "2/7",
                           "--mu", "9/7", "--space", "line")
        assert code == 0
        assert json.loads(out)["algebra"] == "a"

    def test_missing_arguments_exit_2(self, capsys):
        code, _, err = run(capsys, "classify", "-k", "3")
        assert code == 2 and "error" in err

    def test_decimal_weight_exit_2(self, capsys):
        code, _, err = run(capsys, "classify", "-k", "3",
                           "--lambda", "0.5", "--mu", "1")
        assert code == 2 and "exact rational" in err

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(capsys, "classify", "-k", "1", "--lambda", "0",
                           "--mu", "1", "-o", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["algebra"] == "b"

    def test_deterministic_output(self, capsys):
        _, out1, _ = run(capsys, "classify", "-k", "2", "--lambda", "0",
                         "--mu", "1")
        _, out2, _ = run(capsys, "classify", "-k", "2", "--lambda", "0",
                         "--mu", "1")
        assert out1 == out2


class TestTable:
    def test_csv_grid(self, capsys):
        code, out, _ = run(capsys, "table", "-k", "3", "--no-kinds")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 10  # header + 9 rows
        assert lines[0].startswith("row,points,k=0,k=1,k=2,k=3")
        generic = next(l for l in lines if l.startswith("generic"))
        assert generic.endswith("1,2,2,1")

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "table", "-k", "2", "--no-kinds",
                           "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 9
        assert rows[-1]["row"] == "(0,1)" and rows[-1]["dims"] == [1, 3, 4]

    def test_byte_for_byte_determinism(self, capsys):
        _, out1, _ = run(capsys, "table", "-k", "2", "--no-kinds")
        _, out2, _ = run(capsys, "table", "-k", "2", "--no-kinds")
        assert out1 == out2


class TestVerify:
    def test_pass_exit_zero(self, capsys):
        code, out, _ = run(capsys, "verify", "conj_involution")
        assert code == 0
        assert "conj_involution: pass, defect 0" in out

    def test_mult_table(self, capsys):
        code, out, _ = run(capsys, "verify", "mult_table_01", "-k", "4")
        assert code == 0
        assert "36 entries checked" in out

    def test_unknown_identity_exit_2(self, capsys):
        code, _, err = run(capsys, "verify", "definitely_not_a_thing")
        assert code == 2

    def test_op_mode(self, capsys):
        code, out, _ = run(capsys, "verify", "--op", "GV")
        assert code == 0 and "op:GV: pass" in out

    def test_gsigma_decomposition(self, capsys):
        code, out, _ = run(capsys, "verify", "gsigma_decomposition")
        assert code == 0

    def test_list_names(self, capsys):
        code, out, _ = run(capsys, "verify", "--list")
        assert code == 0
        assert "mult_table_01" in out and "op:grozman" in out


class TestFigures:
    def test_emits_svg_and_csv(self, capsys, tmp_path):
        code, out, _ = run(capsys, "figures", "-k", "3", "-o", str(tmp_path))
        assert code == 0
        svg = (tmp_path / "loci_k3.svg").read_text()
        csv_text = (tmp_path / "loci_k3.csv").read_text()
        assert svg.startswith("<svg") and "polyline" in svg  # hyperbola drawn
        assert "lambda+mu=1" in csv_text and "mu-lambda=2" in csv_text
        assert "point,,-1/2,3/2" in csv_text and "point,,-2,1" in csv_text

    def test_k5_has_three_lines_three_points(self, capsys, tmp_path):
        run(capsys, "figures", "-k", "5", "-o", str(tmp_path))
        rows = (tmp_path / "loci_k5.csv").read_text().strip().splitlines()[1:]
        kinds = [r.split(",")[0] for r in rows]
        assert kinds.count("line") == 3 and kinds.count("point") == 3

    def test_k4_isolated_points(self, capsys, tmp_path):
        run(capsys, "figures", "-k", "4", "-o", str(tmp_path))
        text = (tmp_path / "loci_k4.csv").read_text()
        for pt in ("0,5/4", "-1/4,1", "-2/3,5/3", "0,3", "-2,1"):
            assert f"point,,{pt}" in text
        assert "mu-lambda" not in text  # no shift lines at order 4

    def test_unsupported_order_exit_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "figures", "-k", "7", "-o", str(tmp_path))
        assert code == 2

    def test_outdir_from_environment(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("DENSYM_OUT", str(tmp_path))
        code, out, _ = run(capsys, "figures", "-k", "2")
        assert code == 0
        assert (tmp_path / "loci_k2.svg").exists()


class TestConfigFile:
    def test_flags_fall_back_to_config(self, capsys, tmp_path):
        conf = tmp_path / "run.conf"
        conf.write_text("k=3\nlambda=-1/2\nmu=3/2\nspace=circle\n")
        code, out, _ = run(capsys, "classify", "--config", str(conf))
        assert code == 0
        assert json.loads(out)["algebra"] == "t2"

    def test_explicit_flags_win(self, capsys, tmp_path):
        conf = tmp_path / "run.conf"
        conf.write_text("k=3\nlambda=-1/2\nmu=3/2\n")
        code, out, _ = run(capsys, "classify", "--config", str(conf),
                           "-k", "2")
        assert code == 0
        assert json.loads(out)["k"] == 2

    def test_unknown_key_exit_2(self, capsys, tmp_path):
        conf = tmp_path / "run.conf"
        conf.write_text("sigma=3\n")
        code, _, err = run(capsys, "classify", "--config", str(conf))
        assert code == 2
